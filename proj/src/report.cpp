#include "idemdyn/report.hpp"

#include "idemdyn/permutation.hpp"

namespace idemdyn {

OrderedJson measure_json(std::span<const ExtendedReal> coords) {
  OrderedJson arr = OrderedJson::array();
  for (const ExtendedReal& v : coords) {
    if (v.is_neg_inf()) {
      arr.push_back("-inf");
    } else {
      arr.push_back(v.value());
    }
  }
  return arr;
}

OrderedJson classification_json(const OperatorClass& c, const Matrix& a) {
  OrderedJson out;
  out["class"] = class_name(c);
  if (const auto* c1 = std::get_if<ClassI>(&c)) {
    OrderedJson rows = OrderedJson::array();
    for (int z : c1->zero_rows) rows.push_back(z + 1);
    out["zero_rows"] = rows;
  } else if (const auto* c2 = std::get_if<ClassII>(&c)) {
    OrderedJson images = OrderedJson::array();
    for (int v : c2->permutation.images()) images.push_back(v + 1);
    out["permutation"] = images;
    out["cycles"] = cycle_notation(cycle_decomposition(c2->permutation));
  } else if (const auto* nc = std::get_if<Neither>(&c)) {
    out["reason"] = neither_reason_name(nc->reason);
    if (nc->i >= 0) out["row"] = nc->i + 1;
    if (nc->j >= 0) out["column"] = nc->j + 1;
    out["witness"] = measure_json(nc->witness.coords());
    out["witness_image"] = measure_json(apply(a, nc->witness));
  }
  return out;
}

OrderedJson fixed_point_set_json(const FixedPointSet& s) {
  OrderedJson out;
  out["kind"] = s.kind == FixKind::unique_zero ? "unique_zero" : "cone";
  OrderedJson gens = OrderedJson::array();
  for (const auto& g : s.generators) gens.push_back(g);
  out["generators"] = gens;
  out["requires_zero_anchor"] = s.requires_zero_anchor;
  OrderedJson forced = OrderedJson::array();
  for (int i : s.forced_zero_coords) forced.push_back(i + 1);
  out["forced_zero_coords"] = forced;
  return out;
}

OrderedJson reduced_system_json(const ReducedSystem& sys) {
  OrderedJson out;
  OrderedJson kept = OrderedJson::array();
  for (int k : sys.kept) kept.push_back(k + 1);
  out["kept_indices"] = kept;
  out["n0"] = sys.n0;
  out["rank"] = sys.rank;
  out["det"] = sys.det;
  return out;
}

OrderedJson graph_json(const Pseudograph& g, const CycleReport& cycles) {
  OrderedJson out;
  OrderedJson adjacency = OrderedJson::array();
  for (int i = 0; i < g.n; ++i) {
    OrderedJson row = OrderedJson::array();
    for (int j : g.out[static_cast<size_t>(i)]) row.push_back(j + 1);
    adjacency.push_back(row);
  }
  out["adjacency"] = adjacency;
  out["edge_count"] = g.edge_count();
  out["has_cycle"] = cycles.has_cycle;
  OrderedJson cyc = OrderedJson::array();
  for (const auto& cycle : cycles.cycles) {
    OrderedJson one = OrderedJson::array();
    for (int v : cycle) one.push_back(v + 1);
    cyc.push_back(one);
  }
  out["cycles"] = cyc;
  out["cycles_exhaustive"] = cycles.exhaustive;
  if (cycles.longest_path_len) {
    out["longest_path_len"] = *cycles.longest_path_len;
  }
  return out;
}

OrderedJson neg_inf_fate_json(const NegInfFate& fate) {
  OrderedJson out;
  out["fate"] = fate.persists ? "persists" : "disappears";
  if (fate.persists) {
    OrderedJson cycle = OrderedJson::array();
    for (int v : fate.reachable_cycle) cycle.push_back(v + 1);
    out["reachable_cycle"] = cycle;
  } else {
    out["by_step"] = fate.by_step;
  }
  return out;
}

OrderedJson omega_json(const OmegaEstimate& est) {
  OrderedJson out;
  out["verdict"] = omega_kind_name(est.kind);
  out["steps_used"] = est.steps_used;
  switch (est.kind) {
    case OmegaEstimate::Kind::converged:
      out["limit"] = measure_json(est.limit);
      break;
    case OmegaEstimate::Kind::periodic_orbit: {
      out["period"] = est.period;
      OrderedJson orbit = OrderedJson::array();
      for (const auto& point : est.orbit) orbit.push_back(measure_json(point));
      out["orbit"] = orbit;
      break;
    }
    case OmegaEstimate::Kind::diverging_to_neg_inf: {
      OrderedJson coords = OrderedJson::array();
      for (int i : est.diverging_coords) coords.push_back(i + 1);
      out["diverging_coords"] = coords;
      break;
    }
    case OmegaEstimate::Kind::undecided:
      break;
  }
  return out;
}

OrderedJson prediction_json(const LimitPrediction& pred) {
  OrderedJson out;
  OrderedJson cycles = OrderedJson::array();
  for (size_t p = 0; p < pred.cycles.cycles.size(); ++p) {
    OrderedJson one;
    OrderedJson vertices = OrderedJson::array();
    for (int v : pred.cycles.cycles[p]) vertices.push_back(v + 1);
    one["cycle"] = vertices;
    one["product"] = pred.cycle_products[p];
    cycles.push_back(one);
  }
  out["cycles"] = cycles;
  OrderedJson coords = OrderedJson::array();
  for (size_t i = 0; i < pred.coords.size(); ++i) {
    const CoordinateLimit& lim = pred.coords[i];
    OrderedJson one;
    one["coordinate"] = static_cast<int>(i) + 1;
    one["verdict"] = limit_kind_name(lim.kind);
    one["cycle"] = lim.cycle_index + 1;
    one["cycle_product"] = lim.cycle_product;
    if (lim.kind == LimitKind::periodic) {
      one["period"] = lim.period;
      one["residues"] = measure_json(lim.residues);
    }
    coords.push_back(one);
  }
  out["coordinates"] = coords;
  return out;
}

OrderedJson asymptotics_json(const AsymptoticClass1& asym) {
  OrderedJson out;
  out["verdict"] = verdict_name(asym.verdict);
  OrderedJson kept = OrderedJson::array();
  for (int k : asym.kept) kept.push_back(k + 1);
  out["kept_indices"] = kept;
  OrderedJson eigs = OrderedJson::array();
  for (const auto& lambda : asym.eigenvalues) {
    OrderedJson one;
    one["re"] = lambda.real();
    one["im"] = lambda.imag();
    eigs.push_back(one);
  }
  out["eigenvalues"] = eigs;
  out["n_stable"] = asym.n_stable;
  out["n_unstable"] = asym.n_unstable;
  out["n_unit"] = asym.n_unit;
  out["spectral_radius"] = asym.spectral_radius;
  out["gelfand_estimate"] = asym.gelfand_estimate;
  out["low_confidence"] = asym.low_confidence;
  return out;
}

OrderedJson verification_json(const VerificationReport& report) {
  OrderedJson out;
  out["classification"] = report.classification;
  out["agree"] = report.agree;
  out["inconclusive"] = report.inconclusive;
  OrderedJson checks = OrderedJson::array();
  for (const auto& check : report.checks) {
    OrderedJson one;
    one["name"] = check.name;
    one["outcome"] = outcome_name(check.outcome);
    one["predicted"] = check.predicted;
    one["observed"] = check.observed;
    if (check.first_divergent_step >= 0) {
      one["first_divergent_step"] = check.first_divergent_step;
    }
    checks.push_back(one);
  }
  out["checks"] = checks;
  out["omega"] = omega_json(report.omega);
  return out;
}

OrderedJson Report::to_json() const {
  OrderedJson out;
  out["version"] = version;
  out["command"] = command;
  out["input"] = input;
  out["tolerance"] = tolerance;
  if (!classification.is_null()) out["classification"] = classification;
  out["results"] = results;
  out["warnings"] = warnings;
  if (timing_ms) out["timing_ms"] = *timing_ms;
  return out;
}

namespace {

void render(const OrderedJson& node, const std::string& indent, std::string& out) {
  if (node.is_object()) {
    for (const auto& [key, value] : node.items()) {
      if (value.is_object() || value.is_array()) {
        out += indent + key + ":";
        if (value.empty()) {
          out += value.is_array() ? " []\n" : " {}\n";
        } else {
          out += "\n";
          render(value, indent + "  ", out);
        }
      } else {
        out += indent + key + ": " + (value.is_string() ? value.get<std::string>() : value.dump()) +
               "\n";
      }
    }
  } else if (node.is_array()) {
    for (const auto& value : node) {
      if (value.is_object() || value.is_array()) {
        out += indent + "-\n";
        render(value, indent + "  ", out);
      } else {
        out += indent + "- " +
               (value.is_string() ? value.get<std::string>() : value.dump()) + "\n";
      }
    }
  } else {
    out += indent + (node.is_string() ? node.get<std::string>() : node.dump()) + "\n";
  }
}

}  // namespace

std::string Report::to_text() const {
  std::string out;
  render(to_json(), "", out);
  return out;
}

}  // namespace idemdyn
