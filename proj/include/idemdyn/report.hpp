#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "idemdyn/classifier.hpp"
#include "idemdyn/dynamics.hpp"
#include "idemdyn/fixpoint.hpp"
#include "idemdyn/graph.hpp"

namespace idemdyn {

using OrderedJson = nlohmann::ordered_json;

/// One report value per CLI invocation; the JSON and text renderings both
/// derive from it. Timing is only rendered when engaged so that repeated
/// runs with the same inputs and seed stay byte-identical.
struct Report {
  std::string version = "1.0";
  std::string command;
  OrderedJson input = OrderedJson::object();
  double tolerance = 1e-9;
  OrderedJson classification;  // null unless set
  OrderedJson results = OrderedJson::object();
  std::vector<std::string> warnings;
  std::optional<double> timing_ms;

  OrderedJson to_json() const;
  std::string to_text() const;
};

OrderedJson measure_json(std::span<const ExtendedReal> coords);
OrderedJson classification_json(const OperatorClass& c, const Matrix& a);
OrderedJson fixed_point_set_json(const FixedPointSet& s);
OrderedJson reduced_system_json(const ReducedSystem& sys);
OrderedJson graph_json(const Pseudograph& g, const CycleReport& cycles);
OrderedJson neg_inf_fate_json(const NegInfFate& fate);
OrderedJson omega_json(const OmegaEstimate& est);
OrderedJson prediction_json(const LimitPrediction& pred);
OrderedJson asymptotics_json(const AsymptoticClass1& asym);
OrderedJson verification_json(const VerificationReport& report);

}  // namespace idemdyn
