#pragma once

#include <string>

#include <json.hpp>

#include "floq/quantum.hpp"

namespace floq::io {

using nlohmann::json;

// {"dimension": n, "vertices": [...], "terms": [{"u","v","shift","coeff"}],
//  "positions": {...}}; rationals are strings "p/q", Gaussian "p/q+r/s i".
json operator_to_json(const PeriodicOperatorQ& op);
PeriodicOperatorQ operator_from_json(const json& j, bool auto_symmetrize = false);

// {"values": [{"vertex": "a", "cell": [0], "value": "1/2"}]}
json function_to_json(const PeriodicGraph& graph, const LatticeFunctionQ& f);
LatticeFunctionQ function_from_json(const PeriodicGraph& graph, const json& j);

// {"sites": [{"vertex": "a", "cell": [0]}, ...], "matrix": [["p/q", ...], ...]}
json perturbation_to_json(const PeriodicGraph& graph, const LocalPerturbationQ& b);
LocalPerturbationQ perturbation_from_json(const PeriodicGraph& graph, const json& j);

// {"dimension": 1, "vertices": ["a"],
//  "edges": [{"u","v","shift","length","potential":[{"length","value"}]}]}
json metric_graph_to_json(const MetricGraph& g);
MetricGraph metric_graph_from_json(const json& j);

// Numeric coefficients to exact ones by bounded continued fractions; the
// bridge from quantum reductions into the exact pipeline.
PeriodicOperatorQ rationalize_operator(const PeriodicOperatorX& op,
                                       std::uint64_t max_denominator = 1000000);
LocalPerturbationQ rationalize_perturbation(const LocalPerturbationX& b,
                                            std::uint64_t max_denominator = 1000000);

json load_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

// Fixed 12-significant-digit rendering used by every CSV emitter.
std::string format_sig12(double x);

}  // namespace floq::io
