#pragma once

#include <string>

#include "causalbox/graph.hpp"
#include "causalbox/kernel.hpp"

namespace causalbox {

// Graph documents: {"vertices": [{"name", "kind": "observed"|"latent", "cardinality"}],
//                   "edges": [[from, to], ...]}
CausalDag parseGraph(const std::string& text);
CausalDag readGraphFile(const std::string& path);
std::string writeGraph(const CausalDag& dag);

// Distribution documents: {"variables": [{"name", "cardinality"}], "index_variables": [...],
// "table": {"v1,v2,...": "n/d"}} with outcome values first, then index values.
// Absent assignments are zero.
Kernel parseDistribution(const std::string& text);
Kernel readDistributionFile(const std::string& path);
std::string writeDistribution(const Kernel& k);

std::string readFile(const std::string& path);

}  // namespace causalbox
