// Copyright 2026 The compsearch Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef COMPSEARCH_RANKER_PAGERANK_H_
#define COMPSEARCH_RANKER_PAGERANK_H_

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "compsearch/saea_extractor.h"

namespace compsearch {

struct LinkGraph {
  std::vector<std::string> nodes;
  // out_edges[u] lists distinct targets of u in first-seen order.
  std::vector<std::vector<std::size_t>> out_edges;

  std::size_t edge_count() const;
};

struct RankVector {
  std::vector<double> scores;  // aligned with LinkGraph::nodes
  double damping = 0.85;
  int iterations_used = 0;
  bool converged = false;
};

inline constexpr double kDefaultDamping = 0.85;
inline constexpr int kDefaultMaxIterations = 100;
inline constexpr double kDefaultTolerance = 1e-9;

// One node per distinct record URL. u -> v when u's page body contains a
// link (found with u's database link pattern, resolved against u's URL)
// that equals v's URL. Links leaving the record set and self-links are
// dropped; parallel links collapse to one edge.
LinkGraph BuildLinkGraph(
    std::span<const SourceRecord> records,
    const std::map<std::string, std::string>& pages,
    const std::map<std::string, std::string>& link_pattern_by_database);

// Sum-to-N PageRank:
//
//   PR(u) = (1 - d) + d * sum_{i -> u} PR(i) / L(i)
//
// starting from PR = 1 everywhere. The rank held by dangling nodes (L = 0) is
// spread uniformly over all nodes each iteration, which keeps sum(PR) = N.
// Stops when the largest per-node change is <= tolerance or after
// max_iterations.
// Throws Error(kEmptyGraph) for a graph without nodes and Error(kConfig) for
// parameters outside 0 <= d < 1, max_iterations >= 1, tolerance > 0.
RankVector PageRank(const LinkGraph& graph, double damping = kDefaultDamping,
                    int max_iterations = kDefaultMaxIterations,
                    double tolerance = kDefaultTolerance);

// 100 * score / sum(scores) per node.
// Throws Error(kEmptyGraph) when there are no scores or they sum to zero.
std::vector<double> NormalizedPercent(const RankVector& ranks);

}  // namespace compsearch

#endif  // COMPSEARCH_RANKER_PAGERANK_H_
