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

#include "compsearch/ranker_pagerank.h"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "compsearch/connector_mds.h"
#include "compsearch/error.h"

namespace compsearch {

std::size_t LinkGraph::edge_count() const {
  std::size_t n = 0;
  for (const auto& targets : out_edges) n += targets.size();
  return n;
}

LinkGraph BuildLinkGraph(
    std::span<const SourceRecord> records,
    const std::map<std::string, std::string>& pages,
    const std::map<std::string, std::string>& link_pattern_by_database) {
  LinkGraph graph;
  std::unordered_map<std::string, std::size_t> index;
  std::vector<const SourceRecord*> owners;
  for (const SourceRecord& r : records) {
    if (index.emplace(r.url, graph.nodes.size()).second) {
      graph.nodes.push_back(r.url);
      owners.push_back(&r);
    }
  }
  graph.out_edges.resize(graph.nodes.size());

  for (std::size_t u = 0; u < graph.nodes.size(); ++u) {
    const auto page = pages.find(graph.nodes[u]);
    const auto pattern = link_pattern_by_database.find(owners[u]->database_name);
    if (page == pages.end() || pattern == link_pattern_by_database.end()) {
      continue;
    }
    const FetchedPage fetched{graph.nodes[u], page->second, 0.0};
    for (const std::string& link :
         ExtractLinks(fetched, pattern->second, graph.nodes[u])) {
      const auto target = index.find(link);
      if (target == index.end() || target->second == u) continue;
      // ExtractLinks already dedups, so each target is seen once.
      graph.out_edges[u].push_back(target->second);
    }
  }
  return graph;
}

RankVector PageRank(const LinkGraph& graph, double damping, int max_iterations,
                    double tolerance) {
  const std::size_t n = graph.nodes.size();
  if (n == 0) throw Error(ErrorCode::kEmptyGraph, "graph has no nodes");
  if (!(damping >= 0 && damping < 1)) {
    throw Error(ErrorCode::kConfig, "damping must lie in [0, 1)");
  }
  if (max_iterations < 1 || !(tolerance > 0)) {
    throw Error(ErrorCode::kConfig,
                "max_iterations must be >= 1 and tolerance > 0");
  }

  RankVector result;
  result.damping = damping;
  std::vector<double> rank(n, 1.0);
  std::vector<double> next(n);
  const double teleport = 1.0 - damping;

  for (int iter = 1; iter <= max_iterations; ++iter) {
    double dangling = 0;
    for (std::size_t u = 0; u < n; ++u) {
      if (graph.out_edges[u].empty()) dangling += rank[u];
    }
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t u = 0; u < n; ++u) {
      const auto& targets = graph.out_edges[u];
      if (targets.empty()) continue;
      const double share = rank[u] / static_cast<double>(targets.size());
      for (std::size_t v : targets) next[v] += share;
    }
    const double spread = dangling / static_cast<double>(n);
    double max_delta = 0;
    for (std::size_t v = 0; v < n; ++v) {
      next[v] = teleport + damping * (next[v] + spread);
      max_delta = std::max(max_delta, std::fabs(next[v] - rank[v]));
    }
    rank.swap(next);
    result.iterations_used = iter;
    if (max_delta <= tolerance) {
      result.converged = true;
      break;
    }
  }
  result.scores = std::move(rank);
  return result;
}

std::vector<double> NormalizedPercent(const RankVector& ranks) {
  double sum = 0;
  for (double s : ranks.scores) sum += s;
  if (ranks.scores.empty() || !(sum > 0)) {
    throw Error(ErrorCode::kEmptyGraph, "no rank mass to normalize");
  }
  std::vector<double> out;
  out.reserve(ranks.scores.size());
  for (double s : ranks.scores) out.push_back(100.0 * s / sum);
  return out;
}

}  // namespace compsearch
