// Copyright 2026 The divpop Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DIVPOP_TRANSPORT_HPP
#define DIVPOP_TRANSPORT_HPP

#include <cstdint>
#include <deque>
#include <limits>
#include <numeric>
#include <vector>

#include "divpop/error.hpp"

namespace divpop {

struct TransportPlan {
  std::int64_t value = 0;
  /// flow[row][col] units shipped.
  std::vector<std::vector<int>> flow;
};

namespace detail {

class MinCostFlow {
 public:
  explicit MinCostFlow(int nodes) : head_(static_cast<std::size_t>(nodes), -1) {}

  int add_edge(int from, int to, int cap, std::int64_t cost) {
    const int id = static_cast<int>(edges_.size());
    edges_.push_back({to, head_[from], cap, cost});
    head_[from] = id;
    edges_.push_back({from, head_[to], 0, -cost});
    head_[to] = id + 1;
    return id;
  }

  int flow_on(int edge) const { return edges_[edge ^ 1].cap; }

  /// Successive shortest paths with SPFA; returns (flow, cost).
  std::pair<std::int64_t, std::int64_t> run(int source, int sink) {
    const std::size_t n = head_.size();
    std::int64_t flow = 0;
    std::int64_t cost = 0;
    constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
    std::vector<std::int64_t> dist(n);
    std::vector<int> via(n);
    std::vector<char> queued(n);
    for (;;) {
      std::fill(dist.begin(), dist.end(), kInf);
      std::fill(via.begin(), via.end(), -1);
      std::deque<int> queue{source};
      dist[source] = 0;
      queued.assign(n, 0);
      queued[source] = 1;
      while (!queue.empty()) {
        const int u = queue.front();
        queue.pop_front();
        queued[u] = 0;
        for (int e = head_[u]; e != -1; e = edges_[e].next) {
          const Edge& ed = edges_[e];
          if (ed.cap > 0 && dist[u] + ed.cost < dist[ed.to]) {
            dist[ed.to] = dist[u] + ed.cost;
            via[ed.to] = e;
            if (!queued[ed.to]) {
              queued[ed.to] = 1;
              queue.push_back(ed.to);
            }
          }
        }
      }
      if (dist[sink] == kInf) break;
      int push = std::numeric_limits<int>::max();
      for (int v = sink; v != source; v = edges_[via[v] ^ 1].to) {
        push = std::min(push, edges_[via[v]].cap);
      }
      for (int v = sink; v != source; v = edges_[via[v] ^ 1].to) {
        edges_[via[v]].cap -= push;
        edges_[via[v] ^ 1].cap += push;
      }
      flow += push;
      cost += push * dist[sink];
    }
    return {flow, cost};
  }

 private:
  struct Edge {
    int to;
    int next;
    int cap;
    std::int64_t cost;
  };
  std::vector<int> head_;
  std::vector<Edge> edges_;
};

}  // namespace detail

/// Exact balanced transportation problem: ship supply[r] units out of every
/// row and demand[c] units into every column, maximizing the total
/// profit[r][c] per unit. Integer data gives an integral optimum.
inline TransportPlan max_profit_transport(
    const std::vector<int>& supply, const std::vector<int>& demand,
    const std::vector<std::vector<int>>& profit) {
  const int rows = static_cast<int>(supply.size());
  const int cols = static_cast<int>(demand.size());
  const std::int64_t total = std::accumulate(supply.begin(), supply.end(), std::int64_t{0});
  if (total != std::accumulate(demand.begin(), demand.end(), std::int64_t{0})) {
    throw Error(ErrorCode::internal, "unbalanced transportation problem");
  }
  const int source = 0;
  const int sink = rows + cols + 1;
  detail::MinCostFlow mcf(rows + cols + 2);
  for (int r = 0; r < rows; ++r) mcf.add_edge(source, 1 + r, supply[r], 0);
  for (int c = 0; c < cols; ++c) mcf.add_edge(1 + rows + c, sink, demand[c], 0);
  std::vector<std::vector<int>> arc(static_cast<std::size_t>(rows),
                                    std::vector<int>(static_cast<std::size_t>(cols)));
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      arc[r][c] = mcf.add_edge(1 + r, 1 + rows + c, supply[r], -profit[r][c]);
    }
  }
  const auto [flow, cost] = mcf.run(source, sink);
  if (flow != total) throw Error(ErrorCode::internal, "transportation infeasible");
  TransportPlan plan;
  plan.value = -cost;
  plan.flow.assign(static_cast<std::size_t>(rows), std::vector<int>(static_cast<std::size_t>(cols), 0));
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) plan.flow[r][c] = mcf.flow_on(arc[r][c]);
  }
  return plan;
}

}  // namespace divpop

#endif  // DIVPOP_TRANSPORT_HPP
