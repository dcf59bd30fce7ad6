#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace lesionseg {

/// s-t network over pixel nodes. The source stands for foreground and the
/// sink for background. Neighbour edges are undirected: the same capacity
/// applies in both directions.
class FlowNetwork {
 public:
  struct Edge {
    int u = 0;
    int v = 0;
    double capacity = 0.0;
  };

  explicit FlowNetwork(int node_count);

  int node_count() const noexcept { return static_cast<int>(source_caps_.size()); }

  /// Capacities must be finite and >= 0.
  void set_terminals(int node, double source_cap, double sink_cap);
  void add_edge(int u, int v, double capacity);

  double source_cap(int node) const { return source_caps_.at(static_cast<std::size_t>(node)); }
  double sink_cap(int node) const { return sink_caps_.at(static_cast<std::size_t>(node)); }
  std::span<const Edge> edges() const noexcept { return edges_; }

 private:
  std::vector<double> source_caps_;
  std::vector<double> sink_caps_;
  std::vector<Edge> edges_;
};

struct FlowResult {
  double flow = 0.0;
  /// 1 for nodes reachable from the source in the final residual graph.
  std::vector<std::uint8_t> source_side;
};

/// Exact maximum flow (Boykov-Kolmogorov search trees with tree reuse and
/// orphan adoption). The returned partition is the source side of a minimum
/// cut; unreachable nodes, including isolated ones, fall on the sink side.
FlowResult max_flow(const FlowNetwork& net);

/// Total capacity of edges leaving the source side of `source_side`.
double cut_capacity(const FlowNetwork& net, std::span<const std::uint8_t> source_side);

}  // namespace lesionseg
