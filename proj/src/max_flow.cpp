#include "lesionseg/max_flow.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "lesionseg/error.hpp"

namespace lesionseg {

FlowNetwork::FlowNetwork(int node_count) {
  if (node_count < 0) throw Error(ErrorCode::kInvalidArgument, "FlowNetwork: negative node count");
  source_caps_.assign(static_cast<std::size_t>(node_count), 0.0);
  sink_caps_.assign(static_cast<std::size_t>(node_count), 0.0);
}

namespace {

void check_capacity(double c) {
  if (!(c >= 0.0) || !std::isfinite(c)) {
    throw Error(ErrorCode::kInvalidArgument, "FlowNetwork: capacities must be finite and >= 0");
  }
}

}  // namespace

void FlowNetwork::set_terminals(int node, double source_cap, double sink_cap) {
  check_capacity(source_cap);
  check_capacity(sink_cap);
  source_caps_.at(static_cast<std::size_t>(node)) = source_cap;
  sink_caps_.at(static_cast<std::size_t>(node)) = sink_cap;
}

void FlowNetwork::add_edge(int u, int v, double capacity) {
  check_capacity(capacity);
  if (u < 0 || v < 0 || u >= node_count() || v >= node_count() || u == v) {
    throw Error(ErrorCode::kInvalidArgument, "FlowNetwork: bad edge endpoints");
  }
  edges_.push_back({u, v, capacity});
}

double cut_capacity(const FlowNetwork& net, std::span<const std::uint8_t> source_side) {
  double cut = 0.0;
  for (int i = 0; i < net.node_count(); ++i) {
    cut += source_side[static_cast<std::size_t>(i)] ? net.sink_cap(i) : net.source_cap(i);
  }
  for (const auto& e : net.edges()) {
    if (source_side[static_cast<std::size_t>(e.u)] != source_side[static_cast<std::size_t>(e.v)]) cut += e.capacity;
  }
  return cut;
}

namespace {

class BkSolver {
 public:
  explicit BkSolver(const FlowNetwork& net) : nodes_(static_cast<std::size_t>(net.node_count())) {
    arcs_.reserve(net.edges().size() * 2);
    for (const auto& e : net.edges()) {
      const int a = static_cast<int>(arcs_.size());
      arcs_.push_back({e.v, nodes_[static_cast<std::size_t>(e.u)].first, a + 1, e.capacity});
      nodes_[static_cast<std::size_t>(e.u)].first = a;
      arcs_.push_back({e.u, nodes_[static_cast<std::size_t>(e.v)].first, a, e.capacity});
      nodes_[static_cast<std::size_t>(e.v)].first = a + 1;
    }
    for (int i = 0; i < net.node_count(); ++i) {
      const double s = net.source_cap(i);
      const double t = net.sink_cap(i);
      flow_ += std::min(s, t);  // direct s->i->t paths
      Node& n = node(i);
      n.tr_cap = s - t;
      if (n.tr_cap > 0.0) {
        n.in_sink = false;
      } else if (n.tr_cap < 0.0) {
        n.in_sink = true;
      } else {
        continue;
      }
      n.parent = kTerminal;
      n.ts = 0;
      n.dist = 1;
      activate(i);
    }
  }

  double run() {
    while (true) {
      const int i = next_active();
      if (i < 0) break;
      const int middle = grow(i);
      ++time_;
      if (middle < 0) continue;
      activate_front(i);
      augment(middle);
      adopt_orphans();
    }
    return flow_;
  }

  std::vector<std::uint8_t> source_side() const {
    std::vector<std::uint8_t> side(nodes_.size(), 0);
    std::deque<int> queue;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      if (nodes_[i].tr_cap > 0.0) {
        side[i] = 1;
        queue.push_back(static_cast<int>(i));
      }
    }
    while (!queue.empty()) {
      const int i = queue.front();
      queue.pop_front();
      for (int a = nodes_[static_cast<std::size_t>(i)].first; a >= 0; a = arcs_[static_cast<std::size_t>(a)].next) {
        const Arc& arc = arcs_[static_cast<std::size_t>(a)];
        if (arc.r_cap > 0.0 && !side[static_cast<std::size_t>(arc.head)]) {
          side[static_cast<std::size_t>(arc.head)] = 1;
          queue.push_back(arc.head);
        }
      }
    }
    return side;
  }

 private:
  static constexpr int kNone = -1;
  static constexpr int kTerminal = -2;
  static constexpr int kOrphan = -3;
  static constexpr int kInfiniteDist = std::numeric_limits<int>::max();

  struct Arc {
    int head;
    int next;
    int sister;
    double r_cap;
  };

  struct Node {
    int first = -1;
    int parent = kNone;  // arc from this node towards its parent, or a sentinel
    bool in_sink = false;
    bool active = false;
    double tr_cap = 0.0;  // > 0: residual from source, < 0: residual to sink
    long ts = 0;
    int dist = 0;
  };

  Node& node(int i) { return nodes_[static_cast<std::size_t>(i)]; }
  Arc& arc(int a) { return arcs_[static_cast<std::size_t>(a)]; }
  bool in_tree(int i) { return node(i).parent != kNone; }

  void activate(int i) {
    if (!node(i).active) {
      node(i).active = true;
      active_.push_back(i);
    }
  }

  void activate_front(int i) {
    if (!node(i).active) {
      node(i).active = true;
      active_.push_front(i);
    }
  }

  int next_active() {
    while (!active_.empty()) {
      const int i = active_.front();
      active_.pop_front();
      node(i).active = false;
      if (in_tree(i)) return i;
    }
    return -1;
  }

  // Expands the tree of node i by one layer. Returns an arc from the source
  // tree to the sink tree when the trees meet, otherwise -1.
  int grow(int i) {
    Node& ni = node(i);
    for (int a = ni.first; a >= 0; a = arc(a).next) {
      const int j = arc(a).head;
      Node& nj = node(j);
      const double residual = ni.in_sink ? arc(arc(a).sister).r_cap : arc(a).r_cap;
      if (residual <= 0.0) continue;
      if (nj.parent == kNone) {
        nj.in_sink = ni.in_sink;
        nj.parent = arc(a).sister;
        nj.ts = ni.ts;
        nj.dist = ni.dist + 1;
        activate(j);
      } else if (nj.in_sink != ni.in_sink) {
        return ni.in_sink ? arc(a).sister : a;
      } else if (nj.ts <= ni.ts && nj.dist > ni.dist) {
        nj.parent = arc(a).sister;
        nj.ts = ni.ts;
        nj.dist = ni.dist + 1;
      }
    }
    return -1;
  }

  void make_orphan(int i) {
    node(i).parent = kOrphan;
    orphans_.push_back(i);
  }

  void augment(int middle) {
    const int tail = arc(arc(middle).sister).head;
    const int head = arc(middle).head;

    double bottleneck = arc(middle).r_cap;
    int i = tail;
    for (; node(i).parent != kTerminal; i = arc(node(i).parent).head) {
      bottleneck = std::min(bottleneck, arc(arc(node(i).parent).sister).r_cap);
    }
    bottleneck = std::min(bottleneck, node(i).tr_cap);
    for (i = head; node(i).parent != kTerminal; i = arc(node(i).parent).head) {
      bottleneck = std::min(bottleneck, arc(node(i).parent).r_cap);
    }
    bottleneck = std::min(bottleneck, -node(i).tr_cap);

    arc(arc(middle).sister).r_cap += bottleneck;
    arc(middle).r_cap -= bottleneck;

    for (i = tail; node(i).parent != kTerminal;) {
      Arc& up = arc(node(i).parent);
      const int parent = up.head;
      up.r_cap += bottleneck;
      arc(up.sister).r_cap -= bottleneck;
      if (arc(up.sister).r_cap <= 0.0) make_orphan(i);
      i = parent;
    }
    node(i).tr_cap -= bottleneck;
    if (node(i).tr_cap <= 0.0) make_orphan(i);

    for (i = head; node(i).parent != kTerminal;) {
      Arc& up = arc(node(i).parent);
      const int parent = up.head;
      arc(up.sister).r_cap += bottleneck;
      up.r_cap -= bottleneck;
      if (up.r_cap <= 0.0) make_orphan(i);
      i = parent;
    }
    node(i).tr_cap += bottleneck;
    if (node(i).tr_cap >= 0.0) make_orphan(i);

    flow_ += bottleneck;
  }

  // Distance from j to its terminal through valid parents, or kInfiniteDist
  // when the chain runs into an orphan. Marks the visited chain with time_.
  int origin_distance(int j0) {
    int d = 0;
    int j = j0;
    while (true) {
      Node& nj = node(j);
      if (nj.ts == time_) {
        d += nj.dist;
        break;
      }
      const int p = nj.parent;
      ++d;
      if (p == kTerminal) {
        nj.ts = time_;
        nj.dist = 1;
        break;
      }
      if (p == kOrphan || p == kNone) return kInfiniteDist;
      j = arc(p).head;
    }
    for (int k = j0, dk = d; node(k).ts != time_; k = arc(node(k).parent).head) {
      node(k).ts = time_;
      node(k).dist = dk--;
    }
    return d;
  }

  void adopt(int i) {
    Node& ni = node(i);
    const bool sink = ni.in_sink;
    int best_arc = kNone;
    int best_dist = kInfiniteDist;

    for (int a = ni.first; a >= 0; a = arc(a).next) {
      const double residual = sink ? arc(a).r_cap : arc(arc(a).sister).r_cap;
      if (residual <= 0.0) continue;
      const int j = arc(a).head;
      if (node(j).in_sink != sink || node(j).parent == kNone) continue;
      const int d = origin_distance(j);
      if (d < best_dist) {
        best_dist = d;
        best_arc = a;
      }
    }

    if (best_arc != kNone) {
      ni.parent = best_arc;
      ni.ts = time_;
      ni.dist = best_dist + 1;
      return;
    }

    ni.ts = 0;
    ni.parent = kNone;
    for (int a = ni.first; a >= 0; a = arc(a).next) {
      const int j = arc(a).head;
      Node& nj = node(j);
      if (nj.in_sink != sink || nj.parent == kNone) continue;
      const double residual = sink ? arc(a).r_cap : arc(arc(a).sister).r_cap;
      if (residual > 0.0) activate(j);
      if (nj.parent != kTerminal && nj.parent != kOrphan && arc(nj.parent).head == i) make_orphan(j);
    }
  }

  void adopt_orphans() {
    while (!orphans_.empty()) {
      const int i = orphans_.front();
      orphans_.pop_front();
      adopt(i);
    }
  }

  std::vector<Node> nodes_;
  std::vector<Arc> arcs_;
  std::deque<int> active_;
  std::deque<int> orphans_;
  double flow_ = 0.0;
  long time_ = 0;
};

}  // namespace

FlowResult max_flow(const FlowNetwork& net) {
  BkSolver solver(net);
  FlowResult result;
  result.flow = solver.run();
  result.source_side = solver.source_side();
  return result;
}

}  // namespace lesionseg
