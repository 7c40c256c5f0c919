#pragma once

#include <algorithm>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace torusmatch {

/// Contracted multigraph with two terminals B and Y and nonnegative integer
/// capacities. Interior edges are undirected (capacity usable either way);
/// terminal edges are directed. Stored as paired arcs e, e^1.
class FlowNetwork {
 public:
  static constexpr int32_t kB = 0;
  static constexpr int32_t kY = 1;

  struct Arc {
    int32_t from;
    int32_t to;
    int64_t cap;
  };

  FlowNetwork() : adj_(2) {}

  int32_t add_node() {
    adj_.emplace_back();
    return static_cast<int32_t>(adj_.size()) - 1;
  }

  int32_t node_count() const { return static_cast<int32_t>(adj_.size()); }

  /// Undirected edge: both arcs get the full capacity.
  int32_t add_edge(int32_t u, int32_t v, int64_t cap) { return push_pair(u, v, cap, cap); }

  /// Directed edge u -> v.
  int32_t add_arc(int32_t u, int32_t v, int64_t cap) { return push_pair(u, v, cap, 0); }

  const std::vector<Arc>& arcs() const { return arcs_; }
  const std::vector<int32_t>& adjacent(int32_t v) const {
    return adj_[static_cast<size_t>(v)];
  }

  int64_t terminal_capacity(int32_t terminal) const {
    int64_t c = 0;
    for (int32_t id : adj_[static_cast<size_t>(terminal)]) c += arcs_[static_cast<size_t>(id)].cap;
    return c;
  }

 private:
  int32_t push_pair(int32_t u, int32_t v, int64_t cap_fwd, int64_t cap_back) {
    if (cap_fwd < 0 || cap_back < 0)
      throw std::invalid_argument("FlowNetwork: negative capacity");
    int32_t id = static_cast<int32_t>(arcs_.size());
    arcs_.push_back({u, v, cap_fwd});
    arcs_.push_back({v, u, cap_back});
    adj_[static_cast<size_t>(u)].push_back(id);
    adj_[static_cast<size_t>(v)].push_back(id + 1);
    return id;
  }

  std::vector<Arc> arcs_;
  std::vector<std::vector<int32_t>> adj_;
};

/// Integral flow values per arc plus the achieved strength.
struct IntegralFlow {
  std::vector<int64_t> arc_flow;
  int64_t strength = 0;

  /// Net forward flow on the arc pair starting at `id` (even index).
  int64_t net(int32_t id) const {
    int64_t f = arc_flow[static_cast<size_t>(id)] - arc_flow[static_cast<size_t>(id ^ 1)];
    return f;
  }
};

namespace detail {

struct DinicState {
  const FlowNetwork& net;
  std::vector<int64_t> flow;
  std::vector<int32_t> level;
  std::vector<size_t> ptr;

  explicit DinicState(const FlowNetwork& n)
      : net(n),
        flow(n.arcs().size(), 0),
        level(static_cast<size_t>(n.node_count())),
        ptr(static_cast<size_t>(n.node_count())) {}

  int64_t residual(int32_t id) const {
    return net.arcs()[static_cast<size_t>(id)].cap - flow[static_cast<size_t>(id)];
  }

  bool bfs() {
    std::fill(level.begin(), level.end(), -1);
    std::vector<int32_t> queue;
    queue.push_back(FlowNetwork::kB);
    level[FlowNetwork::kB] = 0;
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      int32_t v = queue[qi];
      for (int32_t id : net.adjacent(v)) {
        const auto& a = net.arcs()[static_cast<size_t>(id)];
        if (residual(id) > 0 && level[static_cast<size_t>(a.to)] == -1) {
          level[static_cast<size_t>(a.to)] = level[static_cast<size_t>(v)] + 1;
          queue.push_back(a.to);
        }
      }
    }
    return level[FlowNetwork::kY] != -1;
  }

  int64_t dfs(int32_t v, int64_t pushed) {
    if (v == FlowNetwork::kY) return pushed;
    auto& adj = net.adjacent(v);
    for (size_t& i = ptr[static_cast<size_t>(v)]; i < adj.size(); ++i) {
      int32_t id = adj[i];
      const auto& a = net.arcs()[static_cast<size_t>(id)];
      if (residual(id) <= 0 || level[static_cast<size_t>(a.to)] != level[static_cast<size_t>(v)] + 1)
        continue;
      int64_t got = dfs(a.to, std::min(pushed, residual(id)));
      if (got > 0) {
        flow[static_cast<size_t>(id)] += got;
        flow[static_cast<size_t>(id ^ 1)] -= got;
        return got;
      }
    }
    return 0;
  }
};

}  // namespace detail

/// Exact integral max flow from B to Y (Dinic). Deterministic given the
/// network's node and edge ordering.
inline IntegralFlow max_flow(const FlowNetwork& net) {
  detail::DinicState st(net);
  int64_t total = 0;
  while (st.bfs()) {
    std::fill(st.ptr.begin(), st.ptr.end(), 0);
    while (int64_t pushed = st.dfs(FlowNetwork::kB, INT64_MAX)) total += pushed;
  }
  IntegralFlow f;
  f.strength = total;
  // normalize arc pairs: keep net flow on the direction actually used
  f.arc_flow.assign(net.arcs().size(), 0);
  for (size_t id = 0; id < net.arcs().size(); id += 2) {
    int64_t nf = st.flow[id];  // st.flow[id^1] == -st.flow[id] by construction
    if (nf >= 0)
      f.arc_flow[id] = nf;
    else
      f.arc_flow[id + 1] = -nf;
  }
  return f;
}

/// Minimum over all B/Y node bipartitions of the crossing capacity.
/// Exponential enumeration; guarded to small instances.
inline int64_t brute_min_cut(const FlowNetwork& net) {
  int32_t n = net.node_count() - 2;
  if (n > 20) throw std::invalid_argument("brute_min_cut: more than 20 non-terminal nodes");
  int64_t best = INT64_MAX;
  for (uint32_t mask = 0; mask < (1u << n); ++mask) {
    // side(v): true = B side
    auto side = [&](int32_t v) {
      if (v == FlowNetwork::kB) return true;
      if (v == FlowNetwork::kY) return false;
      return ((mask >> (v - 2)) & 1u) != 0;
    };
    int64_t cut = 0;
    const auto& arcs = net.arcs();
    for (size_t id = 0; id < arcs.size(); ++id) {
      const auto& a = arcs[id];
      if (side(a.from) && !side(a.to)) cut += a.cap;
    }
    best = std::min(best, cut);
  }
  return best;
}

/// The B-side node set of a minimum cut realized by a maximal flow:
/// nodes reachable from B in the residual graph.
inline std::vector<int32_t> min_cut_side(const FlowNetwork& net, const IntegralFlow& f) {
  std::vector<char> seen(static_cast<size_t>(net.node_count()), 0);
  std::vector<int32_t> queue{FlowNetwork::kB};
  seen[FlowNetwork::kB] = 1;
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    int32_t v = queue[qi];
    for (int32_t id : net.adjacent(v)) {
      const auto& a = net.arcs()[static_cast<size_t>(id)];
      int64_t residual = a.cap - (f.arc_flow[static_cast<size_t>(id)] -
                                  f.arc_flow[static_cast<size_t>(id ^ 1)]);
      if (residual > 0 && !seen[static_cast<size_t>(a.to)]) {
        seen[static_cast<size_t>(a.to)] = 1;
        queue.push_back(a.to);
      }
    }
  }
  return queue;
}

/// Net positive flow per arc, forward direction only.
inline std::vector<int64_t> net_arc_flow(const FlowNetwork& net, const IntegralFlow& f) {
  std::vector<int64_t> nf(net.arcs().size(), 0);
  for (size_t id = 0; id < nf.size(); id += 2) {
    int64_t v = f.arc_flow[id] - f.arc_flow[id + 1];
    if (v >= 0)
      nf[id] = v;
    else
      nf[id + 1] = -v;
  }
  return nf;
}

namespace detail {

/// Subtracts flow cycles until the positive-flow graph is acyclic.
/// Terminal arcs are one-directional, so cycles never pass through B or Y.
inline void cancel_cycles(const FlowNetwork& net, std::vector<int64_t>& nf) {
  int32_t n = net.node_count();
  for (;;) {
    std::vector<int8_t> color(static_cast<size_t>(n), 0);  // 0 white 1 gray 2 black
    std::vector<int32_t> enter_arc(static_cast<size_t>(n), -1);
    bool cancelled = false;
    for (int32_t s = 0; s < n && !cancelled; ++s) {
      if (color[static_cast<size_t>(s)] != 0) continue;
      std::vector<std::pair<int32_t, size_t>> stack{{s, 0}};
      color[static_cast<size_t>(s)] = 1;
      while (!stack.empty() && !cancelled) {
        auto& [v, i] = stack.back();
        const auto& adj = net.adjacent(v);
        bool descended = false;
        for (; i < adj.size(); ++i) {
          int32_t id = adj[i];
          const auto& a = net.arcs()[static_cast<size_t>(id)];
          if (a.from != v || nf[static_cast<size_t>(id)] <= 0) continue;
          if (color[static_cast<size_t>(a.to)] == 1) {
            // cycle: id closes it; walk enter_arc back from v to a.to
            std::vector<int32_t> cyc{id};
            int32_t w = v;
            while (w != a.to) {
              int32_t e = enter_arc[static_cast<size_t>(w)];
              cyc.push_back(e);
              w = net.arcs()[static_cast<size_t>(e)].from;
            }
            int64_t mincyc = INT64_MAX;
            for (int32_t e : cyc) mincyc = std::min(mincyc, nf[static_cast<size_t>(e)]);
            for (int32_t e : cyc) nf[static_cast<size_t>(e)] -= mincyc;
            cancelled = true;
            break;
          }
          if (color[static_cast<size_t>(a.to)] == 0) {
            color[static_cast<size_t>(a.to)] = 1;
            enter_arc[static_cast<size_t>(a.to)] = id;
            ++i;
            stack.emplace_back(a.to, 0);
            descended = true;
            break;
          }
        }
        if (cancelled || descended) continue;
        color[static_cast<size_t>(v)] = 2;
        stack.pop_back();
      }
    }
    if (!cancelled) return;
  }
}

}  // namespace detail

/// Decomposes an integral flow into strength-many unit B->Y paths, returned
/// as sequences of arc ids. Cycles are cancelled first (this never changes
/// strength); extraction peels one unit at a time in deterministic arc order.
inline std::vector<std::vector<int32_t>> decompose_paths(const FlowNetwork& net,
                                                         const IntegralFlow& f) {
  std::vector<int64_t> nf = net_arc_flow(net, f);
  detail::cancel_cycles(net, nf);

  std::vector<std::vector<int32_t>> paths;
  std::vector<size_t> ptr(static_cast<size_t>(net.node_count()), 0);
  for (;;) {
    std::vector<int32_t> arc_path;
    int32_t v = FlowNetwork::kB;
    while (v != FlowNetwork::kY) {
      const auto& adj = net.adjacent(v);
      size_t& i = ptr[static_cast<size_t>(v)];
      while (i < adj.size() && (net.arcs()[static_cast<size_t>(adj[i])].from != v ||
                                nf[static_cast<size_t>(adj[i])] <= 0))
        ++i;
      if (i == adj.size()) break;  // only possible at B once all units are peeled
      arc_path.push_back(adj[i]);
      v = net.arcs()[static_cast<size_t>(adj[i])].to;
    }
    if (v != FlowNetwork::kY) break;
    for (int32_t id : arc_path) --nf[static_cast<size_t>(id)];
    paths.push_back(std::move(arc_path));
  }
  return paths;
}

/// Node sequence (B ... Y) of an arc path.
inline std::vector<int32_t> path_nodes(const FlowNetwork& net,
                                       const std::vector<int32_t>& arc_path) {
  std::vector<int32_t> nodes{FlowNetwork::kB};
  for (int32_t id : arc_path) nodes.push_back(net.arcs()[static_cast<size_t>(id)].to);
  return nodes;
}

/// Text dump in a DIMACS-like format for external cross-checks:
///   p max <nodes> <arc pairs>
///   n 1 s        (node 1 = B)
///   n 2 t        (node 2 = Y)
///   a <u> <v> <cap-forward> <cap-backward>   (1-based)
inline void dump_dimacs(const FlowNetwork& net, std::ostream& out) {
  out << "p max " << net.node_count() << " " << net.arcs().size() / 2 << "\n";
  out << "n 1 s\nn 2 t\n";
  for (size_t id = 0; id < net.arcs().size(); id += 2) {
    const auto& a = net.arcs()[id];
    out << "a " << a.from + 1 << " " << a.to + 1 << " " << a.cap << " "
        << net.arcs()[id + 1].cap << "\n";
  }
}

}  // namespace torusmatch
