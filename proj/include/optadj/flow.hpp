#pragma once

// Node-split flow network over H1 and exact integral max-flow.
//
// Every H1 vertex W becomes W' -> W'' (internal arc, capacity c(W), infinite
// for A and Y).  Every H1 edge {U,W} becomes U'' -> W' and W'' -> U'
// (external arcs, infinite).  Source is Y'', sink is A'.
//
// Costs are scaled to integers by the lcm of their denominators.  Infinite
// capacities are materialized as big_m = 1 + sum of scaled candidate costs,
// which is strictly larger than the capacity of any cut avoiding infinite
// arcs.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "optadj/adjustment.hpp"

namespace optadj {

using NodeId = std::size_t;

class Capacity {
public:
    static Capacity infinite() { return Capacity(0, true); }
    static Capacity finite(std::int64_t v) { return Capacity(v, false); }

    bool is_infinite() const noexcept { return infinite_; }
    /// Meaningful only when finite.
    std::int64_t value() const noexcept { return value_; }

    friend bool operator==(const Capacity&, const Capacity&) = default;
    friend std::ostream& operator<<(std::ostream& os, const Capacity& c) {
        return c.infinite_ ? os << "inf" : os << c.value_;
    }

private:
    Capacity(std::int64_t v, bool inf) : value_(v), infinite_(inf) {}
    std::int64_t value_;
    bool infinite_;
};

enum class Side { prime, double_prime };

struct FlowArc {
    NodeId from;
    NodeId to;
    Capacity capacity;
};

/// Source-side node set of an s-t cut.
struct Cut {
    std::set<NodeId> members;

    bool contains(NodeId v) const { return members.count(v) > 0; }
    friend bool operator==(const Cut&, const Cut&) = default;
};

struct FlowState {
    /// Flow per arc, indexed like FlowNetwork::arcs().
    std::vector<std::int64_t> flow;
    std::int64_t value = 0;
};

class FlowNetwork {
public:
    const std::vector<VertexId>& vertices() const noexcept { return vertices_; }
    std::size_t node_count() const noexcept { return 2 * vertices_.size(); }
    const std::vector<FlowArc>& arcs() const noexcept { return arcs_; }
    NodeId source() const noexcept { return source_; }
    NodeId sink() const noexcept { return sink_; }
    std::int64_t big_m() const noexcept { return big_m_; }
    /// Multiplier applied to caller costs to obtain integer capacities.
    std::int64_t scale() const noexcept { return scale_; }

    NodeId prime(const VertexId& v) const { return 2 * index_of(v); }
    NodeId double_prime(const VertexId& v) const { return 2 * index_of(v) + 1; }
    const VertexId& vertex_of(NodeId n) const { return vertices_.at(n / 2); }
    Side side_of(NodeId n) const { return n % 2 == 0 ? Side::prime : Side::double_prime; }
    std::string node_label(NodeId n) const { return vertex_of(n) + (side_of(n) == Side::prime ? "'" : "''"); }

    /// Capacity handed to the solvers: infinite arcs carry big_m.
    std::int64_t solver_capacity(std::size_t arc) const {
        const Capacity& c = arcs_.at(arc).capacity;
        return c.is_infinite() ? big_m_ : c.value();
    }

    /// Arc indices leaving / entering each node.
    const std::vector<std::size_t>& out_arcs(NodeId n) const { return out_.at(n); }
    const std::vector<std::size_t>& in_arcs(NodeId n) const { return in_.at(n); }

    /// Index of the internal arc W' -> W''.
    std::size_t internal_arc(const VertexId& v) const { return index_of(v); }

private:
    friend FlowNetwork build_network(const EfficiencyGraph& e);

    std::size_t index_of(const VertexId& v) const {
        auto it = index_.find(v);
        if (it == index_.end()) throw GraphError("unknown vertex '" + v + "'");
        return it->second;
    }

    std::vector<VertexId> vertices_;
    std::map<VertexId, std::size_t> index_;
    std::vector<FlowArc> arcs_;
    std::vector<std::vector<std::size_t>> out_;
    std::vector<std::vector<std::size_t>> in_;
    NodeId source_ = 0;
    NodeId sink_ = 0;
    std::int64_t big_m_ = 1;
    std::int64_t scale_ = 1;
};

/// lcm of the candidate cost denominators.
inline std::int64_t cost_scale(const EfficiencyGraph& e) {
    std::int64_t scale = 1;
    for (const auto& [_, c] : e.candidate_costs) {
        std::int64_t g = std::gcd(scale, c.den());
        scale = detail::checked_mul(scale / g, c.den());
    }
    return scale;
}

inline std::int64_t scaled_cost(const Rational& c, std::int64_t scale) {
    return detail::checked_mul(c.num(), scale / c.den());
}

inline std::int64_t big_m(const EfficiencyGraph& e) {
    std::int64_t scale = cost_scale(e);
    std::int64_t total = 1;
    for (const auto& [_, c] : e.candidate_costs) total = detail::checked_add(total, scaled_cost(c, scale));
    return total;
}

inline FlowNetwork build_network(const EfficiencyGraph& e) {
    FlowNetwork n;
    for (const auto& v : e.h1.vertices()) {
        n.index_.emplace(v, n.vertices_.size());
        n.vertices_.push_back(v);
    }
    n.scale_ = cost_scale(e);
    n.big_m_ = big_m(e);
    n.source_ = n.double_prime(e.outcome);
    n.sink_ = n.prime(e.treatment);

    n.arcs_.reserve(n.vertices_.size() + 2 * e.h1.edge_count());
    for (const auto& v : n.vertices_) {
        auto it = e.candidate_costs.find(v);
        Capacity cap = it == e.candidate_costs.end() ? Capacity::infinite()
                                                     : Capacity::finite(scaled_cost(it->second, n.scale_));
        n.arcs_.push_back({n.prime(v), n.double_prime(v), cap});
    }
    for (const auto& [u, w] : e.h1.edges()) {
        n.arcs_.push_back({n.double_prime(u), n.prime(w), Capacity::infinite()});
        n.arcs_.push_back({n.double_prime(w), n.prime(u), Capacity::infinite()});
    }

    // Max-flow is bounded by the out-capacity of the source.
    std::int64_t bound;
    if (__builtin_mul_overflow(n.big_m_, static_cast<std::int64_t>(n.arcs_.size() + 1), &bound))
        throw FlowError("capacities too large for 64-bit flow arithmetic");

    n.out_.assign(n.node_count(), {});
    n.in_.assign(n.node_count(), {});
    for (std::size_t i = 0; i < n.arcs_.size(); ++i) {
        n.out_[n.arcs_[i].from].push_back(i);
        n.in_[n.arcs_[i].to].push_back(i);
    }
    return n;
}

enum class Solver {
    /// Highest-label preflow-push with gap and global relabelling (default).
    push_relabel,
    /// Edmonds-Karp; reference implementation for differential tests.
    shortest_augmenting_path,
};

namespace detail {

// Residual graph with paired edges: edge 2i is arc i forward, 2i+1 its reverse.
struct Residual {
    explicit Residual(const FlowNetwork& n) : nodes(static_cast<int>(n.node_count())) {
        const auto& arcs = n.arcs();
        head.resize(2 * arcs.size());
        cap.resize(2 * arcs.size());
        std::vector<int> degree(nodes + 1, 0);
        for (std::size_t i = 0; i < arcs.size(); ++i) {
            head[2 * i] = static_cast<int>(arcs[i].to);
            head[2 * i + 1] = static_cast<int>(arcs[i].from);
            cap[2 * i] = n.solver_capacity(i);
            cap[2 * i + 1] = 0;
            ++degree[arcs[i].from + 1];
            ++degree[arcs[i].to + 1];
        }
        std::partial_sum(degree.begin(), degree.end(), degree.begin());
        first = degree;
        adj.resize(2 * arcs.size());
        std::vector<int> fill(first.begin(), first.end() - 1);
        for (std::size_t i = 0; i < arcs.size(); ++i) {
            adj[fill[arcs[i].from]++] = static_cast<int>(2 * i);
            adj[fill[arcs[i].to]++] = static_cast<int>(2 * i + 1);
        }
    }

    FlowState state() const {
        FlowState f;
        f.flow.resize(head.size() / 2);
        for (std::size_t i = 0; i < f.flow.size(); ++i) f.flow[i] = cap[2 * i + 1];
        return f;
    }

    int nodes;
    std::vector<int> head;
    std::vector<std::int64_t> cap;
    std::vector<int> first;  // CSR offsets into adj
    std::vector<int> adj;    // residual edge ids grouped by tail
};

class HighestLabel {
public:
    HighestLabel(const FlowNetwork& n)
        : r_(n),
          n_(r_.nodes),
          s_(static_cast<int>(n.source())),
          t_(static_cast<int>(n.sink())),
          excess_(n_, 0),
          label_(n_, 0),
          current_(n_, 0),
          active_(2 * n_ + 1),
          list_head_(n_, -1),
          list_next_(n_, -1),
          list_prev_(n_, -1) {}

    FlowState run() {
        for (int i = r_.first[s_]; i < r_.first[s_ + 1]; ++i) {
            int e = r_.adj[i];
            std::int64_t c = r_.cap[e];
            if (c == 0) continue;
            r_.cap[e] = 0;
            r_.cap[e ^ 1] += c;
            excess_[r_.head[e]] += c;
        }
        global_relabel();

        while (highest_ >= 0) {
            if (active_[highest_].empty()) {
                --highest_;
                continue;
            }
            int u = active_[highest_].back();
            active_[highest_].pop_back();
            // Stale entries: label moved since the node was queued.
            if (label_[u] != highest_ || excess_[u] == 0) continue;
            discharge(u);
        }

        FlowState f = r_.state();
        f.value = excess_[t_];
        return f;
    }

private:
    void activate(int v) {
        if (v == s_ || v == t_ || label_[v] >= 2 * n_) return;
        active_[label_[v]].push_back(v);
        highest_ = std::max(highest_, label_[v]);
    }

    void list_insert(int v) {
        int l = label_[v];
        if (l >= n_) return;
        list_prev_[v] = -1;
        list_next_[v] = list_head_[l];
        if (list_head_[l] >= 0) list_prev_[list_head_[l]] = v;
        list_head_[l] = v;
        list_max_ = std::max(list_max_, l);
    }

    void list_erase(int v) {
        int l = label_[v];
        if (l >= n_) return;
        if (list_prev_[v] >= 0)
            list_next_[list_prev_[v]] = list_next_[v];
        else
            list_head_[l] = list_next_[v];
        if (list_next_[v] >= 0) list_prev_[list_next_[v]] = list_prev_[v];
    }

    void discharge(int u) {
        while (excess_[u] > 0) {
            if (current_[u] == r_.first[u + 1]) {
                relabel(u);
                if (relabels_since_global_ >= n_) {
                    global_relabel();
                    return;
                }
                if (label_[u] >= 2 * n_) return;
                continue;
            }
            int e = r_.adj[current_[u]];
            int v = r_.head[e];
            if (r_.cap[e] > 0 && label_[u] == label_[v] + 1) {
                std::int64_t delta = std::min(excess_[u], r_.cap[e]);
                r_.cap[e] -= delta;
                r_.cap[e ^ 1] += delta;
                bool was_idle = excess_[v] == 0;
                excess_[u] -= delta;
                excess_[v] += delta;
                if (was_idle) activate(v);
            } else {
                ++current_[u];
            }
        }
    }

    void relabel(int u) {
        ++relabels_since_global_;
        int old = label_[u];
        int fresh = 2 * n_;
        for (int i = r_.first[u]; i < r_.first[u + 1]; ++i) {
            int e = r_.adj[i];
            if (r_.cap[e] > 0) fresh = std::min(fresh, label_[r_.head[e]] + 1);
        }
        list_erase(u);
        label_[u] = fresh;
        current_[u] = r_.first[u];
        list_insert(u);
        if (old < n_ && list_head_[old] < 0) gap(old);
    }

    // No node is left at label `hole`, so nodes above it (and below n) can no
    // longer reach the sink.
    void gap(int hole) {
        for (int l = hole + 1; l <= list_max_; ++l) {
            for (int v = list_head_[l]; v >= 0;) {
                int next = list_next_[v];
                label_[v] = n_ + 1;
                current_[v] = r_.first[v];
                if (excess_[v] > 0) activate(v);
                v = next;
            }
            list_head_[l] = -1;
        }
        list_max_ = hole - 1;
    }

    void global_relabel() {
        relabels_since_global_ = 0;
        const int unreached = 2 * n_;
        std::fill(label_.begin(), label_.end(), unreached);
        std::deque<int> queue;
        auto sweep = [&](int root, int base) {
            label_[root] = base;
            queue.push_back(root);
            while (!queue.empty()) {
                int w = queue.front();
                queue.pop_front();
                for (int i = r_.first[w]; i < r_.first[w + 1]; ++i) {
                    int e = r_.adj[i];
                    int x = r_.head[e];
                    if (label_[x] == unreached && x != s_ && r_.cap[e ^ 1] > 0) {
                        label_[x] = label_[w] + 1;
                        queue.push_back(x);
                    }
                }
            }
        };
        sweep(t_, 0);
        sweep(s_, n_);

        std::fill(list_head_.begin(), list_head_.end(), -1);
        list_max_ = -1;
        for (auto& bucket : active_) bucket.clear();
        highest_ = -1;
        for (int v = 0; v < n_; ++v) {
            current_[v] = r_.first[v];
            list_insert(v);
            if (excess_[v] > 0) activate(v);
        }
    }

    Residual r_;
    int n_;
    int s_;
    int t_;
    std::vector<std::int64_t> excess_;
    std::vector<int> label_;
    std::vector<int> current_;
    std::vector<std::vector<int>> active_;
    int highest_ = -1;
    std::vector<int> list_head_;
    std::vector<int> list_next_;
    std::vector<int> list_prev_;
    int list_max_ = -1;
    int relabels_since_global_ = 0;
};

inline FlowState edmonds_karp(const FlowNetwork& n) {
    Residual r(n);
    const int s = static_cast<int>(n.source());
    const int t = static_cast<int>(n.sink());
    std::int64_t total = 0;
    std::vector<int> via(r.nodes);
    for (;;) {
        std::fill(via.begin(), via.end(), -1);
        std::deque<int> queue{s};
        via[s] = -2;
        while (!queue.empty() && via[t] == -1) {
            int u = queue.front();
            queue.pop_front();
            for (int i = r.first[u]; i < r.first[u + 1]; ++i) {
                int e = r.adj[i];
                int v = r.head[e];
                if (r.cap[e] > 0 && via[v] == -1) {
                    via[v] = e;
                    queue.push_back(v);
                }
            }
        }
        if (via[t] == -1) break;
        std::int64_t delta = std::numeric_limits<std::int64_t>::max();
        for (int v = t; v != s; v = r.head[via[v] ^ 1]) delta = std::min(delta, r.cap[via[v]]);
        for (int v = t; v != s; v = r.head[via[v] ^ 1]) {
            r.cap[via[v]] -= delta;
            r.cap[via[v] ^ 1] += delta;
        }
        total += delta;
    }
    FlowState f = r.state();
    f.value = total;
    return f;
}

}  // namespace detail

/// Maximum flow with infinite arcs materialized as big_m.
inline FlowState max_flow(const FlowNetwork& n, Solver solver = Solver::push_relabel) {
    if (n.source() == n.sink()) throw FlowError("source and sink coincide");
    switch (solver) {
        case Solver::shortest_augmenting_path:
            return detail::edmonds_karp(n);
        case Solver::push_relabel:
        default:
            return detail::HighestLabel(n).run();
    }
}

/// Capacity bounds and conservation at every node other than source and sink.
inline bool is_feasible(const FlowNetwork& n, const FlowState& f) {
    if (f.flow.size() != n.arcs().size()) return false;
    std::vector<std::int64_t> balance(n.node_count(), 0);
    for (std::size_t i = 0; i < f.flow.size(); ++i) {
        if (f.flow[i] < 0 || f.flow[i] > n.solver_capacity(i)) return false;
        balance[n.arcs()[i].from] -= f.flow[i];
        balance[n.arcs()[i].to] += f.flow[i];
    }
    for (NodeId v = 0; v < n.node_count(); ++v)
        if (v != n.source() && v != n.sink() && balance[v] != 0) return false;
    return balance[n.sink()] == f.value;
}

/// Source plus every node reachable along augmenting paths: forward arcs
/// with f < k, backward arcs with f > 0.  Throws FlowError if the sink is
/// reachable, i.e. f is not maximum.
inline Cut residual_reachable(const FlowNetwork& n, const FlowState& f) {
    if (f.flow.size() != n.arcs().size()) throw FlowError("flow does not match network");
    std::vector<bool> seen(n.node_count(), false);
    std::vector<NodeId> stack{n.source()};
    seen[n.source()] = true;
    while (!stack.empty()) {
        NodeId u = stack.back();
        stack.pop_back();
        for (std::size_t a : n.out_arcs(u)) {
            NodeId v = n.arcs()[a].to;
            if (!seen[v] && f.flow[a] < n.solver_capacity(a)) {
                seen[v] = true;
                stack.push_back(v);
            }
        }
        for (std::size_t a : n.in_arcs(u)) {
            NodeId v = n.arcs()[a].from;
            if (!seen[v] && f.flow[a] > 0) {
                seen[v] = true;
                stack.push_back(v);
            }
        }
    }
    if (seen[n.sink()]) throw FlowError("sink reachable by an augmenting path: flow is not maximum");
    Cut cut;
    for (NodeId v = 0; v < n.node_count(); ++v)
        if (seen[v]) cut.members.insert(cut.members.end(), v);
    return cut;
}

/// Arcs leaving the cut.
inline std::vector<std::size_t> crossing_arcs(const FlowNetwork& n, const Cut& s) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n.arcs().size(); ++i)
        if (s.contains(n.arcs()[i].from) && !s.contains(n.arcs()[i].to)) out.push_back(i);
    return out;
}

/// Sum of capacities leaving s; infinite if any crossing arc is.
inline Capacity cut_capacity(const FlowNetwork& n, const Cut& s) {
    if (!s.contains(n.source()) || s.contains(n.sink()))
        throw FlowError("not a cut: must contain the source and exclude the sink");
    std::int64_t total = 0;
    for (std::size_t a : crossing_arcs(n, s)) {
        const Capacity& c = n.arcs()[a].capacity;
        if (c.is_infinite()) return Capacity::infinite();
        total = detail::checked_add(total, c.value());
    }
    return Capacity::finite(total);
}

/// Graphviz rendering. Finite arcs are labelled with the caller-unit cost.
inline std::string to_dot(const FlowNetwork& n) {
    std::ostringstream os;
    auto quote = [](const std::string& s) {
        std::string out = "\"";
        for (char c : s) {
            if (c == '"' || c == '\\') out += '\\';
            out += c;
        }
        return out + "\"";
    };
    os << "digraph D {\n";
    os << "  " << quote(n.node_label(n.source())) << " [shape=doublecircle, xlabel=\"source\"];\n";
    os << "  " << quote(n.node_label(n.sink())) << " [shape=doublecircle, xlabel=\"sink\"];\n";
    for (const auto& arc : n.arcs()) {
        os << "  " << quote(n.node_label(arc.from)) << " -> " << quote(n.node_label(arc.to));
        if (arc.capacity.is_infinite())
            os << " [label=\"inf\"];\n";
        else
            os << " [label=\"" << Rational(arc.capacity.value(), n.scale()).to_string() << "\", color=green];\n";
    }
    os << "}\n";
    return os.str();
}

}  // namespace optadj
