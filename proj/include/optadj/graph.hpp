#pragma once

// Directed and undirected graphs over string labels, plus the closure and
// separation primitives used by the adjustment pipeline.
//
// Adjacency is kept in ordered containers so every traversal visits
// neighbours in sorted label order and results are reproducible.

#include <algorithm>
#include <deque>
#include <iterator>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "optadj/error.hpp"

namespace optadj {

using VertexId = std::string;
using VertexSet = std::set<VertexId>;

inline VertexSet set_union(const VertexSet& a, const VertexSet& b) {
    VertexSet out = a;
    out.insert(b.begin(), b.end());
    return out;
}

inline VertexSet set_intersection(const VertexSet& a, const VertexSet& b) {
    VertexSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
    return out;
}

inline VertexSet set_difference(const VertexSet& a, const VertexSet& b) {
    VertexSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
    return out;
}

inline bool is_subset(const VertexSet& a, const VertexSet& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

class DirectedGraph {
public:
    DirectedGraph() = default;

    void add_vertex(const VertexId& v) {
        if (v.empty()) throw GraphError("vertex label must be non-empty");
        children_.try_emplace(v);
        parents_.try_emplace(v);
    }

    /// Adds u -> w, declaring both endpoints. Duplicate edges are no-ops.
    void add_edge(const VertexId& u, const VertexId& w) {
        if (u == w) throw GraphError("self-loop on '" + u + "'");
        add_vertex(u);
        add_vertex(w);
        if (children_[u].insert(w).second) ++edge_count_;
        parents_[w].insert(u);
    }

    void remove_edge(const VertexId& u, const VertexId& w) {
        auto it = children_.find(u);
        if (it != children_.end() && it->second.erase(w) > 0) {
            parents_[w].erase(u);
            --edge_count_;
        }
    }

    bool contains(const VertexId& v) const { return children_.count(v) > 0; }
    bool has_edge(const VertexId& u, const VertexId& w) const {
        auto it = children_.find(u);
        return it != children_.end() && it->second.count(w) > 0;
    }

    const VertexSet& children(const VertexId& v) const { return lookup(children_, v); }
    const VertexSet& parents(const VertexId& v) const { return lookup(parents_, v); }

    VertexSet vertices() const {
        VertexSet out;
        for (const auto& [v, _] : children_) out.insert(out.end(), v);
        return out;
    }
    std::size_t vertex_count() const { return children_.size(); }
    std::size_t edge_count() const { return edge_count_; }

    /// All edges as (tail, head), sorted.
    std::vector<std::pair<VertexId, VertexId>> edges() const {
        std::vector<std::pair<VertexId, VertexId>> out;
        out.reserve(edge_count_);
        for (const auto& [u, ch] : children_)
            for (const auto& w : ch) out.emplace_back(u, w);
        return out;
    }

    void require(const VertexId& v) const {
        if (!contains(v)) throw GraphError("unknown vertex '" + v + "'");
    }
    void require(const VertexSet& s) const {
        for (const auto& v : s) require(v);
    }

    friend bool operator==(const DirectedGraph& a, const DirectedGraph& b) {
        return a.children_ == b.children_;
    }

private:
    static const VertexSet& lookup(const std::map<VertexId, VertexSet>& m, const VertexId& v) {
        auto it = m.find(v);
        if (it == m.end()) throw GraphError("unknown vertex '" + v + "'");
        return it->second;
    }

    std::map<VertexId, VertexSet> children_;
    std::map<VertexId, VertexSet> parents_;
    std::size_t edge_count_ = 0;
};

class UndirectedGraph {
public:
    UndirectedGraph() = default;

    void add_vertex(const VertexId& v) {
        if (v.empty()) throw GraphError("vertex label must be non-empty");
        adj_.try_emplace(v);
    }

    void add_edge(const VertexId& u, const VertexId& w) {
        if (u == w) throw GraphError("self-loop on '" + u + "'");
        add_vertex(u);
        add_vertex(w);
        if (adj_[u].insert(w).second) ++edge_count_;
        adj_[w].insert(u);
    }

    bool contains(const VertexId& v) const { return adj_.count(v) > 0; }
    bool has_edge(const VertexId& u, const VertexId& w) const {
        auto it = adj_.find(u);
        return it != adj_.end() && it->second.count(w) > 0;
    }

    const VertexSet& neighbors(const VertexId& v) const {
        auto it = adj_.find(v);
        if (it == adj_.end()) throw GraphError("unknown vertex '" + v + "'");
        return it->second;
    }

    VertexSet vertices() const {
        VertexSet out;
        for (const auto& [v, _] : adj_) out.insert(out.end(), v);
        return out;
    }
    std::size_t vertex_count() const { return adj_.size(); }
    std::size_t edge_count() const { return edge_count_; }

    /// Each edge once as (smaller label, larger label), sorted.
    std::vector<std::pair<VertexId, VertexId>> edges() const {
        std::vector<std::pair<VertexId, VertexId>> out;
        out.reserve(edge_count_);
        for (const auto& [u, nb] : adj_)
            for (auto it = nb.upper_bound(u); it != nb.end(); ++it) out.emplace_back(u, *it);
        return out;
    }

    void require(const VertexId& v) const {
        if (!contains(v)) throw GraphError("unknown vertex '" + v + "'");
    }
    void require(const VertexSet& s) const {
        for (const auto& v : s) require(v);
    }

    friend bool operator==(const UndirectedGraph& a, const UndirectedGraph& b) { return a.adj_ == b.adj_; }

private:
    std::map<VertexId, VertexSet> adj_;
    std::size_t edge_count_ = 0;
};

/// Kahn's algorithm; true iff every vertex can be peeled off.
inline bool is_acyclic(const DirectedGraph& g) {
    std::map<VertexId, std::size_t> indegree;
    std::deque<VertexId> ready;
    for (const auto& v : g.vertices()) {
        indegree[v] = g.parents(v).size();
        if (indegree[v] == 0) ready.push_back(v);
    }
    std::size_t removed = 0;
    while (!ready.empty()) {
        VertexId v = std::move(ready.front());
        ready.pop_front();
        ++removed;
        for (const auto& c : g.children(v))
            if (--indegree[c] == 0) ready.push_back(c);
    }
    return removed == g.vertex_count();
}

namespace detail {

template <typename Next>
VertexSet closure(const VertexSet& start, Next&& next) {
    VertexSet seen = start;
    std::vector<VertexId> stack(start.begin(), start.end());
    while (!stack.empty()) {
        VertexId v = std::move(stack.back());
        stack.pop_back();
        for (const auto& w : next(v))
            if (seen.insert(w).second) stack.push_back(w);
    }
    return seen;
}

}  // namespace detail

/// Every vertex with a directed path into some member of s, s included.
inline VertexSet ancestors(const DirectedGraph& g, const VertexSet& s) {
    g.require(s);
    return detail::closure(s, [&](const VertexId& v) -> const VertexSet& { return g.parents(v); });
}

/// Every vertex reachable by a directed path from some member of s, s included.
inline VertexSet descendants(const DirectedGraph& g, const VertexSet& s) {
    g.require(s);
    return detail::closure(s, [&](const VertexId& v) -> const VertexSet& { return g.children(v); });
}

inline DirectedGraph induced_subgraph(const DirectedGraph& g, const VertexSet& keep) {
    g.require(keep);
    DirectedGraph out;
    for (const auto& v : keep) out.add_vertex(v);
    for (const auto& v : keep)
        for (const auto& c : g.children(v))
            if (keep.count(c)) out.add_edge(v, c);
    return out;
}

/// Shortest path (BFS, sorted neighbour order) from any vertex of `from` to
/// any vertex of `to` that never enters `blocked`. Empty optional when none.
inline std::optional<std::vector<VertexId>> find_path(const UndirectedGraph& h, const VertexSet& from,
                                                      const VertexSet& to, const VertexSet& blocked) {
    std::map<VertexId, VertexId> parent;
    std::deque<VertexId> queue;
    for (const auto& v : from) {
        if (blocked.count(v)) continue;
        parent.emplace(v, v);
        queue.push_back(v);
    }
    while (!queue.empty()) {
        VertexId v = std::move(queue.front());
        queue.pop_front();
        if (to.count(v)) {
            std::vector<VertexId> path{v};
            while (parent.at(path.back()) != path.back()) path.push_back(parent.at(path.back()));
            std::reverse(path.begin(), path.end());
            return path;
        }
        for (const auto& w : h.neighbors(v)) {
            if (blocked.count(w) || parent.count(w)) continue;
            parent.emplace(w, v);
            queue.push_back(w);
        }
    }
    return std::nullopt;
}

/// Set-to-set separation: every path between `from` and `to` meets `given`.
/// The three sets must be pairwise disjoint.
inline bool separated(const UndirectedGraph& h, const VertexSet& from, const VertexSet& to,
                      const VertexSet& given) {
    h.require(from);
    h.require(to);
    h.require(given);
    if (!set_intersection(from, given).empty() || !set_intersection(to, given).empty())
        throw GraphError("conditioning set must be disjoint from the separated sets");
    if (!set_intersection(from, to).empty()) return false;
    return !find_path(h, from, to, given).has_value();
}

/// True iff removing z from h disconnects a from y.
inline bool is_separator(const UndirectedGraph& h, const VertexId& a, const VertexId& y, const VertexSet& z) {
    h.require(a);
    h.require(y);
    h.require(z);
    if (a == y) throw GraphError("separator endpoints must differ");
    if (z.count(a) || z.count(y)) throw GraphError("separator may not contain '" + (z.count(a) ? a : y) + "'");
    return !find_path(h, {a}, {y}, z).has_value();
}

/// Separator such that no single vertex can be dropped. Single deletions are
/// enough because separation is monotone in z.
inline bool is_minimal_separator(const UndirectedGraph& h, const VertexId& a, const VertexId& y,
                                 const VertexSet& z) {
    if (!is_separator(h, a, y, z)) return false;
    for (const auto& w : z) {
        VertexSet smaller = z;
        smaller.erase(w);
        if (is_separator(h, a, y, smaller)) return false;
    }
    return true;
}

}  // namespace optadj
