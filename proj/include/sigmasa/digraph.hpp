#pragma once

#include <algorithm>
#include <limits>
#include <optional>
#include <queue>
#include <set>
#include <vector>

#include "sigmasa/errors.hpp"

namespace sigmasa {

/// Digraph without self-edges and with at most one edge per ordered pair.
class Digraph {
public:
    explicit Digraph(int n) : adj_(n) {
        if (n <= 0) throw std::invalid_argument("Digraph: need at least one vertex");
    }

    Digraph(int n, const std::vector<std::pair<int, int>>& edges) : Digraph(n) {
        for (const auto& [u, v] : edges) add_edge(u, v);
    }

    void add_edge(int u, int v) {
        if (u < 0 || u >= vertex_count() || v < 0 || v >= vertex_count())
            throw std::invalid_argument("Digraph: vertex out of range");
        if (u == v) throw std::invalid_argument("Digraph: self-edges are not allowed");
        adj_[u].insert(v);
    }

    int vertex_count() const { return static_cast<int>(adj_.size()); }
    const std::set<int>& out(int u) const { return adj_[u]; }
    bool has_edge(int u, int v) const { return adj_[u].count(v) != 0; }

    std::vector<std::pair<int, int>> edges() const {
        std::vector<std::pair<int, int>> e;
        for (int u = 0; u < vertex_count(); ++u)
            for (int v : adj_[u]) e.emplace_back(u, v);
        return e;
    }

    int edge_count() const {
        int m = 0;
        for (const auto& s : adj_) m += static_cast<int>(s.size());
        return m;
    }

    bool operator==(const Digraph& o) const { return adj_ == o.adj_; }

private:
    std::vector<std::set<int>> adj_;
};

struct SccResult {
    std::vector<int> component_of;            ///< vertex -> component id
    std::vector<std::vector<int>> components; ///< sorted members, topological order
    Digraph condensation = Digraph(1);
};

/// Strong components with the condensation. Components are numbered in a
/// deterministic topological order of the condensation: Kahn's algorithm,
/// always taking the ready component whose smallest vertex key is least.
/// vertex_key defaults to the vertex index.
inline SccResult strong_components(const Digraph& g, std::vector<int> vertex_key = {}) {
    const int n = g.vertex_count();
    if (vertex_key.empty()) {
        vertex_key.resize(n);
        for (int v = 0; v < n; ++v) vertex_key[v] = v;
    }

    // Iterative Tarjan.
    std::vector<int> index(n, -1), low(n, 0), raw_comp(n, -1);
    std::vector<char> on_stack(n, 0);
    std::vector<int> stack;
    int next_index = 0, comp_count = 0;
    struct Frame {
        int v;
        std::set<int>::const_iterator it;
    };
    std::vector<Frame> frames;
    for (int root = 0; root < n; ++root) {
        if (index[root] != -1) continue;
        frames.push_back({root, g.out(root).begin()});
        index[root] = low[root] = next_index++;
        stack.push_back(root);
        on_stack[root] = 1;
        while (!frames.empty()) {
            Frame& f = frames.back();
            if (f.it != g.out(f.v).end()) {
                int w = *f.it;
                ++f.it;
                if (index[w] == -1) {
                    index[w] = low[w] = next_index++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    frames.push_back({w, g.out(w).begin()});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], index[w]);
                }
            } else {
                int v = f.v;
                frames.pop_back();
                if (!frames.empty()) low[frames.back().v] = std::min(low[frames.back().v], low[v]);
                if (low[v] == index[v]) {
                    while (true) {
                        int w = stack.back();
                        stack.pop_back();
                        on_stack[w] = 0;
                        raw_comp[w] = comp_count;
                        if (w == v) break;
                    }
                    ++comp_count;
                }
            }
        }
    }

    // Condensation over raw component ids.
    std::vector<std::set<int>> cond_out(comp_count);
    std::vector<int> indeg(comp_count, 0);
    for (int u = 0; u < n; ++u)
        for (int v : g.out(u))
            if (raw_comp[u] != raw_comp[v] && cond_out[raw_comp[u]].insert(raw_comp[v]).second)
                ++indeg[raw_comp[v]];

    std::vector<int> comp_key(comp_count, std::numeric_limits<int>::max());
    for (int v = 0; v < n; ++v)
        comp_key[raw_comp[v]] = std::min(comp_key[raw_comp[v]], vertex_key[v]);

    // Kahn with a min-heap on (key, raw id) -> new ids in deterministic order.
    using Item = std::pair<int, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> ready;
    for (int c = 0; c < comp_count; ++c)
        if (indeg[c] == 0) ready.push({comp_key[c], c});
    std::vector<int> new_id(comp_count, -1);
    int next_id = 0;
    while (!ready.empty()) {
        auto [key, c] = ready.top();
        ready.pop();
        new_id[c] = next_id++;
        for (int d : cond_out[c])
            if (--indeg[d] == 0) ready.push({comp_key[d], d});
    }

    SccResult res;
    res.component_of.assign(n, -1);
    res.components.assign(comp_count, {});
    for (int v = 0; v < n; ++v) {
        res.component_of[v] = new_id[raw_comp[v]];
        res.components[res.component_of[v]].push_back(v);
    }
    res.condensation = Digraph(comp_count);
    for (int c = 0; c < comp_count; ++c)
        for (int d : cond_out[c]) res.condensation.add_edge(new_id[c], new_id[d]);
    return res;
}

/// Total map from the vertices of a digraph onto 0..target_size-1.
struct QuotientMap {
    std::vector<int> image;
    int target_size = 0;
};

/// G/phi: edge phi(u) -> phi(v) for each edge u -> v with phi(u) != phi(v).
inline Digraph quotient_graph(const Digraph& g, const QuotientMap& phi) {
    if (static_cast<int>(phi.image.size()) != g.vertex_count())
        throw std::invalid_argument("quotient_graph: map does not cover the vertex set");
    if (phi.target_size <= 0) throw std::invalid_argument("quotient_graph: empty target");
    std::vector<char> hit(phi.target_size, 0);
    for (int w : phi.image) {
        if (w < 0 || w >= phi.target_size)
            throw std::invalid_argument("quotient_graph: image out of range");
        hit[w] = 1;
    }
    for (int w = 0; w < phi.target_size; ++w)
        if (!hit[w])
            throw NotSurjective("quotient_graph: target vertex " + std::to_string(w) +
                                " has empty preimage");
    Digraph q(phi.target_size);
    for (int u = 0; u < g.vertex_count(); ++u)
        for (int v : g.out(u))
            if (phi.image[u] != phi.image[v]) q.add_edge(phi.image[u], phi.image[v]);
    return q;
}

/// Topological order with the same min-key tie-break as strong_components;
/// nullopt when the graph has a cycle.
inline std::optional<std::vector<int>> topological_order(const Digraph& g,
                                                         std::vector<int> vertex_key = {}) {
    const int n = g.vertex_count();
    if (vertex_key.empty()) {
        vertex_key.resize(n);
        for (int v = 0; v < n; ++v) vertex_key[v] = v;
    }
    std::vector<int> indeg(n, 0);
    for (int u = 0; u < n; ++u)
        for (int v : g.out(u)) ++indeg[v];
    using Item = std::pair<int, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> ready;
    for (int v = 0; v < n; ++v)
        if (indeg[v] == 0) ready.push({vertex_key[v], v});
    std::vector<int> order;
    order.reserve(n);
    while (!ready.empty()) {
        auto [key, v] = ready.top();
        ready.pop();
        order.push_back(v);
        for (int w : g.out(v))
            if (--indeg[w] == 0) ready.push({vertex_key[w], w});
    }
    if (static_cast<int>(order.size()) != n) return std::nullopt;
    return order;
}

} // namespace sigmasa
