#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "relroots/error.hpp"

namespace relroots
{

using Vertex = int;
using Multiplicity = std::int64_t;

/// A bundle of `mult` parallel edges between `u` and `v` (u < v once normalized).
struct Edge
{
    Vertex u = 0;
    Vertex v = 0;
    Multiplicity mult = 1;

    friend bool operator==(const Edge&, const Edge&) = default;
};

/// Loopless undirected multigraph on vertices 0..n-1. Parallel edges are stored
/// as a multiplicity on a single entry per vertex pair, sorted by (u, v).
class Multigraph
{
  public:
    Multigraph() = default;

    Multigraph(int n, const std::vector<Edge>& edges) : n_(n)
    {
        if (n < 0)
            throw InputError("vertex count must be nonnegative");
        std::map<std::pair<Vertex, Vertex>, Multiplicity> merged;
        for (const auto& e : edges)
        {
            if (e.u == e.v)
                throw InputError("loop edge at vertex " + std::to_string(e.u));
            if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n)
                throw InputError("vertex id out of range in edge (" + std::to_string(e.u) + ", " +
                                 std::to_string(e.v) + ")");
            if (e.mult < 1)
                throw InputError("edge multiplicity must be at least 1");
            merged[std::minmax(e.u, e.v)] += e.mult;
        }
        edges_.reserve(merged.size());
        for (const auto& [key, mult] : merged)
        {
            edges_.push_back({key.first, key.second, mult});
            m_ += mult;
        }
    }

    int vertex_count() const noexcept { return n_; }
    Multiplicity edge_count() const noexcept { return m_; }
    std::size_t pair_count() const noexcept { return edges_.size(); }
    const std::vector<Edge>& edges() const noexcept { return edges_; }

    Multiplicity multiplicity(Vertex u, Vertex v) const
    {
        auto [a, b] = std::minmax(u, v);
        auto it = std::lower_bound(edges_.begin(), edges_.end(), std::pair{a, b},
                                   [](const Edge& e, const std::pair<Vertex, Vertex>& key) {
                                       return std::pair{e.u, e.v} < key;
                                   });
        return (it != edges_.end() && it->u == a && it->v == b) ? it->mult : 0;
    }

    std::vector<Multiplicity> degrees() const
    {
        std::vector<Multiplicity> deg(n_, 0);
        for (const auto& e : edges_)
        {
            deg[e.u] += e.mult;
            deg[e.v] += e.mult;
        }
        return deg;
    }

    bool is_simple() const
    {
        return std::all_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.mult == 1; });
    }

    /// True if no edge bundle incident to `w` has multiplicity above one.
    bool has_no_multiple_edges_at(Vertex w) const
    {
        return std::none_of(edges_.begin(), edges_.end(),
                            [w](const Edge& e) { return (e.u == w || e.v == w) && e.mult > 1; });
    }

    /// Neighbour lists of the underlying simple graph, with the bundle multiplicity.
    std::vector<std::vector<std::pair<Vertex, Multiplicity>>> adjacency() const
    {
        std::vector<std::vector<std::pair<Vertex, Multiplicity>>> adj(n_);
        for (const auto& e : edges_)
        {
            adj[e.u].push_back({e.v, e.mult});
            adj[e.v].push_back({e.u, e.mult});
        }
        return adj;
    }

    friend bool operator==(const Multigraph&, const Multigraph&) = default;

  private:
    int n_ = 0;
    Multiplicity m_ = 0;
    std::vector<Edge> edges_;
};

namespace detail
{

class DisjointSets
{
  public:
    explicit DisjointSets(int n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

    int find(int x)
    {
        while (parent_[x] != x)
        {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    bool unite(int a, int b)
    {
        a = find(a);
        b = find(b);
        if (a == b)
            return false;
        parent_[a] = b;
        return true;
    }

  private:
    std::vector<int> parent_;
};

inline void require_nonempty(const Multigraph& g)
{
    if (g.vertex_count() == 0)
        throw InputError("graph has no vertices");
}

} // namespace detail

inline bool is_connected(const Multigraph& g)
{
    detail::require_nonempty(g);
    detail::DisjointSets sets(g.vertex_count());
    int components = g.vertex_count();
    for (const auto& e : g.edges())
        if (sets.unite(e.u, e.v))
            --components;
    return components == 1;
}

inline void require_connected(const Multigraph& g, const char* what)
{
    if (!is_connected(g))
        throw InputError(std::string(what) + ": graph is disconnected");
}

/// A biconnected component with its vertex labels mapped back to the parent graph.
struct Block
{
    Multigraph graph;
    std::vector<Vertex> to_original;
};

/// Biconnected components. A bridge bundle of multiplicity k is a 2-vertex block with mult k.
inline std::vector<Block> blocks(const Multigraph& g)
{
    require_connected(g, "blocks");
    const int n = g.vertex_count();
    const auto& edges = g.edges();
    std::vector<std::vector<std::pair<Vertex, std::size_t>>> adj(n);
    for (std::size_t i = 0; i < edges.size(); ++i)
    {
        adj[edges[i].u].push_back({edges[i].v, i});
        adj[edges[i].v].push_back({edges[i].u, i});
    }

    // Iterative Hopcroft-Tarjan over the underlying simple graph.
    std::vector<int> disc(n, -1), low(n, 0);
    std::vector<std::size_t> edge_stack;
    std::vector<std::vector<std::size_t>> groups;
    struct Frame
    {
        Vertex v;
        std::size_t parent_edge;
        std::size_t next;
    };
    const auto none = std::numeric_limits<std::size_t>::max();
    int timer = 0;
    std::vector<Frame> stack{{0, none, 0}};
    disc[0] = low[0] = timer++;
    while (!stack.empty())
    {
        Frame& f = stack.back();
        if (f.next < adj[f.v].size())
        {
            auto [w, ei] = adj[f.v][f.next++];
            if (ei == f.parent_edge)
                continue;
            if (disc[w] < 0)
            {
                edge_stack.push_back(ei);
                disc[w] = low[w] = timer++;
                stack.push_back({w, ei, 0});
            }
            else if (disc[w] < disc[f.v])
            {
                edge_stack.push_back(ei);
                low[f.v] = std::min(low[f.v], disc[w]);
            }
            continue;
        }
        const Frame done = f;
        stack.pop_back();
        if (stack.empty())
            break;
        Frame& parent = stack.back();
        low[parent.v] = std::min(low[parent.v], low[done.v]);
        if (low[done.v] >= disc[parent.v])
        {
            std::vector<std::size_t> group;
            while (true)
            {
                std::size_t ei = edge_stack.back();
                edge_stack.pop_back();
                group.push_back(ei);
                if (ei == done.parent_edge)
                    break;
            }
            groups.push_back(std::move(group));
        }
    }

    std::vector<Block> result;
    result.reserve(groups.size());
    for (auto& group : groups)
    {
        std::sort(group.begin(), group.end());
        std::vector<Vertex> verts;
        for (auto ei : group)
        {
            verts.push_back(edges[ei].u);
            verts.push_back(edges[ei].v);
        }
        std::sort(verts.begin(), verts.end());
        verts.erase(std::unique(verts.begin(), verts.end()), verts.end());
        auto local = [&](Vertex x) {
            return static_cast<Vertex>(std::lower_bound(verts.begin(), verts.end(), x) - verts.begin());
        };
        std::vector<Edge> block_edges;
        for (auto ei : group)
            block_edges.push_back({local(edges[ei].u), local(edges[ei].v), edges[ei].mult});
        result.push_back({Multigraph(static_cast<int>(verts.size()), block_edges), std::move(verts)});
    }
    return result;
}

/// 2-connected in the block sense: connected, n >= 2, and a single block.
inline bool is_two_connected(const Multigraph& g)
{
    return g.vertex_count() >= 2 && is_connected(g) && blocks(g).size() == 1;
}

namespace detail
{

// Dinic max-flow on an undirected capacitated graph (each bundle is a pair of arcs).
class MaxFlow
{
  public:
    explicit MaxFlow(const Multigraph& g) : head_(g.vertex_count(), -1), level_(g.vertex_count()), it_(g.vertex_count())
    {
        for (const auto& e : g.edges())
        {
            add_arc(e.u, e.v, e.mult);
            add_arc(e.v, e.u, e.mult);
        }
        original_ = cap_;
    }

    Multiplicity run(Vertex s, Vertex t, Multiplicity limit)
    {
        cap_ = original_;
        Multiplicity flow = 0;
        while (flow < limit && bfs(s, t))
        {
            it_ = head_;
            while (flow < limit)
            {
                Multiplicity pushed = dfs(s, t, limit - flow);
                if (pushed == 0)
                    break;
                flow += pushed;
            }
        }
        return flow;
    }

  private:
    void add_arc(Vertex a, Vertex b, Multiplicity c)
    {
        to_.push_back(b);
        cap_.push_back(c);
        next_.push_back(head_[a]);
        head_[a] = static_cast<int>(to_.size()) - 1;
    }

    bool bfs(Vertex s, Vertex t)
    {
        std::fill(level_.begin(), level_.end(), -1);
        std::queue<Vertex> queue;
        level_[s] = 0;
        queue.push(s);
        while (!queue.empty())
        {
            Vertex x = queue.front();
            queue.pop();
            for (int a = head_[x]; a >= 0; a = next_[a])
                if (cap_[a] > 0 && level_[to_[a]] < 0)
                {
                    level_[to_[a]] = level_[x] + 1;
                    queue.push(to_[a]);
                }
        }
        return level_[t] >= 0;
    }

    Multiplicity dfs(Vertex x, Vertex t, Multiplicity pushed)
    {
        if (x == t)
            return pushed;
        for (int& a = it_[x]; a >= 0; a = next_[a])
        {
            Vertex y = to_[a];
            if (cap_[a] <= 0 || level_[y] != level_[x] + 1)
                continue;
            Multiplicity got = dfs(y, t, std::min(pushed, cap_[a]));
            if (got > 0)
            {
                cap_[a] -= got;
                cap_[a ^ 1] += got;
                return got;
            }
        }
        return 0;
    }

    std::vector<int> head_, next_, level_, it_;
    std::vector<Vertex> to_;
    std::vector<Multiplicity> cap_, original_;
};

} // namespace detail

/// Minimum number of edges (counting multiplicity) whose removal disconnects `g`,
/// from max-flows between vertex 0 and every other vertex.
inline Multiplicity edge_connectivity(const Multigraph& g)
{
    if (g.vertex_count() < 2)
        throw InputError("edge connectivity needs at least 2 vertices");
    if (!is_connected(g))
        return 0;
    auto deg = g.degrees();
    Multiplicity best = *std::min_element(deg.begin(), deg.end());
    detail::MaxFlow flow(g);
    for (Vertex t = 1; t < g.vertex_count() && best > 0; ++t)
        best = std::min(best, flow.run(0, t, best));
    return best;
}

/// Number of spanning trees: determinant of the Laplacian with row/column 0 removed,
/// by Bareiss fraction-free elimination over big integers.
inline mpz_class spanning_tree_count(const Multigraph& g)
{
    require_connected(g, "spanning_tree_count");
    const int size = g.vertex_count() - 1;
    if (size == 0)
        return 1;
    std::vector<std::vector<mpz_class>> a(size, std::vector<mpz_class>(size, 0));
    for (const auto& e : g.edges())
    {
        for (Vertex x : {e.u, e.v})
            if (x > 0)
                a[x - 1][x - 1] += e.mult;
        if (e.u > 0 && e.v > 0)
        {
            a[e.u - 1][e.v - 1] -= e.mult;
            a[e.v - 1][e.u - 1] -= e.mult;
        }
    }
    mpz_class prev = 1;
    int sign = 1;
    for (int k = 0; k < size - 1; ++k)
    {
        if (a[k][k] == 0)
        {
            int swap_row = k + 1;
            while (swap_row < size && a[swap_row][k] == 0)
                ++swap_row;
            if (swap_row == size)
                return 0;
            std::swap(a[k], a[swap_row]);
            sign = -sign;
        }
        for (int i = k + 1; i < size; ++i)
        {
            for (int j = k + 1; j < size; ++j)
            {
                a[i][j] = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = a[k][k];
    }
    return sign * a[size - 1][size - 1];
}

inline Multigraph bundle_replace(const Multigraph& g, Multiplicity k)
{
    if (k < 1)
        throw InputError("bundle size must be at least 1");
    std::vector<Edge> edges = g.edges();
    for (auto& e : edges)
        e.mult *= k;
    return Multigraph(g.vertex_count(), edges);
}

inline Multigraph relabel(const Multigraph& g, const std::vector<Vertex>& perm)
{
    std::vector<Edge> edges;
    for (const auto& e : g.edges())
        edges.push_back({perm.at(e.u), perm.at(e.v), e.mult});
    return Multigraph(g.vertex_count(), edges);
}

// Standard constructions.

inline Multigraph complete_graph(int n, Multiplicity mult = 1)
{
    std::vector<Edge> edges;
    for (Vertex i = 0; i < n; ++i)
        for (Vertex j = i + 1; j < n; ++j)
            edges.push_back({i, j, mult});
    return Multigraph(n, edges);
}

/// K_n with the edge {0, 1} removed; vertices 0 and 1 are the nonadjacent pair.
inline Multigraph complete_minus_edge(int n)
{
    if (n < 2)
        throw InputError("K_n minus an edge needs n >= 2");
    std::vector<Edge> edges;
    for (Vertex i = 0; i < n; ++i)
        for (Vertex j = i + 1; j < n; ++j)
            if (!(i == 0 && j == 1))
                edges.push_back({i, j, 1});
    return Multigraph(n, edges);
}

inline Multigraph path_graph(int n)
{
    std::vector<Edge> edges;
    for (Vertex i = 0; i + 1 < n; ++i)
        edges.push_back({i, i + 1, 1});
    return Multigraph(n, edges);
}

inline Multigraph cycle_graph(int n)
{
    std::vector<Edge> edges;
    for (Vertex i = 0; i < n; ++i)
        edges.push_back({i, (i + 1) % n, 1});
    return Multigraph(n, edges);
}

/// Two vertices joined by k parallel edges.
inline Multigraph bundle_graph(Multiplicity k) { return Multigraph(2, {{0, 1, k}}); }

inline Multigraph disjoint_union(const Multigraph& a, const Multigraph& b)
{
    std::vector<Edge> edges = a.edges();
    for (const auto& e : b.edges())
        edges.push_back({e.u + a.vertex_count(), e.v + a.vertex_count(), e.mult});
    return Multigraph(a.vertex_count() + b.vertex_count(), edges);
}

} // namespace relroots
