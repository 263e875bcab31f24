#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "relroots/error.hpp"
#include "relroots/graph.hpp"
#include "relroots/poly.hpp"

namespace relroots
{

/// Default cap on the number of distinct vertex pairs enumerated by subset methods.
inline constexpr std::size_t kDefaultPairGuard = 24;

namespace detail
{

inline void check_pair_guard(const Multigraph& g, std::size_t guard)
{
    if (g.pair_count() > guard || g.pair_count() > 62)
        throw GuardError("subset enumeration over " + std::to_string(g.pair_count()) +
                         " vertex pairs exceeds the guard of " + std::to_string(guard));
}

// Counts, by number of failed edges i, the edge states whose surviving subgraph
// satisfies `accept`. Each bundle of multiplicity k is either dead (all k edges fail,
// weight x^k) or alive (at least one survives, weight (1+x)^k - x^k).
template <class Accept>
std::vector<mpz_class> count_states(const Multigraph& g, std::size_t guard, Accept accept)
{
    check_pair_guard(g, guard);
    const auto& edges = g.edges();
    const std::size_t pairs = edges.size();
    const auto m = static_cast<std::size_t>(g.edge_count());
    const int n = g.vertex_count();

    std::vector<Vertex> comp(n);
    auto label_components = [&](std::uint64_t alive) {
        DisjointSets sets(n);
        for (std::size_t p = 0; p < pairs; ++p)
            if (alive >> p & 1U)
                sets.unite(edges[p].u, edges[p].v);
        for (Vertex x = 0; x < n; ++x)
            comp[x] = sets.find(x);
    };

    const std::uint64_t full = pairs == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << pairs) - 1;

    if (g.is_simple())
    {
        std::vector<std::uint64_t> hist(m + 1, 0);
        for (std::uint64_t alive = 0;; ++alive)
        {
            label_components(alive);
            if (accept(comp))
                ++hist[pairs - static_cast<std::size_t>(std::popcount(alive))];
            if (alive == full)
                break;
        }
        std::vector<mpz_class> out(m + 1);
        for (std::size_t i = 0; i <= m; ++i)
            out[i] = static_cast<unsigned long>(hist[i]);
        return out;
    }

    // Binomial rows per bundle: alive factor coefficients C(k, j) for j < k.
    std::vector<std::vector<mpz_class>> alive_factor(pairs);
    for (std::size_t p = 0; p < pairs; ++p)
    {
        const auto k = static_cast<unsigned long>(edges[p].mult);
        alive_factor[p].resize(k);
        for (unsigned long j = 0; j < k; ++j)
            mpz_bin_uiui(alive_factor[p][j].get_mpz_t(), k, j);
    }

    std::vector<mpz_class> out(m + 1, 0);
    std::vector<mpz_class> acc, next;
    for (std::uint64_t alive = 0;; ++alive)
    {
        label_components(alive);
        if (accept(comp))
        {
            acc.assign(1, 1);
            std::size_t shift = 0;
            for (std::size_t p = 0; p < pairs; ++p)
            {
                if (!(alive >> p & 1U))
                {
                    shift += static_cast<std::size_t>(edges[p].mult);
                    continue;
                }
                const auto& factor = alive_factor[p];
                next.assign(acc.size() + factor.size() - 1, 0);
                for (std::size_t i = 0; i < acc.size(); ++i)
                    for (std::size_t j = 0; j < factor.size(); ++j)
                        next[i + j] += acc[i] * factor[j];
                acc.swap(next);
            }
            for (std::size_t i = 0; i < acc.size(); ++i)
                out[i + shift] += acc[i];
        }
        if (alive == full)
            break;
    }
    return out;
}

inline RatPoly counts_to_poly(const std::vector<mpz_class>& counts, std::size_t m)
{
    RatPoly rel;
    for (std::size_t i = 0; i < counts.size(); ++i)
        if (counts[i] != 0)
            rel += (one_minus_q_power(m - i) * mpq_class(counts[i])).shifted(i);
    return rel;
}

} // namespace detail

/// F-vector of the cographic matroid by subset enumeration over bundles.
inline FVector f_vector(const Multigraph& g, std::size_t guard = kDefaultPairGuard)
{
    require_connected(g, "f_vector");
    const int n = g.vertex_count();
    auto counts = detail::count_states(g, guard, [n](const std::vector<Vertex>& comp) {
        for (Vertex x = 1; x < n; ++x)
            if (comp[x] != comp[0])
                return false;
        return true;
    });
    const std::int64_t top = g.edge_count() - n + 1;
    counts.resize(static_cast<std::size_t>(top + 1));
    return {std::move(counts), n, g.edge_count()};
}

inline RatPoly rel_bruteforce(const Multigraph& g, std::size_t guard = kDefaultPairGuard)
{
    return f_form(f_vector(g, guard));
}

/// K-split reliability: probability that every vertex ends up in a surviving
/// component containing exactly one vertex of `terminals`.
inline RatPoly sprel(const Multigraph& g, const std::vector<Vertex>& terminals, std::size_t guard = kDefaultPairGuard)
{
    detail::require_nonempty(g);
    if (terminals.empty())
        throw InputError("split reliability needs at least one terminal");
    std::set<Vertex> unique(terminals.begin(), terminals.end());
    if (unique.size() != terminals.size())
        throw InputError("split reliability terminals must be distinct");
    for (Vertex t : terminals)
        if (t < 0 || t >= g.vertex_count())
            throw InputError("split reliability terminal out of range");
    const int n = g.vertex_count();
    auto counts = detail::count_states(g, guard, [&](const std::vector<Vertex>& comp) {
        std::vector<Vertex> roots;
        for (Vertex t : terminals)
            roots.push_back(comp[t]);
        std::sort(roots.begin(), roots.end());
        if (std::adjacent_find(roots.begin(), roots.end()) != roots.end())
            return false;
        for (Vertex x = 0; x < n; ++x)
            if (!std::binary_search(roots.begin(), roots.end(), comp[x]))
                return false;
        return true;
    });
    return detail::counts_to_poly(counts, static_cast<std::size_t>(g.edge_count()));
}

namespace detail
{

// Factor/contract recursion on bundles with a memo keyed by a relabeled sorted edge list.
class DeletionContraction
{
  public:
    explicit DeletionContraction(std::size_t budget) : budget_(budget) {}

    RatPoly solve(int n, std::vector<Edge> edges)
    {
        canonicalize(n, edges);
        if (n == 1)
            return RatPoly::constant(1);
        if (edges.empty())
            return {};
        std::vector<std::int64_t> key{n};
        for (const auto& e : edges)
            key.insert(key.end(), {e.u, e.v, e.mult});
        if (auto it = memo_.find(key); it != memo_.end())
            return it->second;
        if (++expansions_ > budget_)
            throw GuardError("deletion-contraction expansion budget of " + std::to_string(budget_) + " exceeded");

        // Branch on a bundle at a vertex of minimum pair-degree.
        std::vector<int> pair_degree(n, 0);
        for (const auto& e : edges)
        {
            ++pair_degree[e.u];
            ++pair_degree[e.v];
        }
        const Vertex pivot = static_cast<Vertex>(std::min_element(pair_degree.begin(), pair_degree.end()) - pair_degree.begin());
        std::size_t chosen = 0;
        while (edges[chosen].u != pivot && edges[chosen].v != pivot)
            ++chosen;
        const Edge e = edges[chosen];
        const auto k = static_cast<std::size_t>(e.mult);

        // Contract: merge e.v into e.u, dropping the bundle itself.
        std::vector<Edge> contracted;
        for (std::size_t i = 0; i < edges.size(); ++i)
        {
            if (i == chosen)
                continue;
            Edge f = edges[i];
            auto fold = [&](Vertex x) {
                if (x == e.v)
                    x = e.u;
                return x > e.v ? x - 1 : x;
            };
            f.u = fold(f.u);
            f.v = fold(f.v);
            contracted.push_back(f);
        }
        RatPoly result = one_minus_q_pow_k(k) * solve(n - 1, std::move(contracted));

        std::vector<Edge> deleted = edges;
        deleted.erase(deleted.begin() + static_cast<std::ptrdiff_t>(chosen));
        if (connected(n, deleted))
            result += solve(n, std::move(deleted)).shifted(k);

        memo_.emplace(std::move(key), result);
        return result;
    }

  private:
    static bool connected(int n, const std::vector<Edge>& edges)
    {
        DisjointSets sets(n);
        int components = n;
        for (const auto& e : edges)
            if (sets.unite(e.u, e.v))
                --components;
        return components == 1;
    }

    // Merges parallel bundles, then relabels vertices in first-seen order of the sorted list.
    static void canonicalize(int n, std::vector<Edge>& edges)
    {
        std::map<std::pair<Vertex, Vertex>, Multiplicity> merged;
        for (const auto& e : edges)
            merged[std::minmax(e.u, e.v)] += e.mult;
        std::vector<Vertex> label(n, -1);
        Vertex next = 0;
        for (const auto& [key, mult] : merged)
            for (Vertex x : {key.first, key.second})
                if (label[x] < 0)
                    label[x] = next++;
        for (Vertex x = 0; x < n; ++x)
            if (label[x] < 0)
                label[x] = next++;
        edges.clear();
        for (const auto& [key, mult] : merged)
        {
            auto [a, b] = std::minmax(label[key.first], label[key.second]);
            edges.push_back({a, b, mult});
        }
        std::sort(edges.begin(), edges.end(), [](const Edge& x, const Edge& y) {
            return std::tie(x.u, x.v) < std::tie(y.u, y.v);
        });
    }

    std::size_t budget_;
    std::size_t expansions_ = 0;
    std::map<std::vector<std::int64_t>, RatPoly> memo_;
};

} // namespace detail

inline constexpr std::size_t kDefaultExpansionBudget = 2'000'000;

inline RatPoly rel_deletion_contraction(const Multigraph& g, std::size_t budget = kDefaultExpansionBudget)
{
    require_connected(g, "rel_deletion_contraction");
    return detail::DeletionContraction(budget).solve(g.vertex_count(), g.edges());
}

/// Product of block reliabilities; each block is enumerated when it fits the guard,
/// otherwise solved by deletion-contraction.
inline RatPoly rel_via_blocks(const Multigraph& g, std::size_t guard = kDefaultPairGuard)
{
    RatPoly rel = RatPoly::constant(1);
    for (const auto& block : blocks(g))
    {
        if (block.graph.pair_count() <= guard)
            rel *= rel_bruteforce(block.graph, guard);
        else
            rel *= rel_deletion_contraction(block.graph);
    }
    return rel;
}

} // namespace relroots
