#pragma once

#include <algorithm>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <vector>

#include <gmpxx.h>

#include "relroots/graph.hpp"
#include "relroots/poly.hpp"

namespace relroots::testing
{

inline RatPoly poly(std::initializer_list<long> coeffs)
{
    std::vector<mpq_class> c;
    for (long x : coeffs)
        c.emplace_back(x);
    return RatPoly(std::move(c));
}

inline std::vector<mpz_class> ints(std::initializer_list<long> values)
{
    std::vector<mpz_class> out;
    for (long x : values)
        out.emplace_back(x);
    return out;
}

/// Random connected multigraph: a random spanning tree plus random extra bundles,
/// with total edge count at most `max_m`.
inline Multigraph random_connected(std::mt19937_64& rng, int min_n, int max_n, Multiplicity max_m)
{
    const int n = std::uniform_int_distribution<int>(min_n, max_n)(rng);
    std::vector<Edge> edges;
    Multiplicity m = 0;
    for (Vertex x = 1; x < n; ++x)
    {
        edges.push_back({std::uniform_int_distribution<int>(0, x - 1)(rng), x, 1});
        ++m;
    }
    if (n >= 2)
    {
        const auto extra = std::uniform_int_distribution<Multiplicity>(0, std::max<Multiplicity>(0, max_m - m))(rng);
        std::uniform_int_distribution<int> pick(0, n - 1);
        for (Multiplicity i = 0; i < extra; ++i)
        {
            Vertex a = pick(rng), b = pick(rng);
            if (a == b)
                continue;
            edges.push_back({a, b, 1});
        }
    }
    std::vector<Vertex> perm(n);
    for (int i = 0; i < n; ++i)
        perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    return relabel(Multigraph(n, edges), perm);
}

/// Random 2-connected graph on n >= 3 vertices: a Hamiltonian cycle in random order plus
/// random chords; with `allow_multi`, some bundles get multiplicity 2 or 3.
inline Multigraph random_two_connected(std::mt19937_64& rng, int min_n, int max_n, int max_pairs, bool allow_multi)
{
    const int n = std::uniform_int_distribution<int>(std::max(3, min_n), max_n)(rng);
    std::vector<Vertex> order(n);
    for (int i = 0; i < n; ++i)
        order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<Edge> edges;
    for (int i = 0; i < n; ++i)
        edges.push_back({order[i], order[(i + 1) % n], 1});
    std::uniform_int_distribution<int> pick(0, n - 1);
    const int chords = std::uniform_int_distribution<int>(0, std::max(0, max_pairs - n))(rng);
    for (int i = 0; i < chords; ++i)
    {
        Vertex a = pick(rng), b = pick(rng);
        if (a != b)
            edges.push_back({a, b, 1});
    }
    Multigraph g(n, edges);
    if (!allow_multi)
    {
        std::vector<Edge> simple;
        for (const auto& e : g.edges())
            simple.push_back({e.u, e.v, 1});
        return Multigraph(n, simple);
    }
    std::vector<Edge> bundled;
    std::uniform_int_distribution<int> coin(0, 3);
    for (const auto& e : g.edges())
        bundled.push_back({e.u, e.v, coin(rng) == 0 ? std::uniform_int_distribution<Multiplicity>(2, 3)(rng) : 1});
    return Multigraph(n, bundled);
}

} // namespace relroots::testing
