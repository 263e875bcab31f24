#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "relroots/closed_forms.hpp"
#include "relroots/complex_poly.hpp"
#include "relroots/error.hpp"
#include "relroots/graph.hpp"
#include "relroots/poly.hpp"
#include "relroots/reliability.hpp"

namespace relroots
{

/// A connected graph H with two marked distinct vertices u, v.
struct Gadget
{
    Multigraph graph;
    Vertex u = 0;
    Vertex v = 1;

    void validate() const
    {
        const int n = graph.vertex_count();
        if (n < 2)
            throw InputError("gadget needs at least 2 vertices");
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw InputError("gadget terminal out of range");
        if (u == v)
            throw InputError("gadget terminals must be distinct");
        require_connected(graph, "gadget");
    }
};

/// Two vertices joined by k parallel edges.
inline Gadget bundle_gadget(Multiplicity k) { return {bundle_graph(k), 0, 1}; }

/// K_n minus the edge {0, 1}, marked at the two nonadjacent vertices.
inline Gadget complete_minus_edge_gadget(int n) { return {complete_minus_edge(n), 0, 1}; }

/// G[H(u,v)]: every one of the m edges {x, y} of G (x < y) is replaced by its own copy of H
/// with u identified with x and v with y; the other vertices of each copy are new, numbered
/// after the vertices of G in edge order.
inline Multigraph edge_substitute_graph(const Multigraph& g, const Gadget& h)
{
    h.validate();
    require_connected(g, "edge substitution");
    const int nh = h.graph.vertex_count();
    const std::int64_t fresh_per_copy = nh - 2;
    const std::int64_t total = g.vertex_count() + g.edge_count() * fresh_per_copy;
    if (total > 50'000'000)
        throw GuardError("substituted graph would have too many vertices");

    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(g.edge_count()) * h.graph.pair_count());
    Vertex next = g.vertex_count();
    std::vector<Vertex> image(nh);
    for (const auto& e : g.edges())
    {
        for (Multiplicity copy = 0; copy < e.mult; ++copy)
        {
            for (Vertex x = 0; x < nh; ++x)
                image[x] = x == h.u ? e.u : (x == h.v ? e.v : next++);
            for (const auto& f : h.graph.edges())
                edges.push_back({image[f.u], image[f.v], f.mult});
        }
    }
    return Multigraph(static_cast<int>(total), edges);
}

/// Rel(G[H]) = sum_i F_i Rel(H)^{m-i} spRel_{u,v}(H)^i, from the F-vector of G and the two
/// gadget polynomials.
inline RatPoly compose_substitution(const FVector& f, const RatPoly& rel_h, const RatPoly& sprel_h)
{
    const auto m = static_cast<unsigned>(f.m);
    std::vector<RatPoly> rel_pow{RatPoly::constant(1)};
    for (unsigned i = 1; i <= m; ++i)
        rel_pow.push_back(rel_pow.back() * rel_h);
    RatPoly out;
    RatPoly split_pow = RatPoly::constant(1);
    for (std::size_t i = 0; i < f.values.size(); ++i)
    {
        if (f.values[i] != 0)
            out += rel_pow[m - i] * split_pow * mpq_class(f.values[i]);
        split_pow = split_pow * sprel_h;
    }
    return out;
}

/// Rel(G[H(u,v)]) without building the substituted graph. The gadget's Rel is taken from
/// enumeration or deletion-contraction, its split reliability from enumeration.
inline RatPoly edge_substitute_poly(const Multigraph& g, const Gadget& h, std::size_t guard = kDefaultPairGuard)
{
    h.validate();
    const FVector f = f_vector(g, guard);
    const RatPoly rel_h =
        h.graph.pair_count() <= guard ? rel_bruteforce(h.graph, guard) : rel_deletion_contraction(h.graph);
    return compose_substitution(f, rel_h, sprel(h.graph, {h.u, h.v}, guard));
}

/// spRel_{u,v}(H;q) - t Rel(H;q). With t = r/(1-r), its roots that are not roots of Rel(H)
/// are the limits of ATR roots of G[H] as the base graph G varies over graphs having r as
/// an ATR root.
inline ComplexPoly limit_root_poly_from_ratio(const ComplexRational& t, const RatPoly& rel_h, const RatPoly& sprel_h)
{
    return ComplexPoly(sprel_h) - t * ComplexPoly(rel_h);
}

inline ComplexPoly limit_root_poly(const ComplexRational& r, const RatPoly& rel_h, const RatPoly& sprel_h)
{
    if (r == ComplexRational(1))
        throw InputError("r = 1 is a pole of r/(1-r)");
    return limit_root_poly_from_ratio(r / (ComplexRational(1) - r), rel_h, sprel_h);
}

inline ComplexPoly limit_root_poly(const ComplexRational& r, const Gadget& h, std::size_t guard = kDefaultPairGuard)
{
    h.validate();
    return limit_root_poly(r, rel_bruteforce(h.graph, guard), sprel(h.graph, {h.u, h.v}, guard));
}

/// G^{(k,n)}: the two-clique graph G_{3,3}^{k,6k} with every edge replaced by K_n^-(u,v).
inline Multigraph construct_Gkn(Multiplicity k, int n)
{
    if (k < 1)
        throw InputError("bundle size k must be at least 1");
    if (n < 3 || n > 6)
        throw InputError("construct_Gkn supports n in 3..6");
    const Multigraph base = bundle_replace(build_family_graph({3, 3, 1, 6}), k);
    return edge_substitute_graph(base, complete_minus_edge_gadget(n));
}

} // namespace relroots
