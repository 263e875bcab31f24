#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "relroots/error.hpp"
#include "relroots/graph.hpp"
#include "relroots/poly.hpp"

namespace relroots
{

namespace detail
{

/// Pascal's triangle over big integers, grown on demand.
class BinomialTable
{
  public:
    const mpz_class& operator()(std::size_t n, std::size_t k)
    {
        while (rows_.size() <= n)
        {
            const std::size_t r = rows_.size();
            std::vector<mpz_class> row(r + 1, 1);
            for (std::size_t i = 1; i < r; ++i)
                row[i] = rows_[r - 1][i - 1] + rows_[r - 1][i];
            rows_.push_back(std::move(row));
        }
        return k <= n ? rows_[n][k] : zero_;
    }

  private:
    std::vector<std::vector<mpz_class>> rows_;
    mpz_class zero_ = 0;
};

} // namespace detail

/// Rel(K_1), ..., Rel(K_n) from the component-of-a-fixed-vertex recursion.
inline std::vector<RatPoly> rel_Kn_table(int n)
{
    if (n < 1)
        throw InputError("complete graph needs n >= 1");
    detail::BinomialTable binom;
    std::vector<RatPoly> rel(n + 1);
    rel[1] = RatPoly::constant(1);
    for (int size = 2; size <= n; ++size)
    {
        RatPoly r = RatPoly::constant(1);
        for (int i = 1; i < size; ++i)
            r -= (rel[i] * mpq_class(binom(size - 1, i - 1))).shifted(static_cast<std::size_t>(i * (size - i)));
        rel[size] = std::move(r);
    }
    return rel;
}

inline RatPoly rel_Kn(int n) { return rel_Kn_table(n)[n]; }

/// Rel(K_n^-) where K_n^- is K_n with one edge deleted.
inline RatPoly rel_Kn_minus(int n)
{
    if (n < 3)
        throw InputError("K_n minus an edge is connected only for n >= 3");
    const auto complete = rel_Kn_table(n);
    detail::BinomialTable binom;
    std::vector<RatPoly> minus(n + 1);
    for (int size = 3; size <= n; ++size)
    {
        // u cannot reach v and reaches exactly i vertices, or u reaches v and exactly i vertices.
        RatPoly r = RatPoly::constant(1);
        for (int i = 1; i < size; ++i)
            r -= (complete[i] * mpq_class(binom(size - 2, i - 1))).shifted(static_cast<std::size_t>(i * (size - i) - 1));
        for (int i = 3; i < size; ++i)
            r -= (minus[i] * mpq_class(binom(size - 2, i - 2))).shifted(static_cast<std::size_t>(i * (size - i)));
        minus[size] = std::move(r);
    }
    return minus[n];
}

/// {u,v}-split reliability of K_n^- with u, v the nonadjacent pair.
inline RatPoly sprel_Kn_minus(int n)
{
    if (n < 3)
        throw InputError("split reliability of K_n minus an edge needs n >= 3");
    const auto complete = rel_Kn_table(n);
    detail::BinomialTable binom;
    RatPoly r;
    for (int i = 1; i < n; ++i)
        r += (complete[i] * complete[n - i] * mpq_class(binom(n - 2, i - 1)))
                 .shifted(static_cast<std::size_t>(i * (n - i) - 1));
    return r;
}

/// Parameters of G_{m,n}^{a,b}: cliques K_m and K_n with bundles of a edges inside
/// each clique and bundles of b edges across.
struct FamilyParams
{
    int m = 1;
    int n = 1;
    Multiplicity a = 1;
    Multiplicity b = 1;

    void validate() const
    {
        if (m < 1 || n < 1 || a < 1 || b < 1)
            throw InputError("family parameters m, n, a, b must all be at least 1");
    }
};

/// Rel(G_{m,n}^{a,b}). Summing, over the possible components C of a fixed vertex of K_m,
/// the probability that C is exactly that component gives 1; the C = everything term has
/// exponent 0, so each table entry is 1 minus the already-known terms.
inline RatPoly rel_family(const FamilyParams& p)
{
    p.validate();
    detail::BinomialTable binom;
    const auto a = static_cast<std::int64_t>(p.a);
    const auto b = static_cast<std::int64_t>(p.b);
    // table[i][j] = Rel(G_{i,j}^{a,b}) for 1 <= i <= m, 0 <= j <= n.
    std::vector<std::vector<RatPoly>> table(p.m + 1, std::vector<RatPoly>(p.n + 1));
    for (int i = 1; i <= p.m; ++i)
    {
        for (int j = 0; j <= p.n; ++j)
        {
            RatPoly r = RatPoly::constant(1);
            for (int ii = 1; ii <= i; ++ii)
            {
                for (int jj = 0; jj <= j; ++jj)
                {
                    if (ii == i && jj == j)
                        continue;
                    const std::int64_t cut = a * (ii * (i - ii) + jj * (j - jj)) + b * (ii * (j - jj) + jj * (i - ii));
                    const mpz_class weight = binom(i - 1, ii - 1) * binom(j, jj);
                    r -= (table[ii][jj] * mpq_class(weight)).shifted(static_cast<std::size_t>(cut));
                }
            }
            table[i][j] = std::move(r);
        }
    }
    return table[p.m][p.n];
}

/// Explicit G_{m,n}^{a,b}: vertices 0..m-1 form the first clique, m..m+n-1 the second.
inline Multigraph build_family_graph(const FamilyParams& p)
{
    p.validate();
    std::vector<Edge> edges;
    const int total = p.m + p.n;
    for (Vertex x = 0; x < total; ++x)
        for (Vertex y = x + 1; y < total; ++y)
            edges.push_back({x, y, ((x < p.m) == (y < p.m)) ? p.a : p.b});
    return Multigraph(total, edges);
}

} // namespace relroots
