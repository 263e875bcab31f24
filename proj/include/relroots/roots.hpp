#pragma once

#include <algorithm>
#include <climits>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "relroots/bigfloat.hpp"
#include "relroots/complex_poly.hpp"
#include "relroots/error.hpp"
#include "relroots/graph.hpp"
#include "relroots/poly.hpp"
#include "relroots/reliability.hpp"

namespace relroots
{

struct RootOptions
{
    mpfr_prec_t precision_bits = 256;
    mpfr_prec_t max_precision_bits = 4096;
    int double_iterations = 1000;
    int multiprecision_iterations = 400;
};

/// Complex roots of a polynomial with per-root Newton residuals |p(z)/p'(z)|.
struct RootSet
{
    std::vector<BigComplex> roots;
    std::vector<BigFloat> residuals;
    mpfr_prec_t precision_bits = 0;

    std::size_t size() const { return roots.size(); }
    bool empty() const { return roots.empty(); }

    std::vector<std::complex<double>> approx() const
    {
        std::vector<std::complex<double>> out;
        for (const auto& z : roots)
            out.push_back(z.to_complex());
        return out;
    }

    double max_residual() const
    {
        double r = 0;
        for (const auto& x : residuals)
            r = std::max(r, x.to_double());
        return r;
    }
};

namespace detail
{

// Newton ratio p(z)/p'(z) in double precision; evaluates the reversed polynomial
// at 1/z when |z| > 1 so that high degrees do not overflow.
inline std::complex<double> newton_ratio(const std::vector<std::complex<double>>& a, std::complex<double> z)
{
    const std::size_t d = a.size() - 1;
    if (std::abs(z) <= 1.0)
    {
        std::complex<double> p = a[d], dp = 0;
        for (std::size_t i = d; i-- > 0;)
        {
            dp = dp * z + p;
            p = p * z + a[i];
        }
        return p / dp;
    }
    const std::complex<double> w = 1.0 / z;
    std::complex<double> r = a[0], dr = 0;
    for (std::size_t i = 1; i <= d; ++i)
    {
        dr = dr * w + r;
        r = r * w + a[i];
    }
    return z * r / (static_cast<double>(d) * r - w * dr);
}

struct Evaluation
{
    BigComplex value;
    BigComplex derivative;
};

inline Evaluation evaluate(const std::vector<BigComplex>& a, const BigComplex& z)
{
    const std::size_t d = a.size() - 1;
    BigComplex p = a[d];
    BigComplex dp(z.precision());
    for (std::size_t i = d; i-- > 0;)
    {
        dp = dp * z + p;
        p = p * z + a[i];
    }
    return {std::move(p), std::move(dp)};
}

// Tight Cauchy radius: the positive root of |a_d| x^d = sum_{i<d} |a_i| x^i, found by bisection on log x.
inline double cauchy_radius(const std::vector<double>& mags)
{
    const std::size_t d = mags.size() - 1;
    auto excess = [&](double log_x) {
        double s = 0;
        for (std::size_t i = 0; i < d; ++i)
            if (mags[i] > 0)
                s += mags[i] * std::exp((static_cast<double>(i) - static_cast<double>(d)) * log_x);
        return mags[d] - s;
    };
    double lo = -700, hi = 700;
    if (excess(lo) > 0)
        return std::exp(lo);
    for (int it = 0; it < 200; ++it)
    {
        const double mid = 0.5 * (lo + hi);
        (excess(mid) > 0 ? hi : lo) = mid;
    }
    return std::exp(hi);
}

struct SolveAttempt
{
    bool converged = false;
    bool double_stalled = false;
    RootSet result;
};

// With `stop_on_stall`, gives up as soon as the double-precision phase fails to settle
// every root, which is the usual symptom of clustered (repeated) roots.
inline SolveAttempt solve_at_precision(const ComplexPoly& p, const RootOptions& opt, mpfr_prec_t bits,
                                       bool stop_on_stall = false)
{
    const std::size_t d = static_cast<std::size_t>(p.degree());
    std::vector<BigComplex> coeffs;
    for (const auto& c : p.coeffs())
        coeffs.emplace_back(BigFloat(c.re, bits), BigFloat(c.im, bits));

    // Double-precision coefficients scaled by a common power of two.
    long top_exp = LONG_MIN;
    for (const auto& c : coeffs)
        for (const BigFloat* part : {&c.re, &c.im})
            if (!part->is_zero())
                top_exp = std::max<long>(top_exp, mpfr_get_exp(part->get()));
    const BigFloat scale = BigFloat::power_of_two(-top_exp, bits);
    std::vector<std::complex<double>> a;
    std::vector<double> mags;
    for (const auto& c : coeffs)
    {
        a.emplace_back((c.re * scale).to_double(), (c.im * scale).to_double());
        mags.push_back(std::abs(a.back()));
    }

    // Initial points on the Cauchy circle, rotated by an irrational offset.
    std::vector<std::complex<double>> z(d);
    const double radius = mags[d] > 0 ? cauchy_radius(mags) : 1.0;
    const double offset = std::numbers::sqrt2 - 1.0;
    for (std::size_t j = 0; j < d; ++j)
        z[j] = std::polar(radius, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(d) + offset);

    if (mags[d] > 0)
    {
        std::vector<bool> done(d, false);
        bool all_done = false;
        for (int it = 0; it < opt.double_iterations && !all_done; ++it)
        {
            all_done = true;
            for (std::size_t i = 0; i < d; ++i)
            {
                if (done[i])
                    continue;
                const std::complex<double> ratio = newton_ratio(a, z[i]);
                std::complex<double> repulsion = 0;
                for (std::size_t j = 0; j < d; ++j)
                    if (j != i)
                        repulsion += 1.0 / (z[i] - z[j]);
                const std::complex<double> step = ratio / (1.0 - ratio * repulsion);
                if (!std::isfinite(step.real()) || !std::isfinite(step.imag()))
                    continue;
                z[i] -= step;
                if (std::abs(step) < 1e-14 * std::max(1.0, std::abs(z[i])))
                    done[i] = true;
                else
                    all_done = false;
            }
        }
        if (!all_done && stop_on_stall)
        {
            SolveAttempt stalled;
            stalled.double_stalled = true;
            return stalled;
        }
    }

    // Multiprecision Aberth sweeps from the double approximations.
    std::vector<BigComplex> roots;
    for (const auto& x : z)
        roots.emplace_back(x, bits);
    const BigFloat tolerance = BigFloat::power_of_two(-static_cast<long>(bits / 2), bits);
    const BigFloat one(1.0, bits);
    std::vector<bool> done(d, false);
    bool converged = false;
    for (int it = 0; it < opt.multiprecision_iterations && !converged; ++it)
    {
        converged = true;
        for (std::size_t i = 0; i < d; ++i)
        {
            if (done[i])
                continue;
            auto [value, derivative] = evaluate(coeffs, roots[i]);
            if (value.re.is_zero() && value.im.is_zero())
            {
                done[i] = true;
                continue;
            }
            const BigComplex ratio = value / derivative;
            BigComplex repulsion(bits);
            for (std::size_t j = 0; j < d; ++j)
                if (j != i)
                    repulsion = repulsion + BigComplex(one, BigFloat(bits)) / (roots[i] - roots[j]);
            const BigComplex step = ratio / (BigComplex(one, BigFloat(bits)) - ratio * repulsion);
            roots[i] = roots[i] - step;
            const BigFloat size = step.modulus();
            const BigFloat mod = roots[i].modulus();
            if (size <= tolerance * (mod > one ? mod : one))
                done[i] = true;
            else
                converged = false;
        }
    }
    if (!converged)
        return {};

    SolveAttempt attempt;
    attempt.converged = true;
    attempt.result.precision_bits = bits;
    for (auto& r : roots)
    {
        auto [value, derivative] = evaluate(coeffs, r);
        BigFloat residual = value.modulus();
        if (!derivative.re.is_zero() || !derivative.im.is_zero())
            residual = residual / derivative.modulus();
        attempt.result.residuals.push_back(std::move(residual));
        attempt.result.roots.push_back(std::move(r));
    }
    return attempt;
}

} // namespace detail

namespace detail
{

inline RootSet solve_with_doubling(const ComplexPoly& p, const RootOptions& opt, mpfr_prec_t from_bits)
{
    for (mpfr_prec_t bits = from_bits; bits <= opt.max_precision_bits; bits *= 2)
    {
        auto attempt = solve_at_precision(p, opt, bits);
        if (attempt.converged)
            return std::move(attempt.result);
    }
    throw NumericalError("root iteration did not converge up to " + std::to_string(opt.max_precision_bits) + " bits");
}

} // namespace detail

/// All complex roots of `p` (with multiplicity). Double-precision Aberth iteration from
/// the Cauchy circle, then multiprecision Aberth sweeps at `precision_bits`. If either
/// phase does not converge and a modular gcd cannot certify the polynomial square-free
/// (so it may have repeated roots), the polynomial is split exactly
/// into square-free factors, each solved with precision doubling up to
/// `max_precision_bits`, and the roots of a factor are repeated by its multiplicity.
/// Residuals are measured against the factor a root came from. A certified square-free
/// polynomial is instead retried whole with precision doubling.
inline RootSet find_roots(const ComplexPoly& p, const RootOptions& opt = {})
{
    if (p.degree() < 1)
        throw InputError("find_roots needs a polynomial of degree >= 1");
    std::size_t zeros = 0;
    while (p.coeffs()[zeros].is_zero())
        ++zeros;
    ComplexPoly reduced(std::vector<ComplexRational>(p.coeffs().begin() + static_cast<std::ptrdiff_t>(zeros), p.coeffs().end()));

    RootSet rs;
    rs.precision_bits = opt.precision_bits;
    if (reduced.degree() >= 1)
    {
        auto attempt = detail::solve_at_precision(reduced, opt, opt.precision_bits, true);
        if (attempt.converged)
            rs = std::move(attempt.result);
        else if (certainly_square_free(reduced))
            rs = detail::solve_with_doubling(reduced, opt, attempt.double_stalled ? opt.precision_bits : opt.precision_bits * 2);
        else
        {
            const auto parts = square_free_decomposition(reduced);
            if (parts.size() == 1 && parts[0].second == 1)
                rs = detail::solve_with_doubling(reduced, opt, attempt.double_stalled ? opt.precision_bits : opt.precision_bits * 2);
            else
                for (const auto& [factor, multiplicity] : parts)
                {
                    const RootSet part = detail::solve_with_doubling(factor, opt, opt.precision_bits);
                    rs.precision_bits = std::max(rs.precision_bits, part.precision_bits);
                    for (int copy = 0; copy < multiplicity; ++copy)
                        for (std::size_t i = 0; i < part.size(); ++i)
                        {
                            rs.roots.push_back(part.roots[i]);
                            rs.residuals.push_back(part.residuals[i]);
                        }
                }
        }
    }
    for (std::size_t i = 0; i < zeros; ++i)
    {
        rs.roots.emplace_back(rs.precision_bits);
        rs.residuals.emplace_back(rs.precision_bits);
    }
    return rs;
}

inline RootSet find_roots(const RatPoly& p, const RootOptions& opt = {}) { return find_roots(ComplexPoly(p), opt); }

inline RootSet find_roots(const RatPoly& p, mpfr_prec_t precision_bits)
{
    RootOptions opt;
    opt.precision_bits = precision_bits;
    return find_roots(ComplexPoly(p), opt);
}

/// Runs `steps` Newton steps from `z` at `bits` precision; used to audit reported roots.
inline BigComplex newton_refine(const ComplexPoly& p, const BigComplex& z, mpfr_prec_t bits, int steps = 3)
{
    std::vector<BigComplex> coeffs;
    for (const auto& c : p.coeffs())
        coeffs.emplace_back(BigFloat(c.re, bits), BigFloat(c.im, bits));
    BigComplex x(BigFloat(z.re.to_rational(), bits), BigFloat(z.im.to_rational(), bits));
    for (int s = 0; s < steps; ++s)
    {
        auto [value, derivative] = detail::evaluate(coeffs, x);
        if (derivative.re.is_zero() && derivative.im.is_zero())
            break;
        x = x - value / derivative;
    }
    return x;
}

/// Orders roots by descending modulus, then descending real part, then descending imaginary part.
/// Moduli within `tie` of each other count as equal.
inline std::vector<BigComplex> sorted_by_modulus(const RootSet& rs)
{
    if (rs.empty())
        return {};
    const mpfr_prec_t bits = rs.precision_bits;
    const BigFloat tie = BigFloat(rs.max_residual() * 16, bits) + BigFloat::power_of_two(-static_cast<long>(bits / 2), bits);
    std::vector<BigComplex> out = rs.roots;
    std::sort(out.begin(), out.end(), [&](const BigComplex& x, const BigComplex& y) {
        const BigFloat mx = x.modulus(), my = y.modulus();
        if (abs(mx - my) > tie)
            return mx > my;
        if (abs(x.re - y.re) > tie)
            return x.re > y.re;
        return x.im > y.im;
    });
    return out;
}

/// Root of largest modulus; ties go to the larger real part, then the upper half-plane.
inline BigComplex max_modulus_root(const RootSet& rs)
{
    if (rs.empty())
        throw InputError("max_modulus_root of an empty root set");
    return sorted_by_modulus(rs).front();
}

/// Eneström–Kakeya annulus [min a_{i-1}/a_i, max a_{i-1}/a_i] for positive coefficients.
struct Annulus
{
    mpq_class lo;
    mpq_class hi;
};

inline Annulus enestrom_kakeya(const RatPoly& p)
{
    if (p.degree() < 1)
        throw InputError("Enestrom-Kakeya annulus needs degree >= 1");
    for (const auto& c : p.coeffs())
        if (c <= 0)
            throw InputError("Enestrom-Kakeya annulus needs strictly positive coefficients");
    const auto& a = p.coeffs();
    Annulus out{a[0] / a[1], a[0] / a[1]};
    for (std::size_t i = 2; i < a.size(); ++i)
    {
        mpq_class r = a[i - 1] / a[i];
        out.lo = std::min(out.lo, r);
        out.hi = std::max(out.hi, r);
    }
    return out;
}

/// Roots of Rel(G;q) for a graph on n vertices: the H-polynomial is solved after
/// exact removal of (1-q)^{n-1}, and the root 1 is appended with multiplicity n-1.
inline RootSet atr_roots(const RatPoly& rel, int n, const RootOptions& opt = {})
{
    const RatPoly h = deflate_one_minus_q(rel, static_cast<std::size_t>(n - 1));
    RootSet rs;
    if (h.degree() >= 1)
        rs = find_roots(h, opt);
    else
        rs.precision_bits = opt.precision_bits;
    for (int i = 0; i < n - 1; ++i)
    {
        rs.roots.emplace_back(BigFloat(1.0, rs.precision_bits), BigFloat(rs.precision_bits));
        rs.residuals.emplace_back(rs.precision_bits);
    }
    return rs;
}

/// Rel by subset enumeration when the graph fits the pair guard, else by deletion-contraction.
inline RatPoly rel_auto(const Multigraph& g, std::size_t guard = kDefaultPairGuard)
{
    return g.pair_count() <= guard ? rel_bruteforce(g, guard) : rel_deletion_contraction(g);
}

struct RootBoundReport
{
    int n = 0;
    bool simple_vertex = false;         // some vertex has no incident multiple edges, n >= 3
    int bound = 0;                      // n - 1, or n - 2 in the simple-vertex case
    double max_modulus = 0;             // 0 when the H-polynomial is constant
    mpq_class top_ratio = 0;            // H_{m-n} / H_{m-n+1}, 0 when m = n - 1
    bool modulus_within_bound = true;   // with slack 1e-9
    bool ratio_within_bound = true;
    bool ratio_is_ek_max = true;        // the last ratio is the Eneström–Kakeya maximum

    bool holds() const { return modulus_within_bound && ratio_within_bound && ratio_is_ek_max; }
};

/// Checks the root-modulus bounds for a 2-connected graph: every ATR root has modulus
/// at most n-1, and at most n-2 when n >= 3 and some vertex has no incident multiple
/// edges; also checks the H-vector ratio that drives the bound.
inline RootBoundReport check_root_bound(const Multigraph& g, const RootOptions& opt = {})
{
    if (!is_two_connected(g))
        throw InputError("check_root_bound needs a 2-connected graph");
    RootBoundReport report;
    const int n = g.vertex_count();
    report.n = n;
    for (Vertex w = 0; w < n && n >= 3; ++w)
        report.simple_vertex = report.simple_vertex || g.has_no_multiple_edges_at(w);
    report.bound = report.simple_vertex ? n - 2 : n - 1;

    const HVector h = rel_to_h(rel_auto(g), n, g.edge_count());
    const RatPoly hp = h.polynomial();
    if (hp.degree() >= 1)
    {
        const auto& v = h.values;
        report.top_ratio = mpq_class(v[v.size() - 2]) / mpq_class(v.back());
        report.ratio_within_bound = report.top_ratio <= report.bound;
        report.ratio_is_ek_max = enestrom_kakeya(hp).hi == report.top_ratio;
        report.max_modulus = max_modulus_root(find_roots(hp, opt)).modulus().to_double();
        report.modulus_within_bound = report.max_modulus <= report.bound + 1e-9;
    }
    return report;
}

} // namespace relroots
