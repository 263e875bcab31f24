#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "relroots/bigfloat.hpp"
#include "relroots/closed_forms.hpp"
#include "relroots/complex_poly.hpp"
#include "relroots/error.hpp"
#include "relroots/poly.hpp"

namespace relroots
{

// ---------------------------------------------------------------------------
// Exact determinants over the Gaussian rationals
// ---------------------------------------------------------------------------

namespace detail
{

struct GaussInt
{
    mpz_class re = 0;
    mpz_class im = 0;

    bool is_zero() const { return re == 0 && im == 0; }
};

inline GaussInt mul(const GaussInt& a, const GaussInt& b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }

inline GaussInt sub(const GaussInt& a, const GaussInt& b) { return {a.re - b.re, a.im - b.im}; }

// Exact division a / b in Z[i]; the quotient is known to be integral.
inline GaussInt divexact(const GaussInt& a, const GaussInt& b)
{
    const mpz_class norm = b.re * b.re + b.im * b.im;
    GaussInt q{a.re * b.re + a.im * b.im, a.im * b.re - a.re * b.im};
    mpz_divexact(q.re.get_mpz_t(), q.re.get_mpz_t(), norm.get_mpz_t());
    mpz_divexact(q.im.get_mpz_t(), q.im.get_mpz_t(), norm.get_mpz_t());
    return q;
}

} // namespace detail

using ComplexMatrix = std::vector<std::vector<ComplexRational>>;

/// Determinant of a square Gaussian-rational matrix: rows are scaled to Gaussian
/// integers, then reduced by Bareiss fraction-free elimination.
inline ComplexRational determinant(const ComplexMatrix& m)
{
    const std::size_t n = m.size();
    if (n == 0)
        return ComplexRational(1);
    std::vector<std::vector<detail::GaussInt>> a(n, std::vector<detail::GaussInt>(n));
    mpz_class scale = 1;
    for (std::size_t i = 0; i < n; ++i)
    {
        mpz_class l = 1;
        for (const auto& x : m[i])
        {
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.re.get_den_mpz_t());
            mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.im.get_den_mpz_t());
        }
        scale *= l;
        for (std::size_t j = 0; j < n; ++j)
        {
            mpq_class re = m[i][j].re * l, im = m[i][j].im * l;
            a[i][j] = {re.get_num(), im.get_num()};
        }
    }
    int sign = 1;
    detail::GaussInt prev{1, 0};
    for (std::size_t k = 0; k + 1 < n; ++k)
    {
        if (a[k][k].is_zero())
        {
            std::size_t r = k + 1;
            while (r < n && a[r][k].is_zero())
                ++r;
            if (r == n)
                return ComplexRational(0);
            std::swap(a[k], a[r]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
        {
            for (std::size_t j = k + 1; j < n; ++j)
                a[i][j] = detail::divexact(detail::sub(detail::mul(a[i][j], a[k][k]), detail::mul(a[i][k], a[k][j])), prev);
            a[i][k] = {};
        }
        prev = a[k][k];
    }
    const auto& d = a[n - 1][n - 1];
    return ComplexRational(make_rational(d.re * sign, scale), make_rational(d.im * sign, scale));
}

// ---------------------------------------------------------------------------
// Schur–Cohn root counting
// ---------------------------------------------------------------------------

/// The 2k x 2k matrix [[B_k^*, A_k], [A_k^*, B_k]] whose determinant is M_k, where A_k is
/// upper triangular Toeplitz in a_0..a_{k-1} and B_k is upper triangular Toeplitz in
/// conj(a_n)..conj(a_{n-k+1}).
inline ComplexMatrix schur_cohn_matrix(const std::vector<ComplexRational>& a, std::size_t k)
{
    const std::size_t n = a.size() - 1;
    ComplexMatrix m(2 * k, std::vector<ComplexRational>(2 * k));
    for (std::size_t r = 0; r < k; ++r)
    {
        for (std::size_t c = 0; c < k; ++c)
        {
            if (c >= r)
            {
                m[r][k + c] = a[c - r];                 // A_k
                m[k + r][k + c] = a[n - (c - r)].conj(); // B_k
            }
            else
            {
                m[r][c] = a[n - (r - c)];          // B_k^*
                m[k + r][c] = a[r - c].conj();     // A_k^*
            }
        }
        m[r][r] = a[n];
        m[k + r][r] = a[0].conj();
    }
    return m;
}

/// The real determinants M_1..M_n for a polynomial of degree n.
inline std::vector<mpq_class> schur_cohn_determinants(const ComplexPoly& p)
{
    if (p.is_zero())
        throw InputError("Schur-Cohn test of the zero polynomial");
    if (p.degree() < 1)
        throw InputError("Schur-Cohn test needs degree >= 1");
    std::vector<mpq_class> out;
    for (std::size_t k = 1; k <= static_cast<std::size_t>(p.degree()); ++k)
    {
        auto d = determinant(schur_cohn_matrix(p.coeffs(), k));
        if (d.im != 0)
            throw NumericalError("Schur-Cohn determinant has a nonzero imaginary part");
        out.push_back(d.re);
    }
    return out;
}

enum class Sign
{
    negative,
    zero,
    positive,
    indeterminate,
};

inline char sign_char(Sign s)
{
    switch (s)
    {
    case Sign::negative:
        return '-';
    case Sign::positive:
        return '+';
    case Sign::zero:
        return '0';
    default:
        return '?';
    }
}

inline Sign sign_of(const mpq_class& x) { return x > 0 ? Sign::positive : (x < 0 ? Sign::negative : Sign::zero); }

/// Number of sign changes in (1, s_1, ..., s_n); nullopt unless every sign is + or -.
inline std::optional<int> sign_changes(const std::vector<Sign>& signs)
{
    int changes = 0;
    Sign last = Sign::positive;
    for (Sign s : signs)
    {
        if (s != Sign::positive && s != Sign::negative)
            return std::nullopt;
        if (s != last)
            ++changes;
        last = s;
    }
    return changes;
}

struct ParamBox
{
    mpq_class a_lo, a_hi, b_lo, b_hi;

    void validate() const
    {
        if (a_lo > a_hi || b_lo > b_hi)
            throw InputError("parameter box has lo > hi");
    }

    mpq_class a_mid() const { return (a_lo + a_hi) / 2; }
    mpq_class b_mid() const { return (b_lo + b_hi) / 2; }

    bool contains(const ParamBox& inner) const
    {
        return a_lo <= inner.a_lo && inner.a_hi <= a_hi && b_lo <= inner.b_lo && inner.b_hi <= b_hi;
    }

    friend bool operator==(const ParamBox&, const ParamBox&) = default;
};

struct SchurCohnReport
{
    std::vector<Sign> signs;              // M_1..M_n
    std::optional<int> beta;              // roots outside the unit circle, when all signs are determinate
    bool hypothesis_failed = false;       // some M_k is exactly zero
    std::optional<ParamBox> box;
    int subdivision_depth = 0;
    std::size_t leaves = 1;

    bool determinate() const { return beta.has_value(); }

    std::string sign_string() const
    {
        std::string s;
        for (Sign x : signs)
            s += sign_char(x);
        return s;
    }
};

/// Schur–Cohn test with exact arithmetic: when every M_k is nonzero, beta is the
/// number of roots strictly outside the unit circle.
inline SchurCohnReport schur_cohn(const ComplexPoly& p)
{
    SchurCohnReport report;
    for (const auto& m : schur_cohn_determinants(p))
    {
        report.signs.push_back(sign_of(m));
        if (m == 0)
            report.hypothesis_failed = true;
    }
    report.beta = sign_changes(report.signs);
    return report;
}

// ---------------------------------------------------------------------------
// Parametric polynomials over (a, b) boxes
// ---------------------------------------------------------------------------

struct RationalInterval
{
    mpq_class lo, hi;

    bool contains_zero() const { return lo <= 0 && hi >= 0; }
};

/// Polynomial whose coefficients are affine in two real parameters:
/// c_k(a, b) = base_k + a * along_a_k + b * along_b_k.
class ParametricPoly
{
  public:
    ParametricPoly(std::vector<ComplexRational> base, std::vector<ComplexRational> along_a,
                   std::vector<ComplexRational> along_b)
        : base_(std::move(base)), along_a_(std::move(along_a)), along_b_(std::move(along_b))
    {
        const std::size_t n = std::max({base_.size(), along_a_.size(), along_b_.size()});
        base_.resize(n);
        along_a_.resize(n);
        along_b_.resize(n);
        if (n < 2)
            throw InputError("parametric polynomial needs degree >= 1");
    }

    /// P(q) - (a + b i) Q(q).
    static ParametricPoly minus_complex_multiple(const RatPoly& p, const RatPoly& q)
    {
        std::vector<ComplexRational> base, along_a, along_b;
        for (const auto& c : p.coeffs())
            base.emplace_back(c);
        for (const auto& c : q.coeffs())
        {
            along_a.emplace_back(-c);
            along_b.emplace_back(mpq_class(0), -c);
        }
        return {std::move(base), std::move(along_a), std::move(along_b)};
    }

    int degree() const { return static_cast<int>(base_.size()) - 1; }

    ComplexRational coefficient(std::size_t k, const mpq_class& a, const mpq_class& b) const
    {
        return base_[k] + ComplexRational(a) * along_a_[k] + ComplexRational(b) * along_b_[k];
    }

    std::vector<ComplexRational> coefficients(const mpq_class& a, const mpq_class& b) const
    {
        std::vector<ComplexRational> out;
        for (std::size_t k = 0; k < base_.size(); ++k)
            out.push_back(coefficient(k, a, b));
        return out;
    }

    ComplexPoly instantiate(const mpq_class& a, const mpq_class& b) const { return ComplexPoly(coefficients(a, b)); }

    /// Exact ranges of the real and imaginary part of each coefficient over the box.
    std::vector<std::pair<RationalInterval, RationalInterval>> coefficient_intervals(const ParamBox& box) const
    {
        auto range = [&](const mpq_class& c0, const mpq_class& ca, const mpq_class& cb) {
            const mpq_class lo = c0 + std::min(ca * box.a_lo, ca * box.a_hi) + std::min(cb * box.b_lo, cb * box.b_hi);
            const mpq_class hi = c0 + std::max(ca * box.a_lo, ca * box.a_hi) + std::max(cb * box.b_lo, cb * box.b_hi);
            return RationalInterval{lo, hi};
        };
        std::vector<std::pair<RationalInterval, RationalInterval>> out;
        for (std::size_t k = 0; k < base_.size(); ++k)
            out.push_back({range(base_[k].re, along_a_[k].re, along_b_[k].re),
                           range(base_[k].im, along_a_[k].im, along_b_[k].im)});
        return out;
    }

    /// True if the leading coefficient cannot vanish anywhere in the box.
    bool leading_nonzero_on(const ParamBox& box) const
    {
        auto [re, im] = coefficient_intervals(box).back();
        return !re.contains_zero() || !im.contains_zero();
    }

  private:
    std::vector<ComplexRational> base_, along_a_, along_b_;
};

/// Real bivariate polynomial sum c[i][j] a^i b^j.
struct BivariatePoly
{
    std::vector<std::vector<mpq_class>> c;

    mpq_class operator()(const mpq_class& a, const mpq_class& b) const
    {
        mpq_class acc = 0;
        for (std::size_t i = c.size(); i-- > 0;)
        {
            mpq_class row = 0;
            for (std::size_t j = c[i].size(); j-- > 0;)
                row = row * b + c[i][j];
            acc = acc * a + row;
        }
        return acc;
    }

    mpq_class coeff(std::size_t i, std::size_t j) const
    {
        return i < c.size() && j < c[i].size() ? c[i][j] : mpq_class(0);
    }
};

namespace detail
{

// Monomial coefficients of the polynomial through (x_i, y_i), x_i = 0..n-1.
inline std::vector<mpq_class> interpolate_on_naturals(const std::vector<mpq_class>& y)
{
    const std::size_t n = y.size();
    std::vector<mpq_class> dd = y;
    for (std::size_t level = 1; level < n; ++level)
        for (std::size_t i = n - 1; i >= level; --i)
            dd[i] = (dd[i] - dd[i - 1]) / static_cast<long>(level);
    // Expand the Newton form from the highest divided difference down.
    std::vector<mpq_class> poly{dd[n - 1]};
    for (std::size_t i = n - 1; i-- > 0;)
    {
        std::vector<mpq_class> next(poly.size() + 1, 0);
        for (std::size_t k = 0; k < poly.size(); ++k)
        {
            next[k + 1] += poly[k];
            next[k] -= poly[k] * static_cast<long>(i);
        }
        next[0] += dd[i];
        poly = std::move(next);
    }
    return poly;
}

// p(x + s) from p(x), by repeated synthetic division.
inline std::vector<mpq_class> taylor_shift(std::vector<mpq_class> p, const mpq_class& s)
{
    const std::size_t n = p.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = n - 1; j > i; --j)
            p[j - 1] += s * p[j];
    return p;
}

} // namespace detail

/// M_k as an exact polynomial in (a, b). Every matrix entry is affine in (a, b), so M_k has
/// degree at most 2k in each parameter and is recovered by interpolation on a grid.
inline BivariatePoly schur_cohn_determinant_poly(const ParametricPoly& f, std::size_t k)
{
    const std::size_t points = 2 * k + 1;
    std::vector<std::vector<mpq_class>> by_b(points); // by_b[j] = coefficients in a at b = j
    for (std::size_t j = 0; j < points; ++j)
    {
        std::vector<mpq_class> values;
        for (std::size_t i = 0; i < points; ++i)
        {
            auto d = determinant(schur_cohn_matrix(f.coefficients(static_cast<long>(i), static_cast<long>(j)), k));
            if (d.im != 0)
                throw NumericalError("Schur-Cohn determinant has a nonzero imaginary part");
            values.push_back(d.re);
        }
        by_b[j] = detail::interpolate_on_naturals(values);
    }
    BivariatePoly out;
    out.c.assign(points, std::vector<mpq_class>(points, 0));
    for (std::size_t i = 0; i < points; ++i)
    {
        std::vector<mpq_class> column;
        for (std::size_t j = 0; j < points; ++j)
            column.push_back(by_b[j][i]);
        auto in_b = detail::interpolate_on_naturals(column);
        for (std::size_t j = 0; j < points; ++j)
            out.c[i][j] = in_b[j];
    }
    return out;
}

/// Exact enclosure of a bivariate polynomial over a box: expand about the box center
/// and bound every non-constant term by its magnitude at the half-widths.
inline RationalInterval range_over_box(const BivariatePoly& p, const ParamBox& box)
{
    const mpq_class a0 = box.a_mid(), b0 = box.b_mid();
    const mpq_class ha = (box.a_hi - box.a_lo) / 2, hb = (box.b_hi - box.b_lo) / 2;
    const std::size_t na = p.c.size();
    const std::size_t nb = na ? p.c[0].size() : 0;
    // Shift in b for each power of a, then in a for each power of b.
    std::vector<std::vector<mpq_class>> t(na);
    for (std::size_t i = 0; i < na; ++i)
        t[i] = detail::taylor_shift(p.c[i], b0);
    for (std::size_t j = 0; j < nb; ++j)
    {
        std::vector<mpq_class> column;
        for (std::size_t i = 0; i < na; ++i)
            column.push_back(t[i][j]);
        column = detail::taylor_shift(std::move(column), a0);
        for (std::size_t i = 0; i < na; ++i)
            t[i][j] = column[i];
    }
    mpq_class spread = 0;
    mpq_class pa = 1;
    for (std::size_t i = 0; i < na; ++i)
    {
        mpq_class pb = 1;
        for (std::size_t j = 0; j < nb; ++j)
        {
            if (i + j > 0 && t[i][j] != 0)
                spread += abs(t[i][j]) * pa * pb;
            pb *= hb;
        }
        pa *= ha;
    }
    const mpq_class center = na ? t[0][0] : mpq_class(0);
    return {center - spread, center + spread};
}

inline constexpr int kMaxSubdivisionDepth = 12;

namespace detail
{

struct BoxSearch
{
    const std::vector<BivariatePoly>& dets;
    int max_depth;
    std::optional<std::vector<Sign>> pattern;
    bool failed = false;
    int deepest = 0;
    std::size_t leaves = 0;

    std::vector<Sign> signs_on(const ParamBox& box) const
    {
        std::vector<Sign> out;
        for (const auto& d : dets)
        {
            auto r = range_over_box(d, box);
            out.push_back(r.lo > 0 ? Sign::positive : (r.hi < 0 ? Sign::negative : Sign::indeterminate));
        }
        return out;
    }

    void visit(const ParamBox& box, int depth)
    {
        if (failed)
            return;
        auto signs = signs_on(box);
        const bool determinate = std::none_of(signs.begin(), signs.end(), [](Sign s) { return s == Sign::indeterminate; });
        if (determinate)
        {
            ++leaves;
            deepest = std::max(deepest, depth);
            if (pattern && *pattern != signs)
                failed = true;
            pattern = signs;
            return;
        }
        if (depth == max_depth)
        {
            failed = true;
            deepest = depth;
            return;
        }
        ParamBox lo = box, hi = box;
        if (box.a_hi - box.a_lo >= box.b_hi - box.b_lo)
            lo.a_hi = hi.a_lo = box.a_mid();
        else
            lo.b_hi = hi.b_lo = box.b_mid();
        visit(lo, depth + 1);
        visit(hi, depth + 1);
    }
};

} // namespace detail

/// Certifies the Schur–Cohn sign pattern of a parametric polynomial for every (a, b) in the box.
/// Each M_k is computed exactly as a polynomial in (a, b) and enclosed over the box; boxes
/// whose enclosures contain 0 are bisected along the longer side, and every leaf must show
/// the same pattern. An indeterminate report (no beta) means the subdivision ran out of depth
/// or leaves disagree, not that the hypothesis fails.
inline SchurCohnReport schur_cohn_box(const ParametricPoly& f, const ParamBox& box, int max_depth = kMaxSubdivisionDepth)
{
    box.validate();
    SchurCohnReport report;
    report.box = box;
    if (!f.leading_nonzero_on(box))
    {
        report.signs.assign(static_cast<std::size_t>(f.degree()), Sign::indeterminate);
        return report;
    }
    std::vector<BivariatePoly> dets;
    for (std::size_t k = 1; k <= static_cast<std::size_t>(f.degree()); ++k)
        dets.push_back(schur_cohn_determinant_poly(f, k));

    detail::BoxSearch search{dets, max_depth, std::nullopt};
    search.visit(box, 0);
    report.subdivision_depth = search.deepest;
    report.leaves = search.leaves;
    if (search.failed || !search.pattern)
    {
        report.signs = search.signs_on(box);
        return report;
    }
    report.signs = *search.pattern;
    report.beta = sign_changes(report.signs);
    return report;
}

// ---------------------------------------------------------------------------
// f_n and parameter boxes
// ---------------------------------------------------------------------------

/// f_n(q) = spRel(K_n^-)/(1-q)^{n-2} - (a + b i) Rel(K_n^-)/(1-q)^{n-2}, n in 3..6.
inline ParametricPoly build_fn(int n)
{
    if (n < 3 || n > 6)
        throw InputError("build_fn supports n in 3..6");
    const auto times = static_cast<std::size_t>(n - 2);
    const RatPoly split = deflate_one_minus_q(sprel_Kn_minus(n), times);
    const RatPoly rel = deflate_one_minus_q(rel_Kn_minus(n), times);
    return ParametricPoly::minus_complex_multiple(split, rel);
}

/// Enclosure of the root of G_{3,3}^{1,6} used in the certificates: Re in [0.69659, 0.69660],
/// Im in [0.77393, 0.77394].
inline ParamBox g33_root_box()
{
    return {make_rational(69659, 100000), make_rational(69660, 100000), make_rational(77393, 100000), make_rational(77394, 100000)};
}

/// Published (a, b) boxes for w^{1/k}/(1 - w^{1/k}) with k = 9 and k = 7.
inline std::optional<ParamBox> published_param_box(int k)
{
    if (k == 9)
        return ParamBox{make_rational(-101749, 100000), make_rational(-101731, 100000), make_rational(1070762, 100000),
                        make_rational(1070814, 100000)};
    if (k == 7)
        return ParamBox{make_rational(-90269, 100000), make_rational(-90254, 100000), make_rational(832420, 100000),
                        make_rational(832462, 100000)};
    return std::nullopt;
}

namespace detail
{

inline mpq_class floor_to_grid(const mpq_class& x, const mpz_class& denom)
{
    mpz_class scaled;
    mpq_class y = x * denom;
    mpz_fdiv_q(scaled.get_mpz_t(), y.get_num_mpz_t(), y.get_den_mpz_t());
    return make_rational(scaled, denom);
}

inline mpq_class ceil_to_grid(const mpq_class& x, const mpz_class& denom)
{
    mpz_class scaled;
    mpq_class y = x * denom;
    mpz_cdiv_q(scaled.get_mpz_t(), y.get_num_mpz_t(), y.get_den_mpz_t());
    return make_rational(scaled, denom);
}

} // namespace detail

/// Rational box containing { z/(1-z) : z the principal k-th root of w, w in the box }.
///
/// The map is holomorphic on the box, so the extremes of its real and imaginary parts lie
/// on the boundary. Each boundary side is cut into pieces; on a piece of half-length h about
/// w_m the image lies within |g'|_max * h of g(w_m), where |g'| = |z| / (k |w| |1-z|^2) is
/// bounded using |w| >= |w_m| - h and |z - z_m| <= |w|_max^{1/k} / (k |w|_min) * h.
/// The result is widened by a 2^-180 relative margin for MPFR rounding and rounded
/// outward to a 10^-15 grid.
inline ParamBox param_box_from_root(const ParamBox& root_box, unsigned long k, int pieces_per_side = 256)
{
    root_box.validate();
    if (k < 1)
        throw InputError("param_box_from_root needs k >= 1");
    const auto& r = root_box;
    if (r.a_lo <= 1 && 1 <= r.a_hi && r.b_lo <= 0 && 0 <= r.b_hi)
        throw InputError("root box contains 1, a pole of z/(1-z)");

    if (r.a_lo == r.a_hi && r.b_lo == r.b_hi && k == 1)
    {
        const ComplexRational w(r.a_lo, r.b_lo);
        const ComplexRational g = w / (ComplexRational(1) - w);
        return {g.re, g.re, g.im, g.im};
    }
    if (r.a_lo <= 0 && r.b_lo <= 0 && 0 <= r.b_hi)
        throw InputError("root box meets the branch cut of the principal k-th root");

    const mpfr_prec_t bits = 256;
    const BigFloat one(1.0, bits);
    const BigFloat kk(static_cast<double>(k), bits);
    std::optional<BigFloat> re_lo, re_hi, im_lo, im_hi;

    auto cover_piece = [&](const mpq_class& wr, const mpq_class& wi, const mpq_class& half) {
        const BigFloat x(wr, bits), y(wi, bits), h(half, bits);
        const BigFloat modulus = hypot(x, y);
        const BigFloat w_min = modulus - h;
        if (w_min.sign() <= 0 || ((x - h).sign() <= 0 && abs(y) <= h))
            throw InputError("root box too close to 0 or the branch cut");
        const BigFloat w_max = modulus + h;
        const BigFloat zr = root(modulus, k);
        const BigFloat theta = atan2(y, x) / kk;
        const BigComplex z(zr * cos(theta), zr * sin(theta));
        const BigComplex one_minus_z(one - z.re, -z.im);
        const BigComplex g = z / one_minus_z;
        const BigFloat z_max = root(w_max, k);
        const BigFloat drift = z_max / (kk * w_min) * h;
        const BigFloat gap = one_minus_z.modulus() - drift;
        if (gap.sign() <= 0)
            throw InputError("root box too close to 1");
        const BigFloat lipschitz = z_max / (kk * w_min * gap * gap);
        const BigFloat margin = BigFloat::power_of_two(-180, bits) * (one + g.modulus());
        const BigFloat pad = lipschitz * h + margin;
        auto widen = [](std::optional<BigFloat>& lo, std::optional<BigFloat>& hi, const BigFloat& lower, const BigFloat& upper) {
            if (!lo || lower < *lo)
                lo = lower;
            if (!hi || upper > *hi)
                hi = upper;
        };
        widen(re_lo, re_hi, g.re - pad, g.re + pad);
        widen(im_lo, im_hi, g.im - pad, g.im + pad);
    };

    const int pieces = std::max(1, pieces_per_side);
    for (int side = 0; side < 4; ++side)
    {
        // Sides: bottom, right, top, left, each traversed from one corner to the next.
        mpq_class x0, y0, x1, y1;
        switch (side)
        {
        case 0: x0 = r.a_lo, y0 = r.b_lo, x1 = r.a_hi, y1 = r.b_lo; break;
        case 1: x0 = r.a_hi, y0 = r.b_lo, x1 = r.a_hi, y1 = r.b_hi; break;
        case 2: x0 = r.a_hi, y0 = r.b_hi, x1 = r.a_lo, y1 = r.b_hi; break;
        default: x0 = r.a_lo, y0 = r.b_hi, x1 = r.a_lo, y1 = r.b_lo; break;
        }
        const mpq_class length = abs(x1 - x0) + abs(y1 - y0);
        const mpq_class half = length / (2 * pieces);
        for (int i = 0; i < pieces; ++i)
        {
            const mpq_class t = make_rational(2 * i + 1, 2 * pieces);
            cover_piece(x0 + (x1 - x0) * t, y0 + (y1 - y0) * t, half);
        }
    }

    const mpz_class grid("1000000000000000");
    return {detail::floor_to_grid(re_lo->to_rational(), grid), detail::ceil_to_grid(re_hi->to_rational(), grid),
            detail::floor_to_grid(im_lo->to_rational(), grid), detail::ceil_to_grid(im_hi->to_rational(), grid)};
}

} // namespace relroots
