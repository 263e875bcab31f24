#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "relroots/error.hpp"

namespace relroots
{

/// Univariate polynomial with exact rational coefficients, ascending degree.
/// The zero polynomial has an empty coefficient list; otherwise the leading
/// coefficient is nonzero.
/// n/d in canonical form (the two-argument mpq_class constructor does not reduce).
inline mpq_class make_rational(const mpz_class& n, const mpz_class& d)
{
    if (d == 0)
        throw InputError("zero denominator");
    mpq_class out(n, d);
    out.canonicalize();
    return out;
}

class RatPoly
{
  public:
    RatPoly() = default;

    explicit RatPoly(std::vector<mpq_class> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    RatPoly(std::initializer_list<mpq_class> coeffs) : coeffs_(coeffs) { trim(); }

    static RatPoly constant(const mpq_class& c) { return RatPoly(std::vector<mpq_class>{c}); }

    static RatPoly monomial(const mpq_class& c, std::size_t degree)
    {
        std::vector<mpq_class> coeffs(degree + 1, 0);
        coeffs[degree] = c;
        return RatPoly(std::move(coeffs));
    }

    /// -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    const std::vector<mpq_class>& coeffs() const noexcept { return coeffs_; }

    mpq_class coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : mpq_class(0); }

    mpq_class leading() const { return coeffs_.empty() ? mpq_class(0) : coeffs_.back(); }

    mpq_class operator()(const mpq_class& x) const
    {
        mpq_class acc = 0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
            acc = acc * x + *it;
        return acc;
    }

    RatPoly& operator+=(const RatPoly& other)
    {
        if (other.coeffs_.size() > coeffs_.size())
            coeffs_.resize(other.coeffs_.size(), 0);
        for (std::size_t i = 0; i < other.coeffs_.size(); ++i)
            coeffs_[i] += other.coeffs_[i];
        trim();
        return *this;
    }

    RatPoly& operator-=(const RatPoly& other)
    {
        if (other.coeffs_.size() > coeffs_.size())
            coeffs_.resize(other.coeffs_.size(), 0);
        for (std::size_t i = 0; i < other.coeffs_.size(); ++i)
            coeffs_[i] -= other.coeffs_[i];
        trim();
        return *this;
    }

    RatPoly& operator*=(const mpq_class& c)
    {
        if (c == 0)
            coeffs_.clear();
        for (auto& x : coeffs_)
            x *= c;
        return *this;
    }

    friend RatPoly operator+(RatPoly a, const RatPoly& b) { return a += b; }
    friend RatPoly operator-(RatPoly a, const RatPoly& b) { return a -= b; }
    friend RatPoly operator*(RatPoly a, const mpq_class& c) { return a *= c; }
    friend RatPoly operator*(const mpq_class& c, RatPoly a) { return a *= c; }
    friend RatPoly operator-(RatPoly a) { return a *= mpq_class(-1); }

    friend RatPoly operator*(const RatPoly& a, const RatPoly& b)
    {
        if (a.is_zero() || b.is_zero())
            return {};
        std::vector<mpq_class> out(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
        {
            if (a.coeffs_[i] == 0)
                continue;
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
                out[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
        return RatPoly(std::move(out));
    }

    RatPoly& operator*=(const RatPoly& other) { return *this = *this * other; }

    /// Multiplies by q^k.
    RatPoly shifted(std::size_t k) const
    {
        if (is_zero())
            return {};
        std::vector<mpq_class> out(k, 0);
        out.insert(out.end(), coeffs_.begin(), coeffs_.end());
        return RatPoly(std::move(out));
    }

    RatPoly pow(unsigned e) const
    {
        RatPoly result = constant(1);
        RatPoly base = *this;
        while (e > 0)
        {
            if (e & 1U)
                result *= base;
            e >>= 1U;
            if (e > 0)
                base *= base;
        }
        return result;
    }

    friend bool operator==(const RatPoly& a, const RatPoly& b) { return a.coeffs_ == b.coeffs_; }

    std::string to_string(const char* var = "q") const
    {
        if (is_zero())
            return "0";
        std::string out;
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
        {
            if (coeffs_[i] == 0)
                continue;
            std::string c = coeffs_[i].get_str();
            if (!out.empty())
                out += c[0] == '-' ? " - " : " + ";
            else if (c[0] == '-')
                out += "-";
            if (c[0] == '-')
                c.erase(0, 1);
            if (i == 0 || c != "1")
                out += c;
            if (i > 0)
                out += var;
            if (i > 1)
                out += "^" + std::to_string(i);
        }
        return out;
    }

  private:
    void trim()
    {
        while (!coeffs_.empty() && coeffs_.back() == 0)
            coeffs_.pop_back();
    }

    std::vector<mpq_class> coeffs_;
};

inline RatPoly one_minus_q() { return RatPoly{1, -1}; }

/// (1 - q^k)
inline RatPoly one_minus_q_pow_k(std::size_t k) { return RatPoly::constant(1) - RatPoly::monomial(1, k); }

/// (1 - q)^e expanded by the binomial theorem.
inline RatPoly one_minus_q_power(std::size_t e)
{
    std::vector<mpq_class> coeffs(e + 1);
    mpz_class binom = 1;
    for (std::size_t i = 0; i <= e; ++i)
    {
        coeffs[i] = (i % 2 == 0) ? mpq_class(binom) : mpq_class(-binom);
        binom = binom * static_cast<unsigned long>(e - i) / static_cast<unsigned long>(i + 1);
    }
    return RatPoly(std::move(coeffs));
}

/// p(q^k).
inline RatPoly substitute_power(const RatPoly& p, std::size_t k)
{
    if (k < 1)
        throw InputError("substitute_power needs k >= 1");
    if (p.is_zero())
        return {};
    std::vector<mpq_class> out(static_cast<std::size_t>(p.degree()) * k + 1, 0);
    for (std::size_t i = 0; i < p.coeffs().size(); ++i)
        out[i * k] = p.coeffs()[i];
    return RatPoly(std::move(out));
}

/// Synthetic division by (1 - q). Returns (quotient, remainder) with p = (1-q)*quotient + remainder.
inline std::pair<RatPoly, mpq_class> divide_by_one_minus_q(const RatPoly& p)
{
    if (p.degree() < 1)
        return {RatPoly{}, p.coeff(0)};
    const auto& a = p.coeffs();
    const std::size_t d = a.size() - 1;
    // Divide by (q - 1) first: b_{d-1} = a_d, b_{i-1} = a_i + b_i.
    std::vector<mpq_class> b(d);
    b[d - 1] = a[d];
    for (std::size_t i = d - 1; i > 0; --i)
        b[i - 1] = a[i] + b[i];
    mpq_class remainder = a[0] + b[0];
    for (auto& x : b)
        x = -x;
    return {RatPoly(std::move(b)), remainder};
}

/// Removes `times` factors of (1 - q), requiring each division to be exact.
inline RatPoly deflate_one_minus_q(RatPoly p, std::size_t times)
{
    for (std::size_t pass = 0; pass < times; ++pass)
    {
        auto [quotient, remainder] = divide_by_one_minus_q(p);
        if (remainder != 0)
            throw NumericalError("polynomial is not divisible by (1-q)^" + std::to_string(times) +
                                 " (pass " + std::to_string(pass + 1) + " left remainder " + remainder.get_str() + ")");
        p = std::move(quotient);
    }
    return p;
}

/// F_0..F_{m-n+1}: F_i counts i-edge sets whose removal leaves the graph connected.
struct FVector
{
    std::vector<mpz_class> values;
    int n = 0;
    std::int64_t m = 0;

    friend bool operator==(const FVector&, const FVector&) = default;
};

/// H_0..H_{m-n+1} of the cographic matroid: Rel = (1-q)^{n-1} sum H_k q^k.
struct HVector
{
    std::vector<mpz_class> values;
    int n = 0;
    std::int64_t m = 0;

    friend bool operator==(const HVector&, const HVector&) = default;

    /// H(x) as a polynomial.
    RatPoly polynomial() const
    {
        std::vector<mpq_class> coeffs(values.begin(), values.end());
        return RatPoly(std::move(coeffs));
    }
};

/// Sum F_i q^i (1-q)^{m-i}.
inline RatPoly f_form(const FVector& f)
{
    RatPoly rel;
    for (std::size_t i = 0; i < f.values.size(); ++i)
        if (f.values[i] != 0)
            rel += (one_minus_q_power(static_cast<std::size_t>(f.m) - i) * mpq_class(f.values[i])).shifted(i);
    return rel;
}

inline HVector f_to_h(const FVector& f)
{
    if (f.n < 1)
        throw InputError("F-vector needs n >= 1");
    RatPoly h = deflate_one_minus_q(f_form(f), static_cast<std::size_t>(f.n - 1));
    HVector out{{}, f.n, f.m};
    const std::int64_t top = f.m - f.n + 1;
    out.values.assign(static_cast<std::size_t>(std::max<std::int64_t>(top + 1, 0)), 0);
    if (h.degree() > top)
        throw NumericalError("H-polynomial degree exceeds m-n+1");
    for (std::size_t k = 0; k < h.coeffs().size(); ++k)
    {
        if (h.coeffs()[k].get_den() != 1)
            throw NumericalError("non-integral H-vector entry");
        out.values[k] = h.coeffs()[k].get_num();
    }
    return out;
}

/// (1-q)^{n-1} sum H_k q^k expanded.
inline RatPoly h_to_rel(const HVector& h)
{
    if (h.n < 1)
        throw InputError("H-vector needs n >= 1");
    return one_minus_q_power(static_cast<std::size_t>(h.n - 1)) * h.polynomial();
}

/// H-vector read off an all-terminal reliability polynomial of a graph with n vertices and m edges.
inline HVector rel_to_h(const RatPoly& rel, int n, std::int64_t m)
{
    if (n < 1)
        throw InputError("rel_to_h needs n >= 1");
    RatPoly h = deflate_one_minus_q(rel, static_cast<std::size_t>(n - 1));
    HVector out{{}, n, m};
    for (const auto& c : h.coeffs())
    {
        if (c.get_den() != 1)
            throw NumericalError("non-integral H-vector entry");
        out.values.push_back(c.get_num());
    }
    return out;
}

/// Checks H_0 = 1, H_i >= 1 and H_i^2 >= H_{i-1} H_{i+1}. Returns an empty string when all hold.
inline std::string h_vector_violations(const HVector& h)
{
    const auto& v = h.values;
    if (v.empty())
        return "empty H-vector";
    if (v[0] != 1)
        return "H_0 = " + v[0].get_str();
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] < 1)
            return "H_" + std::to_string(i) + " is not positive";
    for (std::size_t i = 1; i + 1 < v.size(); ++i)
        if (v[i] * v[i] < v[i - 1] * v[i + 1])
            return "log-concavity fails at index " + std::to_string(i);
    return {};
}

} // namespace relroots
