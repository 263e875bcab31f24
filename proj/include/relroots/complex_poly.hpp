#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "relroots/poly.hpp"

namespace relroots
{

/// Gaussian rational re + im*i.
struct ComplexRational
{
    mpq_class re = 0;
    mpq_class im = 0;

    ComplexRational() = default;
    ComplexRational(mpq_class r, mpq_class i = 0) : re(std::move(r)), im(std::move(i)) {}
    ComplexRational(long r) : re(r), im(0) {}

    bool is_zero() const { return re == 0 && im == 0; }
    ComplexRational conj() const { return {re, -im}; }
    mpq_class norm() const { return re * re + im * im; }

    friend ComplexRational operator+(const ComplexRational& a, const ComplexRational& b) { return {a.re + b.re, a.im + b.im}; }
    friend ComplexRational operator-(const ComplexRational& a, const ComplexRational& b) { return {a.re - b.re, a.im - b.im}; }
    friend ComplexRational operator-(const ComplexRational& a) { return {-a.re, -a.im}; }

    friend ComplexRational operator*(const ComplexRational& a, const ComplexRational& b)
    {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }

    friend ComplexRational operator/(const ComplexRational& a, const ComplexRational& b)
    {
        const mpq_class d = b.norm();
        return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
    }

    friend bool operator==(const ComplexRational& a, const ComplexRational& b) { return a.re == b.re && a.im == b.im; }

    std::string to_string() const
    {
        if (im == 0)
            return re.get_str();
        return "(" + re.get_str() + (im < 0 ? "-" : "+") + mpq_class(abs(im)).get_str() + "i)";
    }
};

/// Polynomial with Gaussian rational coefficients, ascending degree, leading coefficient nonzero.
class ComplexPoly
{
  public:
    ComplexPoly() = default;
    explicit ComplexPoly(std::vector<ComplexRational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

    ComplexPoly(const RatPoly& p)
    {
        for (const auto& c : p.coeffs())
            coeffs_.emplace_back(c);
    }

    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    const std::vector<ComplexRational>& coeffs() const noexcept { return coeffs_; }
    ComplexRational coeff(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : ComplexRational{}; }

    ComplexRational operator()(const ComplexRational& x) const
    {
        ComplexRational acc;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
            acc = acc * x + *it;
        return acc;
    }

    friend ComplexPoly operator+(const ComplexPoly& a, const ComplexPoly& b)
    {
        std::vector<ComplexRational> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] = a.coeff(i) + b.coeff(i);
        return ComplexPoly(std::move(out));
    }

    friend ComplexPoly operator-(const ComplexPoly& a, const ComplexPoly& b)
    {
        std::vector<ComplexRational> out(std::max(a.coeffs_.size(), b.coeffs_.size()));
        for (std::size_t i = 0; i < out.size(); ++i)
            out[i] = a.coeff(i) - b.coeff(i);
        return ComplexPoly(std::move(out));
    }

    friend ComplexPoly operator*(const ComplexRational& c, const ComplexPoly& p)
    {
        std::vector<ComplexRational> out;
        for (const auto& x : p.coeffs_)
            out.push_back(c * x);
        return ComplexPoly(std::move(out));
    }

    friend ComplexPoly operator*(const ComplexPoly& a, const ComplexPoly& b)
    {
        if (a.is_zero() || b.is_zero())
            return {};
        std::vector<ComplexRational> out(a.coeffs_.size() + b.coeffs_.size() - 1);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
                out[i + j] = out[i + j] + a.coeffs_[i] * b.coeffs_[j];
        return ComplexPoly(std::move(out));
    }

    friend bool operator==(const ComplexPoly& a, const ComplexPoly& b) { return a.coeffs_ == b.coeffs_; }

    std::string to_string(const char* var = "q") const
    {
        if (is_zero())
            return "0";
        std::string out;
        for (std::size_t i = 0; i < coeffs_.size(); ++i)
        {
            if (coeffs_[i].is_zero())
                continue;
            if (!out.empty())
                out += " + ";
            out += coeffs_[i].to_string();
            if (i > 0)
                out += std::string("*") + var;
            if (i > 1)
                out += "^" + std::to_string(i);
        }
        return out;
    }

  private:
    void trim()
    {
        while (!coeffs_.empty() && coeffs_.back().is_zero())
            coeffs_.pop_back();
    }

    std::vector<ComplexRational> coeffs_;
};

inline ComplexPoly derivative(const ComplexPoly& p)
{
    std::vector<ComplexRational> out;
    for (std::size_t i = 1; i < p.coeffs().size(); ++i)
        out.push_back(ComplexRational(mpq_class(static_cast<long>(i))) * p.coeffs()[i]);
    return ComplexPoly(std::move(out));
}

/// Euclidean division a = quotient * b + remainder with deg remainder < deg b.
inline std::pair<ComplexPoly, ComplexPoly> divide(const ComplexPoly& a, const ComplexPoly& b)
{
    if (b.is_zero())
        throw InputError("polynomial division by zero");
    std::vector<ComplexRational> rem = a.coeffs();
    const std::size_t db = static_cast<std::size_t>(b.degree());
    if (rem.size() <= db)
        return {ComplexPoly(), a};
    std::vector<ComplexRational> quo(rem.size() - db);
    const ComplexRational inv_lead = ComplexRational(1) / b.coeffs().back();
    for (std::size_t k = quo.size(); k-- > 0;)
    {
        const ComplexRational c = rem[k + db] * inv_lead;
        quo[k] = c;
        if (c.is_zero())
            continue;
        for (std::size_t j = 0; j <= db; ++j)
            rem[k + j] = rem[k + j] - c * b.coeffs()[j];
    }
    rem.resize(db);
    return {ComplexPoly(std::move(quo)), ComplexPoly(std::move(rem))};
}

inline ComplexPoly monic(const ComplexPoly& p)
{
    if (p.is_zero())
        return p;
    return (ComplexRational(1) / p.coeffs().back()) * p;
}

/// Monic greatest common divisor (zero only if both inputs are zero).
inline ComplexPoly gcd(ComplexPoly a, ComplexPoly b)
{
    while (!b.is_zero())
    {
        ComplexPoly r = monic(divide(a, b).second);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

/// Exact quotient; throws if `b` does not divide `a`.
inline ComplexPoly exact_quotient(const ComplexPoly& a, const ComplexPoly& b)
{
    auto [q, r] = divide(a, b);
    if (!r.is_zero())
        throw NumericalError("polynomial division left a remainder");
    return q;
}

namespace detail
{

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t m)
{
    std::uint64_t r = 1;
    for (; e > 0; e >>= 1, b = mul_mod(b, b, m))
        if (e & 1)
            r = mul_mod(r, b, m);
    return r;
}

// Image of a rational in Z/m, or nullopt if the denominator vanishes there.
inline std::optional<std::uint64_t> rational_mod(const mpq_class& x, std::uint64_t m)
{
    const mpz_class mz(std::to_string(m), 10);
    const mpz_class den = x.get_den() % mz;
    if (den == 0)
        return std::nullopt;
    mpz_class num = x.get_num() % mz;
    if (num < 0)
        num += mz;
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mz.get_mpz_t());
    return static_cast<std::uint64_t>(mpz_class(num * inv % mz).get_ui());
}

// Degree of gcd(a, b) over Z/m for a prime m; inputs ascending, trailing entries nonzero.
inline int gcd_degree_mod(std::vector<std::uint64_t> a, std::vector<std::uint64_t> b, std::uint64_t m)
{
    auto trim = [](std::vector<std::uint64_t>& v) {
        while (!v.empty() && v.back() == 0)
            v.pop_back();
    };
    trim(a);
    trim(b);
    while (!b.empty())
    {
        const std::uint64_t inv = pow_mod(b.back(), m - 2, m);
        while (a.size() >= b.size())
        {
            const std::uint64_t c = mul_mod(a.back(), inv, m);
            const std::size_t shift = a.size() - b.size();
            for (std::size_t j = 0; j < b.size(); ++j)
                a[shift + j] = (a[shift + j] + m - mul_mod(c, b[j], m)) % m;
            trim(a);
        }
        std::swap(a, b);
    }
    return static_cast<int>(a.size()) - 1;
}

} // namespace detail

/// True only if `p` is certainly square-free: for a prime m = 1 (mod 4) that keeps every
/// denominator and the leading coefficient nonzero, reduction maps Z[i] into Z/m
/// (i to a square root of -1) and can only enlarge gcd(p, p'); a trivial modular gcd
/// therefore proves the exact one trivial. False means "not certified", not "repeated root".
inline bool certainly_square_free(const ComplexPoly& p)
{
    if (p.degree() < 1)
        return false;
    for (std::uint64_t m : {1000000009ull, 998244353ull, 754974721ull})
    {
        std::uint64_t root_minus_one = 0;
        for (std::uint64_t g = 2; root_minus_one == 0; ++g)
        {
            const std::uint64_t x = detail::pow_mod(g, (m - 1) / 4, m);
            if (detail::mul_mod(x, x, m) == m - 1)
                root_minus_one = x;
        }
        std::vector<std::uint64_t> image;
        bool usable = true;
        for (const auto& c : p.coeffs())
        {
            const auto re = detail::rational_mod(c.re, m), im = detail::rational_mod(c.im, m);
            if (!re || !im)
            {
                usable = false;
                break;
            }
            image.push_back((*re + detail::mul_mod(*im, root_minus_one, m)) % m);
        }
        if (!usable || image.back() == 0)
            continue;
        std::vector<std::uint64_t> deriv;
        for (std::size_t i = 1; i < image.size(); ++i)
            deriv.push_back(detail::mul_mod(i % m, image[i], m));
        if (detail::gcd_degree_mod(image, deriv, m) == 0)
            return true;
    }
    return false;
}

/// Yun's square-free decomposition: p = lead * prod factor^multiplicity with pairwise coprime,
/// square-free, monic factors of positive degree.
inline std::vector<std::pair<ComplexPoly, int>> square_free_decomposition(const ComplexPoly& p)
{
    if (p.degree() < 1)
        return {};
    const ComplexPoly dp = derivative(p);
    const ComplexPoly g = gcd(p, dp);
    ComplexPoly b = exact_quotient(p, g);
    ComplexPoly d = exact_quotient(dp, g) - derivative(b);
    std::vector<std::pair<ComplexPoly, int>> out;
    for (int i = 1; b.degree() >= 1; ++i)
    {
        const ComplexPoly a = gcd(b, d);
        b = exact_quotient(b, a);
        const ComplexPoly c = exact_quotient(d, a);
        d = c - derivative(b);
        if (a.degree() >= 1)
            out.emplace_back(a, i);
    }
    return out;
}

} // namespace relroots
