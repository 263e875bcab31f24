#pragma once

#include <algorithm>
#include <complex>
#include <string>
#include <utility>

#include <gmpxx.h>
#include <mpfr.h>

namespace relroots
{

/// RAII handle on an MPFR number with an explicit precision. Binary operations
/// produce a result at the larger of the operand precisions, rounded to nearest.
class BigFloat
{
  public:
    explicit BigFloat(mpfr_prec_t bits = 53)
    {
        mpfr_init2(v_, bits);
        mpfr_set_zero(v_, 1);
    }

    BigFloat(double x, mpfr_prec_t bits)
    {
        mpfr_init2(v_, bits);
        mpfr_set_d(v_, x, MPFR_RNDN);
    }

    BigFloat(const mpq_class& x, mpfr_prec_t bits)
    {
        mpfr_init2(v_, bits);
        mpfr_set_q(v_, x.get_mpq_t(), MPFR_RNDN);
    }

    BigFloat(const BigFloat& other)
    {
        mpfr_init2(v_, other.precision());
        mpfr_set(v_, other.v_, MPFR_RNDN);
    }

    BigFloat(BigFloat&& other) noexcept
    {
        mpfr_init2(v_, MPFR_PREC_MIN);
        mpfr_swap(v_, other.v_);
    }

    BigFloat& operator=(const BigFloat& other)
    {
        if (this != &other)
        {
            mpfr_set_prec(v_, other.precision());
            mpfr_set(v_, other.v_, MPFR_RNDN);
        }
        return *this;
    }

    BigFloat& operator=(BigFloat&& other) noexcept
    {
        mpfr_swap(v_, other.v_);
        return *this;
    }

    ~BigFloat() { mpfr_clear(v_); }

    mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
    mpfr_ptr get() { return v_; }
    mpfr_srcptr get() const { return v_; }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    /// Exact rational value of the binary float.
    mpq_class to_rational() const
    {
        mpq_class out;
        mpfr_get_q(out.get_mpq_t(), v_);
        return out;
    }

    /// Fixed-point decimal with `digits` fractional digits, round half to even.
    std::string fixed(int digits) const { return format("%.*RNf", digits); }

    /// Scientific notation with `significant` significant digits.
    std::string scientific(int significant) const { return format("%.*RNe", significant - 1); }

#define RELROOTS_BIGFLOAT_BINOP(op, fn)                                                                      \
    friend BigFloat operator op(const BigFloat& a, const BigFloat& b)                                        \
    {                                                                                                        \
        BigFloat r(std::max(a.precision(), b.precision()));                                                  \
        fn(r.v_, a.v_, b.v_, MPFR_RNDN);                                                                     \
        return r;                                                                                            \
    }                                                                                                        \
    BigFloat& operator op##=(const BigFloat& b)                                                              \
    {                                                                                                        \
        fn(v_, v_, b.v_, MPFR_RNDN);                                                                         \
        return *this;                                                                                        \
    }
    RELROOTS_BIGFLOAT_BINOP(+, mpfr_add)
    RELROOTS_BIGFLOAT_BINOP(-, mpfr_sub)
    RELROOTS_BIGFLOAT_BINOP(*, mpfr_mul)
    RELROOTS_BIGFLOAT_BINOP(/, mpfr_div)
#undef RELROOTS_BIGFLOAT_BINOP

    friend BigFloat operator-(const BigFloat& a)
    {
        BigFloat r(a.precision());
        mpfr_neg(r.v_, a.v_, MPFR_RNDN);
        return r;
    }

    friend int compare(const BigFloat& a, const BigFloat& b) { return mpfr_cmp(a.v_, b.v_); }
    friend bool operator<(const BigFloat& a, const BigFloat& b) { return compare(a, b) < 0; }
    friend bool operator>(const BigFloat& a, const BigFloat& b) { return compare(a, b) > 0; }
    friend bool operator<=(const BigFloat& a, const BigFloat& b) { return compare(a, b) <= 0; }
    friend bool operator>=(const BigFloat& a, const BigFloat& b) { return compare(a, b) >= 0; }

    friend BigFloat abs(const BigFloat& a)
    {
        BigFloat r(a.precision());
        mpfr_abs(r.v_, a.v_, MPFR_RNDN);
        return r;
    }

    friend BigFloat sqrt(const BigFloat& a)
    {
        BigFloat r(a.precision());
        mpfr_sqrt(r.v_, a.v_, MPFR_RNDN);
        return r;
    }

    friend BigFloat hypot(const BigFloat& a, const BigFloat& b)
    {
        BigFloat r(std::max(a.precision(), b.precision()));
        mpfr_hypot(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }

    friend BigFloat atan2(const BigFloat& y, const BigFloat& x)
    {
        BigFloat r(std::max(x.precision(), y.precision()));
        mpfr_atan2(r.v_, y.v_, x.v_, MPFR_RNDN);
        return r;
    }

    /// x^(1/k) for x >= 0.
    friend BigFloat root(const BigFloat& x, unsigned long k)
    {
        BigFloat r(x.precision());
        mpfr_rootn_ui(r.v_, x.v_, k, MPFR_RNDN);
        return r;
    }

    friend BigFloat cos(const BigFloat& x)
    {
        BigFloat r(x.precision());
        mpfr_cos(r.v_, x.v_, MPFR_RNDN);
        return r;
    }

    friend BigFloat sin(const BigFloat& x)
    {
        BigFloat r(x.precision());
        mpfr_sin(r.v_, x.v_, MPFR_RNDN);
        return r;
    }

    /// 2^e at the given precision.
    static BigFloat power_of_two(long e, mpfr_prec_t bits)
    {
        BigFloat r(bits);
        mpfr_set_ui_2exp(r.v_, 1, e, MPFR_RNDN);
        return r;
    }

  private:
    std::string format(const char* pattern, int digits) const
    {
        char* buffer = nullptr;
        mpfr_asprintf(&buffer, pattern, digits, v_);
        std::string out(buffer);
        mpfr_free_str(buffer);
        return out;
    }

    mpfr_t v_;
};

/// Complex number with BigFloat parts.
struct BigComplex
{
    BigFloat re;
    BigFloat im;

    explicit BigComplex(mpfr_prec_t bits = 53) : re(bits), im(bits) {}
    BigComplex(BigFloat r, BigFloat i) : re(std::move(r)), im(std::move(i)) {}
    BigComplex(std::complex<double> z, mpfr_prec_t bits) : re(z.real(), bits), im(z.imag(), bits) {}

    mpfr_prec_t precision() const { return re.precision(); }
    std::complex<double> to_complex() const { return {re.to_double(), im.to_double()}; }

    BigFloat norm() const { return re * re + im * im; }
    BigFloat modulus() const { return hypot(re, im); }

    friend BigComplex operator+(const BigComplex& a, const BigComplex& b) { return {a.re + b.re, a.im + b.im}; }
    friend BigComplex operator-(const BigComplex& a, const BigComplex& b) { return {a.re - b.re, a.im - b.im}; }

    friend BigComplex operator*(const BigComplex& a, const BigComplex& b)
    {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }

    friend BigComplex operator/(const BigComplex& a, const BigComplex& b)
    {
        BigFloat d = b.norm();
        return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
    }
};

} // namespace relroots
