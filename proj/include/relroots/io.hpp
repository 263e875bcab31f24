#pragma once

#include <cctype>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include <gmpxx.h>
#include <json.hpp>

#include "relroots/bigfloat.hpp"
#include "relroots/complex_poly.hpp"
#include "relroots/error.hpp"
#include "relroots/graph.hpp"
#include "relroots/poly.hpp"
#include "relroots/roots.hpp"
#include "relroots/stability.hpp"

namespace relroots
{

using json = nlohmann::ordered_json;

inline std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline json parse_json(const std::string& text)
{
    try
    {
        return json::parse(text);
    }
    catch (const json::parse_error& e)
    {
        throw InputError(std::string("malformed JSON: ") + e.what());
    }
}

// ---------------------------------------------------------------------------
// Graph JSON: {"n": <int>, "edges": [[u, v, mult], ...]}
// ---------------------------------------------------------------------------

inline Multigraph graph_from_json(const json& doc)
{
    if (!doc.is_object() || !doc.contains("n") || !doc.contains("edges"))
        throw InputError("graph JSON needs fields \"n\" and \"edges\"");
    if (!doc["n"].is_number_integer())
        throw InputError("graph field \"n\" must be an integer");
    if (!doc["edges"].is_array())
        throw InputError("graph field \"edges\" must be an array");
    const auto n = doc["n"].get<std::int64_t>();
    if (n < 0 || n > 100'000'000)
        throw InputError("graph field \"n\" out of range");
    std::vector<Edge> edges;
    for (const auto& e : doc["edges"])
    {
        if (!e.is_array() || e.size() != 3 ||
            !std::all_of(e.begin(), e.end(), [](const json& x) { return x.is_number_integer(); }))
            throw InputError("each edge must be [u, v, mult] with integer entries");
        const auto u = e[0].get<std::int64_t>(), v = e[1].get<std::int64_t>();
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw InputError("vertex id out of range in edge [" + std::to_string(u) + ", " + std::to_string(v) + "]");
        edges.push_back({static_cast<Vertex>(u), static_cast<Vertex>(v), e[2].get<Multiplicity>()});
    }
    return Multigraph(static_cast<int>(n), edges);
}

inline Multigraph parse_graph(const std::string& text) { return graph_from_json(parse_json(text)); }

inline json graph_to_json(const Multigraph& g)
{
    json edges = json::array();
    for (const auto& e : g.edges())
        edges.push_back({e.u, e.v, e.mult});
    return {{"n", g.vertex_count()}, {"edges", edges}};
}

// ---------------------------------------------------------------------------
// Polynomial JSON: {"var": "q", "coeffs": ["num/den", ...]}, ascending degree
// ---------------------------------------------------------------------------

inline std::string rational_string(const mpq_class& x)
{
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

inline mpq_class parse_rational(const std::string& text)
{
    mpq_class out;
    const auto slash = text.find('/');
    const std::string num = text.substr(0, slash);
    const std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
    auto integer = [&](const std::string& s) {
        std::size_t start = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
        if (s.size() == start || !std::all_of(s.begin() + static_cast<std::ptrdiff_t>(start), s.end(),
                                              [](unsigned char c) { return std::isdigit(c); }))
            throw InputError("malformed rational \"" + text + "\"");
        return mpz_class(s[0] == '+' ? s.substr(1) : s, 10);
    };
    const mpz_class d = integer(den);
    if (d == 0)
        throw InputError("zero denominator in \"" + text + "\"");
    out = make_rational(integer(num), d);
    return out;
}

inline json poly_to_json(const RatPoly& p, const std::string& var = "q")
{
    json coeffs = json::array();
    for (const auto& c : p.coeffs())
        coeffs.push_back(rational_string(c));
    return {{"var", var}, {"coeffs", coeffs}};
}

inline RatPoly poly_from_json(const json& doc)
{
    if (!doc.is_object() || !doc.contains("coeffs") || !doc["coeffs"].is_array())
        throw InputError("polynomial JSON needs a \"coeffs\" array");
    std::vector<mpq_class> coeffs;
    for (const auto& c : doc["coeffs"])
    {
        if (c.is_string())
            coeffs.push_back(parse_rational(c.get<std::string>()));
        else if (c.is_number_integer())
            coeffs.emplace_back(mpz_class(std::to_string(c.get<std::int64_t>())));
        else
            throw InputError("polynomial coefficients must be \"num/den\" strings");
    }
    return RatPoly(std::move(coeffs));
}

// ---------------------------------------------------------------------------
// Polynomial literals such as "q-2", "(2+3i)q^2 - 1/2", "0.5*q^3 + i"
// ---------------------------------------------------------------------------

namespace detail
{

class LiteralParser
{
  public:
    explicit LiteralParser(std::string text, char var) : text_(std::move(text)), var_(var) {}

    ComplexPoly parse()
    {
        auto terms = sum(true);
        skip_space();
        if (pos_ != text_.size())
            fail("unexpected character");
        return ComplexPoly(std::move(terms));
    }

  private:
    [[noreturn]] void fail(const std::string& what) const
    {
        throw InputError("polynomial literal \"" + text_ + "\": " + what + " at position " + std::to_string(pos_));
    }

    void skip_space()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool accept(char c)
    {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c)
        {
            ++pos_;
            return true;
        }
        return false;
    }

    bool peek_digit()
    {
        skip_space();
        return pos_ < text_.size() && (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.');
    }

    static void add(std::vector<ComplexRational>& into, std::size_t degree, const ComplexRational& c)
    {
        if (into.size() <= degree)
            into.resize(degree + 1);
        into[degree] = into[degree] + c;
    }

    std::vector<ComplexRational> sum(bool allow_var)
    {
        std::vector<ComplexRational> out;
        bool first = true;
        while (true)
        {
            skip_space();
            bool negative = false;
            if (accept('-'))
                negative = true;
            else if (!accept('+') && !first)
                break;
            if (pos_ >= text_.size() && !first)
                fail("dangling sign");
            auto [coeff, degree] = term(allow_var);
            add(out, degree, negative ? -coeff : coeff);
            first = false;
        }
        if (first)
            fail("empty expression");
        return out;
    }

    mpq_class number()
    {
        skip_space();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
        std::string whole = text_.substr(start, pos_ - start);
        mpq_class value;
        if (pos_ < text_.size() && text_[pos_] == '.')
        {
            ++pos_;
            const std::size_t frac_start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            const std::string frac = text_.substr(frac_start, pos_ - frac_start);
            if (whole.empty() && frac.empty())
                fail("malformed number");
            mpz_class scale;
            mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
            value = make_rational(mpz_class(whole.empty() ? "0" : whole, 10) * scale + mpz_class(frac.empty() ? "0" : frac, 10), scale);
        }
        else
        {
            if (whole.empty())
                fail("expected a number");
            value = mpq_class(mpz_class(whole, 10));
        }
        if (pos_ < text_.size() && text_[pos_] == '/')
        {
            ++pos_;
            const std::size_t den_start = pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                ++pos_;
            if (den_start == pos_)
                fail("expected a denominator");
            mpz_class den(text_.substr(den_start, pos_ - den_start), 10);
            if (den == 0)
                fail("zero denominator");
            value /= mpq_class(den);
        }
        value.canonicalize();
        return value;
    }

    // One factor: number, i, var, var^k, or a parenthesized constant.
    std::pair<ComplexRational, std::size_t> factor(bool allow_var)
    {
        skip_space();
        if (accept('('))
        {
            auto inner = sum(false);
            if (!accept(')'))
                fail("expected ')'");
            return {inner.empty() ? ComplexRational() : inner[0], 0};
        }
        if (peek_digit())
        {
            ComplexRational c(number());
            if (accept('i'))
                c = ComplexRational(0, c.re);
            return {c, 0};
        }
        if (accept('i'))
            return {ComplexRational(0, 1), 0};
        if (accept(var_))
        {
            if (!allow_var)
                fail("variable inside a parenthesized coefficient");
            std::size_t degree = 1;
            if (accept('^'))
            {
                skip_space();
                const std::size_t start = pos_;
                while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                    ++pos_;
                if (start == pos_)
                    fail("expected an exponent");
                degree = std::stoul(text_.substr(start, pos_ - start));
            }
            return {ComplexRational(1), degree};
        }
        fail("expected a term");
    }

    // Product of factors, with optional '*' between them and '/ number' divisors.
    std::pair<ComplexRational, std::size_t> term(bool allow_var)
    {
        auto [c, degree] = factor(allow_var);
        while (true)
        {
            skip_space();
            if (pos_ >= text_.size())
                break;
            const char next = text_[pos_];
            if (next == '/')
            {
                ++pos_;
                skip_space();
                if (!peek_digit())
                    fail("expected a number after '/'");
                const mpq_class d = number();
                if (d == 0)
                    fail("division by zero");
                c = c / ComplexRational(d);
                continue;
            }
            if (next == '*')
                ++pos_;
            else if (!(next == '(' || next == 'i' || next == var_ || std::isdigit(static_cast<unsigned char>(next))))
                break;
            auto [c2, d2] = factor(allow_var);
            c = c * c2;
            degree += d2;
        }
        return {c, degree};
    }

    std::string text_;
    char var_;
    std::size_t pos_ = 0;
};

} // namespace detail

inline ComplexPoly parse_poly_literal(const std::string& text, char var = 'q')
{
    return detail::LiteralParser(text, var).parse();
}

// ---------------------------------------------------------------------------
// Roots CSV and reports
// ---------------------------------------------------------------------------

/// Header re,im,modulus; 17 significant digits; descending modulus, then real part.
inline std::string roots_csv(const RootSet& rs)
{
    std::ostringstream out;
    out << "re,im,modulus\n";
    for (const auto& z : sorted_by_modulus(rs))
        out << z.re.scientific(17) << ',' << z.im.scientific(17) << ',' << z.modulus().scientific(17) << '\n';
    return out.str();
}

/// Scatter plot of roots in the complex plane against the unit circle.
inline std::string roots_svg(const RootSet& rs)
{
    const auto pts = rs.approx();
    double extent = 1.25;
    for (const auto& z : pts)
        extent = std::max({extent, std::abs(z.real()) * 1.1, std::abs(z.imag()) * 1.1});
    const double size = 480, half = size / 2, scale = half / extent;
    std::ostringstream out;
    out << std::setprecision(6);
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size << "\" viewBox=\"0 0 "
        << size << ' ' << size << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<line x1=\"0\" y1=\"" << half << "\" x2=\"" << size << "\" y2=\"" << half << "\" stroke=\"#bbb\"/>\n";
    out << "<line x1=\"" << half << "\" y1=\"0\" x2=\"" << half << "\" y2=\"" << size << "\" stroke=\"#bbb\"/>\n";
    out << "<circle cx=\"" << half << "\" cy=\"" << half << "\" r=\"" << scale
        << "\" fill=\"none\" stroke=\"#333\" stroke-dasharray=\"4 3\"/>\n";
    for (const auto& z : pts)
        out << "<circle cx=\"" << half + z.real() * scale << "\" cy=\"" << half - z.imag() * scale
            << "\" r=\"2.5\" fill=\"" << (std::abs(z) > 1 ? "#c0392b" : "#2c3e50") << "\"/>\n";
    out << "</svg>\n";
    return out.str();
}

inline json box_to_json(const ParamBox& box)
{
    return {{"a_lo", rational_string(box.a_lo)},
            {"a_hi", rational_string(box.a_hi)},
            {"b_lo", rational_string(box.b_lo)},
            {"b_hi", rational_string(box.b_hi)}};
}

inline json report_to_json(const SchurCohnReport& report)
{
    json signs = json::array();
    for (Sign s : report.signs)
        signs.push_back(std::string(1, sign_char(s)));
    json out{{"signs", signs},
             {"beta", report.beta ? json(*report.beta) : json(nullptr)},
             {"box", report.box ? box_to_json(*report.box) : json(nullptr)},
             {"subdivision_depth", report.subdivision_depth}};
    if (report.hypothesis_failed)
        out["hypothesis_failed"] = true;
    return out;
}

/// Parses "lo,hi,lo,hi" (a then b); each entry a rational or decimal literal.
inline ParamBox parse_box(const std::string& text)
{
    std::vector<mpq_class> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
    {
        auto p = parse_poly_literal(item);
        if (p.degree() > 0 || (!p.is_zero() && p.coeffs()[0].im != 0))
            throw InputError("box entries must be real numbers");
        values.push_back(p.is_zero() ? mpq_class(0) : p.coeffs()[0].re);
    }
    if (values.size() != 4)
        throw InputError("box must be a_lo,a_hi,b_lo,b_hi");
    ParamBox box{values[0], values[1], values[2], values[3]};
    box.validate();
    return box;
}

} // namespace relroots
