// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit status if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "relroots/chip_firing.hpp"
#include "relroots/closed_forms.hpp"
#include "relroots/reliability.hpp"
#include "relroots/roots.hpp"
#include "relroots/stability.hpp"
#include "relroots/substitution.hpp"
#include "support.hpp"

using namespace relroots;
using relroots::testing::poly;

namespace
{

struct Outcome
{
    bool pass = false;
    std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& title, const std::function<Outcome()>& body)
{
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try
    {
        outcome = body();
    }
    catch (const std::exception& e)
    {
        outcome = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failures += outcome.pass ? 0 : 1;
    std::printf("%s %2d  %s — %s (%.2fs)\n", outcome.pass ? "PASS" : "FAIL", id, title.c_str(), outcome.detail.c_str(),
                seconds);
    std::fflush(stdout);
}

// Counts checks and mismatches, keeping the description of the first mismatch.
struct Tally
{
    std::size_t checked = 0;
    std::size_t bad = 0;
    std::string first;

    void check(bool ok, const std::string& what)
    {
        ++checked;
        if (!ok && bad++ == 0)
            first = what;
    }
    Outcome outcome(const std::string& noun) const
    {
        std::ostringstream s;
        s << checked << ' ' << noun << ", " << bad << " mismatches";
        if (bad > 0)
            s << "; first: " << first;
        return {bad == 0, s.str()};
    }
};

std::string describe(const Multigraph& g)
{
    std::ostringstream s;
    s << "n=" << g.vertex_count() << " m=" << g.edge_count() << " edges";
    for (const auto& e : g.edges())
        s << " " << e.u << "-" << e.v << "x" << e.mult;
    return s.str();
}

Outcome table_rows()
{
    struct Row
    {
        int n;
        double re, im, modulus;
    };
    const Row expected[] = {{3, 0.6965978094, 0.7739344775, 1.0412603341},
                            {4, 0.7225077023, 0.7873461471, 1.0686118731},
                            {5, 0.7415248258, 0.7932060873, 1.0858337645},
                            {6, 0.7557913447, 0.7946437701, 1.0966673507}};
    std::ostringstream s;
    double worst = 0;
    for (const Row& row : expected)
    {
        const RatPoly h = deflate_one_minus_q(rel_family({row.n, row.n, 1, 6}), static_cast<std::size_t>(2 * row.n - 1));
        const BigComplex z = max_modulus_root(find_roots(h));
        worst = std::max({worst, std::abs(z.re.to_double() - row.re), std::abs(z.im.to_double() - row.im),
                          std::abs(z.modulus().to_double() - row.modulus)});
        s << "n=" << row.n << " " << z.re.fixed(10) << "+" << z.im.fixed(10) << "i; ";
    }
    s << "max deviation " << worst;
    return {worst <= 1e-8, s.str()};
}

std::string box_summary(const SchurCohnReport& r)
{
    std::ostringstream s;
    s << "signs " << r.sign_string() << ", beta " << (r.beta ? std::to_string(*r.beta) : "none") << ", depth "
      << r.subdivision_depth << ", leaves " << r.leaves;
    return s.str();
}

Outcome f3_certificate()
{
    const ParametricPoly f = build_fn(3);
    const auto r = schur_cohn_box(f, *published_param_box(9));
    const BivariatePoly m1 = schur_cohn_determinant_poly(f, 1);
    bool symbolic = true;
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
        {
            const mpq_class want = (j == 0 && i <= 1) ? mpq_class(4) : mpq_class(0);
            symbolic = symbolic && m1.coeff(i, j) == want;
        }
    const bool ok = r.beta == 1 && r.sign_string() == "-" && symbolic;
    return {ok, box_summary(r) + (symbolic ? ", M_1 = 4a + 4" : ", M_1 differs from 4a + 4")};
}

Outcome f4_certificate()
{
    const auto r = schur_cohn_box(build_fn(4), *published_param_box(7));
    return {r.beta == 1 && r.sign_string() == "++-", box_summary(r)};
}

Outcome f5_f6_certificates()
{
    // The R-box must contain the greatest-modulus ATR root of G_{3,3}^{1,6}.
    const ParamBox root_box = g33_root_box();
    const BigComplex R = max_modulus_root(find_roots(deflate_one_minus_q(rel_family({3, 3, 1, 6}), 5)));
    const mpq_class re = R.re.to_rational(), im = R.im.to_rational();
    const bool contains = root_box.contains(ParamBox{re, re, im, im});
    const ParamBox box = param_box_from_root(root_box, 6);
    std::ostringstream s;
    s << "R in R-box: " << (contains ? "yes" : "no") << "; box [" << box.a_lo.get_d() << ", " << box.a_hi.get_d()
      << "] x [" << box.b_lo.get_d() << ", " << box.b_hi.get_d() << "]";
    bool ok = contains;
    for (int n : {5, 6})
    {
        const auto r = schur_cohn_box(build_fn(n), box);
        ok = ok && r.beta.has_value() && *r.beta >= 1;
        s << "; f_" << n << ": " << box_summary(r);
    }
    return {ok, s.str()};
}

Outcome constructions()
{
    struct Want
    {
        Multiplicity k;
        int n, vertices, edges;
        Multiplicity connectivity;
    };
    const Want wants[] = {{9, 3, 546, 1080, 2}, {7, 4, 846, 2100, 3}, {6, 5, 1086, 3240, 4}, {6, 6, 1446, 5040, 5}};
    std::ostringstream s;
    bool ok = true;
    for (const Want& w : wants)
    {
        const Multigraph g = construct_Gkn(w.k, w.n);
        const Multiplicity lambda = edge_connectivity(g);
        const bool row = g.vertex_count() == w.vertices && g.edge_count() == w.edges && g.is_simple() &&
                         lambda == w.connectivity;
        ok = ok && row;
        s << "G(" << w.k << "," << w.n << ")=(" << g.vertex_count() << "," << g.edge_count() << ","
          << (g.is_simple() ? "simple" : "multi") << ",lambda " << lambda << ") ";
    }
    s << "[full edge connectivity, no sampling]";
    return {ok, s.str()};
}

Outcome closed_forms()
{
    const RatPoly one_minus = one_minus_q();
    const RatPoly q = poly({0, 1});
    const bool a = rel_Kn_minus(3) == one_minus.pow(2) && rel_bruteforce(complete_minus_edge(3)) == one_minus.pow(2);
    const RatPoly sp3 = mpq_class(2) * q * one_minus;
    const bool b = sprel_Kn_minus(3) == sp3 && sprel(complete_minus_edge(3), {0, 1}) == sp3;
    const RatPoly sp4 = mpq_class(8) * one_minus.pow(2) * q.pow(4) + mpq_class(2) * one_minus.pow(3) * q.pow(3);
    const bool c = sprel(complete_graph(4), {0, 1}) == sp4;
    std::ostringstream s;
    s << "Rel(K3-) " << (a ? "ok" : "wrong") << ", spRel(K3-) " << (b ? "ok" : "wrong") << ", spRel(K4) "
      << (c ? "ok" : "wrong");
    return {a && b && c, s.str()};
}

Outcome oracle_equivalence()
{
    std::mt19937_64 rng(20240607);
    Tally t;
    std::size_t sinks = 0;
    for (int trial = 0; trial < 200; ++trial)
    {
        const Multigraph g = relroots::testing::random_connected(rng, 2, 7, 14);
        const RatPoly brute = rel_bruteforce(g);
        const HVector h = f_to_h(f_vector(g));
        bool ok = rel_deletion_contraction(g) == brute && rel_via_blocks(g) == brute;
        for (Vertex w = 0; w < g.vertex_count(); ++w, ++sinks)
            ok = ok && h_vector_chip(g, w) == h;
        t.check(ok, describe(g));
    }
    auto out = t.outcome("multigraphs");
    out.detail += ", " + std::to_string(sinks) + " sink choices";
    return out;
}

Outcome h_vector_laws()
{
    std::mt19937_64 rng(20240607);
    Tally t;
    for (int trial = 0; trial < 200; ++trial)
    {
        const Multigraph g = relroots::testing::random_connected(rng, 2, 7, 14);
        const HVector h = f_to_h(f_vector(g));
        mpz_class total = 0;
        for (const auto& x : h.values)
            total += x;
        t.check(h_vector_violations(h).empty() && total == spanning_tree_count(g), describe(g));
    }
    std::string ratios;
    bool kn_ok = true;
    for (int n = 3; n <= 8; ++n)
    {
        const std::int64_t m = n * (n - 1) / 2;
        const HVector h = n >= 7 ? h_vector_chip(complete_graph(n), 0) : rel_to_h(rel_Kn(n), n, m);
        const auto& v = h.values;
        const mpq_class ratio = make_rational(v[v.size() - 2], v.back());
        kn_ok = kn_ok && ratio == make_rational(n - 2, 2) && h_vector_violations(h).empty();
        ratios += " K" + std::to_string(n) + ":" + ratio.get_str();
    }
    auto out = t.outcome("graphs (positivity, log-concavity, H(1) = spanning trees)");
    out.pass = out.pass && kn_ok;
    out.detail += "; top ratios" + ratios + " (chip-firing for n = 7, 8)";
    return out;
}

Outcome root_bounds()
{
    std::mt19937_64 rng(31415);
    Tally t;
    std::size_t simple_cases = 0;
    double worst_slack = -1e300;
    for (int trial = 0; trial < 100; ++trial)
    {
        const Multigraph g = relroots::testing::random_two_connected(rng, 3, 8, 16, trial % 2 == 1);
        const auto r = check_root_bound(g);
        simple_cases += r.simple_vertex;
        worst_slack = std::max(worst_slack, r.max_modulus - r.bound);
        t.check(r.holds(), describe(g) + " max modulus " + std::to_string(r.max_modulus));
    }
    auto out = t.outcome("2-connected graphs");
    std::ostringstream s;
    s << " (" << simple_cases << " with a vertex free of multiple edges); max(|z| - bound) = " << worst_slack;
    out.detail += s.str();
    return out;
}

Outcome substitution_soundness()
{
    std::mt19937_64 rng(27182);
    Tally t;
    int pairs = 0;
    while (pairs < 50)
    {
        const Multigraph g = relroots::testing::random_connected(rng, 2, 4, 5);
        const Multigraph hg = relroots::testing::random_connected(rng, 2, 4, 5);
        const Vertex u = std::uniform_int_distribution<int>(0, hg.vertex_count() - 1)(rng);
        Vertex v = std::uniform_int_distribution<int>(0, hg.vertex_count() - 2)(rng);
        v += v >= u;
        const Gadget h{hg, u, v};
        const Multigraph big = edge_substitute_graph(g, h);
        if (big.edge_count() > 14)
            continue;
        ++pairs;
        t.check(edge_substitute_poly(g, h) == rel_bruteforce(big), describe(g) + " with gadget " + describe(hg));
    }
    for (Multiplicity k = 1; k <= 4; ++k)
        for (const Multigraph& g : {complete_graph(4), cycle_graph(5), build_family_graph({2, 2, 1, 2})})
            t.check(edge_substitute_poly(g, bundle_gadget(k)) == substitute_power(rel_auto(g), k),
                    "bundle k=" + std::to_string(k) + " on " + describe(g));
    return t.outcome("checks (50 random pairs + 12 bundle cases)");
}

Outcome unit_disk_negatives()
{
    std::ostringstream s;
    bool ok = true;
    for (int n = 3; n <= 6; ++n)
    {
        // Rel(K_n^-) = (1-q)^{n-1} H(q); the nontrivial roots are those of H.
        const RatPoly h = deflate_one_minus_q(rel_Kn_minus(n), static_cast<std::size_t>(n - 1));
        double top = 0;
        if (h.degree() >= 1)
            top = max_modulus_root(find_roots(h)).modulus().to_double();
        ok = ok && top < 1;
        s << "K" << n << "-: " << top << "; ";
    }
    for (int c : {1, 2})
    {
        const double top = max_modulus_root(find_roots(rel_family({c, c, 1, 6}))).modulus().to_double();
        ok = ok && top <= 1 + 1e-9;
        s << "G_{" << c << "," << c << "}^{1,6}: " << top << "; ";
    }
    s << "(the root q = 1 of multiplicity n-1 sits on the circle)";
    return {ok, s.str()};
}

Outcome schur_cohn_vs_solver()
{
    // Small coefficients make |a_0| = |a_n| (so M_1 = 0) and other exact zeros common. The
    // sign-change count is only defined when every M_k is nonzero; singular draws must be
    // reported as a failed hypothesis without a beta, and they do not count toward the 200.
    std::mt19937_64 rng(16180);
    std::uniform_int_distribution<long> coeff(-9, 9);
    std::uniform_int_distribution<int> degree(1, 8);
    Tally t;
    std::size_t near_circle_draws = 0, singular = 0, singular_misreported = 0, complex_cases = 0;
    std::string misreport;
    for (std::size_t draw = 0; t.checked < 200; ++draw)
    {
        const int d = degree(rng);
        const bool gaussian = draw % 2 == 1;
        std::vector<ComplexRational> c;
        for (int i = 0; i <= d; ++i)
            c.emplace_back(mpq_class(coeff(rng)), gaussian ? mpq_class(coeff(rng)) : mpq_class(0));
        if (c.back().is_zero())
            c.back() = ComplexRational(1);
        const ComplexPoly p(std::move(c));
        const RootSet rs = find_roots(p);
        int outside = 0;
        bool near_circle = false;
        for (const auto& z : rs.roots)
        {
            const double r = z.modulus().to_double();
            near_circle = near_circle || std::abs(r - 1) < 1e-6;
            outside += r > 1;
        }
        if (near_circle)
        {
            ++near_circle_draws;
            continue;
        }
        const auto report = schur_cohn(p);
        const auto dets = schur_cohn_determinants(p);
        const bool has_zero = std::any_of(dets.begin(), dets.end(), [](const mpq_class& m) { return m == 0; });
        if (has_zero)
        {
            ++singular;
            if (!report.hypothesis_failed || report.beta.has_value())
            {
                if (singular_misreported++ == 0)
                    misreport = p.to_string();
            }
            continue;
        }
        complex_cases += gaussian;
        t.check(!report.hypothesis_failed && report.beta == outside,
                p.to_string() + ": Schur-Cohn " + (report.beta ? std::to_string(*report.beta) : "undetermined") +
                    ", solver " + std::to_string(outside));
    }
    auto out = t.outcome("regular polynomials");
    out.pass = out.pass && singular_misreported == 0;
    out.detail += " (" + std::to_string(complex_cases) + " with Gaussian coefficients); " + std::to_string(singular) +
                  " singular draws (some M_k = 0) all reported as hypothesis failure" +
                  (singular_misreported ? " EXCEPT " + std::to_string(singular_misreported) + ", first " + misreport : "") +
                  "; " + std::to_string(near_circle_draws) + " draws with a root within 1e-6 of the circle skipped";
    return out;
}

} // namespace

int main()
{
    criterion(1, "greatest-modulus ATR roots of G_{n,n}^{1,6}, n=3..6, within 1e-8", table_rows);
    criterion(2, "f_3 over the k=9 box", f3_certificate);
    criterion(3, "f_4 over the k=7 box", f4_certificate);
    criterion(4, "f_5 and f_6 over the derived k=6 box", f5_f6_certificates);
    criterion(5, "G^(k,n) constructions", constructions);
    criterion(6, "closed-form identities", closed_forms);
    criterion(7, "brute force = deletion-contraction = blocks, F-to-H = chip-firing", oracle_equivalence);
    criterion(8, "H-vector laws", h_vector_laws);
    criterion(9, "root-modulus and ratio bounds on 2-connected graphs", root_bounds);
    criterion(10, "edge-substitution soundness", substitution_soundness);
    criterion(11, "unit-disk negatives", unit_disk_negatives);
    criterion(12, "Schur-Cohn count = solver count", schur_cohn_vs_solver);
    std::printf("%d of 12 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
