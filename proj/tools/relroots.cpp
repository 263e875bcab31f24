#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "relroots/chip_firing.hpp"
#include "relroots/closed_forms.hpp"
#include "relroots/error.hpp"
#include "relroots/graph.hpp"
#include "relroots/io.hpp"
#include "relroots/poly.hpp"
#include "relroots/reliability.hpp"
#include "relroots/roots.hpp"
#include "relroots/stability.hpp"
#include "relroots/substitution.hpp"

using namespace relroots;

namespace
{

struct RunConfig
{
    long precision_bits = 256;
    int digits = 10;
    std::string method = "auto";
    std::string out;
    std::size_t guard_m = kDefaultPairGuard;

    RootOptions root_options() const
    {
        if (precision_bits < 64 || precision_bits > 65536)
            throw InputError("--precision-bits must be in 64..65536");
        RootOptions opt;
        opt.precision_bits = precision_bits;
        opt.max_precision_bits = std::max<mpfr_prec_t>(opt.max_precision_bits, precision_bits);
        return opt;
    }
};

void emit(const RunConfig& cfg, const std::string& text)
{
    if (cfg.out.empty())
    {
        std::cout << text;
        return;
    }
    std::ofstream file(cfg.out, std::ios::binary);
    if (!file)
        throw InputError("cannot write " + cfg.out);
    file << text;
}

void write_file(const std::string& path, const std::string& text)
{
    std::ofstream file(path, std::ios::binary);
    if (!file)
        throw InputError("cannot write " + path);
    file << text;
}

FamilyParams parse_family(const std::string& text)
{
    std::vector<long> v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ','))
    {
        try
        {
            v.push_back(std::stol(item));
        }
        catch (const std::exception&)
        {
            throw InputError("--family expects m,n,a,b");
        }
    }
    if (v.size() != 4)
        throw InputError("--family expects m,n,a,b");
    FamilyParams p{static_cast<int>(v[0]), static_cast<int>(v[1]), v[2], v[3]};
    p.validate();
    return p;
}

RatPoly compute_rel(const Multigraph& g, const RunConfig& cfg, const std::string& family)
{
    require_connected(g, "rel");
    if (cfg.method == "brute")
        return rel_bruteforce(g, cfg.guard_m);
    if (cfg.method == "dc")
        return rel_deletion_contraction(g);
    if (cfg.method == "family")
    {
        if (family.empty())
            throw InputError("--method family needs --family m,n,a,b");
        const auto p = parse_family(family);
        if (!(build_family_graph(p) == g))
            throw InputError("graph does not match the family G_{m,n}^{a,b} given by --family");
        return rel_family(p);
    }
    return g.pair_count() <= cfg.guard_m ? rel_bruteforce(g, cfg.guard_m) : rel_deletion_contraction(g);
}

ComplexPoly load_poly_argument(const std::string& arg)
{
    std::ifstream probe(arg);
    if (probe)
        return ComplexPoly(poly_from_json(parse_json(read_file(arg))));
    return parse_poly_literal(arg);
}

std::string table1_csv(int max_n, const RunConfig& cfg)
{
    std::ostringstream out;
    out << "n,re,im,modulus\n";
    const auto opt = cfg.root_options();
    for (int n = 3; n <= max_n; ++n)
    {
        const RatPoly rel = rel_family({n, n, 1, 6});
        const RatPoly h = deflate_one_minus_q(rel, static_cast<std::size_t>(2 * n - 1));
        const BigComplex z = max_modulus_root(find_roots(h, opt));
        out << n << ',' << z.re.fixed(cfg.digits) << ',' << z.im.fixed(cfg.digits) << ','
            << z.modulus().fixed(cfg.digits) << '\n';
    }
    return out.str();
}

json certify(Multiplicity k, int n, const std::optional<ParamBox>& user_box, const RunConfig& cfg)
{
    if (k < 1)
        throw InputError("k must be at least 1");
    if (n < 3 || n > 6)
        throw InputError("certify supports n in 3..6");

    // The box of the parameter a + bi = r/(1-r), r a k-th root of the root R of G_{3,3}^{1,6}.
    std::string source;
    ParamBox box;
    if (user_box)
    {
        box = *user_box;
        source = "user";
    }
    else if (auto published = published_param_box(static_cast<int>(k)); published && (k == 9 || k == 7))
    {
        box = *published;
        source = "published";
    }
    else
    {
        box = param_box_from_root(g33_root_box(), static_cast<unsigned long>(k));
        source = "derived";
    }

    // R lies in the root box.
    const auto opt = cfg.root_options();
    const RatPoly base_h = deflate_one_minus_q(rel_family({3, 3, 1, 6}), 5);
    const BigComplex r = max_modulus_root(find_roots(base_h, opt));
    const ParamBox rb = g33_root_box();
    const mpq_class r_re = r.re.to_rational(), r_im = r.im.to_rational();
    const bool root_in_box = rb.a_lo <= r_re && r_re <= rb.a_hi && rb.b_lo <= r_im && r_im <= rb.b_hi;

    // Every ATR root of the gadget lies inside the unit disk.
    const RatPoly gadget_h = deflate_one_minus_q(rel_Kn_minus(n), static_cast<std::size_t>(n - 1));
    double gadget_h_max = 0;
    if (gadget_h.degree() >= 1)
        for (const auto& z : find_roots(gadget_h, opt).approx())
            gadget_h_max = std::max(gadget_h_max, std::abs(z));
    const bool gadget_inside = gadget_h_max < 1;

    const SchurCohnReport report = schur_cohn_box(build_fn(n), box);

    const Multigraph g = construct_Gkn(k, n);
    json out = report_to_json(report);
    out["k"] = k;
    out["n"] = n;
    out["box_source"] = source;
    out["root_box_contains_root"] = root_in_box;
    out["gadget_max_root_modulus_excluding_one"] = gadget_h_max;
    out["gadget_roots_inside_unit_disk"] = gadget_inside;
    out["graph"] = {{"vertices", g.vertex_count()}, {"edges", g.edge_count()}, {"simple", g.is_simple()}};
    out["pass"] = report.beta.has_value() && *report.beta >= 1 && gadget_inside && root_in_box;
    return out;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact all-terminal reliability polynomials, their roots, and Schur-Cohn certificates"};
    app.require_subcommand(1);
    app.fallthrough();

    RunConfig cfg;
    app.add_option("--precision-bits", cfg.precision_bits, "Working precision for root polishing")->capture_default_str();
    app.add_option("--digits", cfg.digits, "Decimal places in table output")->capture_default_str();
    app.add_option("--method", cfg.method, "Reliability method")
        ->check(CLI::IsMember({"auto", "brute", "dc", "family"}))
        ->capture_default_str();
    app.add_option("--out", cfg.out, "Write the result to this file instead of stdout");
    app.add_option("--guard-m", cfg.guard_m, "Largest number of vertex pairs for subset enumeration")->capture_default_str();

    std::string graph_path, family_spec;
    auto* rel = app.add_subcommand("rel", "Reliability polynomial of a graph as polynomial JSON");
    rel->add_option("graph", graph_path, "Graph JSON file")->required();
    rel->add_option("--family", family_spec, "m,n,a,b for --method family");

    std::string roots_input, svg_path;
    auto* roots = app.add_subcommand("roots", "Roots CSV of a graph's reliability polynomial or of a polynomial");
    roots->add_option("input", roots_input, "Graph JSON, polynomial JSON, or a polynomial literal such as q^2+1")->required();
    roots->add_option("--svg", svg_path, "Also write an SVG scatter of the roots");
    roots->add_option("--family", family_spec, "m,n,a,b for --method family");

    Vertex sink = 0;
    std::string hv_method = "fvector";
    auto* hvector = app.add_subcommand("hvector", "H-vector of a graph");
    hvector->add_option("graph", graph_path, "Graph JSON file")->required();
    hvector->add_option("--sink", sink, "Sink vertex for chip-firing")->capture_default_str();
    hvector->add_option("--via", hv_method, "fvector or chip")->check(CLI::IsMember({"fvector", "chip"}))->capture_default_str();

    int fm = 0, fn = 0;
    Multiplicity fa = 1, fb = 1;
    bool family_graph = false;
    auto* family = app.add_subcommand("family", "Reliability of the two-clique graph G_{m,n}^{a,b}");
    family->add_option("m", fm)->required();
    family->add_option("n", fn)->required();
    family->add_option("a", fa)->required();
    family->add_option("b", fb)->required();
    family->add_flag("--graph", family_graph, "Emit the graph JSON instead of the polynomial");

    std::string gadget_path, graph_out, r_literal;
    Vertex gu = 0, gv = 1;
    auto* substitute = app.add_subcommand("substitute", "Reliability of G with every edge replaced by a gadget H(u,v)");
    substitute->add_option("graph", graph_path, "Base graph JSON")->required();
    substitute->add_option("gadget", gadget_path, "Gadget graph JSON")->required();
    substitute->add_option("--u", gu, "First gadget terminal")->capture_default_str();
    substitute->add_option("--v", gv, "Second gadget terminal")->capture_default_str();
    substitute->add_option("--graph-out", graph_out, "Also write the substituted graph JSON");
    substitute->add_option("--r", r_literal,
                           "Instead, emit roots CSV of spRel(H) - r/(1-r) Rel(H) for this complex r");

    std::string sc_poly, sc_box;
    int sc_fn = 0;
    auto* schur = app.add_subcommand("schur-cohn", "Schur-Cohn count of roots outside the unit circle");
    schur->add_option("poly", sc_poly, "Polynomial literal or polynomial JSON file");
    schur->add_option("--fn", sc_fn, "Certify the parametric polynomial f_n (n in 3..6) over --box instead");
    schur->add_option("--box", sc_box, "a_lo,a_hi,b_lo,b_hi");

    Multiplicity ck = 0;
    int cn = 0;
    std::string c_box;
    auto* cert = app.add_subcommand("certify", "Certificate that G^{(k,n)} has an ATR root outside the unit disk");
    cert->add_option("k", ck)->required();
    cert->add_option("n", cn)->required();
    cert->add_option("--box", c_box, "Override the parameter box a_lo,a_hi,b_lo,b_hi");

    int max_n = 6;
    auto* table1 = app.add_subcommand("table1", "Greatest-modulus ATR roots of G_{n,n}^{1,6}, n = 3..max-n");
    table1->add_option("--max-n", max_n, "Last row")->check(CLI::Range(3, 12))->capture_default_str();

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try
    {
        if (cfg.digits < 0 || cfg.digits > cfg.precision_bits * 30103 / 100000)
            throw InputError("--digits exceeds what --precision-bits can represent");

        if (*rel)
        {
            emit(cfg, poly_to_json(compute_rel(parse_graph(read_file(graph_path)), cfg, family_spec)).dump() + "\n");
        }
        else if (*roots)
        {
            RootSet rs;
            std::ifstream probe(roots_input);
            if (probe)
            {
                const json doc = parse_json(read_file(roots_input));
                if (doc.contains("edges"))
                {
                    const Multigraph g = graph_from_json(doc);
                    rs = atr_roots(compute_rel(g, cfg, family_spec), g.vertex_count(), cfg.root_options());
                }
                else
                {
                    rs = find_roots(ComplexPoly(poly_from_json(doc)), cfg.root_options());
                }
            }
            else
            {
                rs = find_roots(parse_poly_literal(roots_input), cfg.root_options());
            }
            emit(cfg, roots_csv(rs));
            if (!svg_path.empty())
                write_file(svg_path, roots_svg(rs));
        }
        else if (*hvector)
        {
            const Multigraph g = parse_graph(read_file(graph_path));
            require_connected(g, "hvector");
            const HVector h = hv_method == "chip" ? h_vector_chip(g, sink) : f_to_h(f_vector(g, cfg.guard_m));
            json values = json::array();
            for (const auto& x : h.values)
                values.push_back(x.get_str());
            const std::string violations = h_vector_violations(h);
            json out{{"n", h.n}, {"m", h.m}, {"h", values}, {"laws_hold", violations.empty()}};
            if (!violations.empty())
                out["violations"] = violations;
            emit(cfg, out.dump() + "\n");
        }
        else if (*family)
        {
            const FamilyParams p{fm, fn, fa, fb};
            p.validate();
            emit(cfg, (family_graph ? graph_to_json(build_family_graph(p)) : poly_to_json(rel_family(p))).dump() + "\n");
        }
        else if (*substitute)
        {
            const Multigraph g = parse_graph(read_file(graph_path));
            const Gadget h{parse_graph(read_file(gadget_path)), gu, gv};
            h.validate();
            if (!graph_out.empty())
                write_file(graph_out, graph_to_json(edge_substitute_graph(g, h)).dump() + "\n");
            if (!r_literal.empty())
            {
                const auto r = parse_poly_literal(r_literal);
                if (r.degree() > 0)
                    throw InputError("--r must be a complex constant");
                const ComplexRational rv = r.is_zero() ? ComplexRational() : r.coeffs()[0];
                const auto p = limit_root_poly(rv, h, cfg.guard_m);
                emit(cfg, roots_csv(find_roots(p, cfg.root_options())));
            }
            else
            {
                emit(cfg, poly_to_json(edge_substitute_poly(g, h, cfg.guard_m)).dump() + "\n");
            }
        }
        else if (*schur)
        {
            SchurCohnReport report;
            if (sc_fn != 0)
            {
                if (sc_box.empty())
                    throw InputError("--fn needs --box");
                report = schur_cohn_box(build_fn(sc_fn), parse_box(sc_box));
            }
            else
            {
                if (sc_poly.empty())
                    throw InputError("schur-cohn needs a polynomial or --fn");
                report = schur_cohn(load_poly_argument(sc_poly));
            }
            emit(cfg, report_to_json(report).dump() + "\n");
            if (!report.beta)
                throw IndeterminateError(report.hypothesis_failed ? "some Schur-Cohn determinant is exactly zero"
                                                                  : "sign pattern not uniform over the box");
        }
        else if (*cert)
        {
            const std::optional<ParamBox> box = c_box.empty() ? std::nullopt : std::optional(parse_box(c_box));
            const json out = certify(ck, cn, box, cfg);
            emit(cfg, out.dump(2) + "\n");
            if (!out["pass"].get<bool>())
                throw IndeterminateError("certificate did not establish a root outside the unit disk");
        }
        else if (*table1)
        {
            emit(cfg, table1_csv(max_n, cfg));
        }
    }
    catch (const Error& e)
    {
        std::cerr << "relroots: " << e.what() << '\n';
        return e.exit_code();
    }
    catch (const std::bad_alloc&)
    {
        std::cerr << "relroots: out of memory\n";
        return 2;
    }
    return 0;
}
