#pragma once

#include <cstdint>
#include <numeric>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "relroots/error.hpp"
#include "relroots/graph.hpp"
#include "relroots/poly.hpp"

namespace relroots
{

/// Chip counts per vertex; the sink holds minus the total of all other vertices.
struct Configuration
{
    std::vector<std::int64_t> chips;
    Vertex sink = 0;

    friend auto operator<=>(const Configuration&, const Configuration&) = default;
};

/// Exponent of x_v is deg(v) - 1 - chips(v) for every non-sink v; the sink entry stays 0.
struct CriticalMonomial
{
    std::vector<std::int64_t> exponents;
    Vertex sink = 0;

    std::int64_t degree() const { return std::accumulate(exponents.begin(), exponents.end(), std::int64_t{0}); }

    friend auto operator<=>(const CriticalMonomial&, const CriticalMonomial&) = default;
};

namespace detail
{

inline void check_chip_input(const Multigraph& g, Vertex sink)
{
    if (g.vertex_count() < 2)
        throw InputError("chip-firing needs at least 2 vertices");
    if (sink < 0 || sink >= g.vertex_count())
        throw InputError("sink vertex out of range");
    require_connected(g, "chip-firing");
}

// Burning test: fire the sink once, stabilize, and accept iff every other vertex fired exactly once.
class BurningTest
{
  public:
    BurningTest(const Multigraph& g, Vertex sink) : sink_(sink), deg_(g.degrees()), adj_(g.adjacency()) {}

    bool recurrent(const std::vector<std::int64_t>& chips)
    {
        const int n = static_cast<int>(chips.size());
        work_ = chips;
        fired_.assign(n, 0);
        ready_.clear();
        for (auto [x, mult] : adj_[sink_])
            work_[x] += mult;
        for (Vertex x = 0; x < n; ++x)
            if (x != sink_ && work_[x] >= deg_[x])
                ready_.push_back(x);
        while (!ready_.empty())
        {
            Vertex x = ready_.back();
            ready_.pop_back();
            if (work_[x] < deg_[x])
                continue;
            if (++fired_[x] > 1)
                return false;
            work_[x] -= deg_[x];
            for (auto [y, mult] : adj_[x])
            {
                if (y == sink_)
                    continue;
                const bool was_ready = work_[y] >= deg_[y];
                work_[y] += mult;
                if (!was_ready && work_[y] >= deg_[y])
                    ready_.push_back(y);
            }
            if (work_[x] >= deg_[x])
                ready_.push_back(x);
        }
        for (Vertex x = 0; x < n; ++x)
            if (x != sink_ && fired_[x] != 1)
                return false;
        return true;
    }

    const std::vector<Multiplicity>& degrees() const { return deg_; }

  private:
    Vertex sink_;
    std::vector<Multiplicity> deg_;
    std::vector<std::vector<std::pair<Vertex, Multiplicity>>> adj_;
    std::vector<std::int64_t> work_;
    std::vector<int> fired_;
    std::vector<Vertex> ready_;
};

} // namespace detail

/// All critical (stable and recurrent) configurations with the given sink, scanning
/// the stable product space and filtering with the burning test.
inline std::vector<Configuration> critical_configs(const Multigraph& g, Vertex sink)
{
    detail::check_chip_input(g, sink);
    const int n = g.vertex_count();
    detail::BurningTest burning(g, sink);
    const auto& deg = burning.degrees();

    std::vector<Configuration> out;
    std::vector<std::int64_t> chips(n, 0);
    while (true)
    {
        if (burning.recurrent(chips))
        {
            Configuration c{chips, sink};
            std::int64_t total = 0;
            for (Vertex x = 0; x < n; ++x)
                if (x != sink)
                    total += chips[x];
            c.chips[sink] = -total;
            out.push_back(std::move(c));
        }
        // Odometer over chips(v) in [0, deg(v) - 1], v != sink.
        Vertex x = 0;
        for (; x < n; ++x)
        {
            if (x == sink)
                continue;
            if (++chips[x] < deg[x])
                break;
            chips[x] = 0;
        }
        if (x == n)
            break;
    }
    return out;
}

/// Recurrence straight from the firing-sequence definition: breadth-first search over
/// legal firings for a nontrivial sequence returning to `start`. Exponential; small graphs only.
inline bool is_recurrent_by_firing(const Multigraph& g, const Configuration& start, std::size_t state_cap = 1'000'000)
{
    detail::check_chip_input(g, start.sink);
    const int n = g.vertex_count();
    const auto deg = g.degrees();
    const auto adj = g.adjacency();
    const Vertex sink = start.sink;

    auto successors = [&](const std::vector<std::int64_t>& chips) {
        std::vector<std::vector<std::int64_t>> next;
        auto fire = [&](Vertex x) {
            auto c = chips;
            c[x] -= deg[x];
            for (auto [y, mult] : adj[x])
                c[y] += mult;
            next.push_back(std::move(c));
        };
        for (Vertex x = 0; x < n; ++x)
            if (x != sink && chips[x] >= deg[x])
                fire(x);
        if (next.empty())
            fire(sink);
        return next;
    };

    std::set<std::vector<std::int64_t>> seen;
    std::queue<std::vector<std::int64_t>> frontier;
    for (auto& c : successors(start.chips))
        if (seen.insert(c).second)
            frontier.push(std::move(c));
    while (!frontier.empty())
    {
        auto c = std::move(frontier.front());
        frontier.pop();
        if (c == start.chips)
            return true;
        if (seen.size() > state_cap)
            throw GuardError("firing-sequence search exceeded its state cap");
        for (auto& d : successors(c))
            if (seen.insert(d).second)
                frontier.push(std::move(d));
    }
    return false;
}

inline CriticalMonomial critical_monomial(const Multigraph& g, const Configuration& c)
{
    const auto deg = g.degrees();
    CriticalMonomial mono{std::vector<std::int64_t>(g.vertex_count(), 0), c.sink};
    for (Vertex x = 0; x < g.vertex_count(); ++x)
        if (x != c.sink)
            mono.exponents[x] = deg[x] - 1 - c.chips[x];
    return mono;
}

inline std::vector<CriticalMonomial> critical_monomials(const Multigraph& g, Vertex sink)
{
    std::vector<CriticalMonomial> out;
    for (const auto& c : critical_configs(g, sink))
        out.push_back(critical_monomial(g, c));
    return out;
}

/// H_i = number of critical monomials of degree i.
inline HVector h_vector_chip(const Multigraph& g, Vertex sink)
{
    const auto top = g.edge_count() - g.vertex_count() + 1;
    HVector h{std::vector<mpz_class>(static_cast<std::size_t>(top + 1), 0), g.vertex_count(), g.edge_count()};
    for (const auto& mono : critical_monomials(g, sink))
    {
        const auto d = mono.degree();
        if (d < 0 || d > top)
            throw NumericalError("critical monomial degree " + std::to_string(d) + " outside 0..m-n+1");
        ++h.values[static_cast<std::size_t>(d)];
    }
    return h;
}

struct IdealReport
{
    bool closed_under_division = true;
    bool pure = true;
    std::int64_t top_degree = -1;
    bool support_bound_checked = false;
    bool support_bound_holds = true;
    std::vector<std::string> violations;

    bool ok() const { return violations.empty(); }
};

/// Checks the order-ideal structure of critical monomials: closure under division,
/// purity with top degree m - n + 1, and (when `sink_has_simple_edges` and n >= 3)
/// that no monomial involves more than n - 2 variables.
inline IdealReport ideal_check(const std::vector<CriticalMonomial>& monomials, int n, std::int64_t m,
                               bool sink_has_simple_edges = false)
{
    IdealReport report;
    std::set<std::vector<std::int64_t>> present;
    for (const auto& mono : monomials)
        present.insert(mono.exponents);

    for (const auto& mono : monomials)
    {
        report.top_degree = std::max(report.top_degree, mono.degree());
        bool maximal = true;
        int support = 0;
        auto e = mono.exponents;
        for (std::size_t x = 0; x < e.size(); ++x)
        {
            if (static_cast<Vertex>(x) == mono.sink)
                continue;
            if (e[x] < 0)
                report.violations.push_back("negative exponent");
            if (e[x] > 0)
            {
                ++support;
                --e[x];
                if (!present.count(e) && report.closed_under_division)
                {
                    report.closed_under_division = false;
                    report.violations.push_back("not closed under division");
                }
                ++e[x];
            }
            ++e[x];
            if (present.count(e))
                maximal = false;
            --e[x];
        }
        if (maximal && mono.degree() != m - n + 1 && report.pure)
        {
            report.pure = false;
            report.violations.push_back("maximal monomial of degree " + std::to_string(mono.degree()) +
                                        " below m-n+1");
        }
        if (sink_has_simple_edges && n >= 3)
        {
            report.support_bound_checked = true;
            if (support > n - 2 && report.support_bound_holds)
            {
                report.support_bound_holds = false;
                report.violations.push_back("monomial divisible by more than n-2 variables");
            }
        }
    }
    if (report.top_degree != m - n + 1)
    {
        report.pure = false;
        report.violations.push_back("top degree differs from m-n+1");
    }
    return report;
}

} // namespace relroots
