#pragma once

#include <cmath>
#include <iostream>
#include <optional>
#include <vector>

#include <boost/math/tools/roots.hpp>

#include "dmans/dm/dark_matter.hpp"
#include "dmans/eos/interpolator.hpp"
#include "dmans/eos/table.hpp"
#include "dmans/errors.hpp"

namespace dmans::eos {

// Centered dP/deps, one-sided at the ends.
inline EOSTable sound_speed(EOSTable t)
{
    const std::size_t n = t.size();
    if (n < 2) {
        for (auto& r : t.rows) r.cs2 = 0.0;
        return t;
    }
    auto slope = [&](std::size_t a, std::size_t b) {
        return (t.rows[b].pressure - t.rows[a].pressure) / (t.rows[b].epsilon - t.rows[a].epsilon);
    };
    std::vector<double> cs2(n);
    cs2[0] = slope(0, 1);
    cs2[n - 1] = slope(n - 2, n - 1);
    for (std::size_t i = 1; i + 1 < n; ++i) cs2[i] = slope(i - 1, i + 1);
    for (std::size_t i = 0; i < n; ++i) t.rows[i].cs2 = cs2[i];
    return t;
}

inline std::optional<std::size_t> first_acausal_row(const EOSTable& t)
{
    for (std::size_t i = 0; i < t.size(); ++i)
        if (t.rows[i].segment == Segment::core && !(t.rows[i].cs2 < 1.0)) return i;
    return std::nullopt;
}

inline void check_causality(const EOSTable& t)
{
    if (auto i = first_acausal_row(t))
        throw ValidationError(t.model_name + ": causality violated, cs2 = " + std::to_string(t.rows[*i].cs2) +
                              " at row " + std::to_string(*i) + " (rho_b = " + std::to_string(t.rows[*i].rho_b) +
                              " fm^-3)");
}

struct JunctionWindow {
    double lo = 0.01;  // fm^-3
    double hi = 0.08;
};

namespace detail {

inline MonotoneCurve pressure_of_density(const EOSTable& t)
{
    std::vector<double> x, y;
    for (const auto& r : t.rows) {
        x.push_back(r.rho_b);
        y.push_back(r.pressure);
    }
    return MonotoneCurve(x, y);
}

}  // namespace detail

// Lowest density in the window at which the core pressure reaches the crust pressure.
inline double junction_density(const EOSTable& core, const EOSTable& crust, const JunctionWindow& window = {})
{
    validate_monotone(core);
    validate_monotone(crust);
    const double lo = std::max({window.lo, core.front().rho_b, crust.front().rho_b});
    const double hi = std::min({window.hi, core.back().rho_b, crust.back().rho_b});
    if (!(lo <= hi)) throw ValidationError("crust and core tables do not overlap in the junction window");
    const auto pc = detail::pressure_of_density(core);
    const auto pk = detail::pressure_of_density(crust);
    auto diff = [&](double rho) { return pc(rho) - pk(rho); };
    if (diff(lo) >= 0) return lo;

    std::vector<double> grid{lo, hi};
    for (const auto* t : {&core, &crust})
        for (const auto& r : t->rows)
            if (r.rho_b > lo && r.rho_b < hi) grid.push_back(r.rho_b);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    // refine so a crossing inside a cell of the coarser table is not skipped
    std::vector<double> fine;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i)
        for (int k = 0; k < 8; ++k) fine.push_back(grid[i] + (grid[i + 1] - grid[i]) * k / 8.0);
    fine.push_back(grid.back());

    double a = fine.front();
    for (std::size_t i = 1; i < fine.size(); ++i) {
        const double b = fine[i], fb = diff(b);
        if (fb >= 0) {
            if (fb == 0) return b;
            boost::math::tools::eps_tolerance<double> tol(50);
            std::uintmax_t it = 200;
            auto [x0, x1] = boost::math::tools::bisect(diff, a, b, tol, it);
            return x1;
        }
        a = b;
    }
    throw ValidationError(core.model_name + ": core and crust pressures do not cross in [" + std::to_string(lo) +
                          ", " + std::to_string(hi) + "] fm^-3");
}

inline EOSTable attach_crust(const EOSTable& core, const EOSTable& crust, const JunctionWindow& window = {})
{
    const double rho_j = junction_density(core, crust, window);
    EOSTable out;
    out.model_name = core.model_name;
    out.dm_kf = core.dm_kf;
    for (const auto& r : crust.rows)
        if (r.rho_b < rho_j) out.rows.push_back(r);
    for (const auto& r : core.rows)
        if (r.rho_b >= rho_j) out.rows.push_back(r);
    if (auto i = first_non_monotone(out); i != out.size())
        throw ValidationError(core.model_name + ": unified table not monotone at row " + std::to_string(i) +
                              " after joining at rho_b = " + std::to_string(rho_j));
    return sound_speed(std::move(out));
}

inline EOSTable admix_dm(const EOSTable& base, const dm::DMState& dm)
{
    validate_monotone(base);
    if (dm.kf_dm == 0) return base;
    EOSTable out;
    out.model_name = base.model_name;
    out.dm_kf = dm.kf_dm;
    std::size_t dropped = 0;
    for (auto r : base.rows) {
        r.epsilon += dm.eps_dm;
        r.pressure += dm.P_dm;
        if (!out.empty()) {
            const auto& prev = out.rows.back();
            if (!(r.epsilon > prev.epsilon && r.pressure > prev.pressure)) {
                ++dropped;
                continue;
            }
        }
        out.rows.push_back(r);
    }
    if (dropped > 0)
        std::clog << "warning: " << base.model_name << ": dropped " << dropped
                  << " rows that lost monotonicity after dark matter admixture\n";
    validate_monotone(out);
    return sound_speed(std::move(out));
}

}  // namespace dmans::eos
