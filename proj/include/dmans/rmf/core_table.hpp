#pragma once

#include <optional>
#include <vector>

#include "dmans/eos/assembly.hpp"
#include "dmans/eos/table.hpp"
#include "dmans/errors.hpp"
#include "dmans/grid.hpp"
#include "dmans/rmf/mean_field.hpp"

namespace dmans::rmf {

inline constexpr double core_min_density = 0.04;  // fm^-3
inline constexpr double accepted_residual = 1e-10;

inline std::vector<double> default_core_grid(std::size_t n = 400, double lo = 0.04, double hi = 1.2)
{
    return log_space(lo, hi, n);
}

inline void check_accepted(const MeanFieldState& s, const RMFParameterSet& p)
{
    for (double r : field_residuals(s, p))
        if (!(r <= accepted_residual))
            throw ConvergenceError(p.model_name + ": field equation residual " + std::to_string(r) + " at rho_b = " +
                                   std::to_string(s.rho_b));
    if (s.composition.mode == Mode::beta_equilibrium)
        for (double r : equilibrium_residuals(s, p))
            if (!(r <= accepted_residual))
                throw ConvergenceError(p.model_name + ": equilibrium residual " + std::to_string(r) +
                                       " at rho_b = " + std::to_string(s.rho_b));
}

struct CoreTableOptions {
    bool continuation = true;  // seed each row from the previous one
    SolverOptions solver;
};

inline std::vector<MeanFieldState> solve_core_states(const RMFParameterSet& params, const std::vector<double>& grid,
                                                     const CoreTableOptions& opt = {})
{
    if (grid.empty()) throw ValidationError("empty density grid");
    if (grid.front() < core_min_density * (1 - 1e-12))
        throw ValidationError("core grid starts below " + std::to_string(core_min_density) + " fm^-3");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1])) throw ValidationError("core density grid must be strictly increasing");
    std::vector<MeanFieldState> states;
    states.reserve(grid.size());
    std::optional<MeanFieldState> seed;
    for (double rho : grid) {
        auto s = solve_fields(rho, params, Composition::beta_equilibrium(), opt.continuation ? seed : std::nullopt,
                              opt.solver);
        check_accepted(s, params);
        states.push_back(s);
        seed = s;
    }
    return states;
}

inline eos::EOSTable build_core_table(const RMFParameterSet& params, const std::vector<double>& grid,
                                      const CoreTableOptions& opt = {})
{
    eos::EOSTable t;
    t.model_name = params.model_name;
    for (const auto& s : solve_core_states(params, grid, opt)) {
        const auto e = eos_point(s, params);
        t.rows.push_back({s.rho_b, e.epsilon, e.pressure, 0.0, eos::Segment::core});
    }
    if (auto i = eos::first_non_monotone(t); i != t.size())
        throw ValidationError(params.model_name + ": core table not monotone at row " + std::to_string(i) +
                              " (rho_b = " + std::to_string(t.rows[i].rho_b) + " fm^-3)");
    return eos::sound_speed(std::move(t));
}

}  // namespace dmans::rmf
