#pragma once

#include <boost/math/tools/roots.hpp>

#include "dmans/errors.hpp"
#include "dmans/rmf/mean_field.hpp"

namespace dmans::rmf {

struct SaturationProperties {
    double rho_sat = 0;  // fm^-3
    double E_sat = 0;    // MeV
    double K_sat = 0;
    double J_sat = 0;
    double L_sat = 0;
};

struct SaturationOptions {
    double window_lo = 0.10;
    double window_hi = 0.22;
    double density_step = 0.005;    // fm^-3, halved once for Richardson
    double asymmetry_step = 0.02;   // halved once for Richardson
};

inline double energy_per_baryon(const RMFParameterSet& p, double rho, double t = 0.0)
{
    const auto comp = t == 0.0 ? Composition::symmetric() : Composition::fixed_asymmetry(t);
    return binding_energy(solve_fields(rho, p, comp), p);
}

inline double symmetric_pressure(const RMFParameterSet& p, double rho)
{
    return eos_point(solve_fields(rho, p, Composition::symmetric()), p).pressure;
}

namespace detail {

template <class F>
double richardson_second(F&& f, double x, double h)
{
    const double f0 = f(x);
    auto d2 = [&](double s) { return (f(x + s) - 2 * f0 + f(x - s)) / (s * s); };
    return (4 * d2(0.5 * h) - d2(h)) / 3;
}

template <class F>
double richardson_first(F&& f, double x, double h)
{
    auto d1 = [&](double s) { return (f(x + s) - f(x - s)) / (2 * s); };
    return (4 * d1(0.5 * h) - d1(h)) / 3;
}

}  // namespace detail

inline double symmetry_energy(const RMFParameterSet& p, double rho, const SaturationOptions& opt = {})
{
    auto e = [&](double t) { return energy_per_baryon(p, rho, t); };
    return 0.5 * detail::richardson_second(e, 0.0, opt.asymmetry_step);
}

inline double saturation_density(const RMFParameterSet& p, const SaturationOptions& opt = {})
{
    auto f = [&](double rho) { return symmetric_pressure(p, rho); };
    const double lo = f(opt.window_lo), hi = f(opt.window_hi);
    if (!(lo < 0 && hi > 0))
        throw ConvergenceError(p.model_name + ": no saturation point in [" + std::to_string(opt.window_lo) + ", " +
                               std::to_string(opt.window_hi) + "] fm^-3");
    boost::math::tools::eps_tolerance<double> tol(50);
    std::uintmax_t it = 200;
    auto [a, b] = boost::math::tools::toms748_solve(f, opt.window_lo, opt.window_hi, lo, hi, tol, it);
    return 0.5 * (a + b);
}

inline SaturationProperties saturation_properties(const RMFParameterSet& p, const SaturationOptions& opt = {})
{
    SaturationProperties s;
    s.rho_sat = saturation_density(p, opt);
    auto ea = [&](double rho) { return energy_per_baryon(p, rho); };
    s.E_sat = ea(s.rho_sat);
    s.K_sat = 9 * s.rho_sat * s.rho_sat * detail::richardson_second(ea, s.rho_sat, opt.density_step);
    auto j = [&](double rho) { return symmetry_energy(p, rho, opt); };
    s.J_sat = j(s.rho_sat);
    s.L_sat = 3 * s.rho_sat * detail::richardson_first(j, s.rho_sat, opt.density_step);
    return s;
}

}  // namespace dmans::rmf
