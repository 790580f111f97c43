#pragma once

#include <array>
#include <cmath>
#include <concepts>
#include <string>

#include <boost/numeric/odeint.hpp>

#include "dmans/eos/interpolator.hpp"
#include "dmans/errors.hpp"
#include "dmans/units.hpp"

namespace dmans::structure {

// Anything the structure equations can be integrated against. Pressures and
// energy densities in MeV fm^-3.
template <class E>
concept StellarEos = requires(const E& e, double p) {
    { e.surface_pressure() } -> std::convertible_to<double>;
    { e.energy_density(p) } -> std::convertible_to<double>;
    { e.slope(p) } -> std::convertible_to<double>;
};

class TableEos {
public:
    explicit TableEos(const eos::EOSTable& table) : interp_(table), name_(table.model_name), dm_kf_(table.dm_kf) {}

    double surface_pressure() const { return interp_.p_min(); }
    double max_pressure() const { return interp_.p_max(); }
    double energy_density(double p) const { return interp_.energy_density_clamped(p); }
    double slope(double p) const { return interp_.slope_clamped(p); }
    double baryon_density(double p) const { return interp_.baryon_density(p); }
    double pressure_at_density(double rho) const { return interp_.pressure_at_density(rho); }
    double rho_min() const { return interp_.rho_min(); }
    double rho_max() const { return interp_.rho_max(); }
    const eos::EosInterpolator& interpolator() const { return interp_; }
    const std::string& model_name() const { return name_; }
    double dm_kf() const { return dm_kf_; }

private:
    eos::EosInterpolator interp_;
    std::string name_;
    double dm_kf_;
};

// Incompressible test matter.
class UniformDensityEos {
public:
    UniformDensityEos(double epsilon, double surface_pressure) : eps_(epsilon), p_cut_(surface_pressure) {}
    double surface_pressure() const { return p_cut_; }
    double energy_density(double) const { return eps_; }
    double slope(double) const { return 0.0; }

private:
    double eps_, p_cut_;
};

struct IntegratorOptions {
    double rtol = 1e-8;
    double atol = 1e-14;
    double r_start = 0.01;  // km, end of the central series
    double r_max = 200.0;   // km
    double first_step = 1e-3;
};

// Geometrized (km) background quantities at one radius.
struct Background {
    double r = 0;
    double P = 0;      // km^-2
    double eps = 0;    // km^-2
    double m = 0;      // km
    double nu = 0;     // raw metric potential, shifted later
    double dnu = 0;    // d nu / dr
    double slope = 0;  // d eps / dP
    double e2lambda = 1;
};

// Extra equations integrated alongside the background.
struct NoExtra {
    static constexpr std::size_t size = 0;
    void initial(const Background&, double*) const {}
    void rhs(const Background&, const double*, double*) const {}
};

template <std::size_t N>
using StarState = std::array<double, 3 + N>;

template <StellarEos Eos>
Background background_at(const Eos& eos, double r, double lnP, double m, double nu)
{
    constexpr double k = units::mev_fm3_to_km2;
    Background b;
    b.r = r;
    b.P = std::exp(lnP);
    const double p_mev = b.P / k;
    b.eps = eos.energy_density(p_mev) * k;
    b.slope = eos.slope(p_mev);
    b.m = m;
    b.nu = nu;
    const double denom = r * (r - 2 * m);
    b.dnu = (m + 4 * units::pi * r * r * r * b.P) / denom;
    b.e2lambda = r / (r - 2 * m);
    return b;
}

template <std::size_t N>
struct SurfaceResult {
    double R = 0;  // km
    StarState<N> state{};
    Background surface;
    std::size_t steps = 0;
};

// Integrate from the centre (series start) to the surface P = P_cut.
// Observer is called with (Background, extra state pointer) after every accepted step.
template <StellarEos Eos, class Extra, class Observer>
SurfaceResult<Extra::size> integrate_star(const Eos& eos, double p_central, const Extra& extra, Observer&& observe,
                                          const IntegratorOptions& opt = {})
{
    namespace odeint = boost::numeric::odeint;
    constexpr std::size_t N = Extra::size;
    using State = StarState<N>;
    constexpr double k = units::mev_fm3_to_km2;
    constexpr double pi = units::pi;

    const double p_cut = eos.surface_pressure();
    if (!(p_central > p_cut)) throw ValidationError("central pressure is not above the surface cutoff");
    const double ln_cut = std::log(p_cut * k);

    const double pc = p_central * k;
    const double ec = eos.energy_density(p_central) * k;
    const double r0 = opt.r_start;
    State x{};
    x[0] = std::log(pc - 2 * pi / 3 * (ec + pc) * (ec + 3 * pc) * r0 * r0);
    x[1] = 4 * pi / 3 * ec * r0 * r0 * r0;
    x[2] = 2 * pi / 3 * (ec + 3 * pc) * r0 * r0;
    if (!(x[0] > ln_cut)) throw ValidationError("central pressure too close to the surface cutoff");
    {
        const Background b0 = background_at(eos, r0, x[0], x[1], x[2]);
        extra.initial(b0, x.data() + 3);
    }

    auto rhs = [&](const State& s, State& ds, double r) {
        const Background b = background_at(eos, r, s[0], s[1], s[2]);
        ds[0] = -(b.eps + b.P) * b.dnu / b.P;
        ds[1] = 4 * pi * r * r * b.eps;
        ds[2] = b.dnu;
        if constexpr (N > 0) extra.rhs(b, s.data() + 3, ds.data() + 3);
    };

    auto stepper = odeint::make_dense_output(opt.atol, opt.rtol, odeint::runge_kutta_dopri5<State>());
    stepper.initialize(x, r0, opt.first_step);
    observe(background_at(eos, r0, x[0], x[1], x[2]), x.data() + 3);

    std::size_t steps = 0;
    while (true) {
        auto [r_prev, r_now] = stepper.do_step(rhs);
        ++steps;
        const State& cur = stepper.current_state();
        if (!std::isfinite(cur[0]) || !std::isfinite(cur[1]))
            throw ConvergenceError("structure integration produced non-finite values");
        if (cur[0] <= ln_cut) {
            State mid;
            double a = r_prev, b = r_now;
            for (int i = 0; i < 200 && b - a > 1e-14 * b; ++i) {
                const double c = 0.5 * (a + b);
                stepper.calc_state(c, mid);
                (mid[0] > ln_cut ? a : b) = c;
            }
            SurfaceResult<N> out;
            out.R = b;
            stepper.calc_state(b, out.state);
            out.state[0] = ln_cut;
            out.surface = background_at(eos, b, ln_cut, out.state[1], out.state[2]);
            out.steps = steps;
            observe(out.surface, out.state.data() + 3);
            return out;
        }
        if (r_now > opt.r_max) throw ConvergenceError("no stellar surface within r_max");
        if (2 * cur[1] >= r_now) throw ConvergenceError("star collapsed inside its Schwarzschild radius");
        observe(background_at(eos, r_now, cur[0], cur[1], cur[2]), cur.data() + 3);
    }
}

}  // namespace dmans::structure
