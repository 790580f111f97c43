#pragma once

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "dmans/grid.hpp"
#include "dmans/structure/integrator.hpp"

namespace dmans::structure {

struct ProfilePoint {
    double r = 0;    // km
    double m = 0;    // Msun
    double P = 0;    // MeV fm^-3
    double eps = 0;  // MeV fm^-3
    double nu = 0;   // matched metric potential
};

struct StellarSolution {
    double rho_c = 0;       // fm^-3 (NaN for EOS without baryon density)
    double P_c = 0;         // MeV fm^-3
    double eps_c = 0;       // MeV fm^-3
    double M = 0;           // Msun
    double R = 0;           // km
    double C = 0;
    double nu_shift = 0;    // added to the raw central-series potential
    std::vector<ProfilePoint> profile;
    std::optional<double> Lambda;
    std::optional<double> k2;
    std::optional<double> f_kHz;
};

struct TovOptions {
    IntegratorOptions integrator;
    bool keep_profile = true;
};

template <StellarEos Eos>
StellarSolution tov_integrate_pressure(const Eos& eos, double p_central, const TovOptions& opt = {})
{
    constexpr double k = units::mev_fm3_to_km2;
    StellarSolution s;
    s.P_c = p_central;
    s.eps_c = eos.energy_density(p_central);
    s.rho_c = std::numeric_limits<double>::quiet_NaN();
    auto observe = [&](const Background& b, const double*) {
        if (opt.keep_profile) s.profile.push_back({b.r, b.m / units::msun_km, b.P / k, b.eps / k, b.nu});
    };
    const auto end = integrate_star(eos, p_central, NoExtra{}, observe, opt.integrator);
    const double m = end.state[1];
    s.R = end.R;
    s.M = m / units::msun_km;
    s.C = m / end.R;
    s.nu_shift = 0.5 * std::log(1 - 2 * s.C) - end.state[2];
    for (auto& p : s.profile) p.nu += s.nu_shift;
    if (!(s.C > 0 && s.C < 4.0 / 9.0)) throw ValidationError("compactness outside the Buchdahl bound");
    return s;
}

inline StellarSolution tov_integrate(const TableEos& eos, double rho_c, const TovOptions& opt = {})
{
    if (!(rho_c >= eos.rho_min() && rho_c <= eos.rho_max()))
        throw RangeError(eos.model_name() + ": central density " + std::to_string(rho_c) + " outside EOS table");
    auto s = tov_integrate_pressure(eos, eos.pressure_at_density(rho_c), opt);
    s.rho_c = rho_c;
    return s;
}

struct MRCurve {
    std::vector<StellarSolution> stars;  // ordered by rho_c
    double M_max = 0;
    double R_at_Mmax = 0;
    double rho_c_at_Mmax = 0;
    std::string model_name;
    double dm_kf = 0;

    // stars up to and including the grid maximum
    std::size_t stable_end() const
    {
        std::size_t best = 0;
        for (std::size_t i = 1; i < stars.size(); ++i)
            if (stars[i].M > stars[best].M) best = i;
        return best + 1;
    }
};

inline std::vector<double> default_central_grid(std::size_t n = 120, double lo = 0.2, double hi = 1.2)
{
    return log_space(lo, hi, n);
}

template <class F>
double golden_section_max(F&& f, double a, double b, double tol)
{
    const double g = (std::sqrt(5.0) - 1) / 2;
    double c = b - g * (b - a), d = a + g * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

inline MRCurve mr_curve(const TableEos& eos, const std::vector<double>& rho_c_grid, const TovOptions& opt = {})
{
    if (rho_c_grid.size() < 3) throw ValidationError("central density grid needs at least three points");
    MRCurve c;
    c.model_name = eos.model_name();
    c.dm_kf = eos.dm_kf();
    TovOptions light = opt;
    light.keep_profile = false;
    for (double rho : rho_c_grid) c.stars.push_back(tov_integrate(eos, rho, light));
    std::size_t i = c.stable_end() - 1;
    if (i == 0 || i + 1 == c.stars.size()) {
        // maximum at the grid edge: no interior refinement possible
        c.M_max = c.stars[i].M;
        c.R_at_Mmax = c.stars[i].R;
        c.rho_c_at_Mmax = c.stars[i].rho_c;
        return c;
    }
    auto mass = [&](double rho) { return tov_integrate(eos, rho, light).M; };
    const double rho_best = golden_section_max(mass, rho_c_grid[i - 1], rho_c_grid[i + 1], 1e-6 * rho_c_grid[i]);
    const auto peak = tov_integrate(eos, rho_best, light);
    c.M_max = peak.M;
    c.R_at_Mmax = peak.R;
    c.rho_c_at_Mmax = rho_best;
    return c;
}

inline StellarSolution star_at_mass(const TableEos& eos, const MRCurve& curve, double M_target,
                                    const TovOptions& opt = {}, double tol = 1e-4)
{
    if (M_target > curve.M_max + tol)
        throw RangeError(curve.model_name + ": target mass " + std::to_string(M_target) + " above M_max = " +
                         std::to_string(curve.M_max));
    if (M_target >= curve.M_max) return tov_integrate(eos, curve.rho_c_at_Mmax, opt);
    // bracket on the stable branch
    double lo = eos.rho_min(), hi = curve.rho_c_at_Mmax;
    for (std::size_t i = 0; i < curve.stable_end(); ++i) {
        const auto& s = curve.stars[i];
        if (s.rho_c >= hi) break;
        if (s.M <= M_target) lo = s.rho_c;
        else {
            hi = s.rho_c;
            break;
        }
    }
    TovOptions light = opt;
    light.keep_profile = false;
    if (lo == eos.rho_min() && tov_integrate(eos, lo, light).M > M_target)
        throw RangeError(curve.model_name + ": target mass below the lightest star in the table");
    for (int it = 0; it < 200; ++it) {
        const double mid = std::sqrt(lo * hi);
        const auto s = tov_integrate(eos, mid, light);
        if (std::abs(s.M - M_target) <= tol) return tov_integrate(eos, mid, opt);
        (s.M < M_target ? lo : hi) = mid;
    }
    throw ConvergenceError(curve.model_name + ": star_at_mass bisection did not converge");
}

}  // namespace dmans::structure
