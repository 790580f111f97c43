#pragma once

#include <cmath>
#include <filesystem>

#include <boost/math/tools/roots.hpp>

#include "dmans/errors.hpp"
#include "dmans/fermi_gas.hpp"
#include "dmans/keyvalue.hpp"
#include "dmans/units.hpp"

namespace dmans::dm {

// GeV units throughout, except the EOS outputs.
struct DMParameterSet {
    double M_chi = 200.0;
    double M_h = 125.0;
    double y = 0.07;
    double f = 0.35;
    double v = 246.0;
};

struct DMState {
    double kf_dm = 0;       // GeV
    double h0 = 0;          // GeV
    double M_chi_star = 0;  // GeV
    double eps_dm = 0;      // MeV fm^-3
    double P_dm = 0;        // MeV fm^-3
};

struct DMEosPoint {
    double epsilon = 0;
    double pressure = 0;
};

inline void validate(const DMParameterSet& p)
{
    if (!(p.M_chi > 0) || !(p.M_h > 0) || !(p.v > 0))
        throw ValidationError("dark matter masses and vev must be positive");
    if (!(p.y >= 0 && p.y < 1)) throw ValidationError("dark matter Yukawa coupling y must lie in [0, 1)");
    if (!(p.f > 0 && p.f < 1)) throw ValidationError("nucleon Higgs form factor f must lie in (0, 1)");
}

inline DMParameterSet dm_parameters_from(const KeyValueFile& kv)
{
    for (const auto& key : kv.keys())
        if (key != "M_chi_GeV" && key != "M_h_GeV" && key != "y" && key != "f" && key != "v_GeV")
            throw ValidationError(kv.origin() + ": unknown key '" + key + "'");
    DMParameterSet p;
    p.M_chi = kv.get_double("M_chi_GeV", p.M_chi);
    p.M_h = kv.get_double("M_h_GeV", p.M_h);
    p.y = kv.get_double("y", p.y);
    p.f = kv.get_double("f", p.f);
    p.v = kv.get_double("v_GeV", p.v);
    validate(p);
    return p;
}

inline DMParameterSet load_dm_parameters(const std::filesystem::path& path)
{
    return dm_parameters_from(KeyValueFile::load(path));
}

inline void check_kf(double kf_dm)
{
    if (!(kf_dm >= 0) || !std::isfinite(kf_dm))
        throw ValidationError("dark matter Fermi momentum must be non-negative");
}

// Self-consistent mean Higgs field sourced by the dark matter scalar density.
inline DMState solve_higgs(double kf_dm, const DMParameterSet& p)
{
    check_kf(kf_dm);
    DMState s;
    s.kf_dm = kf_dm;
    s.M_chi_star = p.M_chi;
    if (kf_dm == 0) return s;

    const double mh2 = p.M_h * p.M_h;
    auto source = [&](double h) { return p.y * fermi::scalar_density(kf_dm, p.M_chi - p.y * h) / mh2; };
    const double h_max = source(0.0);
    if (h_max > 0 && p.y > 0) {
        auto g = [&](double h) { return h - source(h); };
        const double g_lo = g(0.0), g_hi = g(h_max);
        double h = h_max;
        if (g_hi <= 0 && std::abs(g_hi) <= 1e-12 * h_max) {
            h = h_max;
        } else if (g_hi != 0) {
            if (!(g_lo < 0 && g_hi > 0)) throw ConvergenceError("mean Higgs field not bracketed");
            boost::math::tools::eps_tolerance<double> tol(52);
            std::uintmax_t it = 200;
            auto [a, b] = boost::math::tools::toms748_solve(g, 0.0, h_max, g_lo, g_hi, tol, it);
            h = 0.5 * (a + b);
        }
        if (std::abs(g(h)) > 1e-12 * h) throw ConvergenceError("mean Higgs field did not converge");
        s.h0 = h;
    }
    s.M_chi_star = p.M_chi - p.y * s.h0;
    if (!(s.M_chi_star > 0)) throw ValidationError("dark matter effective mass is not positive");

    const double higgs = 0.5 * mh2 * s.h0 * s.h0;
    s.eps_dm = (fermi::energy_density(kf_dm, s.M_chi_star) + higgs) * units::gev4_to_mev_fm3;
    s.P_dm = (fermi::pressure(kf_dm, s.M_chi_star) - higgs) * units::gev4_to_mev_fm3;
    return s;
}

inline DMEosPoint dm_eos_point(double kf_dm, const DMParameterSet& p)
{
    const auto s = solve_higgs(kf_dm, p);
    return {s.eps_dm, s.P_dm};
}

}  // namespace dmans::dm
