#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "dmans/relations/polyfit.hpp"

namespace dmans::relations {

struct LambdaInterval {
    double central = 190.0;
    double lower = 70.0;
    double upper = 580.0;
};

enum class Quantity { C_1p4, f_1p4_kHz };

inline std::string to_string(Quantity q) { return q == Quantity::C_1p4 ? "C_1p4" : "f_1p4_kHz"; }

struct CanonicalEstimate {
    Quantity quantity = Quantity::C_1p4;
    double central = 0;
    double lower = 0;
    double upper = 0;
    bool extrapolated = false;  // interval reaches outside the fitted support
};

// omega_bar = 2 pi f G M / c^3, f in kHz
inline double omegabar_to_khz(double omega_bar, double M_msun)
{
    return omega_bar / (2 * units::pi * M_msun * units::msun_s) * 1e-3;
}

inline double khz_to_omegabar(double f_khz, double M_msun)
{
    return 2 * units::pi * f_khz * 1e3 * M_msun * units::msun_s;
}

inline CanonicalEstimate propagate_gw170817(const PolyFit& fit, const LambdaInterval& lam = {}, double M_ref = 1.4)
{
    if (!log_abscissa(fit.kind))
        throw ValidationError("canonical propagation needs a fit in log10(Lambda), got " + to_string(fit.kind));
    auto value = [&](double L) {
        const double v = eval_relation(fit, L);
        return fit.kind == FitKind::C_of_logLambda ? v : omegabar_to_khz(v, M_ref);
    };
    CanonicalEstimate e;
    e.quantity = fit.kind == FitKind::C_of_logLambda ? Quantity::C_1p4 : Quantity::f_1p4_kHz;
    e.central = value(lam.central);
    const double a = value(lam.lower), b = value(lam.upper);
    e.lower = std::min({a, b, e.central});
    e.upper = std::max({a, b, e.central});
    if (!fit.coeffs.empty() && fit.n_points > 0)
        e.extrapolated = !in_support(fit, lam.lower) || !in_support(fit, lam.upper);
    return e;
}

}  // namespace dmans::relations
