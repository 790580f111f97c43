#pragma once

#include <cmath>
#include <optional>
#include <vector>

#include "dmans/errors.hpp"
#include "dmans/structure/tov.hpp"

namespace dmans::perturb {

struct FModeResult {
    double f = 0;          // kHz
    double omega = 0;      // rad/s
    double omega_bar = 0;  // G M omega / c^3
    int node_count = 0;
    double residual = 0;       // boundary residual at the root
    double residual_scale = 0; // largest |residual| seen in the scan
};

// Shots are integrated 100x tighter than the background so the boundary
// residual near the root sits above the integration noise.
inline structure::IntegratorOptions shot_integrator(structure::IntegratorOptions o)
{
    o.rtol /= 100;
    o.atol /= 100;
    return o;
}

struct FModeOptions {
    double f_lo = 0.5;   // kHz
    double f_hi = 4.5;
    double f_step = 0.05;
    double rel_tol = 1e-10;  // on omega^2
    int degree = 2;
    structure::IntegratorOptions integrator = shot_integrator({});
};

// Relativistic Cowling equations for the displacement amplitudes (W, V).
struct CowlingExtra {
    static constexpr std::size_t size = 2;
    double omega2 = 0;    // km^-2
    double nu_shift = 0;
    int l = 2;

    void initial(const structure::Background& b, double* s) const
    {
        // W ~ r^(l+1), V ~ -r^l / l, rescaled to W = 1 at the start
        s[0] = 1.0;
        s[1] = -1.0 / (l * b.r);
    }

    void rhs(const structure::Background& b, const double* s, double* ds) const
    {
        const double el = std::sqrt(b.e2lambda);
        const double e2nu = std::exp(-2 * (b.nu + nu_shift));
        const double W = s[0], V = s[1];
        ds[0] = b.slope * (omega2 * b.r * b.r * el * e2nu * V + b.dnu * W) - l * (l + 1) * el * V;
        ds[1] = 2 * b.dnu * V - el * W / (b.r * b.r);
    }
};

struct CowlingShot {
    double residual = 0;
    int nodes = 0;
};

// Lagrangian pressure perturbation at the surface for a trial frequency.
template <structure::StellarEos Eos>
CowlingShot cowling_shot(const structure::StellarSolution& star, const Eos& eos, double omega2,
                         const FModeOptions& opt = {})
{
    CowlingExtra extra{omega2, star.nu_shift, opt.degree};
    int nodes = 0;
    double last = 1.0;
    auto observe = [&](const structure::Background&, const double* s) {
        if (s[0] != 0 && (s[0] > 0) != (last > 0)) ++nodes;
        if (s[0] != 0) last = s[0];
    };
    auto end = structure::integrate_star(eos, star.P_c, extra, observe, opt.integrator);
    const auto& b = end.surface;
    const double el = std::sqrt(b.e2lambda);
    const double nu = b.nu + star.nu_shift;
    const double W = end.state[3], V = end.state[4];
    CowlingShot shot;
    shot.residual = omega2 * el * std::exp(-2 * nu) * V + b.dnu * W / (end.R * end.R);
    shot.nodes = nodes;
    return shot;
}

template <structure::StellarEos Eos>
FModeResult fmode_frequency(const structure::StellarSolution& star, const Eos& eos, const FModeOptions& opt = {})
{
    auto omega2_of = [](double f_khz) {
        const double w = units::khz_to_omega(f_khz);
        return w * w;
    };
    auto shot = [&](double w2) { return cowling_shot(star, eos, w2, opt); };

    auto search = [&](double f_lo, double f_hi, double step, double& scale) -> std::optional<std::pair<double, double>> {
        const int n = int(std::ceil((f_hi - f_lo) / step - 1e-9));
        double fa = f_lo;
        double ra = shot(omega2_of(fa)).residual;
        scale = std::max(scale, std::abs(ra));
        for (int i = 1; i <= n; ++i) {
            const double fb = std::min(f_lo + i * step, f_hi);
            const double rb = shot(omega2_of(fb)).residual;
            scale = std::max(scale, std::abs(rb));
            if ((ra > 0) != (rb > 0) || rb == 0) return std::make_pair(fa, fb);
            fa = fb;
            ra = rb;
        }
        return std::nullopt;
    };

    // returns the low end of the final bracket: just below the root the outer-layer
    // sign flip of W has not yet appeared, so node counts there are meaningful
    auto refine = [&](double f_a, double f_b) {
        double a = omega2_of(f_a), b = omega2_of(f_b);
        double ra = shot(a).residual;
        while ((b - a) > opt.rel_tol * a) {
            const double c = 0.5 * (a + b);
            const double rc = shot(c).residual;
            if (rc == 0) return c;
            if ((rc > 0) == (ra > 0)) {
                a = c;
                ra = rc;
            } else {
                b = c;
            }
        }
        return a;
    };

    double scale = 0.0;
    auto bracket = search(opt.f_lo, opt.f_hi, opt.f_step, scale);
    if (!bracket) throw ConvergenceError("no f-mode sign change between " + std::to_string(opt.f_lo) + " and " +
                                         std::to_string(opt.f_hi) + " kHz");
    double w2 = refine(bracket->first, bracket->second);
    CowlingShot at = shot(w2);
    if (at.nodes > 0) {
        // look for a lower root the coarse scan stepped over
        auto finer = search(opt.f_lo, bracket->first, opt.f_step / 10, scale);
        if (!finer) throw ConvergenceError("lowest Cowling root has radial nodes");
        w2 = refine(finer->first, finer->second);
        at = shot(w2);
        if (at.nodes > 0) throw ConvergenceError("lowest Cowling root has radial nodes");
    }
    FModeResult out;
    const double omega_km = std::sqrt(w2);
    out.f = units::omega_to_khz(omega_km);
    out.omega = omega_km * units::c_km_s;
    out.omega_bar = out.omega * star.M * units::msun_s;
    out.node_count = at.nodes;
    out.residual = at.residual;
    out.residual_scale = scale;
    return out;
}

}  // namespace dmans::perturb
