#pragma once

#include <cmath>

#include "dmans/perturbations/love.hpp"
#include "dmans/structure/tov.hpp"

namespace dmans::perturb {

struct TidalResult {
    double k2 = 0;
    double Lambda = 0;
    double y_R = 0;  // after the surface density-jump correction
};

struct TidalExtra {
    static constexpr std::size_t size = 1;

    void initial(const structure::Background&, double* y) const { y[0] = 2.0; }

    void rhs(const structure::Background& b, const double* y, double* dy) const
    {
        constexpr double pi = units::pi;
        const double r = b.r, r2 = r * r, e2l = b.e2lambda;
        const double q = 4 * pi * e2l * (5 * b.eps + 9 * b.P + (b.eps + b.P) * b.slope) - 6 * e2l / r2 -
                         4 * b.dnu * b.dnu;
        dy[0] = -(y[0] * y[0] + y[0] * e2l * (1 + 4 * pi * r2 * (b.P - b.eps)) + r2 * q) / r;
    }
};

// Integrates y alongside the background from the star's central pressure.
template <structure::StellarEos Eos>
TidalResult tidal_deformability(const structure::StellarSolution& star, const Eos& eos,
                                const structure::IntegratorOptions& opt = {})
{
    auto end = structure::integrate_star(eos, star.P_c, TidalExtra{}, [](const auto&, const double*) {}, opt);
    const double m = end.state[1];
    const double R = end.R;
    const double C = m / R;
    double y = end.state[3];
    if (!std::isfinite(y)) throw ConvergenceError("tidal equation produced a non-finite y");
    // density drops from eps(R-) to zero at the surface
    y -= 4 * units::pi * R * R * R * end.surface.eps / m;
    TidalResult t;
    t.y_R = y;
    t.k2 = love_number_k2(C, y);
    t.Lambda = tidal_lambda(t.k2, C);
    return t;
}

}  // namespace dmans::perturb
