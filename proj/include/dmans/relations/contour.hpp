#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "dmans/relations/canonical.hpp"
#include "dmans/relations/polyfit.hpp"

namespace dmans::relations {

struct ContourCell {
    double M = 0;  // Msun
    double R = 0;  // km
    double f = std::numeric_limits<double>::quiet_NaN();  // kHz, NaN when C is outside the invertible branch
};

inline double compactness(double M_msun, double R_km) { return M_msun * units::msun_km / R_km; }

// f-mode frequency over an M-R grid from an inverted C(omega_bar) fit.
inline std::vector<ContourCell> fmode_contour(const PolyFit& fit_c_omegabar, const std::vector<double>& M_grid,
                                              const std::vector<double>& R_grid)
{
    if (fit_c_omegabar.kind != FitKind::C_of_omegabar || fit_c_omegabar.coeffs.size() != 5)
        throw ValidationError("contour needs a quartic C(omega_bar) fit");
    std::vector<ContourCell> cells;
    cells.reserve(M_grid.size() * R_grid.size());
    for (double M : M_grid)
        for (double R : R_grid) {
            if (!(M > 0 && R > 0)) throw ValidationError("contour grids must be positive");
            ContourCell cell{M, R};
            if (auto wb = invert_relation(fit_c_omegabar, compactness(M, R))) cell.f = omegabar_to_khz(*wb, M);
            cells.push_back(cell);
        }
    return cells;
}

}  // namespace dmans::relations
