#pragma once

#include <cmath>

#include "dmans/errors.hpp"

namespace dmans::perturb {

inline constexpr double love_series_cutoff = 0.05;

// Quadrupole Love number from compactness and the surface value of y = r H'/H.
inline double love_number_k2(double C, double y)
{
    if (!(C > 0 && C < 0.5)) throw ValidationError("compactness must lie in (0, 1/2)");
    if (C < love_series_cutoff) {
        const double u = y + 3;
        const double c[9] = {
            (2 - y) / 2,
            2.5 * (y * y + 2 * y - 6),
            -5 * (((11 * y + 66) * y + 52) * y - 204) / 14,
            5 * ((((5 * y + 50) * y + 160) * y + 120) * y - 324) / 14,
            5 * (((((5 * y + 70) * y + 380) * y + 1380) * y - 1548) * y + 648) / 294,
            ((((((17 * y + 306) * y + 2320) * y + 13680) * y + 5400) * y - 4104) * y + 3888) / 294,
            5 * (((((((225 * y + 4950) * y + 48020) * y + 395740) * y + 665916) * y + 325512) * y + 105408) * y +
                 115344) /
                22638,
            5 * ((((((((225 * y + 5850) * y + 69040) * y + 738760) * y + 2168472) * y + 2747592) * y + 1856952) * y +
                  922752) * y +
                 346032) /
                22638,
            5 * (((((((((68225 * y + 2046750) * y + 28430940) * y + 377797940) * y + 1586118852) * y + 3213498600) *
                          y +
                      3748900320) *
                         y +
                     2783671920) *
                        y +
                    1372230720) *
                       y +
                   369422208) /
                6180174};
        const double t = C / u;
        double k2 = 0;
        for (int i = 8; i >= 0; --i) k2 = k2 * t + c[i];
        return k2 / u;
    }
    const double c2 = C * C, c3 = c2 * C, c5 = c3 * c2;
    const double one = 1 - 2 * C;
    const double num = 1.6 * c5 * one * one * (2 + 2 * C * (y - 1) - y);
    const double den = 2 * C * (6 - 3 * y + 3 * C * (5 * y - 8)) +
                       4 * c3 * (13 - 11 * y + C * (3 * y - 2) + 2 * c2 * (1 + y)) +
                       3 * one * one * (2 - y + 2 * C * (y - 1)) * std::log(one);
    return num / den;
}

inline double tidal_lambda(double k2, double C) { return 2.0 / 3.0 * k2 / std::pow(C, 5); }

}  // namespace dmans::perturb
