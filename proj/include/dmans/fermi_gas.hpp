#pragma once

#include <array>
#include <cmath>

#include "dmans/units.hpp"

// Zero-temperature spin-1/2 Fermi gas integrals. Units follow the inputs:
// kf and m in fm^-1 give densities in fm^-3 and energies in fm^-4.
namespace dmans::fermi {

namespace detail {

// coefficients of x^3, x^5, ... for small x = kf/m
inline constexpr std::array<double, 11> scalar_series = {
    2.0 / 3, -1.0 / 5, 3.0 / 28, -5.0 / 72, 35.0 / 704, -63.0 / 1664,
    77.0 / 2560, -429.0 / 17408, 6435.0 / 311296, -12155.0 / 688128, 46189.0 / 3014656};
inline constexpr std::array<double, 11> energy_series = {
    8.0 / 3, 4.0 / 5, -1.0 / 7, 1.0 / 18, -5.0 / 176, 7.0 / 416,
    -7.0 / 640, 33.0 / 4352, -429.0 / 77824, 715.0 / 172032, -2431.0 / 753664};
// starts at x^5
inline constexpr std::array<double, 10> pressure_series = {
    8.0 / 5, -4.0 / 7, 1.0 / 3, -5.0 / 22, 35.0 / 208,
    -21.0 / 160, 231.0 / 2176, -429.0 / 4864, 2145.0 / 28672, -12155.0 / 188416};

inline constexpr double series_cutoff = 0.1;

template <std::size_t N>
double odd_series(const std::array<double, N>& c, double x, int first_power)
{
    const double x2 = x * x;
    double acc = 0.0;
    for (std::size_t i = N; i-- > 0;) acc = acc * x2 + c[i];
    return acc * std::pow(x, first_power);
}

// x sqrt(1+x^2) - asinh(x)
inline double scalar_shape(double x)
{
    if (x < series_cutoff) return odd_series(scalar_series, x, 3);
    return x * std::sqrt(1 + x * x) - std::asinh(x);
}

// x sqrt(1+x^2) (1+2x^2) - asinh(x)
inline double energy_shape(double x)
{
    if (x < series_cutoff) return odd_series(energy_series, x, 3);
    return x * std::sqrt(1 + x * x) * (1 + 2 * x * x) - std::asinh(x);
}

// x sqrt(1+x^2) (2x^2-3) + 3 asinh(x)
inline double pressure_shape(double x)
{
    if (x < series_cutoff) return odd_series(pressure_series, x, 5);
    return x * std::sqrt(1 + x * x) * (2 * x * x - 3) + 3 * std::asinh(x);
}

}  // namespace detail

inline double number_density(double kf)
{
    return kf > 0 ? kf * kf * kf / (3 * units::pi * units::pi) : 0.0;
}

inline double fermi_momentum(double n)
{
    return n > 0 ? std::cbrt(3 * units::pi * units::pi * n) : 0.0;
}

inline double energy_density(double kf, double m)
{
    if (kf <= 0) return 0.0;
    const double m4 = m * m * m * m;
    return m4 / (8 * units::pi * units::pi) * detail::energy_shape(kf / m);
}

inline double pressure(double kf, double m)
{
    if (kf <= 0) return 0.0;
    const double m4 = m * m * m * m;
    return m4 / (24 * units::pi * units::pi) * detail::pressure_shape(kf / m);
}

inline double scalar_density(double kf, double m)
{
    if (kf <= 0) return 0.0;
    return m * m * m / (2 * units::pi * units::pi) * detail::scalar_shape(kf / m);
}

}  // namespace dmans::fermi
