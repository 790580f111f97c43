#pragma once

#include <numbers>

namespace dmans::units {

inline constexpr double pi = std::numbers::pi;

inline constexpr double hbarc = 197.32698;          // MeV fm
inline constexpr double electron_mass = 0.511;      // MeV
inline constexpr double muon_mass = 105.658;        // MeV

inline constexpr double msun_km = 1.476625;         // G Msun / c^2
inline constexpr double msun_s = 4.925490e-6;       // G Msun / c^3
inline constexpr double mev_fm3_to_km2 = 1.32379e-6;
inline constexpr double c_km_s = 2.99792458e5;

// (1e3 MeV)^4 / (hbar c)^3
inline constexpr double gev4_to_mev_fm3 = 1.0e12 / (hbarc * hbarc * hbarc);

inline constexpr double to_fm(double mev) { return mev / hbarc; }
inline constexpr double to_mev(double inv_fm) { return inv_fm * hbarc; }

// angular frequency in km^-1 (c = 1) to linear frequency in kHz
inline constexpr double omega_to_khz(double omega_km) { return omega_km * c_km_s / (2.0 * pi) * 1e-3; }
inline constexpr double khz_to_omega(double f_khz) { return f_khz * 1e3 * 2.0 * pi / c_km_s; }

}  // namespace dmans::units
