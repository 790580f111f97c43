#pragma once

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/tools/roots.hpp>

#include "dmans/errors.hpp"
#include "dmans/units.hpp"

namespace dmans::relations {

enum class FitKind { C_of_logLambda, omegabar_of_logLambda, C_of_omegabar, f_of_sqrtdensity };

inline std::string to_string(FitKind k)
{
    switch (k) {
    case FitKind::C_of_logLambda: return "C_of_logLambda";
    case FitKind::omegabar_of_logLambda: return "omegabar_of_logLambda";
    case FitKind::C_of_omegabar: return "C_of_omegabar";
    case FitKind::f_of_sqrtdensity: return "f_of_sqrtdensity";
    }
    return "?";
}

inline FitKind kind_from_string(const std::string& s)
{
    for (auto k : {FitKind::C_of_logLambda, FitKind::omegabar_of_logLambda, FitKind::C_of_omegabar,
                   FitKind::f_of_sqrtdensity})
        if (to_string(k) == s) return k;
    throw ValidationError("unknown fit kind '" + s + "'");
}

inline std::size_t coefficient_count(FitKind k) { return k == FitKind::f_of_sqrtdensity ? 2 : 5; }

inline bool log_abscissa(FitKind k) { return k == FitKind::C_of_logLambda || k == FitKind::omegabar_of_logLambda; }

// Raw abscissa (Lambda, omega_bar, or sqrt(Mbar/Rbar^3)) to the polynomial variable.
inline double transform(FitKind k, double x_raw) { return log_abscissa(k) ? std::log10(x_raw) : x_raw; }
inline double inverse_transform(FitKind k, double x) { return log_abscissa(k) ? std::pow(10.0, x) : x; }

// sqrt(Mbar / Rbar^3) with Mbar = M / 1.4 Msun and Rbar = R / 10 km.
inline double average_density_abscissa(double M_msun, double R_km)
{
    const double m = M_msun / 1.4, r = R_km / 10.0;
    return std::sqrt(m / (r * r * r));
}

struct Sample {
    double x = 0;  // raw abscissa
    double y = 0;
};

struct PolyFit {
    FitKind kind = FitKind::C_of_logLambda;
    std::vector<double> coeffs;  // ascending powers of the transformed abscissa
    double chi2_reduced = 0;
    std::size_t n_points = 0;
    double dm_kf = 0;
    double x_min = 0, x_max = 0;  // fitted support, transformed abscissa
};

inline double polynomial(const std::vector<double>& c, double x)
{
    double acc = 0.0;
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
    return acc;
}

inline double polynomial_prime(const std::vector<double>& c, double x)
{
    double acc = 0.0;
    for (std::size_t i = c.size(); i-- > 1;) acc = acc * x + double(i) * c[i];
    return acc;
}

// Ordinary least squares of the given degree (degree + 1 coefficients).
inline PolyFit fit_polynomial(FitKind kind, const std::vector<Sample>& samples, double dm_kf, std::size_t n_coeffs)
{
    const std::size_t n = samples.size();
    if (n <= n_coeffs)
        throw ValidationError("fit needs more samples (" + std::to_string(n) + ") than coefficients (" +
                              std::to_string(n_coeffs) + ")");
    Eigen::MatrixXd A(n, n_coeffs);
    Eigen::VectorXd b(n);
    PolyFit fit;
    fit.kind = kind;
    fit.dm_kf = dm_kf;
    fit.n_points = n;
    fit.x_min = std::numeric_limits<double>::infinity();
    fit.x_max = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        if (log_abscissa(kind) && !(samples[i].x > 1.0))
            throw ValidationError("tidal deformability samples must exceed 1");
        const double x = transform(kind, samples[i].x);
        if (!std::isfinite(x) || !std::isfinite(samples[i].y)) throw ValidationError("non-finite fit sample");
        fit.x_min = std::min(fit.x_min, x);
        fit.x_max = std::max(fit.x_max, x);
        double p = 1.0;
        for (std::size_t j = 0; j < n_coeffs; ++j, p *= x) A(i, j) = p;
        b[i] = samples[i].y;
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(A);
    qr.setThreshold(1e-13);
    if (qr.rank() < Eigen::Index(n_coeffs)) throw ValidationError("rank-deficient least-squares system");
    const Eigen::VectorXd c = qr.solve(b);
    fit.coeffs.assign(c.data(), c.data() + c.size());
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = samples[i].y - polynomial(fit.coeffs, transform(kind, samples[i].x));
        ss += r * r;
    }
    fit.chi2_reduced = ss / double(n - n_coeffs);
    return fit;
}

inline PolyFit fit_relation(FitKind kind, const std::vector<Sample>& samples, double dm_kf)
{
    return fit_polynomial(kind, samples, dm_kf, coefficient_count(kind));
}

inline PolyFit make_fit(FitKind kind, std::vector<double> coeffs, double dm_kf = 0.0)
{
    PolyFit f;
    f.kind = kind;
    f.coeffs = std::move(coeffs);
    f.dm_kf = dm_kf;
    return f;
}

inline double eval_relation(const PolyFit& fit, double x_raw) { return polynomial(fit.coeffs, transform(fit.kind, x_raw)); }

inline bool in_support(const PolyFit& fit, double x_raw)
{
    const double x = transform(fit.kind, x_raw);
    return x >= fit.x_min && x <= fit.x_max;
}

inline std::vector<double> relative_deviation(const PolyFit& fit, const std::vector<Sample>& samples)
{
    std::vector<double> out;
    out.reserve(samples.size());
    for (const auto& s : samples) {
        const double f = eval_relation(fit, s.x);
        if (f == 0) throw ValidationError("fit vanishes at a sample; relative deviation undefined");
        out.push_back(std::abs(s.y - f) / std::abs(f));
    }
    return out;
}

// Raw abscissa at which the fit takes value y, searched inside [lo, hi] (transformed).
// Requires a monotone fit on that interval; empty if y lies outside its range.
inline std::optional<double> invert_relation(const PolyFit& fit, double y, double lo, double hi)
{
    const std::size_t probes = 200;
    double prev = polynomial_prime(fit.coeffs, lo);
    for (std::size_t i = 1; i <= probes; ++i) {
        const double d = polynomial_prime(fit.coeffs, lo + (hi - lo) * double(i) / probes);
        if ((d > 0) != (prev > 0)) return std::nullopt;  // not monotone: no unique inverse
        prev = d;
    }
    auto g = [&](double x) { return polynomial(fit.coeffs, x) - y; };
    const double ga = g(lo), gb = g(hi);
    if (ga == 0) return inverse_transform(fit.kind, lo);
    if (gb == 0) return inverse_transform(fit.kind, hi);
    if ((ga > 0) == (gb > 0)) return std::nullopt;
    boost::math::tools::eps_tolerance<double> tol(52);
    std::uintmax_t it = 200;
    auto [a, b] = boost::math::tools::toms748_solve(g, lo, hi, ga, gb, tol, it);
    return inverse_transform(fit.kind, 0.5 * (a + b));
}

inline std::optional<double> invert_relation(const PolyFit& fit, double y)
{
    return invert_relation(fit, y, fit.x_min, fit.x_max);
}

}  // namespace dmans::relations
