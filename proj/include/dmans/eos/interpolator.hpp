#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include <boost/math/interpolators/pchip.hpp>
#include <boost/math/tools/roots.hpp>

#include "dmans/eos/table.hpp"
#include "dmans/errors.hpp"

namespace dmans::eos {

// Shape-preserving cubic through (x, y) with x strictly increasing; linear below four nodes.
class MonotoneCurve {
public:
    MonotoneCurve() = default;

    MonotoneCurve(std::vector<double> x, std::vector<double> y) : x_(x), y_(y)
    {
        if (x_.size() < 2) throw ValidationError("interpolation needs at least two nodes");
        if (x_.size() >= 4) spline_.emplace(std::move(x), std::move(y));
    }

    double lo() const { return x_.front(); }
    double hi() const { return x_.back(); }
    const std::vector<double>& nodes() const { return x_; }
    const std::vector<double>& values() const { return y_; }

    double operator()(double x) const
    {
        x = std::clamp(x, lo(), hi());
        if (spline_) return (*spline_)(x);
        auto [i, t] = locate(x);
        return y_[i] + t * (y_[i + 1] - y_[i]);
    }

    double prime(double x) const
    {
        x = std::clamp(x, lo(), hi());
        if (spline_) return spline_->prime(x);
        auto [i, t] = locate(x);
        return (y_[i + 1] - y_[i]) / (x_[i + 1] - x_[i]);
    }

private:
    std::pair<std::size_t, double> locate(double x) const
    {
        auto it = std::upper_bound(x_.begin(), x_.end(), x);
        std::size_t i = std::min<std::size_t>(std::max<std::ptrdiff_t>(it - x_.begin() - 1, 0), x_.size() - 2);
        return {i, (x - x_[i]) / (x_[i + 1] - x_[i])};
    }

    std::vector<double> x_, y_;
    std::optional<boost::math::interpolators::pchip<std::vector<double>>> spline_;
};

// Monotone cubic in log P - log eps (and log P - log rho).
class EosInterpolator {
public:
    explicit EosInterpolator(const EOSTable& table) : name_(table.model_name)
    {
        validate_monotone(table);
        if (table.size() < 2) throw ValidationError(name_ + ": EOS table needs at least two rows");
        std::vector<double> lp, le, lr;
        for (const auto& r : table.rows) {
            if (!(r.pressure > 0) || !(r.epsilon > 0) || !(r.rho_b > 0))
                throw ValidationError(name_ + ": log interpolation requires positive rho, eps and P");
            lp.push_back(std::log(r.pressure));
            le.push_back(std::log(r.epsilon));
            lr.push_back(std::log(r.rho_b));
        }
        p_min_ = table.front().pressure;
        p_max_ = table.back().pressure;
        eps_min_ = table.front().epsilon;
        eps_max_ = table.back().epsilon;
        rho_min_ = table.front().rho_b;
        rho_max_ = table.back().rho_b;
        eps_of_p_ = MonotoneCurve(lp, le);
        rho_of_p_ = MonotoneCurve(lp, lr);
    }

    double p_min() const { return p_min_; }
    double p_max() const { return p_max_; }
    double rho_min() const { return rho_min_; }
    double rho_max() const { return rho_max_; }

    double energy_density(double p) const { return std::exp(eps_of_p_(std::log(check(p)))); }
    double baryon_density(double p) const { return std::exp(rho_of_p_(std::log(check(p)))); }

    // d eps / dP
    double slope(double p) const
    {
        const double lp = std::log(check(p));
        return std::exp(eps_of_p_(lp) - lp) * eps_of_p_.prime(lp);
    }

    // Versions for ODE right-hand sides: trial steps may undershoot the table floor.
    double energy_density_clamped(double p) const { return energy_density(std::clamp(p, p_min_, p_max_)); }
    double slope_clamped(double p) const { return slope(std::clamp(p, p_min_, p_max_)); }

    double pressure_at_energy(double eps) const
    {
        if (!(eps >= eps_min_ && eps <= eps_max_))
            throw RangeError(name_ + ": energy density " + std::to_string(eps) + " outside table");
        return invert(eps_of_p_, std::log(eps));
    }

    double pressure_at_density(double rho) const
    {
        if (!(rho >= rho_min_ && rho <= rho_max_))
            throw RangeError(name_ + ": baryon density " + std::to_string(rho) + " outside table");
        return invert(rho_of_p_, std::log(rho));
    }

    std::pair<double, double> interpolate(double p) const { return {energy_density(p), baryon_density(p)}; }

private:
    double check(double p) const
    {
        if (!(p >= p_min_ && p <= p_max_))
            throw RangeError(name_ + ": pressure " + std::to_string(p) + " outside table");
        return p;
    }

    double invert(const MonotoneCurve& curve, double target) const
    {
        const auto& x = curve.nodes();
        const auto& y = curve.values();
        auto it = std::lower_bound(y.begin(), y.end(), target);
        std::size_t k = it - y.begin();
        if (k < y.size() && y[k] == target) return std::exp(x[k]);
        std::size_t i = k == 0 ? 0 : k - 1;
        i = std::min(i, x.size() - 2);
        auto f = [&](double lp) { return curve(lp) - target; };
        boost::math::tools::eps_tolerance<double> tol(52);
        std::uintmax_t iters = 200;
        const double fa = f(x[i]), fb = f(x[i + 1]);
        if (fa == 0) return std::exp(x[i]);
        if (fb == 0) return std::exp(x[i + 1]);
        auto [a, b] = boost::math::tools::toms748_solve(f, x[i], x[i + 1], fa, fb, tol, iters);
        return std::exp(0.5 * (a + b));
    }

    std::string name_;
    double p_min_ = 0, p_max_ = 0, eps_min_ = 0, eps_max_ = 0, rho_min_ = 0, rho_max_ = 0;
    MonotoneCurve eps_of_p_, rho_of_p_;
};

}  // namespace dmans::eos
