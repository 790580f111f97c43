#include <gtest/gtest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "support.hpp"

using namespace dmans;
using boost::math::quadrature::gauss_kronrod;
using testing_support::rel;

namespace {

constexpr double pi = units::pi;

double quad(auto f, double kf) { return gauss_kronrod<double, 61>::integrate(f, 0.0, kf, 15, 1e-14); }

double eps_oracle(double kf, double m)
{
    return quad([&](double k) { return k * k * std::sqrt(k * k + m * m); }, kf) / (pi * pi);
}

double p_oracle(double kf, double m)
{
    return quad([&](double k) { return k * k * k * k / std::sqrt(k * k + m * m); }, kf) / (3 * pi * pi);
}

double ns_oracle(double kf, double m)
{
    return quad([&](double k) { return k * k * m / std::sqrt(k * k + m * m); }, kf) / (pi * pi);
}

}  // namespace

TEST(FermiGas, MatchesQuadratureAcrossRegimes)
{
    for (double x : {1e-4, 0.05, 0.0999, 0.1001, 0.3, 1.0, 4.0}) {
        const double m = 4.76, kf = x * m;
        EXPECT_LT(rel(fermi::energy_density(kf, m), eps_oracle(kf, m)), 1e-11) << x;
        EXPECT_LT(rel(fermi::pressure(kf, m), p_oracle(kf, m)), 1e-11) << x;
        EXPECT_LT(rel(fermi::scalar_density(kf, m), ns_oracle(kf, m)), 1e-11) << x;
    }
}

TEST(FermiGas, GibbsDuhem)
{
    // eps + P = mu n at zero temperature
    for (double x : {0.01, 0.2, 2.0}) {
        const double m = 1.3, kf = x * m;
        const double mu = std::hypot(kf, m);
        EXPECT_LT(rel(fermi::energy_density(kf, m) + fermi::pressure(kf, m), mu * fermi::number_density(kf)), 1e-13);
    }
}

TEST(FermiGas, NumberDensityInverse)
{
    EXPECT_DOUBLE_EQ(fermi::fermi_momentum(fermi::number_density(1.33)), 1.33);
    EXPECT_EQ(fermi::number_density(0.0), 0.0);
    EXPECT_EQ(fermi::energy_density(0.0, 1.0), 0.0);
    EXPECT_EQ(fermi::pressure(-1.0, 1.0), 0.0);
}

TEST(FermiGas, MasslessLimit)
{
    const double kf = 2.0;
    EXPECT_LT(rel(fermi::pressure(kf, 1e-9), fermi::energy_density(kf, 1e-9) / 3), 1e-9);
}
