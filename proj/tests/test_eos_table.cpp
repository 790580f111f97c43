#include <gtest/gtest.h>

#include <sstream>

#include "support.hpp"

using namespace dmans;
using namespace dmans::eos;
using testing_support::rel;

namespace {

EOSTable polytrope(std::size_t n = 50)
{
    EOSTable t;
    t.model_name = "poly";
    for (double rho : log_space(0.05, 1.0, n)) {
        const double P = 100 * std::pow(rho, 2.5);
        const double eps = 939 * rho + P / 1.5;
        t.rows.push_back({rho, eps, P, 0.0, Segment::core});
    }
    return t;
}

}  // namespace

TEST(EosTable, CsvRoundTripWithStamp)
{
    const auto t = sound_speed(polytrope());
    std::stringstream ss;
    write_csv(t, ss, "stamp line");
    const auto text = ss.str();
    EXPECT_EQ(text.rfind("# stamp line\n", 0), 0u);
    const auto back = read_csv(ss);
    ASSERT_EQ(back.size(), t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        EXPECT_LT(rel(back[i].rho_b, t[i].rho_b), 1e-12);
        EXPECT_LT(rel(back[i].pressure, t[i].pressure), 1e-12);
        EXPECT_EQ(back[i].segment, t[i].segment);
    }
    std::stringstream again;
    write_csv(back, again, "stamp line");
    EXPECT_EQ(again.str(), text);
}

TEST(EosTable, RejectsMalformedInput)
{
    std::stringstream bad_header("a,b,c\n");
    EXPECT_THROW(read_csv(bad_header), ValidationError);
    std::stringstream bad_cols(std::string(csv_header) + "\n1,2,3\n");
    EXPECT_THROW(read_csv(bad_cols), ValidationError);
    std::stringstream bad_tag(std::string(csv_header) + "\n1,2,3,0.1,mantle\n");
    EXPECT_THROW(read_csv(bad_tag), ValidationError);
    EXPECT_THROW(load_table("/nonexistent.csv"), ValidationError);
}

TEST(EosTable, MonotonicityIsEnforced)
{
    auto t = polytrope();
    EXPECT_NO_THROW(validate_monotone(t));
    std::swap(t.rows[10].pressure, t.rows[11].pressure);
    EXPECT_EQ(first_non_monotone(t), 11u);
    EXPECT_THROW(validate_monotone(t), ValidationError);
    EXPECT_THROW(EosInterpolator{t}, ValidationError);
}

TEST(Interpolator, ExactAtNodes)
{
    const auto t = polytrope();
    const EosInterpolator in(t);
    for (const auto& r : t.rows) {
        EXPECT_LT(rel(in.energy_density(r.pressure), r.epsilon), 1e-13);
        EXPECT_LT(rel(in.baryon_density(r.pressure), r.rho_b), 1e-13);
        EXPECT_LT(rel(in.pressure_at_density(r.rho_b), r.pressure), 1e-13);
    }
}

TEST(Interpolator, RoundTripsAndBracketing)
{
    const auto& t = testing_support::unified("NITR-I");
    const EosInterpolator in(t);
    for (std::size_t i = 0; i + 1 < t.size(); i += 7) {
        const double p = std::sqrt(t[i].pressure * t[i + 1].pressure);
        const double eps = in.energy_density(p);
        EXPECT_GE(eps, t[i].epsilon);
        EXPECT_LE(eps, t[i + 1].epsilon);
        EXPECT_LT(rel(in.pressure_at_energy(eps), p), 1e-10);
        const double rho = in.baryon_density(p);
        EXPECT_LT(rel(in.pressure_at_density(rho), p), 1e-10);
        EXPECT_GT(in.slope(p), 0.0);
    }
}

TEST(Interpolator, OutOfRangeIsReported)
{
    const EosInterpolator in(polytrope());
    EXPECT_THROW(in.energy_density(in.p_max() * 1.01), RangeError);
    EXPECT_THROW(in.pressure_at_density(2.0), RangeError);
    EXPECT_NO_THROW(in.energy_density_clamped(in.p_max() * 2));
}

TEST(Interpolator, PolytropeInterpolationAccuracy)
{
    const EosInterpolator in(polytrope(200));
    for (double rho : {0.07, 0.23, 0.61}) {
        const double P = 100 * std::pow(rho, 2.5);
        EXPECT_LT(rel(in.energy_density(P), 939 * rho + P / 1.5), 1e-6);
        EXPECT_LT(rel(in.baryon_density(P), rho), 1e-6);
    }
}

TEST(Interpolator, FewNodesFallBackToLinear)
{
    EOSTable t;
    t.rows = {{0.1, 100, 1, 0, Segment::core}, {0.2, 200, 4, 0, Segment::core}, {0.3, 300, 9, 0, Segment::core}};
    const EosInterpolator in(t);
    EXPECT_LT(rel(in.energy_density(2.0), 100 * std::pow(2.0, 0.5)), 1e-12);
}
