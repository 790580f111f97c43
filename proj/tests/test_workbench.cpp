#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "support.hpp"

using namespace dmans;
using namespace dmans::workbench;

namespace {

fs::path scratch(const std::string& name)
{
    auto p = fs::temp_directory_path() / ("dmans_test_" + name);
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p)
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path write_file(const fs::path& p, const std::string& text)
{
    std::ofstream(p) << text;
    return p;
}

int run_cli(const std::string& args)
{
    const std::string cmd = std::string(DMANS_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Config, DefaultsUseBundledData)
{
    const auto c = config_from(KeyValueFile{}, ".");
    EXPECT_EQ(c.model_files.size(), 7u);
    EXPECT_EQ(c.kf_dm_list, std::vector<double>{0.0});
    EXPECT_TRUE(fs::exists(c.crust_file));
    EXPECT_EQ(c.stars_per_model, 40u);
    EXPECT_EQ(c.gw_lambda.central, 190.0);
    EXPECT_EQ(c.gw_lambda.lower, 70.0);
    EXPECT_EQ(c.gw_lambda.upper, 580.0);
}

TEST(Config, ParsesKeysAndResolvesPaths)
{
    const auto dir = scratch("config");
    fs::copy_file(testing_support::data() / "models" / "TM1.params", dir / "mine.params");
    const auto path = write_file(dir / "run.cfg",
                                 "models = NITR-I, mine.params\n"
                                 "dm = higgs_portal\n"
                                 "kf_dm = 0, 0.02\nkf_dm = 0.03\n"
                                 "rho_c_count = 30\n"
                                 "output_dir = results\n"
                                 "contour_M = 1.0, 2.0, 5\n"
                                 "ode_rtol = 1e-9\n"
                                 "allow_acausal = yes\n");
    const auto c = load_config(path);
    ASSERT_EQ(c.model_files.size(), 2u);
    EXPECT_EQ(c.model_files[1], dir / "mine.params");
    EXPECT_EQ(c.kf_dm_list, (std::vector<double>{0.0, 0.02, 0.03}));
    EXPECT_EQ(c.rho_c_grid.count, 30u);
    EXPECT_EQ(c.output_dir, dir / "results");
    EXPECT_EQ(c.contour_M.count, 5u);
    EXPECT_EQ(c.integrator().rtol, 1e-9);
    EXPECT_TRUE(c.allow_acausal);
    ASSERT_TRUE(c.dm_config.has_value());
}

TEST(Config, RejectsInvalidInput)
{
    auto parse = [](const std::string& text) { return config_from(KeyValueFile::parse_string(text), "."); };
    EXPECT_THROW(parse("colour = blue\n"), ValidationError);
    EXPECT_THROW(parse("models = NoSuchModel\n"), ValidationError);
    EXPECT_THROW(parse("kf_dm = -0.01\n"), ValidationError);
    EXPECT_THROW(parse("contour_R = 16, 8, 10\n"), ValidationError);
    EXPECT_THROW(parse("gw_lambda = 190, 300, 580\n"), ValidationError);
    EXPECT_THROW(parse("core_rho_min = 0.01\n"), ValidationError);
    EXPECT_THROW(parse("allow_acausal = perhaps\n"), ValidationError);
}

TEST(Config, DataDirectoryOverride)
{
    const auto dir = scratch("datadir");
    fs::create_directories(dir / "models");
    fs::create_directories(dir / "crust");
    fs::copy_file(testing_support::data() / "models" / "G1.params", dir / "models" / "Other.params");
    fs::copy_file(testing_support::data() / "crust" / "sly_crust.csv", dir / "crust" / "sly_crust.csv");
    setenv("DMANS_DATA_DIR", dir.c_str(), 1);
    const auto c = config_from(KeyValueFile::parse_string("models = Other\n"), ".");
    unsetenv("DMANS_DATA_DIR");
    EXPECT_EQ(c.model_files.front(), dir / "models" / "Other.params");
}

TEST(Pipeline, EosOutputIsDeterministicAndStamped)
{
    const auto dir = scratch("eos");
    const auto cfg = write_file(dir / "run.cfg", "models = NITR-I\nkf_dm = 0, 0.03\ncore_rho_count = 120\n"
                                                 "output_dir = out\n");
    Pipeline a(load_config(cfg));
    const auto first = cmd_eos(a);
    ASSERT_EQ(first.size(), 2u);
    const auto text0 = slurp(first[0]);
    const auto text3 = slurp(first[1]);
    Pipeline b(load_config(cfg));
    const auto second = cmd_eos(b);
    EXPECT_EQ(slurp(second[0]), text0);
    EXPECT_EQ(slurp(second[1]), text3);
    EXPECT_EQ(text0.rfind(std::string("# ") + tool_version, 0), 0u);
    EXPECT_NE(text0.find("model=NITR-I"), std::string::npos);
    EXPECT_NE(text3.find("kf_dm_GeV=0.030"), std::string::npos);
    EXPECT_NE(text0.find("ode_rtol="), std::string::npos);
}

TEST(Pipeline, ZeroDarkMatterEqualsBaryonicPath)
{
    auto c = config_from(KeyValueFile::parse_string("models = NITR-I\n"), ".");
    Pipeline p(c);
    const auto t = p.table(0, 0.0);
    const auto& b = p.baryonic(0);
    ASSERT_EQ(t.size(), b.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        EXPECT_EQ(t[i].epsilon, b[i].epsilon);
        EXPECT_EQ(t[i].pressure, b[i].pressure);
    }
}

TEST(Pipeline, StarColumnsAreConsistent)
{
    const auto dir = scratch("stars");
    const auto cfg = write_file(dir / "run.cfg", "models = IOPB-I\nrho_c_min = 0.3\nrho_c_max = 1.0\n"
                                                 "rho_c_count = 6\noutput_dir = out\n");
    Pipeline p(load_config(cfg));
    const auto files = cmd_stars(p);
    ASSERT_EQ(files.size(), 1u);
    std::ifstream in(files[0]);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line.rfind("# ", 0), 0u);
    std::getline(in, line);
    EXPECT_EQ(line, star_header);
    int rows = 0;
    while (std::getline(in, line)) {
        const auto cols = split_list(line);
        ASSERT_EQ(cols.size(), 8u);
        const double M = std::stod(cols[1]), R = std::stod(cols[2]), C = std::stod(cols[3]);
        const double L = std::stod(cols[4]), f = std::stod(cols[5]), k2 = std::stod(cols[6]), wb = std::stod(cols[7]);
        EXPECT_NEAR(C, M * units::msun_km / R, 1e-9 * C);
        EXPECT_NEAR(L, 2.0 / 3.0 * k2 / std::pow(C, 5), 1e-9 * L);
        EXPECT_NEAR(wb, 2 * units::pi * f * 1e3 * M * units::msun_s, 1e-9 * wb);
        ++rows;
    }
    EXPECT_GE(rows, 3);
}

TEST(Pipeline, FitSelfTestHasZeroChiSquare)
{
    EXPECT_LT(fit_self_test().chi2_reduced, 1e-25);
}

TEST(Cli, ExceptionsMapToExitCodes)
{
    auto code = [](auto thrower) {
        try {
            thrower();
        } catch (...) {
            return exit_code(std::current_exception());
        }
        return 0;
    };
    EXPECT_EQ(code([] { throw ValidationError("x"); }), 2);
    EXPECT_EQ(code([] { throw RangeError("x"); }), 2);
    EXPECT_EQ(code([] { throw ConvergenceError("x"); }), 3);
    EXPECT_EQ(code([] { throw std::runtime_error("x"); }), 1);
}

TEST(Cli, ExitCodes)
{
    const auto dir = scratch("cli");
    EXPECT_EQ(run_cli("fit --self-test"), 0);
    EXPECT_EQ(run_cli("eos --model NoSuchModel --out " + dir.string()), 2);
    EXPECT_EQ(run_cli("eos --kf-dm -1 --model NITR-I --out " + dir.string()), 2);
    EXPECT_EQ(run_cli("bogus"), 2);
    EXPECT_EQ(run_cli("eos --model NITR-I --kf-dm 0.02 --out " + dir.string()), 0);
    EXPECT_TRUE(fs::exists(dir / "eos_NITR-I_kf0.020.csv"));
}
