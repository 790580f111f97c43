#pragma once

#include <cstdlib>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dmans/errors.hpp"
#include "dmans/keyvalue.hpp"
#include "dmans/relations/canonical.hpp"
#include "dmans/structure/integrator.hpp"

#ifndef DMANS_DEFAULT_DATA_DIR
#define DMANS_DEFAULT_DATA_DIR "data"
#endif

namespace dmans::workbench {

namespace fs = std::filesystem;

inline constexpr const char* tool_version = "dmans 1.0.0";

inline fs::path data_dir()
{
    if (const char* env = std::getenv("DMANS_DATA_DIR"); env && *env) return env;
    return DMANS_DEFAULT_DATA_DIR;
}

inline const std::vector<std::string>& bundled_models()
{
    static const std::vector<std::string> names{"NITR-I", "NITR", "FSU2", "FSUGarnet", "G1", "IOPB-I", "TM1"};
    return names;
}

struct GridSpec {
    double lo = 0;
    double hi = 0;
    std::size_t count = 0;
};

struct Tolerances {
    double field = 1e-12;           // mean-field residual
    double ode_rtol = 1e-8;
    double ode_atol = 1e-14;
    double fmode = 1e-10;           // relative, on omega^2
};

struct RunConfig {
    std::vector<fs::path> model_files;
    fs::path crust_file;
    std::optional<fs::path> dm_config;
    std::vector<double> kf_dm_list{0.0};
    GridSpec core_grid{0.04, 1.2, 400};
    GridSpec rho_c_grid{0.2, 1.2, 120};
    fs::path output_dir = "out";
    Tolerances tolerances;
    std::size_t stars_per_model = 40;  // fit sampling
    double fit_mass_min = 1.0;         // Msun
    relations::LambdaInterval gw_lambda;
    double gw_mass = 1.4;
    GridSpec contour_M{0.5, 2.5, 41};
    GridSpec contour_R{8.0, 16.0, 41};
    bool allow_acausal = false;
    bool fmode_in_stars = true;

    structure::IntegratorOptions integrator() const
    {
        structure::IntegratorOptions o;
        o.rtol = tolerances.ode_rtol;
        o.atol = tolerances.ode_atol;
        return o;
    }
};

inline const std::set<std::string>& config_keys()
{
    static const std::set<std::string> keys{
        "models",         "crust",          "dm",           "kf_dm",          "core_rho_min",  "core_rho_max",
        "core_rho_count", "rho_c_min",      "rho_c_max",    "rho_c_count",    "output_dir",    "field_tolerance",
        "ode_rtol",       "ode_atol",       "fmode_tolerance", "fit_stars_per_model", "fit_mass_min",
        "gw_lambda",      "gw_mass",        "contour_M",    "contour_R",      "allow_acausal", "fmode_in_stars"};
    return keys;
}

// Bare names refer to bundled files; anything else is a path relative to the config file.
inline fs::path resolve(const std::string& entry, const fs::path& base, const fs::path& bundled_dir,
                        const std::string& extension)
{
    fs::path p(entry);
    if (!p.has_parent_path() && !p.has_extension()) p = bundled_dir / (entry + extension);
    else if (p.is_relative()) p = base / p;
    if (!fs::exists(p)) throw ValidationError("referenced file not found: " + p.string());
    return p;
}

inline GridSpec parse_grid(const KeyValueFile& kv, const std::string& key, GridSpec fallback)
{
    if (!kv.has(key)) return fallback;
    const auto v = kv.get_double_list(key);
    if (v.size() != 3) throw ValidationError(kv.origin() + ": " + key + " expects min, max, count");
    if (!(v[0] > 0 && v[1] > v[0] && v[2] >= 2 && v[2] == std::floor(v[2])))
        throw ValidationError(kv.origin() + ": " + key + " needs 0 < min < max and an integer count >= 2");
    return {v[0], v[1], std::size_t(v[2])};
}

inline bool parse_bool(const std::string& s, const std::string& what)
{
    if (s == "true" || s == "yes" || s == "1") return true;
    if (s == "false" || s == "no" || s == "0") return false;
    throw ValidationError("cannot parse '" + s + "' as a boolean for " + what);
}

inline void validate(const RunConfig& c)
{
    if (c.model_files.empty()) throw ValidationError("no models configured");
    for (const auto& m : c.model_files)
        if (!fs::exists(m)) throw ValidationError("model file not found: " + m.string());
    if (!fs::exists(c.crust_file)) throw ValidationError("crust file not found: " + c.crust_file.string());
    if (c.dm_config && !fs::exists(*c.dm_config))
        throw ValidationError("dark matter file not found: " + c.dm_config->string());
    for (double kf : c.kf_dm_list)
        if (!(kf >= 0) || !std::isfinite(kf)) throw ValidationError("kf_dm values must be non-negative");
    if (c.core_grid.lo < 0.04 * (1 - 1e-12)) throw ValidationError("core_rho_min must be at least 0.04 fm^-3");
    if (c.rho_c_grid.count < 3) throw ValidationError("rho_c_count must be at least 3");
    if (c.stars_per_model < 2) throw ValidationError("fit_stars_per_model must be at least 2");
    if (!(c.gw_lambda.lower <= c.gw_lambda.central && c.gw_lambda.central <= c.gw_lambda.upper &&
          c.gw_lambda.lower > 1))
        throw ValidationError("gw_lambda needs 1 < lower <= central <= upper");
    if (!(c.tolerances.field > 0 && c.tolerances.ode_rtol > 0 && c.tolerances.ode_atol > 0 &&
          c.tolerances.fmode > 0))
        throw ValidationError("tolerances must be positive");
}

inline RunConfig config_from(const KeyValueFile& kv, const fs::path& base)
{
    for (const auto& key : kv.keys())
        if (!config_keys().count(key)) throw ValidationError(kv.origin() + ": unknown key '" + key + "'");
    const fs::path data = data_dir();
    RunConfig c;
    auto models = kv.get_list("models");
    if (models.empty()) models = bundled_models();
    for (const auto& m : models) c.model_files.push_back(resolve(m, base, data / "models", ".params"));
    c.crust_file = resolve(kv.get_string("crust", "sly_crust"), base, data / "crust", ".csv");
    if (kv.has("dm")) c.dm_config = resolve(kv.get_string("dm"), base, data / "dm", ".dm");
    if (kv.has("kf_dm")) c.kf_dm_list = kv.get_double_list("kf_dm");
    if (c.kf_dm_list.empty()) c.kf_dm_list = {0.0};
    c.core_grid.lo = kv.get_double("core_rho_min", c.core_grid.lo);
    c.core_grid.hi = kv.get_double("core_rho_max", c.core_grid.hi);
    c.core_grid.count = std::size_t(kv.get_double("core_rho_count", double(c.core_grid.count)));
    c.rho_c_grid.lo = kv.get_double("rho_c_min", c.rho_c_grid.lo);
    c.rho_c_grid.hi = kv.get_double("rho_c_max", c.rho_c_grid.hi);
    c.rho_c_grid.count = std::size_t(kv.get_double("rho_c_count", double(c.rho_c_grid.count)));
    if (kv.has("output_dir")) {
        fs::path out = kv.get_string("output_dir");
        c.output_dir = out.is_relative() ? base / out : out;
    }
    c.tolerances.field = kv.get_double("field_tolerance", c.tolerances.field);
    c.tolerances.ode_rtol = kv.get_double("ode_rtol", c.tolerances.ode_rtol);
    c.tolerances.ode_atol = kv.get_double("ode_atol", c.tolerances.ode_atol);
    c.tolerances.fmode = kv.get_double("fmode_tolerance", c.tolerances.fmode);
    c.stars_per_model = std::size_t(kv.get_double("fit_stars_per_model", double(c.stars_per_model)));
    c.fit_mass_min = kv.get_double("fit_mass_min", c.fit_mass_min);
    if (kv.has("gw_lambda")) {
        const auto v = kv.get_double_list("gw_lambda");
        if (v.size() != 3) throw ValidationError(kv.origin() + ": gw_lambda expects central, lower, upper");
        c.gw_lambda = {v[0], v[1], v[2]};
    }
    c.gw_mass = kv.get_double("gw_mass", c.gw_mass);
    c.contour_M = parse_grid(kv, "contour_M", c.contour_M);
    c.contour_R = parse_grid(kv, "contour_R", c.contour_R);
    if (kv.has("allow_acausal")) c.allow_acausal = parse_bool(kv.get_string("allow_acausal"), "allow_acausal");
    if (kv.has("fmode_in_stars")) c.fmode_in_stars = parse_bool(kv.get_string("fmode_in_stars"), "fmode_in_stars");
    validate(c);
    return c;
}

inline RunConfig load_config(const fs::path& path)
{
    return config_from(KeyValueFile::load(path), path.has_parent_path() ? path.parent_path() : fs::path("."));
}

}  // namespace dmans::workbench
