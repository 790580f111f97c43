#pragma once

#include <cstdio>
#include <fstream>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "dmans/dm/dark_matter.hpp"
#include "dmans/eos/assembly.hpp"
#include "dmans/perturbations/fmode.hpp"
#include "dmans/perturbations/tidal.hpp"
#include "dmans/relations/canonical.hpp"
#include "dmans/relations/contour.hpp"
#include "dmans/relations/polyfit.hpp"
#include "dmans/rmf/core_table.hpp"
#include "dmans/structure/tov.hpp"
#include "dmans/workbench/config.hpp"

namespace dmans::workbench {

inline std::string format_kf(double kf)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", kf);
    return buf;
}

inline std::string stamp(const RunConfig& c, const std::string& model, const std::string& kf)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, "%s model=%s kf_dm_GeV=%s field_tol=%.3g ode_rtol=%.3g ode_atol=%.3g fmode_tol=%.3g",
                  tool_version, model.c_str(), kf.c_str(), c.tolerances.field, c.tolerances.ode_rtol,
                  c.tolerances.ode_atol, c.tolerances.fmode);
    return buf;
}

inline std::string stamp(const RunConfig& c, const std::string& model, double kf)
{
    return stamp(c, model, format_kf(kf));
}

struct Inputs {
    std::vector<rmf::RMFParameterSet> models;
    eos::EOSTable crust;
    dm::DMParameterSet dm;
};

inline Inputs load_inputs(const RunConfig& c)
{
    Inputs in;
    for (const auto& f : c.model_files) in.models.push_back(rmf::load_parameter_set(f));
    in.crust = eos::load_table(c.crust_file);
    for (auto& r : in.crust.rows) r.segment = eos::Segment::crust;
    if (c.dm_config) in.dm = dm::load_dm_parameters(*c.dm_config);
    return in;
}

// Baryonic crust+core table; independent of the dark matter content.
inline eos::EOSTable build_baryonic_eos(const rmf::RMFParameterSet& p, const eos::EOSTable& crust, const RunConfig& c)
{
    rmf::CoreTableOptions opt;
    opt.solver.tolerance = c.tolerances.field;
    const auto grid = log_space(c.core_grid.lo, c.core_grid.hi, c.core_grid.count);
    auto core = rmf::build_core_table(p, grid, opt);
    if (!c.allow_acausal) eos::check_causality(core);
    auto unified = eos::attach_crust(core, crust);
    unified.model_name = p.model_name;
    return unified;
}

inline eos::EOSTable with_dark_matter(const eos::EOSTable& baryonic, const dm::DMParameterSet& dm, double kf)
{
    dm::check_kf(kf);
    auto t = eos::admix_dm(baryonic, dm::solve_higgs(kf, dm));
    t.dm_kf = kf;
    return t;
}

struct StarRecord {
    std::string model;
    double dm_kf = 0;
    double rho_c = 0;
    double M = 0;
    double R = 0;
    double C = 0;
    double k2 = 0;
    double Lambda = 0;
    double f_kHz = 0;
    double omega_bar = 0;
};

inline perturb::FModeOptions fmode_options(const RunConfig& c)
{
    perturb::FModeOptions o;
    o.rel_tol = c.tolerances.fmode;
    o.integrator = perturb::shot_integrator(c.integrator());
    return o;
}

inline StarRecord describe(const structure::StellarSolution& s, const structure::TableEos& eos, const RunConfig& c,
                           bool with_fmode = true)
{
    StarRecord r;
    r.model = eos.model_name();
    r.dm_kf = eos.dm_kf();
    r.rho_c = s.rho_c;
    r.M = s.M;
    r.R = s.R;
    r.C = s.C;
    const auto tidal = perturb::tidal_deformability(s, eos, c.integrator());
    r.k2 = tidal.k2;
    r.Lambda = perturb::tidal_lambda(tidal.k2, s.C);
    r.f_kHz = std::numeric_limits<double>::quiet_NaN();
    r.omega_bar = std::numeric_limits<double>::quiet_NaN();
    if (with_fmode) {
        const auto f = perturb::fmode_frequency(s, eos, fmode_options(c));
        r.f_kHz = f.f;
        r.omega_bar = f.omega_bar;
    }
    return r;
}

inline structure::TovOptions tov_options(const RunConfig& c)
{
    structure::TovOptions o;
    o.integrator = c.integrator();
    o.keep_profile = false;
    return o;
}

inline structure::MRCurve curve_for(const structure::TableEos& eos, const RunConfig& c)
{
    const double hi = std::min(c.rho_c_grid.hi, eos.rho_max());
    return structure::mr_curve(eos, log_space(c.rho_c_grid.lo, hi, c.rho_c_grid.count), tov_options(c));
}

// Stable-branch stars on the central-density grid.
inline std::vector<StarRecord> stable_stars(const structure::TableEos& eos, const structure::MRCurve& curve,
                                            const RunConfig& c)
{
    std::vector<StarRecord> out;
    for (std::size_t i = 0; i < curve.stable_end(); ++i) out.push_back(describe(curve.stars[i], eos, c, c.fmode_in_stars));
    return out;
}

// Stars uniform in mass over [fit_mass_min, M_max].
inline std::vector<StarRecord> fit_sample(const structure::TableEos& eos, const structure::MRCurve& curve,
                                          const RunConfig& c)
{
    if (curve.M_max <= c.fit_mass_min)
        throw ValidationError(eos.model_name() + ": M_max below the fit sampling floor");
    std::vector<StarRecord> out;
    const std::size_t n = c.stars_per_model;
    for (std::size_t i = 0; i < n; ++i) {
        const double M = c.fit_mass_min + (curve.M_max - c.fit_mass_min) * double(i) / double(n - 1);
        out.push_back(describe(structure::star_at_mass(eos, curve, M, tov_options(c)), eos, c));
    }
    return out;
}

inline const char* star_header = "rho_c_fm3,M_Msun,R_km,C,Lambda,f_kHz,k2,omega_bar";

inline void write_stars(const std::vector<StarRecord>& stars, std::ostream& out, const std::string& stamp_line)
{
    out << "# " << stamp_line << '\n' << star_header << '\n';
    using eos::format_number;
    auto cell = [](double v) { return std::isfinite(v) ? format_number(v) : std::string(); };
    for (const auto& s : stars)
        out << format_number(s.rho_c) << ',' << format_number(s.M) << ',' << format_number(s.R) << ','
            << format_number(s.C) << ',' << format_number(s.Lambda) << ',' << cell(s.f_kHz) << ','
            << format_number(s.k2) << ',' << cell(s.omega_bar) << '\n';
}

struct RelationSamples {
    std::vector<relations::Sample> C_logLambda, omegabar_logLambda, C_omegabar, f_sqrtdensity;
};

inline RelationSamples relation_samples(const std::vector<StarRecord>& stars)
{
    RelationSamples s;
    for (const auto& r : stars) {
        s.C_logLambda.push_back({r.Lambda, r.C});
        s.omegabar_logLambda.push_back({r.Lambda, r.omega_bar});
        s.C_omegabar.push_back({r.omega_bar, r.C});
        s.f_sqrtdensity.push_back({relations::average_density_abscissa(r.M, r.R), r.f_kHz});
    }
    return s;
}

struct FitSet {
    double dm_kf = 0;
    relations::PolyFit C_logLambda, omegabar_logLambda, C_omegabar, f_sqrtdensity;
    relations::CanonicalEstimate C_1p4, f_1p4;
};

inline FitSet fit_all(const std::vector<StarRecord>& pooled, double kf, const RunConfig& c)
{
    using relations::FitKind;
    const auto s = relation_samples(pooled);
    FitSet f;
    f.dm_kf = kf;
    f.C_logLambda = relations::fit_relation(FitKind::C_of_logLambda, s.C_logLambda, kf);
    f.omegabar_logLambda = relations::fit_relation(FitKind::omegabar_of_logLambda, s.omegabar_logLambda, kf);
    f.C_omegabar = relations::fit_relation(FitKind::C_of_omegabar, s.C_omegabar, kf);
    f.f_sqrtdensity = relations::fit_relation(FitKind::f_of_sqrtdensity, s.f_sqrtdensity, kf);
    f.C_1p4 = relations::propagate_gw170817(f.C_logLambda, c.gw_lambda, c.gw_mass);
    f.f_1p4 = relations::propagate_gw170817(f.omegabar_logLambda, c.gw_lambda, c.gw_mass);
    return f;
}

inline const char* fit_header = "kind,kf_dm_GeV,c0,c1,c2,c3,c4,chi2_reduced,n_points";

inline void write_fit_row(const relations::PolyFit& f, std::ostream& out)
{
    out << to_string(f.kind) << ',' << format_kf(f.dm_kf);
    for (std::size_t i = 0; i < 5; ++i) {
        out << ',';
        if (i < f.coeffs.size()) out << eos::format_number(f.coeffs[i]);
    }
    out << ',' << eos::format_number(f.chi2_reduced) << ',' << f.n_points << '\n';
}

// Samples for one dark matter momentum, pooled across the configured models.
struct PooledSample {
    double dm_kf = 0;
    std::vector<StarRecord> stars;
};

class Pipeline {
public:
    explicit Pipeline(RunConfig config) : config_(std::move(config)), inputs_(load_inputs(config_)) {}

    const RunConfig& config() const { return config_; }
    const Inputs& inputs() const { return inputs_; }

    const eos::EOSTable& baryonic(std::size_t model)
    {
        auto it = baryonic_.find(model);
        if (it == baryonic_.end())
            it = baryonic_.emplace(model, build_baryonic_eos(inputs_.models.at(model), inputs_.crust, config_)).first;
        return it->second;
    }

    eos::EOSTable table(std::size_t model, double kf) { return with_dark_matter(baryonic(model), inputs_.dm, kf); }

    PooledSample pooled(double kf)
    {
        PooledSample p;
        p.dm_kf = kf;
        for (std::size_t m = 0; m < inputs_.models.size(); ++m) {
            const structure::TableEos eos(table(m, kf));
            const auto curve = curve_for(eos, config_);
            auto stars = fit_sample(eos, curve, config_);
            p.stars.insert(p.stars.end(), stars.begin(), stars.end());
        }
        return p;
    }

private:
    RunConfig config_;
    Inputs inputs_;
    std::map<std::size_t, eos::EOSTable> baryonic_;
};

inline std::ofstream open_output(const fs::path& path)
{
    fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write " + path.string());
    return out;
}

inline std::string file_tag(const std::string& model, double kf) { return model + "_kf" + format_kf(kf); }

}  // namespace dmans::workbench
