#pragma once

#include <exception>
#include <iostream>
#include <vector>

#include "dmans/workbench/pipeline.hpp"

namespace dmans::workbench {

inline std::vector<fs::path> cmd_eos(Pipeline& pl)
{
    const auto& c = pl.config();
    std::vector<fs::path> written;
    for (std::size_t m = 0; m < pl.inputs().models.size(); ++m)
        for (double kf : c.kf_dm_list) {
            const auto t = pl.table(m, kf);
            if (!c.allow_acausal) eos::check_causality(t);
            const auto path = c.output_dir / ("eos_" + file_tag(t.model_name, kf) + ".csv");
            auto out = open_output(path);
            eos::write_csv(t, out, stamp(c, t.model_name, kf));
            written.push_back(path);
        }
    return written;
}

inline std::vector<fs::path> cmd_stars(Pipeline& pl)
{
    const auto& c = pl.config();
    std::vector<fs::path> written;
    for (std::size_t m = 0; m < pl.inputs().models.size(); ++m)
        for (double kf : c.kf_dm_list) {
            const structure::TableEos eos(pl.table(m, kf));
            const auto curve = curve_for(eos, c);
            const auto path = c.output_dir / ("stars_" + file_tag(eos.model_name(), kf) + ".csv");
            auto out = open_output(path);
            write_stars(stable_stars(eos, curve, c), out, stamp(c, eos.model_name(), kf));
            written.push_back(path);
        }
    return written;
}

inline std::string pooled_names(const Pipeline& pl)
{
    std::string names;
    for (const auto& m : pl.inputs().models) names += (names.empty() ? "" : "+") + m.model_name;
    return names;
}

inline std::string pooled_stamp(const RunConfig& c, const Pipeline& pl)
{
    const std::string names = pooled_names(pl);
    std::string kfs;
    for (double kf : c.kf_dm_list) kfs += (kfs.empty() ? "" : "+") + format_kf(kf);
    return stamp(c, names, kfs);
}

inline std::vector<fs::path> cmd_fit(Pipeline& pl)
{
    const auto& c = pl.config();
    const std::string head = "# " + pooled_stamp(c, pl) + '\n';
    const auto fits_path = c.output_dir / "fits.csv";
    const auto canon_path = c.output_dir / "canonical.csv";
    const auto samples_path = c.output_dir / "fit_samples.csv";
    const auto chain_path = c.output_dir / "chain_check.csv";
    auto fits = open_output(fits_path);
    auto canon = open_output(canon_path);
    auto samples = open_output(samples_path);
    auto chain = open_output(chain_path);
    fits << head << fit_header << '\n';
    canon << head << "kf_dm_GeV,quantity,central,lower,upper,extrapolated\n";
    samples << head << "model,kf_dm_GeV,M_Msun,R_km,C,Lambda,f_kHz,omega_bar,dev_C_Lambda,dev_omegabar_Lambda\n";
    chain << head << "kf_dm_GeV,Lambda,C_direct,C_chained,relative_difference\n";
    using eos::format_number;
    for (double kf : c.kf_dm_list) {
        const auto pooled = pl.pooled(kf);
        const auto f = fit_all(pooled.stars, kf, c);
        for (const auto* fit : {&f.C_logLambda, &f.omegabar_logLambda, &f.C_omegabar, &f.f_sqrtdensity})
            write_fit_row(*fit, fits);
        for (const auto* e : {&f.C_1p4, &f.f_1p4})
            canon << format_kf(kf) << ',' << to_string(e->quantity) << ',' << format_number(e->central) << ','
                  << format_number(e->lower) << ',' << format_number(e->upper) << ','
                  << (e->extrapolated ? "true" : "false") << '\n';
        for (const auto& s : pooled.stars) {
            const double dc = std::abs(s.C - relations::eval_relation(f.C_logLambda, s.Lambda)) /
                              relations::eval_relation(f.C_logLambda, s.Lambda);
            const double dw = std::abs(s.omega_bar - relations::eval_relation(f.omegabar_logLambda, s.Lambda)) /
                              relations::eval_relation(f.omegabar_logLambda, s.Lambda);
            samples << s.model << ',' << format_kf(kf) << ',' << format_number(s.M) << ',' << format_number(s.R)
                    << ',' << format_number(s.C) << ',' << format_number(s.Lambda) << ',' << format_number(s.f_kHz)
                    << ',' << format_number(s.omega_bar) << ',' << format_number(dc) << ',' << format_number(dw)
                    << '\n';
        }
        const double L = c.gw_lambda.central;
        const double direct = relations::eval_relation(f.C_logLambda, L);
        const double chained =
            relations::eval_relation(f.C_omegabar, relations::eval_relation(f.omegabar_logLambda, L));
        chain << format_kf(kf) << ',' << format_number(L) << ',' << format_number(direct) << ','
              << format_number(chained) << ',' << format_number(std::abs(chained - direct) / direct) << '\n';
    }
    return {fits_path, canon_path, samples_path, chain_path};
}

inline std::vector<fs::path> cmd_contour(Pipeline& pl)
{
    const auto& c = pl.config();
    const auto Ms = lin_space(c.contour_M.lo, c.contour_M.hi, c.contour_M.count);
    const auto Rs = lin_space(c.contour_R.lo, c.contour_R.hi, c.contour_R.count);
    std::vector<fs::path> written;
    for (double kf : c.kf_dm_list) {
        const auto pooled = pl.pooled(kf);
        const auto fit = relations::fit_relation(relations::FitKind::C_of_omegabar,
                                                 relation_samples(pooled.stars).C_omegabar, kf);
        const auto path = c.output_dir / ("contour_kf" + format_kf(kf) + ".csv");
        auto out = open_output(path);
        out << "# " << stamp(c, pooled_names(pl), kf) << '\n' << "M_Msun,R_km,f_kHz\n";
        for (const auto& cell : relations::fmode_contour(fit, Ms, Rs)) {
            out << eos::format_number(cell.M) << ',' << eos::format_number(cell.R) << ',';
            if (std::isfinite(cell.f)) out << eos::format_number(cell.f);
            out << '\n';
        }
        written.push_back(path);
    }
    return written;
}

// 2 for validation failures, 3 for solver non-convergence; reports the message on stderr.
inline int exit_code(std::exception_ptr e)
{
    try {
        std::rethrow_exception(e);
    } catch (const ConvergenceError& x) {
        std::cerr << "error: " << x.what() << '\n';
        return 3;
    } catch (const ValidationError& x) {
        std::cerr << "error: " << x.what() << '\n';
        return 2;
    } catch (const std::exception& x) {
        std::cerr << "error: " << x.what() << '\n';
        return 1;
    }
}

// Least squares on noiseless quartic data; chi2_reduced should vanish.
inline relations::PolyFit fit_self_test()
{
    const std::vector<double> truth{0.35, -0.075, 1e-4, 9e-4, -5e-5};
    std::vector<relations::Sample> s;
    for (int i = 0; i < 60; ++i) {
        const double L = std::pow(10.0, 0.5 + 3.5 * i / 59.0);
        s.push_back({L, relations::polynomial(truth, std::log10(L))});
    }
    return relations::fit_relation(relations::FitKind::C_of_logLambda, s, 0.0);
}

}  // namespace dmans::workbench
