#include <iostream>

#include <CLI11.hpp>

#include "dmans/workbench/commands.hpp"

using namespace dmans;

namespace {

struct Overrides {
    std::string config;
    std::vector<std::string> models;
    std::vector<double> kf_dm;
    std::string out;
    bool allow_acausal = false;
};

workbench::RunConfig make_config(const Overrides& o)
{
    auto c = o.config.empty() ? workbench::config_from(KeyValueFile{}, ".") : workbench::load_config(o.config);
    if (!o.models.empty()) {
        c.model_files.clear();
        for (const auto& m : o.models)
            c.model_files.push_back(workbench::resolve(m, ".", workbench::data_dir() / "models", ".params"));
    }
    if (!o.kf_dm.empty()) c.kf_dm_list = o.kf_dm;
    if (!o.out.empty()) c.output_dir = o.out;
    if (o.allow_acausal) c.allow_acausal = true;
    workbench::validate(c);
    return c;
}

void add_common(CLI::App* cmd, Overrides& o)
{
    cmd->add_option("--config", o.config, "run configuration (key = value)")->check(CLI::ExistingFile);
    cmd->add_option("--model", o.models, "model parameter file or bundled model name (repeatable)");
    cmd->add_option("--kf-dm", o.kf_dm, "dark matter Fermi momentum in GeV (repeatable)");
    cmd->add_option("--out", o.out, "output directory");
    cmd->add_flag("--allow-acausal", o.allow_acausal, "keep tables with cs2 >= 1");
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Dark-matter-admixed neutron star workbench"};
    app.require_subcommand(1);
    Overrides o;
    bool self_test = false;
    auto* eos = app.add_subcommand("eos", "unified EOS tables per model and kf_dm");
    auto* stars = app.add_subcommand("stars", "mass-radius, tidal and f-mode data per model and kf_dm");
    auto* fit = app.add_subcommand("fit", "pooled universal-relation fits and GW170817 estimates");
    auto* contour = app.add_subcommand("contour", "f-mode frequency over the mass-radius plane");
    for (auto* cmd : {eos, stars, fit, contour}) add_common(cmd, o);
    fit->add_flag("--self-test", self_test, "fit exact quartic data and report chi2_reduced");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (self_test) {
            const auto f = workbench::fit_self_test();
            std::cout << "chi2_reduced = " << f.chi2_reduced << '\n';
            return f.chi2_reduced < 1e-20 ? 0 : 3;
        }
        workbench::Pipeline pipeline(make_config(o));
        std::vector<std::filesystem::path> written;
        if (eos->parsed()) written = workbench::cmd_eos(pipeline);
        if (stars->parsed()) written = workbench::cmd_stars(pipeline);
        if (fit->parsed()) written = workbench::cmd_fit(pipeline);
        if (contour->parsed()) written = workbench::cmd_contour(pipeline);
        for (const auto& p : written) std::cout << p.string() << '\n';
        return 0;
    } catch (...) {
        return workbench::exit_code(std::current_exception());
    }
}
