#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "dmans/dmans.hpp"

using namespace dmans;

namespace {

struct Outcome {
    bool pass = true;
    std::vector<std::string> details;

    void check(bool ok, const char* fmt, auto... args)
    {
        char buf[512];
        std::snprintf(buf, sizeof buf, fmt, args...);
        details.push_back(std::string(ok ? "ok   " : "MISS ") + buf);
        pass = pass && ok;
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool within(double v, double target, double tol) { return std::abs(v - target) <= tol; }
bool within_rel(double v, double target, double tol) { return std::abs(v - target) <= tol * std::abs(target); }

workbench::Pipeline& pipeline()
{
    static workbench::Pipeline p(workbench::config_from(KeyValueFile{}, "."));
    return p;
}

std::size_t model_index(const std::string& name)
{
    const auto& models = pipeline().inputs().models;
    for (std::size_t i = 0; i < models.size(); ++i)
        if (models[i].model_name == name) return i;
    throw ValidationError("model not bundled: " + name);
}

const workbench::PooledSample& pooled(double kf)
{
    static std::map<double, workbench::PooledSample> cache;
    auto it = cache.find(kf);
    if (it == cache.end()) it = cache.emplace(kf, pipeline().pooled(kf)).first;
    return it->second;
}

const workbench::FitSet& fits(double kf)
{
    static std::map<double, workbench::FitSet> cache;
    auto it = cache.find(kf);
    if (it == cache.end()) it = cache.emplace(kf, workbench::fit_all(pooled(kf).stars, kf, pipeline().config())).first;
    return it->second;
}

struct ModelStars {
    structure::TableEos eos;
    structure::MRCurve curve;
};

const ModelStars& stars(const std::string& name, double kf)
{
    static std::map<std::pair<std::string, double>, ModelStars> cache;
    auto key = std::make_pair(name, kf);
    auto it = cache.find(key);
    if (it == cache.end()) {
        structure::TableEos eos(pipeline().table(model_index(name), kf));
        auto curve = workbench::curve_for(eos, pipeline().config());
        it = cache.emplace(key, ModelStars{std::move(eos), std::move(curve)}).first;
    }
    return it->second;
}

Outcome saturation()
{
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    const auto s = rmf::saturation_properties(pipeline().inputs().models.at(model_index("NITR-I")));
    const double dt = seconds_since(t0);
    o.check(within(s.rho_sat, 0.151, 0.001), "rho_sat = %.4f fm^-3 (0.151 +- 0.001)", s.rho_sat);
    o.check(within(s.E_sat, -16.337, 0.05), "E_sat = %.3f MeV (-16.337 +- 0.05)", s.E_sat);
    o.check(within(s.K_sat, 199.018, 1.0), "K = %.2f MeV (199.018 +- 1.0)", s.K_sat);
    o.check(within(s.J_sat, 30.937, 0.2), "J = %.3f MeV (30.937 +- 0.2)", s.J_sat);
    o.check(within(s.L_sat, 61.826, 0.5), "L = %.3f MeV (61.826 +- 0.5)", s.L_sat);
    o.check(dt < 1.0, "runtime %.2f s (< 1 s)", dt);
    return o;
}

Outcome global_structure()
{
    Outcome o;
    struct Row {
        const char* name;
        double M, R, R14, L14;
    };
    for (const Row& r : {Row{"NITR-I", 2.34, 11.46, 12.71, 526.96}, Row{"NITR", 2.35, 12.19, 13.13, 682.84}}) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto& m = stars(r.name, 0.0);
        const auto s14 = structure::star_at_mass(m.eos, m.curve, 1.4);
        const double L = perturb::tidal_deformability(s14, m.eos).Lambda;
        const double dt = seconds_since(t0);
        o.check(within(m.curve.M_max, r.M, 0.02), "%s M_max = %.3f Msun (%.2f +- 0.02)", r.name, m.curve.M_max, r.M);
        o.check(within(m.curve.R_at_Mmax, r.R, 0.15), "%s R_max = %.2f km (%.2f +- 0.15)", r.name, m.curve.R_at_Mmax,
                r.R);
        o.check(within(s14.R, r.R14, 0.25), "%s R_1.4 = %.2f km (%.2f +- 0.25)", r.name, s14.R, r.R14);
        o.check(within_rel(L, r.L14, 0.05), "%s Lambda_1.4 = %.1f (%.2f +- 5%%)", r.name, L, r.L14);
        o.check(dt < 60.0, "%s runtime %.1f s (< 60 s)", r.name, dt);
    }
    return o;
}

Outcome fmode_anchors()
{
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    struct Row {
        double kf, f14, fmax;
    };
    for (const Row& r : {Row{0.0, 2.15, 2.51}, Row{0.03, 2.32, 2.61}}) {
        const auto& m = stars("NITR-I", r.kf);
        const double f14 = perturb::fmode_frequency(structure::star_at_mass(m.eos, m.curve, 1.4), m.eos).f;
        const double fmax = perturb::fmode_frequency(structure::tov_integrate(m.eos, m.curve.rho_c_at_Mmax), m.eos).f;
        o.check(within(f14, r.f14, 0.10), "kf = %.2f: f(1.4) = %.3f kHz (%.2f +- 0.10)", r.kf, f14, r.f14);
        o.check(within(fmax, r.fmax, 0.10), "kf = %.2f: f(M_max) = %.3f kHz (%.2f +- 0.10)", r.kf, fmax, r.fmax);
    }
    const double dt = seconds_since(t0);
    o.check(dt < 60.0, "runtime %.1f s (< 60 s)", dt);
    return o;
}

Outcome average_density_fit()
{
    Outcome o;
    struct Row {
        double kf, a, b;
    };
    for (const Row& r : {Row{0.0, 0.549, 2.088}, Row{0.02, 0.537, 2.106}, Row{0.03, 0.517, 2.144}}) {
        const auto& f = fits(r.kf).f_sqrtdensity;
        o.check(within_rel(f.coeffs[0], r.a, 0.05), "kf = %.2f: a = %.3f kHz (%.3f +- 5%%)", r.kf, f.coeffs[0], r.a);
        o.check(within_rel(f.coeffs[1], r.b, 0.05), "kf = %.2f: b = %.3f kHz (%.3f +- 5%%)", r.kf, f.coeffs[1], r.b);
    }
    return o;
}

Outcome universal_relations()
{
    Outcome o;
    const auto& f0 = fits(0.0).C_logLambda;
    o.check(within_rel(f0.coeffs[0], 0.350, 0.10), "kf = 0: a0 = %.4f (0.350 +- 10%%)", f0.coeffs[0]);
    o.check(within_rel(f0.coeffs[1], -7.544e-2, 0.10), "kf = 0: a1 = %.4e (-7.544e-2 +- 10%%)", f0.coeffs[1]);
    struct Row {
        double kf, C, f;
    };
    for (const Row& r : {Row{0.0, 0.189, 2.60}, Row{0.03, 0.189, 2.587}, Row{0.05, 0.188, 2.549}}) {
        const auto& s = fits(r.kf);
        o.check(within(s.C_1p4.central, r.C, 0.005), "kf = %.2f: C_1.4 = %.4f (%.3f +- 0.005)", r.kf, s.C_1p4.central,
                r.C);
        o.check(within(s.f_1p4.central, r.f, 0.10), "kf = %.2f: f_1.4 = %.3f kHz (%.3f +- 0.10)", r.kf,
                s.f_1p4.central, r.f);
    }
    return o;
}

Outcome canonical_deviation()
{
    Outcome o;
    const auto& band = pipeline().config().gw_lambda;
    for (double kf : {0.0, 0.02, 0.03}) {
        const auto& s = fits(kf);
        double dc = 0, dw = 0;
        int n = 0;
        for (const auto& star : pooled(kf).stars) {
            if (star.Lambda < band.lower || star.Lambda > band.upper) continue;
            ++n;
            const double c = relations::eval_relation(s.C_logLambda, star.Lambda);
            const double w = relations::eval_relation(s.omegabar_logLambda, star.Lambda);
            dc = std::max(dc, std::abs(star.C - c) / c);
            dw = std::max(dw, std::abs(star.omega_bar - w) / w);
        }
        o.check(n > 0 && dc < 0.03, "kf = %.2f: max C-Lambda deviation %.2f%% over %d stars (< 3%%)", kf, 100 * dc, n);
        o.check(n > 0 && dw < 0.03, "kf = %.2f: max omegabar-Lambda deviation %.2f%% (< 3%%)", kf, 100 * dw);
    }
    return o;
}

Outcome properties()
{
    Outcome o;
    auto& pl = pipeline();
    const auto& names = pl.inputs().models;

    // (a) causality
    double cs2_max = 0;
    for (std::size_t m = 0; m < names.size(); ++m)
        for (double kf : {0.0, 0.02, 0.03, 0.04}) {
            const auto t = pl.table(m, kf);
            for (const auto& r : t.rows)
                if (r.segment == eos::Segment::core) cs2_max = std::max(cs2_max, r.cs2);
        }
    o.check(cs2_max < 1.0, "(a) max core cs2 over all tables = %.4f (< 1)", cs2_max);

    // (b) uniform-density interior solution
    double worst = 0;
    for (double C : {0.05, 0.15, 0.25}) {
        const double eps = 500.0, s = std::sqrt(1 - 2 * C);
        const double Pc = eps * (1 - s) / (3 * s - 1);
        structure::TovOptions opt;
        opt.integrator.rtol = 1e-12;
        opt.integrator.atol = 1e-16;
        opt.integrator.r_start = 1e-4;
        opt.keep_profile = false;
        const auto star = structure::tov_integrate_pressure(structure::UniformDensityEos(eps, 1e-14 * Pc), Pc, opt);
        const double R = std::sqrt(3 * C / (4 * units::pi * eps * units::mev_fm3_to_km2));
        worst = std::max({worst, std::abs(star.R - R) / R, std::abs(star.C - C) / C});
    }
    o.check(worst <= 1e-6, "(b) uniform-density TOV worst relative error %.2e (<= 1e-6)", worst);

    // (c) incompressible Love limit
    {
        const double eps = 300.0, C = 0.005, s = std::sqrt(1 - 2 * C);
        const double Pc = eps * (1 - s) / (3 * s - 1);
        const structure::UniformDensityEos e(eps, 1e-12 * Pc);
        const auto star = structure::tov_integrate_pressure(e, Pc);
        const double k2 = perturb::tidal_deformability(star, e).k2;
        o.check(std::abs(k2 - 0.75) <= 0.0075, "(c) k2 at C = 0.005: %.5f (0.75 +- 1%%)", k2);
    }

    // (d) monotone softening with dark matter
    int violations = 0, comparisons = 0;
    for (const auto& p : names) {
        struct Snap {
            double Mmax, R[2], L[2], f[2];
        };
        std::vector<Snap> snaps;
        for (double kf : {0.0, 0.02, 0.03, 0.04}) {
            const auto& m = stars(p.model_name, kf);
            Snap s{m.curve.M_max, {}, {}, {}};
            int i = 0;
            for (double M : {1.0, 1.4}) {
                const auto star = structure::star_at_mass(m.eos, m.curve, M);
                s.R[i] = star.R;
                s.L[i] = perturb::tidal_deformability(star, m.eos).Lambda;
                s.f[i] = perturb::fmode_frequency(star, m.eos).f;
                ++i;
            }
            snaps.push_back(s);
        }
        for (std::size_t k = 1; k < snaps.size(); ++k) {
            const auto &a = snaps[k - 1], &b = snaps[k];
            violations += !(b.Mmax < a.Mmax);
            ++comparisons;
            for (int i = 0; i < 2; ++i) {
                violations += !(b.R[i] < a.R[i]) + !(b.L[i] < a.L[i]) + !(b.f[i] > a.f[i]);
                comparisons += 3;
            }
        }
    }
    o.check(violations == 0, "(d) dark matter monotonicity: %d violations in %d comparisons", violations, comparisons);

    // (e) exact recovery
    const auto self = workbench::fit_self_test();
    o.check(self.chi2_reduced < 1e-25, "(e) exact quartic chi2_reduced = %.1e", self.chi2_reduced);

    // (f) thermodynamic identity on the baryonic core tables
    double thermo = 0;
    for (const auto& p : names) {
        const auto t = rmf::build_core_table(p, rmf::default_core_grid());
        for (std::size_t i = 1; i + 1 < t.size(); ++i) {
            const double d = (t[i + 1].epsilon - t[i - 1].epsilon) / (t[i + 1].rho_b - t[i - 1].rho_b);
            const double want = (t[i].epsilon + t[i].pressure) / t[i].rho_b;
            thermo = std::max(thermo, std::abs(d - want) / want);
        }
    }
    o.check(thermo < 1e-4, "(f) thermodynamic identity worst relative error %.2e (< 1e-4)", thermo);
    return o;
}

Outcome hess_softening()
{
    Outcome o;
    double R[3];
    int i = 0;
    for (double kf : {0.0, 0.03, 0.04}) {
        const auto& m = stars("NITR-I", kf);
        R[i++] = structure::star_at_mass(m.eos, m.curve, 0.77).R;
    }
    o.check(R[0] - R[1] >= 0.5, "R(0.77) drops %.2f km from kf = 0 (%.2f km) to 0.03 (%.2f km) (>= 0.5)", R[0] - R[1],
            R[0], R[1]);
    o.check(R[2] < R[1], "R(0.77) at kf = 0.04: %.2f km (< %.2f)", R[2], R[1]);
    return o;
}

struct Criterion {
    int id;
    const char* title;
    std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv)
{
    std::vector<Criterion> all{
        {1, "saturation properties of NITR-I", saturation},
        {2, "global structure of NITR-I and NITR", global_structure},
        {3, "f-mode anchors of NITR-I", fmode_anchors},
        {4, "average-density f-mode fit", average_density_fit},
        {5, "universal-relation coefficients and GW170817 propagation", universal_relations},
        {6, "relative deviation in the canonical Lambda band", canonical_deviation},
        {7, "property suite", properties},
        {8, "low-mass softening by dark matter", hess_softening},
    };
    int only = 0;
    bool strict = false;
    for (int i = 1; i < argc; ++i) {
        if (!std::strcmp(argv[i], "--strict")) strict = true;
        else if (!std::strcmp(argv[i], "--criterion") && i + 1 < argc) only = std::atoi(argv[++i]);
        else {
            std::fprintf(stderr, "usage: %s [--criterion N] [--strict]\n", argv[0]);
            return 2;
        }
    }
    int failed = 0, errors = 0;
    for (const auto& c : all) {
        if (only && c.id != only) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        std::string error;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            error = e.what();
            o.pass = false;
            ++errors;
        }
        std::printf("%s criterion %d: %s (%.1f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.title, seconds_since(t0));
        for (const auto& d : o.details) std::printf("    %s\n", d.c_str());
        if (!error.empty()) std::printf("    error: %s\n", error.c_str());
        std::fflush(stdout);
        failed += !o.pass;
    }
    if (errors) return 1;
    return strict && failed ? 1 : 0;
}
