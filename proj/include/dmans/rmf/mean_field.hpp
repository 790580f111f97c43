#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>

#include <Eigen/Dense>
#include <boost/math/tools/roots.hpp>

#include "dmans/errors.hpp"
#include "dmans/fermi_gas.hpp"
#include "dmans/rmf/parameters.hpp"
#include "dmans/units.hpp"

namespace dmans::rmf {

enum class Mode { beta_equilibrium, symmetric, pure_neutron, fixed_asymmetry };

struct Composition {
    Mode mode = Mode::beta_equilibrium;
    double asymmetry = 0.0;  // (rho_n - rho_p) / rho_b, fixed_asymmetry only

    static Composition beta_equilibrium() { return {Mode::beta_equilibrium, 0.0}; }
    static Composition symmetric() { return {Mode::symmetric, 0.0}; }
    static Composition pure_neutron() { return {Mode::pure_neutron, 1.0}; }
    static Composition fixed_asymmetry(double t) { return {Mode::fixed_asymmetry, t}; }
};

// Field amplitudes and Fermi momenta in MeV, densities in fm^-3.
struct MeanFieldState {
    double Phi = 0, W = 0, R = 0;
    double kf_n = 0, kf_p = 0, kf_e = 0, kf_mu = 0;
    double rho_b = 0;
    double rho_3 = 0;  // rho_p - rho_n
    Composition composition;
    int iterations = 0;

    double rho_n() const { return fermi::number_density(units::to_fm(kf_n)); }
    double rho_p() const { return fermi::number_density(units::to_fm(kf_p)); }
    double rho_e() const { return fermi::number_density(units::to_fm(kf_e)); }
    double rho_mu() const { return fermi::number_density(units::to_fm(kf_mu)); }
    double proton_fraction() const { return rho_b > 0 ? rho_p() / rho_b : 0.0; }
};

struct EosPoint {
    double epsilon = 0;   // MeV fm^-3
    double pressure = 0;  // MeV fm^-3
};

struct ChemicalPotentials {
    double mu_n = 0, mu_p = 0, mu_e = 0, mu_mu = 0;  // MeV
};

struct SolverOptions {
    double tolerance = 1e-12;  // scaled residual at which Newton stops
    int max_iterations = 100;
    int continuation_steps = 24;
};

namespace detail {

// Parameters converted to fm^-1 with the combinations the equations need.
struct Couplings {
    double M, ms2_gs2, mw2_gw2, mr2_gr2, k3, k4, z0_gw2, lw, eta1, eta2, eta_rho;
    double me, mmu;

    explicit Couplings(const RMFParameterSet& p)
    {
        M = units::to_fm(p.M_N);
        const double ms = units::to_fm(p.m_sigma), mw = units::to_fm(p.m_omega), mr = units::to_fm(p.m_rho);
        ms2_gs2 = ms * ms / (p.g_sigma * p.g_sigma);
        mw2_gw2 = mw * mw / (p.g_omega * p.g_omega);
        mr2_gr2 = mr * mr / (p.g_rho * p.g_rho);
        k3 = p.kappa3;
        k4 = p.kappa4;
        z0_gw2 = p.zeta0 / (p.g_omega * p.g_omega);
        lw = p.lambda_omega;
        eta1 = p.eta1;
        eta2 = p.eta2;
        eta_rho = p.eta_rho;
        me = units::to_fm(units::electron_mass);
        mmu = units::to_fm(units::muon_mass);
    }

    double U(double phi) const
    {
        return ms2_gs2 * phi * phi * (0.5 + k3 * phi / (6 * M) + k4 * phi * phi / (24 * M * M));
    }
    double dU(double phi) const
    {
        return ms2_gs2 * (phi + k3 * phi * phi / (2 * M) + k4 * phi * phi * phi / (6 * M * M));
    }
    double A(double phi) const { return 1 + eta1 * phi / M + eta2 * phi * phi / (2 * M * M); }
    double dA(double phi) const { return eta1 / M + eta2 * phi / (M * M); }
    double B(double phi) const { return 1 + eta_rho * phi / M; }
    double dB(double) const { return eta_rho / M; }
};

struct Densities {
    double kn = 0, kp = 0, ke = 0, kmu = 0;  // fm^-1
    double rho = 0, rho3 = 0;
};

inline Densities nucleon_densities(double rho_b, double rho_p)
{
    Densities d;
    d.rho = rho_b;
    d.kn = fermi::fermi_momentum(rho_b - rho_p);
    d.kp = fermi::fermi_momentum(rho_p);
    d.rho3 = rho_p - (rho_b - rho_p);
    return d;
}

inline double lepton_momentum(double mu, double m) { return mu > m ? std::sqrt(mu * mu - m * m) : 0.0; }

inline Densities beta_densities(const Couplings& c, double rho_b, double mu_e)
{
    const double ke = lepton_momentum(mu_e, c.me);
    const double kmu = lepton_momentum(mu_e, c.mmu);
    Densities d = nucleon_densities(rho_b, fermi::number_density(ke) + fermi::number_density(kmu));
    d.ke = ke;
    d.kmu = kmu;
    return d;
}

inline double proton_density_for(const Composition& comp, double rho_b)
{
    switch (comp.mode) {
    case Mode::symmetric: return 0.5 * rho_b;
    case Mode::pure_neutron: return 0.0;
    case Mode::fixed_asymmetry: return 0.5 * rho_b * (1 - comp.asymmetry);
    default: return 0.0;
    }
}

// sigma, omega, rho field equations, each scaled by rho_b
inline std::array<double, 3> field_equations(const Couplings& c, const Densities& d, double phi, double w, double r)
{
    const double m = c.M - phi;
    const double rho_s = fermi::scalar_density(d.kn, m) + fermi::scalar_density(d.kp, m);
    const double fs = c.dU(phi) - 0.5 * c.dA(phi) * c.mw2_gw2 * w * w - 0.5 * c.dB(phi) * c.mr2_gr2 * r * r - rho_s;
    const double fw = c.A(phi) * c.mw2_gw2 * w + c.z0_gw2 * w * w * w / 6 + 2 * c.lw * r * r * w - d.rho;
    const double fr = c.B(phi) * c.mr2_gr2 * r + 2 * c.lw * w * w * r - 0.5 * d.rho3;
    const double s = std::max(d.rho, 1e-300);
    return {fs / s, fw / s, fr / s};
}

inline double beta_equation(const Couplings& c, const Densities& d, double phi, double w, double r, double mu_e)
{
    const double m = c.M - phi;
    const double mu_n = std::hypot(d.kn, m) + w - 0.5 * r;
    const double mu_p = std::hypot(d.kp, m) + w + 0.5 * r;
    return (mu_n - mu_p - mu_e) / mu_n;
}

// Seed from the field equations with the self-couplings dropped where that keeps
// each equation one-dimensional.
inline std::array<double, 4> cold_seed(const Couplings& c, const Composition& comp, double rho_b)
{
    double mu_e = 0.0;
    double rho_p = proton_density_for(comp, rho_b);
    if (comp.mode == Mode::beta_equilibrium) {
        const double xp = rho_b > 0.2 ? 0.1 : 0.05;
        mu_e = std::hypot(fermi::fermi_momentum(xp * rho_b), c.me);
        rho_p = xp * rho_b;
    }
    Densities d = nucleon_densities(rho_b, rho_p);
    auto sigma = [&](double phi) {
        const double m = c.M - phi;
        return c.dU(phi) - fermi::scalar_density(d.kn, m) - fermi::scalar_density(d.kp, m);
    };
    double phi = 0.0;
    if (rho_b > 0) {
        boost::math::tools::eps_tolerance<double> tol(40);
        std::uintmax_t it = 200;
        double hi = c.M * (1 - 1e-9);
        if (sigma(hi) > 0) {
            auto [a, b] = boost::math::tools::bisect(sigma, 0.0, hi, tol, it);
            phi = 0.5 * (a + b);
        } else {
            phi = 0.5 * c.M;
        }
    }
    const double a = c.A(phi) * c.mw2_gw2;
    double w = rho_b / a;
    for (int i = 0; i < 50; ++i) {
        const double f = a * w + c.z0_gw2 * w * w * w / 6 - rho_b;
        const double df = a + c.z0_gw2 * w * w / 2;
        w -= f / df;
    }
    const double r = 0.5 * d.rho3 / (c.B(phi) * c.mr2_gr2 + 2 * c.lw * w * w);
    return {phi, w, r, mu_e};
}

template <int N>
class NewtonSolver {
public:
    using Vec = Eigen::Matrix<double, N, 1>;
    using Mat = Eigen::Matrix<double, N, N>;

    template <class F, class Valid>
    static std::optional<std::pair<Vec, int>> solve(F&& residual, Valid&& valid, Vec x, const SolverOptions& opt)
    {
        Vec f;
        if (!valid(x) || !residual(x, f)) return std::nullopt;
        double norm = f.template lpNorm<Eigen::Infinity>();
        for (int it = 1; it <= opt.max_iterations; ++it) {
            if (norm <= opt.tolerance) return std::make_pair(x, it - 1);
            Mat J;
            for (int j = 0; j < N; ++j) {
                const double h = 1e-7 * std::max(std::abs(x[j]), 1e-3);
                Vec xp = x, xm = x, fp, fm;
                xp[j] += h;
                xm[j] -= h;
                if (!valid(xp) || !valid(xm) || !residual(xp, fp) || !residual(xm, fm)) {
                    if (valid(xp) && residual(xp, fp)) {
                        J.col(j) = (fp - f) / h;
                        continue;
                    }
                    if (valid(xm) && residual(xm, fm)) {
                        J.col(j) = (f - fm) / h;
                        continue;
                    }
                    return std::nullopt;
                }
                J.col(j) = (fp - fm) / (2 * h);
            }
            Eigen::FullPivLU<Mat> lu(J);
            if (!lu.isInvertible()) return std::nullopt;
            const Vec dx = lu.solve(-f);
            double lambda = 1.0;
            bool accepted = false;
            for (int k = 0; k < 40; ++k, lambda *= 0.5) {
                Vec trial = x + lambda * dx;
                Vec ft;
                if (!valid(trial) || !residual(trial, ft)) continue;
                const double tn = ft.template lpNorm<Eigen::Infinity>();
                if (tn < (1 - 1e-4 * lambda) * norm || tn <= opt.tolerance) {
                    x = trial;
                    f = ft;
                    norm = tn;
                    accepted = true;
                    break;
                }
            }
            if (!accepted) return std::nullopt;
        }
        if (norm <= opt.tolerance) return std::make_pair(x, opt.max_iterations);
        return std::nullopt;
    }
};

}  // namespace detail

namespace detail {

inline MeanFieldState make_state(const Couplings& c, const Composition& comp, double rho_b, const Densities& d,
                                 double phi, double w, double r, int iterations)
{
    (void)c;
    MeanFieldState s;
    s.Phi = units::to_mev(phi);
    s.W = units::to_mev(w);
    s.R = units::to_mev(r);
    s.kf_n = units::to_mev(d.kn);
    s.kf_p = units::to_mev(d.kp);
    s.kf_e = units::to_mev(d.ke);
    s.kf_mu = units::to_mev(d.kmu);
    s.rho_b = rho_b;
    s.rho_3 = d.rho3;
    s.composition = comp;
    s.iterations = iterations;
    return s;
}

inline std::optional<MeanFieldState> newton_attempt(const Couplings& c, double rho_b, const Composition& comp,
                                                    const std::array<double, 4>& seed, const SolverOptions& opt)
{
    if (comp.mode == Mode::beta_equilibrium) {
        using S = NewtonSolver<4>;
        auto valid = [&](const S::Vec& x) {
            if (!(x[0] < c.M) || !(x[3] > 0)) return false;
            const double ke = lepton_momentum(x[3], c.me), kmu = lepton_momentum(x[3], c.mmu);
            return fermi::number_density(ke) + fermi::number_density(kmu) <= rho_b;
        };
        auto residual = [&](const S::Vec& x, S::Vec& f) {
            const Densities d = beta_densities(c, rho_b, x[3]);
            auto fe = field_equations(c, d, x[0], x[1], x[2]);
            f << fe[0], fe[1], fe[2], beta_equation(c, d, x[0], x[1], x[2], x[3]);
            return std::isfinite(f.sum());
        };
        S::Vec x0;
        x0 << seed[0], seed[1], seed[2], std::max(seed[3], c.me * 1.0001);
        auto res = S::solve(residual, valid, x0, opt);
        if (!res) return std::nullopt;
        const auto& x = res->first;
        return make_state(c, comp, rho_b, beta_densities(c, rho_b, x[3]), x[0], x[1], x[2], res->second);
    }
    using S = NewtonSolver<3>;
    const Densities d = nucleon_densities(rho_b, proton_density_for(comp, rho_b));
    auto valid = [&](const S::Vec& x) { return x[0] < c.M; };
    auto residual = [&](const S::Vec& x, S::Vec& f) {
        auto fe = field_equations(c, d, x[0], x[1], x[2]);
        f << fe[0], fe[1], fe[2];
        return std::isfinite(f.sum());
    };
    S::Vec x0;
    x0 << seed[0], seed[1], seed[2];
    auto res = S::solve(residual, valid, x0, opt);
    if (!res) return std::nullopt;
    const auto& x = res->first;
    return make_state(c, comp, rho_b, d, x[0], x[1], x[2], res->second);
}

inline std::array<double, 4> seed_from(const MeanFieldState& s)
{
    const double mu_e = std::hypot(units::to_fm(s.kf_e), units::to_fm(units::electron_mass));
    return {units::to_fm(s.Phi), units::to_fm(s.W), units::to_fm(s.R), mu_e};
}

}  // namespace detail

inline void check_density(double rho_b)
{
    if (!(rho_b > 0) || !std::isfinite(rho_b))
        throw ValidationError("baryon density must be positive, got " + std::to_string(rho_b));
}

inline MeanFieldState vacuum_state(const Composition& comp = Composition::symmetric())
{
    MeanFieldState s;
    s.composition = comp;
    return s;
}

// Solve the static meson field equations at fixed baryon density.
// A seed (typically the previous table row) is tried first; otherwise a cold
// seed, then a density ramp from low density.
inline MeanFieldState solve_fields(double rho_b, const RMFParameterSet& params, const Composition& comp,
                                   const std::optional<MeanFieldState>& seed = std::nullopt,
                                   const SolverOptions& opt = {})
{
    check_density(rho_b);
    if (comp.mode == Mode::fixed_asymmetry && !(comp.asymmetry >= -1 && comp.asymmetry <= 1))
        throw ValidationError("asymmetry must lie in [-1, 1]");
    const detail::Couplings c(params);

    if (seed) {
        if (auto s = detail::newton_attempt(c, rho_b, comp, detail::seed_from(*seed), opt)) return *s;
    }
    if (auto s = detail::newton_attempt(c, rho_b, comp, detail::cold_seed(c, comp, rho_b), opt)) return *s;

    // continuation ramp from a dilute density
    const double start = std::min(0.02, 0.5 * rho_b);
    auto current = detail::newton_attempt(c, start, comp, detail::cold_seed(c, comp, start), opt);
    if (!current) throw ConvergenceError(params.model_name + ": mean-field solve failed at rho_b = " + std::to_string(start));
    const int n = opt.continuation_steps;
    for (int i = 1; i <= n; ++i) {
        const double rho = start * std::pow(rho_b / start, double(i) / n);
        auto next = detail::newton_attempt(c, rho, comp, detail::seed_from(*current), opt);
        if (!next)
            throw ConvergenceError(params.model_name + ": mean-field solve failed at rho_b = " + std::to_string(rho));
        current = next;
    }
    if (!(params.M_N - current->Phi > 0))
        throw ValidationError(params.model_name + ": effective nucleon mass is not positive");
    return *current;
}

inline double effective_mass(const MeanFieldState& s, const RMFParameterSet& p) { return p.M_N - s.Phi; }

inline ChemicalPotentials chemical_potentials(const MeanFieldState& s, const RMFParameterSet& p)
{
    const double m = effective_mass(s, p);
    ChemicalPotentials mu;
    mu.mu_n = std::hypot(s.kf_n, m) + s.W - 0.5 * s.R;
    mu.mu_p = std::hypot(s.kf_p, m) + s.W + 0.5 * s.R;
    if (s.composition.mode == Mode::beta_equilibrium) {
        mu.mu_e = std::hypot(s.kf_e, units::electron_mass);
        mu.mu_mu = s.kf_mu > 0 ? std::hypot(s.kf_mu, units::muon_mass) : mu.mu_e;
    }
    return mu;
}

// Relative residuals of the sigma, omega and rho equations.
inline std::array<double, 3> field_residuals(const MeanFieldState& s, const RMFParameterSet& p)
{
    const detail::Couplings c(p);
    detail::Densities d;
    d.kn = units::to_fm(s.kf_n);
    d.kp = units::to_fm(s.kf_p);
    d.rho = fermi::number_density(d.kn) + fermi::number_density(d.kp);
    d.rho3 = fermi::number_density(d.kp) - fermi::number_density(d.kn);
    auto f = detail::field_equations(c, d, units::to_fm(s.Phi), units::to_fm(s.W), units::to_fm(s.R));
    for (auto& v : f) v = std::abs(v);
    return f;
}

// Relative residuals of mu_n = mu_p + mu_e and rho_p = rho_e + rho_mu.
inline std::array<double, 2> equilibrium_residuals(const MeanFieldState& s, const RMFParameterSet& p)
{
    const auto mu = chemical_potentials(s, p);
    const double beta = std::abs(mu.mu_n - mu.mu_p - mu.mu_e) / mu.mu_n;
    const double charge = std::abs(s.rho_p() - s.rho_e() - s.rho_mu()) / s.rho_b;
    return {beta, charge};
}

inline EosPoint eos_point(const MeanFieldState& s, const RMFParameterSet& p)
{
    if (s.rho_b <= 0) return {};
    const detail::Couplings c(p);
    const double phi = units::to_fm(s.Phi), w = units::to_fm(s.W), r = units::to_fm(s.R);
    const double m = c.M - phi;
    const double kn = units::to_fm(s.kf_n), kp = units::to_fm(s.kf_p);
    const double ke = units::to_fm(s.kf_e), kmu = units::to_fm(s.kf_mu);
    const double rho = fermi::number_density(kn) + fermi::number_density(kp);
    const double rho3 = fermi::number_density(kp) - fermi::number_density(kn);

    const double vector_terms = 0.5 * c.A(phi) * c.mw2_gw2 * w * w + c.z0_gw2 * w * w * w * w / 24 +
                                0.5 * c.B(phi) * c.mr2_gr2 * r * r + c.lw * r * r * w * w;
    const double lepton_e = fermi::energy_density(ke, c.me) + fermi::energy_density(kmu, c.mmu);
    const double lepton_p = fermi::pressure(ke, c.me) + fermi::pressure(kmu, c.mmu);

    const double eps = fermi::energy_density(kn, m) + fermi::energy_density(kp, m) + rho * w + 0.5 * rho3 * r +
                       c.U(phi) - vector_terms + lepton_e;
    const double pres = fermi::pressure(kn, m) + fermi::pressure(kp, m) - c.U(phi) + vector_terms + lepton_p;
    return {units::to_mev(eps), units::to_mev(pres)};
}

// Energy per baryon minus the nucleon mass, MeV.
inline double binding_energy(const MeanFieldState& s, const RMFParameterSet& p)
{
    return eos_point(s, p).epsilon / s.rho_b - p.M_N;
}

}  // namespace dmans::rmf
