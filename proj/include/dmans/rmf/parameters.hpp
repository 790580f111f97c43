#pragma once

#include <algorithm>
#include <array>
#include <filesystem>
#include <string>

#include "dmans/errors.hpp"
#include "dmans/keyvalue.hpp"

namespace dmans::rmf {

struct RMFParameterSet {
    std::string model_name;
    double m_sigma = 0, m_omega = 0, m_rho = 0;  // MeV
    double g_sigma = 0, g_omega = 0, g_rho = 0;
    double kappa3 = 0, kappa4 = 0;
    double zeta0 = 0;
    double lambda_omega = 0;
    double M_N = 939.0;  // MeV
    // sigma-dependent vector meson masses; zero for models without them
    double eta1 = 0, eta2 = 0, eta_rho = 0;

    bool has_eta() const { return eta1 != 0 || eta2 != 0 || eta_rho != 0; }
};

inline void validate(const RMFParameterSet& p)
{
    auto positive = [&](double v, const char* name) {
        if (!(v > 0)) throw ValidationError(p.model_name + ": " + name + " must be positive");
    };
    positive(p.m_sigma, "m_sigma");
    positive(p.m_omega, "m_omega");
    positive(p.m_rho, "m_rho");
    positive(p.g_sigma, "g_sigma");
    positive(p.g_omega, "g_omega");
    positive(p.g_rho, "g_rho");
    positive(p.M_N, "M_N");
    if (p.zeta0 < 0) throw ValidationError(p.model_name + ": zeta0 must be non-negative");
    if (p.lambda_omega < 0) throw ValidationError(p.model_name + ": lambda_omega must be non-negative");
}

inline constexpr std::array<const char*, 12> required_keys = {
    "model_name", "m_sigma", "m_omega", "m_rho", "g_sigma", "g_omega",
    "g_rho", "kappa3", "kappa4", "zeta0", "lambda_omega", "M_N"};
inline constexpr std::array<const char*, 3> optional_keys = {"eta1", "eta2", "eta_rho"};

inline RMFParameterSet parameters_from(const KeyValueFile& kv)
{
    for (const auto& key : kv.keys()) {
        auto match = [&](const char* k) { return key == k; };
        if (std::none_of(required_keys.begin(), required_keys.end(), match) &&
            std::none_of(optional_keys.begin(), optional_keys.end(), match))
            throw ValidationError(kv.origin() + ": unknown key '" + key + "'");
    }
    RMFParameterSet p;
    p.model_name = kv.get_string("model_name");
    p.m_sigma = kv.get_double("m_sigma");
    p.m_omega = kv.get_double("m_omega");
    p.m_rho = kv.get_double("m_rho");
    p.g_sigma = kv.get_double("g_sigma");
    p.g_omega = kv.get_double("g_omega");
    p.g_rho = kv.get_double("g_rho");
    p.kappa3 = kv.get_double("kappa3");
    p.kappa4 = kv.get_double("kappa4");
    p.zeta0 = kv.get_double("zeta0");
    p.lambda_omega = kv.get_double("lambda_omega");
    p.M_N = kv.get_double("M_N");
    p.eta1 = kv.get_double("eta1", 0.0);
    p.eta2 = kv.get_double("eta2", 0.0);
    p.eta_rho = kv.get_double("eta_rho", 0.0);
    validate(p);
    return p;
}

inline RMFParameterSet load_parameter_set(const std::filesystem::path& path)
{
    return parameters_from(KeyValueFile::load(path));
}

}  // namespace dmans::rmf
