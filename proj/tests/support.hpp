#pragma once

#include <filesystem>
#include <map>
#include <string>

#include "dmans/dmans.hpp"

namespace testing_support {

inline std::filesystem::path data() { return DMANS_DEFAULT_DATA_DIR; }

inline const dmans::rmf::RMFParameterSet& model(const std::string& name)
{
    static std::map<std::string, dmans::rmf::RMFParameterSet> cache;
    auto it = cache.find(name);
    if (it == cache.end())
        it = cache.emplace(name, dmans::rmf::load_parameter_set(data() / "models" / (name + ".params"))).first;
    return it->second;
}

inline const dmans::eos::EOSTable& crust()
{
    static const auto t = dmans::eos::load_table(data() / "crust" / "sly_crust.csv");
    return t;
}

inline const dmans::eos::EOSTable& core(const std::string& name)
{
    static std::map<std::string, dmans::eos::EOSTable> cache;
    auto it = cache.find(name);
    if (it == cache.end())
        it = cache.emplace(name, dmans::rmf::build_core_table(model(name), dmans::rmf::default_core_grid())).first;
    return it->second;
}

inline const dmans::eos::EOSTable& unified(const std::string& name)
{
    static std::map<std::string, dmans::eos::EOSTable> cache;
    auto it = cache.find(name);
    if (it == cache.end()) it = cache.emplace(name, dmans::eos::attach_crust(core(name), crust())).first;
    return it->second;
}

inline dmans::eos::EOSTable admixed(const std::string& name, double kf)
{
    auto t = dmans::eos::admix_dm(unified(name), dmans::dm::solve_higgs(kf, {}));
    t.dm_kf = kf;
    return t;
}

inline double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace testing_support
