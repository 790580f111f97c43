#pragma once

#include <cmath>
#include <vector>

#include "dmans/errors.hpp"

namespace dmans {

inline std::vector<double> log_space(double lo, double hi, std::size_t n)
{
    if (!(lo > 0 && hi > lo) || n < 1) throw ValidationError("log_space needs 0 < lo < hi and n >= 1");
    if (n == 1) return {lo};
    std::vector<double> out(n);
    const double step = std::log(hi / lo) / double(n - 1);
    for (std::size_t i = 0; i < n; ++i) out[i] = lo * std::exp(step * double(i));
    out.back() = hi;
    return out;
}

inline std::vector<double> lin_space(double lo, double hi, std::size_t n)
{
    if (n < 1) throw ValidationError("lin_space needs n >= 1");
    if (n == 1) return {lo};
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = lo + (hi - lo) * double(i) / double(n - 1);
    out.back() = hi;
    return out;
}

}  // namespace dmans
