#include "synthcast/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace synthcast {

double quantile_type7(std::span<double> values, double p) {
    if (values.empty()) throw std::invalid_argument("quantile_type7: empty sample");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("quantile_type7: level outside [0, 1]");
    const double h = p * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(lo), values.end());
    const double a = values[lo];
    if (lo + 1 >= values.size()) return a;
    const double b = *std::min_element(values.begin() + static_cast<std::ptrdiff_t>(lo) + 1, values.end());
    return a + (h - static_cast<double>(lo)) * (b - a);
}

double quantile_type7_copy(std::span<const double> values, double p) {
    std::vector<double> copy(values.begin(), values.end());
    return quantile_type7(copy, p);
}

}  // namespace synthcast
