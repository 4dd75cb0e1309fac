#include "synthcast/sim/lhs.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "synthcast/rng.hpp"

namespace synthcast::sim {

LhsDesign lhs_sample(std::span<const Bound> bounds, std::size_t n, std::uint64_t seed) {
    if (n == 0) throw std::invalid_argument("lhs_sample: n must be >= 1");
    if (bounds.empty()) throw std::invalid_argument("lhs_sample: at least one dimension required");
    for (std::size_t d = 0; d < bounds.size(); ++d) {
        const auto& b = bounds[d];
        if (!std::isfinite(b.lower) || !std::isfinite(b.upper) || b.lower > b.upper)
            throw std::invalid_argument("lhs_sample: dimension " + std::to_string(d) +
                                        " has invalid bounds [" + std::to_string(b.lower) + ", " +
                                        std::to_string(b.upper) + "]");
    }

    LhsDesign design;
    design.n_samples = n;
    design.bounds.assign(bounds.begin(), bounds.end());
    design.seed = seed;
    const std::size_t dims = bounds.size();
    design.unit_points.resize(n * dims);
    design.points.resize(n * dims);

    Engine rng = make_engine(seed, "lhs");
    std::vector<std::size_t> strata(n);
    const double width = 1.0 / static_cast<double>(n);
    for (std::size_t d = 0; d < dims; ++d) {
        std::iota(strata.begin(), strata.end(), std::size_t{0});
        std::shuffle(strata.begin(), strata.end(), rng);
        const auto& b = bounds[d];
        for (std::size_t i = 0; i < n; ++i) {
            const double k = static_cast<double>(strata[i]);
            // Keep the point strictly inside its stratum so rounding cannot move it across.
            double u = (k + uniform(rng)) * width;
            u = std::clamp(u, k * width, std::nextafter((k + 1.0) * width, 0.0));
            design.unit_points[i * dims + d] = u;
            design.points[i * dims + d] =
                b.lower == b.upper ? b.lower : b.lower + u * (b.upper - b.lower);
        }
    }
    return design;
}

std::vector<Bound> simulator_bounds() {
    std::vector<Bound> out;
    for (const auto& b : default_bounds()) out.push_back({b.lower, b.upper});
    return out;
}

}  // namespace synthcast::sim
