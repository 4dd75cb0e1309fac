#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "synthcast/sim/params.hpp"

namespace synthcast::sim {

struct Bound {
    double lower = 0.0;
    double upper = 1.0;
};

/// Latin hypercube design. `unit_points` holds the [0,1) coordinates (one
/// point per stratum per dimension); `points` holds them mapped onto bounds.
struct LhsDesign {
    std::size_t n_samples = 0;
    std::vector<Bound> bounds;
    std::uint64_t seed = 0;
    std::vector<double> unit_points;  // row-major n_samples x dims
    std::vector<double> points;       // row-major n_samples x dims

    [[nodiscard]] std::size_t dims() const noexcept { return bounds.size(); }
    [[nodiscard]] std::span<const double> row(std::size_t i) const {
        return {points.data() + i * dims(), dims()};
    }
    [[nodiscard]] std::span<const double> unit_row(std::size_t i) const {
        return {unit_points.data() + i * dims(), dims()};
    }
};

/// Throws std::invalid_argument for n == 0, empty bounds, or lower > upper.
[[nodiscard]] LhsDesign lhs_sample(std::span<const Bound> bounds, std::size_t n, std::uint64_t seed);

/// Bounds of the simulator parameter space in design-column order.
[[nodiscard]] std::vector<Bound> simulator_bounds();

}  // namespace synthcast::sim
