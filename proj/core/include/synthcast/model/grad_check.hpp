#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "synthcast/model/config.hpp"

namespace synthcast::model {

struct GroupError {
    std::string group;
    double max_rel_error = 0.0;
    std::size_t parameters = 0;
};

struct GradCheckReport {
    double max_rel_error = 0.0;
    std::string worst_parameter;
    std::vector<GroupError> groups;
    std::size_t checked = 0;
    double seconds = 0.0;

    [[nodiscard]] bool passed(double tolerance = 1e-4) const noexcept { return max_rel_error < tolerance; }
};

/// Analytic gradient of the pinball loss against central differences for
/// every parameter, on a random batch whose targets sit between quantiles
/// so that no step crosses a kink. Numeric derivatives are Richardson-extrapolated
/// central differences at steps h and 2h. Relative error is |a - n| / max(|a|, |n|, floor).
[[nodiscard]] GradCheckReport grad_check(const ModelConfig& cfg, std::uint64_t seed, std::size_t batch_size = 4,
                                         double step = 1e-3, double floor = 1e-8);

}  // namespace synthcast::model
