#include "synthcast/sim/turnover.hpp"

#include <set>

namespace synthcast::sim {

bool classify_turnover(const SimOutput& out, std::size_t min_weeks) {
    if (out.vacs.size() < 2) return false;
    const std::size_t weeks = out.tc.values.size();

    std::set<std::int64_t> qualified;
    std::int64_t run_type = -1;
    std::size_t run_length = 0;
    for (std::size_t w = 0; w < weeks; ++w) {
        std::int64_t leader = -1;
        double best = 0.0;
        for (const auto& v : out.vacs) {
            if (w < v.values.size() && v.values[w] > best) {
                best = v.values[w];
                leader = v.variant_id;
            }
        }
        if (leader < 0) {
            run_type = -1;
            run_length = 0;
            continue;
        }
        if (leader == run_type) {
            ++run_length;
        } else {
            run_type = leader;
            run_length = 1;
        }
        if (run_length >= min_weeks) qualified.insert(leader);
        if (qualified.size() >= 2) return true;
    }
    return false;
}

}  // namespace synthcast::sim
