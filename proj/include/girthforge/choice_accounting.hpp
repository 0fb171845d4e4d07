// choice_accounting.hpp: running sum of ln|A_t| over a run.
//
// The number of distinct runs through a given state tree is the product of
// the |A_t| along it, so sum ln|A_t| is the per-run quantity the census
// assembles. Terms are exact when |A_t| was counted and otherwise
// ln(C(|W|,2) * acceptance), with the acceptance rate taken from the
// rejection sampler over a sliding window of recent steps.
#pragma once

#include <cstdint>
#include <deque>
#include <vector>

#include "girthforge/process.hpp"

namespace girthforge {

class LogChoiceAccumulator {
public:
    static constexpr std::size_t kWindow = 256;

    LogChoiceAccumulator(std::uint32_t k, ChoiceAccounting mode, std::size_t exact_threshold);

    // Whether the run should count |A_t| exactly before the next step.
    bool wants_exact_count(std::size_t w_size) const;

    void record(const StepReport& report);

    double total() const { return total_; }
    // Indexed by the degree the level raises vertices to.
    const std::vector<double>& per_level() const { return per_level_; }
    bool all_exact() const { return all_exact_; }

private:
    ChoiceAccounting mode_;
    std::size_t exact_threshold_;
    double total_ = 0.0;
    std::vector<double> per_level_;
    bool all_exact_ = true;
    std::deque<std::uint64_t> window_;
    std::uint64_t window_trials_ = 0;
};

}  // namespace girthforge
