#include "girthforge/choice_accounting.hpp"

#include <cmath>

namespace girthforge {

LogChoiceAccumulator::LogChoiceAccumulator(std::uint32_t k, ChoiceAccounting mode,
                                           std::size_t exact_threshold)
    : mode_(mode), exact_threshold_(exact_threshold), per_level_(k + 1, 0.0) {}

bool LogChoiceAccumulator::wants_exact_count(std::size_t w_size) const {
    return mode_ == ChoiceAccounting::Exact || w_size <= exact_threshold_;
}

void LogChoiceAccumulator::record(const StepReport& report) {
    if (report.outcome != StepOutcome::Stepped) return;

    const std::uint64_t trials = std::max<std::uint64_t>(report.trials, 1);
    window_.push_back(trials);
    window_trials_ += trials;
    if (window_.size() > kWindow) {
        window_trials_ -= window_.front();
        window_.pop_front();
    }

    const std::optional<std::uint64_t> exact = report.available_before;
    double term = 0.0;
    if (exact) {
        term = std::log(static_cast<double>(*exact));
    } else {
        all_exact_ = false;
        const double w = static_cast<double>(report.w_before);
        const double pairs = w * (w - 1.0) / 2.0;
        const double acceptance =
            static_cast<double>(window_.size()) / static_cast<double>(window_trials_);
        term = std::log(pairs) + std::log(acceptance);
    }
    total_ += term;
    per_level_[report.floor_before + 1] += term;
}

}  // namespace girthforge
