// budget.hpp: work budgets for the exhaustive enumerators.
#pragma once

#include <cstdint>
#include <stdexcept>

namespace girthforge {

class BudgetExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultEnumerationBudget = 100'000'000;

// GIRTHFORGE_BUDGET when set to a positive integer, otherwise fallback.
std::uint64_t enumeration_budget(std::uint64_t fallback = kDefaultEnumerationBudget);

}  // namespace girthforge
