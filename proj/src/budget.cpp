#include "girthforge/budget.hpp"

#include <cstdlib>
#include <string>

namespace girthforge {

std::uint64_t enumeration_budget(std::uint64_t fallback) {
    const char* raw = std::getenv("GIRTHFORGE_BUDGET");
    if (raw == nullptr || *raw == '\0') return fallback;
    try {
        std::size_t used = 0;
        const unsigned long long value = std::stoull(raw, &used);
        if (used == std::string(raw).size() && value > 0) return value;
    } catch (const std::exception&) {
    }
    return fallback;
}

}  // namespace girthforge
