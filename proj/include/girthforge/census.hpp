// census.hpp: lower bounds on the number of labeled high-girth regular graphs.
//
// A saturated run from a Hamilton cycle is determined by the cycle and the
// ordered chord sequence, and the number of such runs is at least
// prod_t |A_t|. Dividing out chord orderings ((k-2)n/2)! and the at most k^n
// Hamilton cycles per graph gives, in natural logs,
//
//   total = ln(n!/(2n)) + sum_t ln|A_t| - ln(((k-2)n/2)!) - n ln k.
#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "girthforge/graph.hpp"
#include "girthforge/process.hpp"

namespace girthforge {

struct CountEstimate {
    std::size_t n = 0;
    std::uint32_t k = 0;
    double log_hamilton = 0.0;
    std::vector<double> level_log_choices;  // indexed by target degree, as in RunRecord
    double log_choices = 0.0;
    double chord_order_correction = 0.0;    // -ln(((k-2)n/2)!)
    double hamilton_correction = 0.0;       // -n ln k, zero at k = 2
    double total = 0.0;
};

// ln(n!/(2n)), the number of labeled Hamilton cycles on n >= 3 vertices.
double log_hamilton_cycles(std::size_t n);

CountEstimate make_count_estimate(std::size_t n, std::uint32_t k, std::span<const double> level_log_choices);
CountEstimate make_count_estimate(const RunRecord& record);

struct LowerBound {
    double log_count = 0.0;     // natural log
    double log10_count = 0.0;
    double mean_total = 0.0;
    double log_success_rate = 0.0;
    // n ln(n/e) + ((k-2)n/2) ln(n^2/(2e^2)) - n ln k - ln(((k-2)n/2)!)
    double analytic_reference = 0.0;
};

// Mean of the per-run totals plus ln(success_rate). Throws
// std::invalid_argument on an empty list, mixed (n,k), or success_rate <= 0.
LowerBound assemble_lower_bound(std::span<const CountEstimate> estimates, double success_rate);

double analytic_log_count(std::size_t n, std::uint32_t k);

// Bit index of the pair u < v among the n(n-1)/2 pairs, row-major.
std::uint32_t pair_bit(std::size_t n, Vertex u, Vertex v);
std::uint64_t edge_mask(const Graph& g);

inline constexpr std::size_t kCensusMaxN = 10;

// Exact number of labeled k-regular graphs on n <= 10 vertices with girth
// >= g (g <= 2 means no constraint). When `visit` is set it receives every
// graph's edge mask; calls are serialized but unordered. Throws
// BudgetExceeded after `budget` search nodes.
std::uint64_t brute_force_census(std::size_t n, std::uint32_t k, std::uint32_t g, std::uint64_t budget,
                                 unsigned workers = 1,
                                 const std::function<void(std::uint64_t)>& visit = {});

// Sorted edge masks of every graph counted by brute_force_census.
std::vector<std::uint64_t> census_graph_masks(std::size_t n, std::uint32_t k, std::uint32_t g,
                                              std::uint64_t budget, unsigned workers = 1);

// Replays a logged insertion sequence from `start` and returns sum ln|A_t|
// with exact counts. Throws std::invalid_argument if some insertion was not
// an available pair at its step.
double replay_log_choices(const Graph& start, std::uint32_t k, std::uint32_t g,
                          std::span<const Edge> insertions);

}  // namespace girthforge
