// schedule.hpp: constants and stage times of the nibble analysis.
//
//   eps   = c(1-c)/3        beta = eps/10        alpha = beta/100
//   T     = (n - n^(c+eps))/2                    T_safe = (n - n^eps)/2
//   t_0   = T,  t_{i+1} = (n - (n - 2 t_i) n^-alpha)/2,  i < m = ceil((c+eps)/alpha)
//
// Stage data is kept in long double as the residual n - 2 t_i, which the
// recursion scales by n^-alpha; t_i itself loses precision near n/2.
#pragma once

#include <cstdint>
#include <vector>

namespace girthforge {

struct Schedule {
    std::size_t n = 0;
    std::uint32_t k = 0;
    double c = 0.0;
    double eps = 0.0;
    double beta = 0.0;
    double alpha = 0.0;
    double T = 0.0;
    double T_safe = 0.0;
    std::size_t stage_count = 0;                 // m
    std::vector<long double> stage_residual;     // n - 2 t_i, i = 0..m
    std::vector<long double> stage_times;        // t_i, i = 0..m
};

// Throws std::invalid_argument unless 0 < c < 1, k >= 3, n >= 4.
Schedule make_schedule(std::size_t n, std::uint32_t k, double c);

// L(l, t) = max{1, (k-1)^l |W_t| / n^(c+eps)}.
double path_budget(const Schedule& s, std::uint32_t ell, std::size_t w_size);

}  // namespace girthforge
