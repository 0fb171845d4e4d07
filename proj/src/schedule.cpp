#include "girthforge/schedule.hpp"

#include <cmath>
#include <stdexcept>

namespace girthforge {

Schedule make_schedule(std::size_t n, std::uint32_t k, double c) {
    if (!(c > 0.0 && c < 1.0)) throw std::invalid_argument("c must lie in the open interval (0,1)");
    if (k < 3) throw std::invalid_argument("k must be at least 3");
    if (n < 4) throw std::invalid_argument("n must be at least 4");
    Schedule s;
    s.n = n;
    s.k = k;
    s.c = c;
    s.eps = c * (1.0 - c) / 3.0;
    s.beta = s.eps / 10.0;
    s.alpha = s.beta / 100.0;
    const long double nn = static_cast<long double>(n);
    s.T = static_cast<double>((nn - std::pow(nn, static_cast<long double>(c + s.eps))) / 2.0L);
    s.T_safe = static_cast<double>((nn - std::pow(nn, static_cast<long double>(s.eps))) / 2.0L);
    // (c+eps)/alpha is an exact integer for rational c; absorb rounding above it
    const double ratio = (c + s.eps) / s.alpha;
    s.stage_count = static_cast<std::size_t>(std::ceil(ratio - 1e-9 * ratio));

    const long double shrink = std::pow(nn, -static_cast<long double>(s.alpha));
    s.stage_residual.resize(s.stage_count + 1);
    s.stage_times.resize(s.stage_count + 1);
    s.stage_residual[0] = std::pow(nn, static_cast<long double>(c + s.eps));
    for (std::size_t i = 0; i <= s.stage_count; ++i) {
        if (i > 0) s.stage_residual[i] = s.stage_residual[i - 1] * shrink;
        s.stage_times[i] = (nn - s.stage_residual[i]) / 2.0L;
    }
    return s;
}

double path_budget(const Schedule& s, std::uint32_t ell, std::size_t w_size) {
    const double scaled = std::pow(static_cast<double>(s.k) - 1.0, ell) * static_cast<double>(w_size) /
                          std::pow(static_cast<double>(s.n), s.c + s.eps);
    return std::max(1.0, scaled);
}

}  // namespace girthforge
