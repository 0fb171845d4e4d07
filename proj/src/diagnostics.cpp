#include "girthforge/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "girthforge/budget.hpp"

namespace girthforge {

PathStats path_stats(const ProcessState& state) {
    PathStats stats;
    stats.max_length = state.girth_target() - 2;
    stats.global.assign(stats.max_length + 1, 0);
    const auto w = state.unsaturated();
    stats.vertices.assign(w.begin(), w.end());
    stats.w_size = w.size();
    stats.per_vertex.assign(w.size(), std::vector<std::uint32_t>(stats.max_length + 1, 0));

    std::vector<std::uint64_t> doubled(stats.max_length + 1, 0);
    for (std::size_t i = 0; i < w.size(); ++i) {
        auto& row = stats.per_vertex[i];
        state.workspace().visit_ball(state.graph(), w[i], stats.max_length,
                                     [&](Vertex x, std::uint32_t d) {
                                         if (d > 0 && state.is_unsaturated(x)) ++row[d];
                                     });
        for (std::uint32_t l = 1; l <= stats.max_length; ++l) doubled[l] += row[l];
    }
    for (std::uint32_t l = 1; l <= stats.max_length; ++l) {
        stats.global[l] = doubled[l] / 2;
        stats.forbidden_count += stats.global[l];
    }
    const std::uint64_t pairs = static_cast<std::uint64_t>(w.size()) * (w.size() > 0 ? w.size() - 1 : 0) / 2;
    stats.available_count = pairs - stats.forbidden_count;
    return stats;
}

SafetyReport is_safe(const ProcessState& state) {
    SafetyReport report;
    report.degree_floor = state.degree_floor();
    report.final_level = state.degree_floor() + 1 >= state.k();
    const auto w = state.unsaturated();
    if (w.size() < 2) return report;

    const std::uint32_t depth = state.girth_target() - 2;
    std::uint32_t closest = state.availability_cap();
    for (Vertex src : w) {
        state.workspace().visit_ball_until(state.graph(), src, depth, [&](Vertex x, std::uint32_t d) {
            if (d >= closest) return false;
            if (d > 0 && state.is_unsaturated(x)) {
                closest = d;
                report.violating_pair = Edge::canonical(src, x);
                return false;
            }
            return true;
        });
        if (closest == 1) break;
    }
    report.safe = !report.violating_pair.has_value();
    report.min_pair_distance =
        report.safe ? Distance::at_least(state.availability_cap()) : Distance::exact(closest);
    return report;
}

PathBoundReport is_path_bounded(const PathStats& stats, const Schedule& schedule, double C) {
    PathBoundReport report;
    const double n = static_cast<double>(schedule.n);
    report.log_factor = std::pow(std::log(n), C);
    report.local_margin.assign(stats.max_length + 1, 0.0);
    report.global_margin.assign(stats.max_length + 1, 0.0);
    const double w = static_cast<double>(stats.w_size);
    for (std::uint32_t l = 1; l <= stats.max_length; ++l) {
        const double local_ceiling = path_budget(schedule, l, stats.w_size) * report.log_factor;
        std::uint32_t worst = 0;
        for (const auto& row : stats.per_vertex) worst = std::max(worst, row[l]);
        report.local_margin[l] = worst / local_ceiling;

        const double global_ceiling =
            w * w * std::pow(static_cast<double>(schedule.k) - 1.0, l) / n * report.log_factor;
        const auto observed = static_cast<double>(stats.global[l]);
        // an empty W makes the ceiling 0 with nothing observed
        report.global_margin[l] = observed == 0.0 ? 0.0 : observed / global_ceiling;

        report.worst_margin = std::max({report.worst_margin, report.local_margin[l], report.global_margin[l]});
    }
    report.bounded = report.worst_margin <= 1.0;
    return report;
}

PathBoundReport is_path_bounded(const ProcessState& state, const Schedule& schedule, double C) {
    return is_path_bounded(path_stats(state), schedule, C);
}

double threatening_path_bound(std::size_t n, std::uint32_t k, std::uint32_t length, std::uint32_t chords) {
    return std::pow(static_cast<double>(n), chords + 1.0) *
           std::pow(static_cast<double>(k) - 1.0, length);
}

namespace {

struct ThreatSearch {
    const Graph& base;
    std::uint32_t length;
    std::uint32_t chords;
    std::vector<char> on_path;
    std::uint64_t count = 0;

    // `steps` edges taken so far, `used` of them chords, last edge was a chord or not.
    void extend(Vertex x, std::uint32_t steps, std::uint32_t used, bool last_chord) {
        if (steps == length) {
            if (used == chords && !last_chord) ++count;
            return;
        }
        const std::uint32_t remaining = length - steps;
        for (Vertex y : base.neighbors(x)) {
            if (on_path[y]) continue;
            on_path[y] = 1;
            extend(y, steps + 1, used, false);
            on_path[y] = 0;
        }
        // a chord may not be first, last, or follow another chord
        const bool chord_ok = steps > 0 && remaining > 1 && !last_chord && used < chords;
        if (!chord_ok) return;
        for (Vertex y = 0; y < base.vertex_count(); ++y) {
            if (y == x || on_path[y] || base.has_edge(x, y)) continue;
            on_path[y] = 1;
            extend(y, steps + 1, used + 1, true);
            on_path[y] = 0;
        }
    }
};

}  // namespace

std::uint64_t count_threatening_paths(const Graph& base, std::uint32_t k, std::uint32_t length,
                                      std::uint32_t chords, std::uint64_t budget) {
    if (length == 0) throw std::invalid_argument("threatening paths need length >= 1");
    if (k < 2 || base.max_degree() > k - 1) {
        throw std::invalid_argument("base graph must have max degree at most k-1");
    }
    if (2 * chords + 1 > length) return 0;
    const double bound = threatening_path_bound(base.vertex_count(), k, length, chords);
    if (bound > static_cast<double>(budget)) {
        throw BudgetExceeded("threatening-path enumeration bound " + std::to_string(bound) +
                             " exceeds budget " + std::to_string(budget));
    }
    ThreatSearch search{base, length, chords, std::vector<char>(base.vertex_count(), 0)};
    for (Vertex start = 0; start < base.vertex_count(); ++start) {
        search.on_path[start] = 1;
        search.extend(start, 0, 0, false);
        search.on_path[start] = 0;
    }
    return search.count;
}

}  // namespace girthforge
