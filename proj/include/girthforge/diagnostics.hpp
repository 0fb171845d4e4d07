// diagnostics.hpp: pseudorandomness measurements on process snapshots.
//
// All quantities concern pairs of unsaturated vertices: P[l] counts pairs at
// distance exactly l for 1 <= l <= g-2 (the forbidden pairs), Pv[v][l] counts
// unsaturated vertices at distance l from v.
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "girthforge/graph.hpp"
#include "girthforge/process.hpp"
#include "girthforge/schedule.hpp"

namespace girthforge {

struct PathStats {
    std::uint32_t max_length = 0;              // g - 2
    std::vector<std::uint64_t> global;         // index l = 0..g-2, entry 0 unused
    std::vector<Vertex> vertices;              // W_t in bucket order
    std::vector<std::vector<std::uint32_t>> per_vertex;  // [i][l], aligned with vertices
    std::uint64_t forbidden_count = 0;
    std::uint64_t available_count = 0;
    std::size_t w_size = 0;
};

PathStats path_stats(const ProcessState& state);

struct SafetyReport {
    bool safe = true;
    std::optional<Edge> violating_pair;
    // Smallest distance between two unsaturated vertices, or at_least(g-1).
    std::optional<Distance> min_pair_distance;
    std::uint32_t degree_floor = 0;
    // The floor is k-1, so safety also guarantees saturation.
    bool final_level = false;
};

SafetyReport is_safe(const ProcessState& state);

struct PathBoundReport {
    bool bounded = true;
    double log_factor = 0.0;               // ln(n)^C
    // observed / ceiling per l; <= 1 means the clause holds
    std::vector<double> local_margin;      // worst vertex, clause (1)
    std::vector<double> global_margin;     // clause (2)
    double worst_margin = 0.0;
};

// Clause (1): Pv[v][l] <= L(l,t) ln^C n. Clause (2): P[l] <= |W|^2 (k-1)^l / n * ln^C n.
PathBoundReport is_path_bounded(const ProcessState& state, const Schedule& schedule, double C);
PathBoundReport is_path_bounded(const PathStats& stats, const Schedule& schedule, double C);

// n^(a+1) (k-1)^l.
double threatening_path_bound(std::size_t n, std::uint32_t k, std::uint32_t length,
                              std::uint32_t chords);

// Directed l-threatening paths in K_n with exactly `chords` chords, where a
// chord is any pair not adjacent in `base`. Paths have distinct vertices,
// start and end with base edges, and never use two chords in a row. Each
// undirected path is counted once per direction. Returns 0 when 2a+1 > l.
// Throws BudgetExceeded if the bound exceeds `budget`.
std::uint64_t count_threatening_paths(const Graph& base, std::uint32_t k, std::uint32_t length,
                                      std::uint32_t chords, std::uint64_t budget);

}  // namespace girthforge
