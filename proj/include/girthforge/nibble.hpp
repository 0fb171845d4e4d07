// nibble.hpp: the two-stage simulator used to study trajectories.
//
// From a snapshot G_t, H keeps each available pair independently with
// probability p. The inner process then repeats the high-girth step using
// only H-edges, and N(v,s) = |Gamma_H(v) ∩ U_s| is compared against the band
// n(s) ± eps(s) with
//
//   p(s) = 1 - 2s/|W_t|,  n(s) = n^beta p(s),  eps(s) = n^(0.6 beta) / p(s)^8.
#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "girthforge/graph.hpp"
#include "girthforge/process.hpp"
#include "girthforge/rng.hpp"
#include "girthforge/schedule.hpp"

namespace girthforge {

// A graph on W_t. Local index i stands for global vertex vertices[i].
struct NibbleGraph {
    std::vector<Vertex> vertices;
    std::vector<std::vector<std::uint32_t>> adjacency;
    std::vector<Edge> edges;  // local indices, u < v, sorted

    std::size_t vertex_count() const { return vertices.size(); }
    std::size_t edge_count() const { return edges.size(); }
    std::uint32_t degree(std::uint32_t i) const { return static_cast<std::uint32_t>(adjacency[i].size()); }
    std::optional<std::uint32_t> local_index(Vertex global) const;
};

// Builds H on W_t from a list of global-vertex pairs.
NibbleGraph nibble_graph_from_edges(const ProcessState& state, const std::vector<Edge>& global_edges);

// Every available pair kept independently with probability p, 0 <= p <= 1.
// Pairs of W_t are skipped geometrically, so the cost is about p |W|^2 / 2
// distance queries and A_t is never materialized.
NibbleGraph sample_h(const ProcessState& state, double p, Xoshiro256& rng);

struct TrajectorySample {
    std::uint64_t s = 0;
    Vertex v = 0;  // global id
    std::uint32_t N = 0;
    double band_lo = 0.0;
    double band_hi = 0.0;
    bool violated = false;
};

struct TrajectoryRecord {
    std::size_t w_size = 0;     // |W_t|
    double n_beta = 0.0;        // n^beta for the beta in use
    double n_06beta = 0.0;      // n^(0.6 beta)
    std::uint64_t steps = 0;    // inner steps taken
    bool inner_frozen = false;  // no valid H-edge before target_steps
    std::vector<std::size_t> unsaturated_sizes;  // |U_s| for s = 0..steps
    std::vector<TrajectorySample> samples;
    std::optional<std::uint64_t> exit_step;  // first s with a band violation
    double max_abs_deviation = 0.0;          // max |N(v,s) - n(s)|
    std::uint64_t violations = 0;
    std::vector<Edge> added;  // global edges in insertion order
};

struct BandParameters {
    double n_beta = 0.0;
    double n_06beta = 0.0;
};

BandParameters band_parameters(std::size_t n, double beta);

// Runs the inner process on a copy of `state` using only edges of H. Records
// N(v,s) for every sampled vertex while it is in U_s. target_steps must not
// exceed |W_t|/2.
TrajectoryRecord run_constrained_matching(const ProcessState& state, const NibbleGraph& H,
                                          std::uint64_t target_steps, Xoshiro256& rng,
                                          const std::vector<Vertex>& sample_vertices,
                                          const BandParameters& band);

// Number of l-threatened pairs T_l and the per-vertex counts T_l(v), aligned
// with state.unsaturated(). A witness w_0..w_{2m-1} lies in W_t, has
// consecutive distinct vertices, H-edges w_{2i-1} w_{2i}, and
// m - 1 + sum_i dist(w_{2i}, w_{2i+1}) = l.
struct ThreatenedCounts {
    std::uint64_t total = 0;
    std::vector<Vertex> vertices;
    std::vector<std::uint64_t> per_vertex;
};

// Exhaustive witness search; throws BudgetExceeded after `budget` visited
// sequence states.
ThreatenedCounts threatened_pairs_bruteforce(const ProcessState& state, const NibbleGraph& H,
                                             std::uint32_t ell, std::uint64_t budget);

struct DegreeConcentration {
    std::size_t vertices = 0;
    std::size_t outside = 0;  // d_H(v) outside (1 ± n^(-0.4 beta)) n^beta
    double lo = 0.0;
    double hi = 0.0;
    double fraction_outside() const { return vertices == 0 ? 0.0 : double(outside) / double(vertices); }
};

DegreeConcentration h_degree_concentration(const NibbleGraph& H, std::size_t n, double beta);

struct DiscrepancyCheck {
    std::size_t subset_size = 0;
    std::size_t trials = 0;
    std::size_t failures = 0;  // subsets with e(H[S]) > |S| n^(0.9 beta)
    std::size_t max_edges = 0;
    double ceiling = 0.0;
};

// Random subsets S of size floor(|W| / n^(eps/2)).
DiscrepancyCheck discrepancy_spot_check(const NibbleGraph& H, std::size_t n, double eps, double beta,
                                        std::size_t trials, Xoshiro256& rng);

struct NibbleTrialConfig {
    std::size_t n = 0;
    std::uint32_t k = 3;
    double c = 0.5;
    std::optional<std::uint32_t> girth_target;  // derived from c when empty
    std::optional<double> beta_override;
    std::optional<std::uint64_t> target_steps;  // floor(|W_t|/4) when empty
    std::size_t sample_vertices = 0;            // 0 means every vertex of W_t
    std::uint64_t seed = 0;
};

struct NibbleTrial {
    std::uint64_t seed = 0;
    Schedule schedule;
    double beta_used = 0.0;
    double p = 0.0;
    std::uint64_t snapshot_t = 0;  // steps of the outer process before H
    bool reached_snapshot = false; // false if the outer run froze first
    std::size_t h_edges = 0;
    DegreeConcentration degrees;
    TrajectoryRecord trajectory;
};

// Runs the process to the start of the final degree level plus ceil(T)
// steps, samples H with p = n^beta / |W_t| and runs the inner process.
NibbleTrial run_nibble_trial(const NibbleTrialConfig& config);

}  // namespace girthforge
