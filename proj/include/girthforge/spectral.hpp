// spectral.hpp: large-scale geometry of generated graphs.
#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "girthforge/graph.hpp"

namespace girthforge {

// Number of cycles whose length equals the girth. For every edge uv the
// shortest u-v paths in G - uv of length girth-1 are counted by meeting two
// BFS balls in the middle; the sum over edges counts each cycle girth times.
// Throws std::invalid_argument on forests and BudgetExceeded when the BFS
// work exceeds `budget` vertex visits.
std::uint64_t count_girth_cycles(const Graph& g, std::uint64_t budget);

// (n k / g) (k-1)^(g/2).
double girth_cycle_bound(std::size_t n, std::uint32_t k, std::uint32_t g);

struct DiameterResult {
    std::optional<std::uint32_t> diameter;  // nullopt when disconnected
    std::size_t components = 0;
};

DiameterResult diameter(const Graph& g);
std::size_t component_count(const Graph& g);

struct SpectralEstimate {
    double lambda = 0.0;      // max(|lambda_2|, |lambda_min|)
    double lambda2 = 0.0;     // largest eigenvalue orthogonal to the all-ones vector
    double lambda_min = 0.0;  // smallest eigenvalue
    bool converged = false;
    std::uint64_t iterations = 0;  // summed over both power iterations
    double residual = 0.0;         // worse of the two final residual norms
};

// Power iteration on A + kI and on kI - A restricted to the complement of
// the all-ones vector. Each stops once ||B x - mu x|| <= tol for a unit x,
// which pins an eigenvalue of B to within tol. Throws std::invalid_argument
// unless g is regular with at least one edge.
SpectralEstimate second_eigenvalue(const Graph& g, double tol = 1e-9, std::uint64_t max_iters = 100000,
                                   std::uint64_t seed = 1);

struct GeometryReport {
    std::size_t n = 0;
    std::uint32_t k = 0;  // max degree
    bool regular = false;
    std::optional<std::uint32_t> girth;
    DiameterResult diameter;
    std::optional<std::uint64_t> girth_cycle_count;
    std::optional<double> cycle_bound;
    std::optional<SpectralEstimate> spectrum;
    double ramanujan_threshold = 0.0;  // 2 sqrt(k-1)
    std::optional<bool> near_ramanujan;
};

struct GeometryOptions {
    bool lambda = false;
    double tol = 1e-9;
    std::uint64_t max_iters = 100000;
    double ramanujan_slack = 0.0;  // near-Ramanujan means lambda <= threshold + slack
    std::uint64_t budget = 0;      // 0 selects enumeration_budget()
};

GeometryReport geometry_report(const Graph& g, const GeometryOptions& options = {});

// Keys: n, k, regular, girth, diameter, components, girth_cycle_count,
// cycle_bound, lambda, lambda2, lambda_min, lambda_converged,
// ramanujan_threshold, near_ramanujan. Missing values are null; reals are
// rounded to 9 significant digits.
std::string geometry_json(const GeometryReport& report);

}  // namespace girthforge
