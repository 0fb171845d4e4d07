// process.hpp: the high-girth process engine.
//
// Starting from G_0 (a Hamilton cycle or a supplied graph of max degree <= k),
// each step takes the set W of minimum-degree vertices and adds a uniformly
// random edge between two of them whose current distance is >= g - 1. The
// run saturates when the graph is k-regular and freezes when no such pair
// exists. Degree levels are not modelled explicitly: once every vertex of the
// current minimum degree d has been matched, W becomes the degree-(d+1) set.
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "girthforge/graph.hpp"
#include "girthforge/rng.hpp"

namespace girthforge {

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

enum class ChoiceAccounting {
    Exact,    // count |A_t| exactly before every step
    Sampled,  // exact while |W| <= exact_threshold, rejection-rate estimate above it
};

struct ProcessConfig {
    std::size_t n = 0;
    std::uint32_t k = 3;
    std::uint32_t girth_target = 3;
    std::uint64_t seed = 0;
    // Consecutive rejections before falling back to enumeration; 0 = adaptive.
    std::uint64_t rejection_cap = 0;
    // External start graph; the Hamilton cycle on n vertices when empty.
    std::shared_ptr<const Graph> start;

    ChoiceAccounting accounting = ChoiceAccounting::Sampled;
    std::size_t exact_threshold = 64;
    bool record_insertions = false;
    bool keep_graph = false;
    // Spot-checks the Moore bound on a random vertex after every step.
    bool debug_checks = false;
};

// max(3, floor(c * ln n / ln(k-1))). Requires 0 < c < 1, k >= 3, n >= 4.
std::uint32_t derive_girth_target(std::size_t n, std::uint32_t k, double c);

// Throws ConfigError on any violated precondition.
void validate(const ProcessConfig& config);

class ProcessState {
public:
    ProcessState(Graph graph, std::uint32_t k, std::uint32_t girth_target);

    // Hamilton-cycle start for the given config (or its external graph).
    static ProcessState from_config(const ProcessConfig& config);

    const Graph& graph() const { return graph_; }
    std::size_t n() const { return graph_.vertex_count(); }
    std::uint32_t k() const { return k_; }
    std::uint32_t girth_target() const { return girth_target_; }
    // Pairs at distance >= availability_cap() are available (g - 1).
    std::uint32_t availability_cap() const { return girth_target_ - 1; }
    std::uint64_t t() const { return t_; }

    // Current minimum degree; equals k once saturated.
    std::uint32_t degree_floor() const { return std::min(graph_.min_degree(), k_); }
    bool saturated() const { return graph_.min_degree() >= k_; }
    bool frozen() const { return frozen_; }

    // W_t: the vertices of degree degree_floor(), empty when saturated.
    std::span<const Vertex> unsaturated() const;
    bool is_unsaturated(Vertex v) const {
        return !saturated() && graph_.degree(v) == degree_floor();
    }

    // Unsaturated count when the current degree level began.
    std::size_t level_start_size() const { return level_start_size_; }
    std::uint64_t level_steps() const { return level_steps_; }

    BfsWorkspace& workspace() const { return workspace_; }

    void add_chord(Vertex u, Vertex v);
    void mark_frozen() { frozen_ = true; }

private:
    Graph graph_;
    std::uint32_t k_;
    std::uint32_t girth_target_;
    std::uint64_t t_ = 0;
    bool frozen_ = false;
    std::uint32_t level_floor_ = 0;
    std::size_t level_start_size_ = 0;
    std::uint64_t level_steps_ = 0;
    mutable BfsWorkspace workspace_;
};

bool is_available(const ProcessState& state, Vertex u, Vertex v);

// |A_t| by a depth g-2 BFS from every unsaturated vertex.
std::uint64_t count_available(const ProcessState& state);
// A_t as canonical edges in lexicographic order.
std::vector<Edge> enumerate_available(const ProcessState& state);

// Adaptive rejection cap: 200 * ceil(w^2 / max(1, w^2 - 2 w r)), at least 1000,
// where r = (k-1)^g stands in for the ball size n^c.
std::uint64_t default_rejection_cap(std::size_t w_size, std::uint32_t k, std::uint32_t girth_target);

struct PairDraw {
    std::optional<Edge> pair;  // nullopt means A_t is empty (frozen)
    std::uint64_t trials = 0;  // rejection draws, including the accepted one
    bool enumerated = false;   // fell back to explicit enumeration
    std::optional<std::uint64_t> available_count;  // known when enumerated
};

// Uniform draw from A_t. rejection_cap = 0 selects default_rejection_cap.
PairDraw sample_available_pair(const ProcessState& state, Xoshiro256& rng,
                               std::uint64_t rejection_cap = 0);

enum class StepOutcome { Stepped, Frozen, Saturated };

struct StepReport {
    StepOutcome outcome = StepOutcome::Stepped;
    std::uint64_t t_before = 0;
    Edge edge{};
    std::uint32_t floor_before = 0;
    std::uint32_t floor_after = 0;
    std::size_t w_before = 0;
    std::size_t w_after = 0;
    std::uint64_t trials = 0;
    bool enumerated = false;
    std::optional<std::uint64_t> available_before;
};

StepOutcome step(ProcessState& state, Xoshiro256& rng, std::uint64_t rejection_cap = 0,
                 StepReport* report = nullptr);

class RunObserver {
public:
    virtual ~RunObserver() = default;
    virtual void on_start(const ProcessState&) {}
    // Called after every step that added an edge.
    virtual void on_step(const ProcessState&, const StepReport&) {}
    virtual void on_finish(const ProcessState&) {}
};

struct RunRecord {
    std::uint64_t seed = 0;
    std::size_t n = 0;
    std::uint32_t k = 0;
    std::uint32_t girth_target = 0;
    bool saturated = false;
    // Edges added before the run stopped.
    std::uint64_t t_freeze = 0;
    std::optional<std::uint32_t> girth_achieved;
    double log_choices = 0.0;
    // Indexed by the degree a level raises vertices to (size k + 1).
    std::vector<double> level_log_choices;
    bool log_choices_exact = true;
    double wall_ms = 0.0;
    std::vector<Edge> insertions;
    std::shared_ptr<const Graph> graph;

    // Equality on everything except wall_ms and the graph handle.
    bool same_outcome(const RunRecord& other) const;
};

RunRecord run(const ProcessConfig& config, RunObserver* observer = nullptr);

}  // namespace girthforge
