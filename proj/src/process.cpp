#include "girthforge/process.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <string>

#include "girthforge/choice_accounting.hpp"

namespace girthforge {

std::uint32_t derive_girth_target(std::size_t n, std::uint32_t k, double c) {
    if (!(c > 0.0 && c < 1.0)) throw ConfigError("c must lie in the open interval (0,1)");
    if (k < 3) throw ConfigError("k must be at least 3");
    if (n < 4) throw ConfigError("n must be at least 4");
    // the small slack keeps exact powers (n = (k-1)^j) from rounding down
    const double raw = c * std::log(static_cast<double>(n)) / std::log(static_cast<double>(k - 1));
    const auto g = static_cast<std::uint32_t>(std::floor(raw + 1e-9));
    return std::max<std::uint32_t>(3, g);
}

void validate(const ProcessConfig& config) {
    const std::size_t n = config.start ? config.start->vertex_count() : config.n;
    if (config.start && config.n != 0 && config.n != n) {
        throw ConfigError("n=" + std::to_string(config.n) + " does not match the start graph (" +
                          std::to_string(n) + " vertices)");
    }
    if (n % 2 != 0) throw ConfigError("n must be even, got " + std::to_string(n));
    if (n < 4) throw ConfigError("n must be at least 4, got " + std::to_string(n));
    if (config.k < 3) throw ConfigError("k must be at least 3");
    if (config.girth_target < 3) throw ConfigError("girth target must be at least 3");
    if (config.girth_target > n) throw ConfigError("girth target exceeds n");
    if (config.start) {
        if (config.start->max_degree() > config.k) {
            throw ConfigError("start graph has a vertex of degree above k");
        }
    } else if (n < 2 * (static_cast<std::size_t>(config.girth_target) - 1)) {
        throw ConfigError("n must be at least 2(g-1) for the Hamilton start to have an available pair");
    }
}

namespace {

Graph with_cap(const Graph& g, std::uint32_t k) {
    if (g.max_degree_cap() == k) return g;
    Graph out(g.vertex_count(), k);
    for (const Edge& e : g.edges()) out.add_edge(e.u, e.v);
    return out;
}

}  // namespace

ProcessState::ProcessState(Graph graph, std::uint32_t k, std::uint32_t girth_target)
    : graph_(with_cap(graph, k)), k_(k), girth_target_(girth_target) {
    if (k < 3) throw ConfigError("k must be at least 3");
    if (girth_target < 3) throw ConfigError("girth target must be at least 3");
    workspace_.reserve(graph_.vertex_count());
    level_floor_ = degree_floor();
    level_start_size_ = unsaturated().size();
}

ProcessState ProcessState::from_config(const ProcessConfig& config) {
    validate(config);
    if (config.start) return ProcessState(*config.start, config.k, config.girth_target);
    return ProcessState(Graph::hamilton_cycle(config.n, config.k), config.k, config.girth_target);
}

std::span<const Vertex> ProcessState::unsaturated() const {
    if (saturated()) return {};
    return graph_.vertices_of_degree(degree_floor());
}

void ProcessState::add_chord(Vertex u, Vertex v) {
    graph_.add_edge(u, v);
    ++t_;
    if (degree_floor() != level_floor_) {
        level_floor_ = degree_floor();
        level_start_size_ = unsaturated().size();
        level_steps_ = 0;
    } else {
        ++level_steps_;
    }
}

bool is_available(const ProcessState& state, Vertex u, Vertex v) {
    state.graph().check_vertex(u);
    state.graph().check_vertex(v);
    if (u == v || !state.is_unsaturated(u) || !state.is_unsaturated(v)) return false;
    return state.workspace()
        .distance(state.graph(), u, v, state.availability_cap())
        .at_least_bound(state.availability_cap());
}

std::uint64_t count_available(const ProcessState& state) {
    const auto w = state.unsaturated();
    if (w.size() < 2) return 0;
    const std::uint32_t depth = state.girth_target() - 2;
    std::uint64_t forbidden_twice = 0;
    for (Vertex src : w) {
        state.workspace().visit_ball(state.graph(), src, depth, [&](Vertex x, std::uint32_t d) {
            if (d > 0 && state.is_unsaturated(x)) ++forbidden_twice;
        });
    }
    const std::uint64_t pairs = static_cast<std::uint64_t>(w.size()) * (w.size() - 1) / 2;
    return pairs - forbidden_twice / 2;
}

std::vector<Edge> enumerate_available(const ProcessState& state) {
    const auto w = state.unsaturated();
    std::vector<Edge> out;
    if (w.size() < 2) return out;
    const std::uint32_t depth = state.girth_target() - 2;
    std::vector<std::uint32_t> blocked(state.n(), 0);
    std::vector<std::uint32_t> order(state.n(), 0);
    for (std::uint32_t i = 0; i < w.size(); ++i) order[w[i]] = i;
    for (std::uint32_t i = 0; i < w.size(); ++i) {
        const std::uint32_t stamp = i + 1;
        state.workspace().visit_ball(state.graph(), w[i], depth,
                                     [&](Vertex x, std::uint32_t) { blocked[x] = stamp; });
        for (std::uint32_t j = i + 1; j < w.size(); ++j) {
            if (blocked[w[j]] != stamp) out.push_back(Edge::canonical(w[i], w[j]));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::uint64_t default_rejection_cap(std::size_t w_size, std::uint32_t k, std::uint32_t girth_target) {
    const double w = static_cast<double>(w_size);
    const double reach = std::pow(static_cast<double>(k) - 1.0, girth_target);
    const double denom = std::max(1.0, w * w - 2.0 * w * reach);
    const double formula = 200.0 * std::ceil(w * w / denom);
    // Past a few multiples of the pair count, enumeration is the cheaper way
    // to finish the draw, and it is equally uniform.
    const double pair_ceiling = 4.0 * w * (w - 1.0) / 2.0;
    const double cap = std::max(1000.0, std::min(formula, pair_ceiling));
    return static_cast<std::uint64_t>(std::min(cap, 1e15));
}

PairDraw sample_available_pair(const ProcessState& state, Xoshiro256& rng, std::uint64_t rejection_cap) {
    PairDraw draw;
    const auto w = state.unsaturated();
    if (w.size() < 2) {
        draw.enumerated = true;
        draw.available_count = 0;
        return draw;
    }
    const std::uint64_t cap =
        rejection_cap != 0 ? rejection_cap : default_rejection_cap(w.size(), state.k(), state.girth_target());
    const std::uint32_t dist_cap = state.availability_cap();
    auto& ws = state.workspace();
    for (std::uint64_t trial = 1; trial <= cap; ++trial) {
        const auto i = rng.below(w.size());
        auto j = rng.below(w.size() - 1);
        if (j >= i) ++j;
        const Vertex u = w[i];
        const Vertex v = w[j];
        if (ws.distance(state.graph(), u, v, dist_cap).at_least_bound(dist_cap)) {
            draw.pair = Edge::canonical(u, v);
            draw.trials = trial;
            return draw;
        }
    }
    const auto pairs = enumerate_available(state);
    draw.trials = cap;
    draw.enumerated = true;
    draw.available_count = pairs.size();
    if (!pairs.empty()) draw.pair = pairs[rng.below(pairs.size())];
    return draw;
}

StepOutcome step(ProcessState& state, Xoshiro256& rng, std::uint64_t rejection_cap, StepReport* report) {
    StepReport local;
    StepReport& rep = report != nullptr ? *report : local;
    rep = StepReport{};
    rep.t_before = state.t();
    rep.floor_before = state.degree_floor();
    rep.w_before = state.unsaturated().size();
    rep.floor_after = rep.floor_before;
    rep.w_after = rep.w_before;

    if (state.saturated()) {
        rep.outcome = StepOutcome::Saturated;
        return rep.outcome;
    }
    if (state.frozen()) {
        rep.outcome = StepOutcome::Frozen;
        return rep.outcome;
    }
    const PairDraw draw = sample_available_pair(state, rng, rejection_cap);
    rep.trials = draw.trials;
    rep.enumerated = draw.enumerated;
    if (draw.enumerated) rep.available_before = draw.available_count;
    if (!draw.pair) {
        state.mark_frozen();
        rep.outcome = StepOutcome::Frozen;
        return rep.outcome;
    }
    state.add_chord(draw.pair->u, draw.pair->v);
    rep.edge = *draw.pair;
    rep.floor_after = state.degree_floor();
    rep.w_after = state.unsaturated().size();
    rep.outcome = StepOutcome::Stepped;
    return rep.outcome;
}

bool RunRecord::same_outcome(const RunRecord& o) const {
    return seed == o.seed && n == o.n && k == o.k && girth_target == o.girth_target &&
           saturated == o.saturated && t_freeze == o.t_freeze && girth_achieved == o.girth_achieved &&
           log_choices == o.log_choices && level_log_choices == o.level_log_choices &&
           log_choices_exact == o.log_choices_exact && insertions == o.insertions;
}

namespace {

void check_moore_bound(const ProcessState& state, Xoshiro256& probe) {
    const Vertex v = static_cast<Vertex>(probe.below(state.n()));
    for (std::uint32_t radius = 1; radius <= state.girth_target(); ++radius) {
        const auto size = ball_size(state.graph(), v, radius, state.workspace());
        if (static_cast<double>(size) > moore_ball_bound(state.k(), radius)) {
            throw std::logic_error("Moore bound violated at vertex " + std::to_string(v));
        }
    }
}

}  // namespace

RunRecord run(const ProcessConfig& config, RunObserver* observer) {
    const auto started = std::chrono::steady_clock::now();
    ProcessState state = ProcessState::from_config(config);
    Xoshiro256 rng(config.seed);
    Xoshiro256 probe(config.seed ^ 0xD1B54A32D192ED03ULL);
    LogChoiceAccumulator choices(config.k, config.accounting, config.exact_threshold);

    RunRecord record;
    record.seed = config.seed;
    record.n = state.n();
    record.k = config.k;
    record.girth_target = config.girth_target;

    if (observer != nullptr) observer->on_start(state);
    while (!state.saturated() && !state.frozen()) {
        std::optional<std::uint64_t> exact;
        if (choices.wants_exact_count(state.unsaturated().size())) {
            exact = count_available(state);
            if (*exact == 0) {
                state.mark_frozen();
                break;
            }
        }
        StepReport rep;
        if (step(state, rng, config.rejection_cap, &rep) != StepOutcome::Stepped) break;
        if (exact) rep.available_before = exact;
        choices.record(rep);
        if (config.record_insertions) record.insertions.push_back(rep.edge);
        if (config.debug_checks) check_moore_bound(state, probe);
        if (observer != nullptr) observer->on_step(state, rep);
    }

    record.saturated = state.saturated();
    record.t_freeze = state.t();
    record.log_choices = choices.total();
    record.level_log_choices = choices.per_level();
    record.log_choices_exact = choices.all_exact();
    record.girth_achieved = girth(state.graph());
    if (observer != nullptr) observer->on_finish(state);
    if (config.keep_graph) record.graph = std::make_shared<const Graph>(state.graph());
    record.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - started).count();
    return record;
}

}  // namespace girthforge
