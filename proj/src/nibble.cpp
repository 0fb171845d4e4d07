#include "girthforge/nibble.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "girthforge/budget.hpp"

namespace girthforge {

std::optional<std::uint32_t> NibbleGraph::local_index(Vertex global) const {
    const auto it = std::find(vertices.begin(), vertices.end(), global);
    if (it == vertices.end()) return std::nullopt;
    return static_cast<std::uint32_t>(it - vertices.begin());
}

namespace {

NibbleGraph empty_on_w(const ProcessState& state) {
    NibbleGraph h;
    const auto w = state.unsaturated();
    h.vertices.assign(w.begin(), w.end());
    h.adjacency.assign(w.size(), {});
    return h;
}

void finish(NibbleGraph& h) {
    std::sort(h.edges.begin(), h.edges.end());
    for (auto& row : h.adjacency) std::sort(row.begin(), row.end());
}

void add_local_edge(NibbleGraph& h, std::uint32_t a, std::uint32_t b) {
    h.adjacency[a].push_back(b);
    h.adjacency[b].push_back(a);
    h.edges.push_back(Edge::canonical(a, b));
}

}  // namespace

NibbleGraph nibble_graph_from_edges(const ProcessState& state, const std::vector<Edge>& global_edges) {
    NibbleGraph h = empty_on_w(state);
    std::vector<std::int64_t> local(state.n(), -1);
    for (std::uint32_t i = 0; i < h.vertices.size(); ++i) local[h.vertices[i]] = i;
    for (const Edge& e : global_edges) {
        state.graph().check_vertex(e.u);
        state.graph().check_vertex(e.v);
        if (e.u == e.v) throw SelfLoopError("H edge is a self-loop");
        if (local[e.u] < 0 || local[e.v] < 0) {
            throw std::invalid_argument("H edge has an endpoint outside W_t");
        }
        add_local_edge(h, static_cast<std::uint32_t>(local[e.u]), static_cast<std::uint32_t>(local[e.v]));
    }
    finish(h);
    for (std::size_t i = 1; i < h.edges.size(); ++i) {
        if (h.edges[i] == h.edges[i - 1]) throw DuplicateEdgeError("H edge listed twice");
    }
    return h;
}

NibbleGraph sample_h(const ProcessState& state, double p, Xoshiro256& rng) {
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("p must lie in [0,1]");
    NibbleGraph h = empty_on_w(state);
    const std::size_t w = h.vertices.size();
    if (w < 2 || p == 0.0) return h;

    const double log_q = std::log1p(-p);
    const std::uint32_t cap = state.availability_cap();
    auto& ws = state.workspace();
    // (i, j) walks the pairs i < j row by row; (i, i) is the slot just before
    // row i. Each draw skips a geometric number of pairs.
    std::size_t i = 0;
    std::size_t j = 0;
    for (;;) {
        std::uint64_t gap = 0;
        if (p < 1.0) {
            const double u = 1.0 - rng.uniform01();  // (0, 1]
            const double skip = std::floor(std::log(u) / log_q);
            if (skip > 1e18) break;
            gap = static_cast<std::uint64_t>(skip);
        }
        std::uint64_t advance = gap + 1;
        while (advance > 0) {
            const std::uint64_t room = w - 1 - j;
            if (advance <= room) {
                j += advance;
                advance = 0;
            } else {
                advance -= room;
                ++i;
                if (i + 1 >= w) break;
                j = i;
            }
        }
        if (advance > 0) break;
        const Vertex u = h.vertices[i];
        const Vertex v = h.vertices[j];
        if (ws.distance(state.graph(), u, v, cap).at_least_bound(cap)) {
            add_local_edge(h, static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j));
        }
    }
    finish(h);
    return h;
}

BandParameters band_parameters(std::size_t n, double beta) {
    const double nd = static_cast<double>(n);
    return {std::pow(nd, beta), std::pow(nd, 0.6 * beta)};
}

TrajectoryRecord run_constrained_matching(const ProcessState& start, const NibbleGraph& H,
                                          std::uint64_t target_steps, Xoshiro256& rng,
                                          const std::vector<Vertex>& sample_vertices,
                                          const BandParameters& band) {
    const auto w_span = start.unsaturated();
    if (H.vertices.size() != w_span.size() || !std::equal(w_span.begin(), w_span.end(), H.vertices.begin())) {
        throw std::invalid_argument("H must be built on the state's W_t");
    }
    const std::size_t w = H.vertices.size();
    if (target_steps > w / 2) throw std::invalid_argument("target_steps exceeds |W_t|/2");

    TrajectoryRecord rec;
    rec.w_size = w;
    rec.n_beta = band.n_beta;
    rec.n_06beta = band.n_06beta;

    ProcessState state = start;
    const std::uint32_t floor0 = state.degree_floor();
    const std::uint32_t cap = state.availability_cap();

    std::vector<std::int64_t> local(state.n(), -1);
    for (std::uint32_t i = 0; i < w; ++i) local[H.vertices[i]] = i;
    std::vector<std::uint32_t> sampled;
    for (Vertex v : sample_vertices) {
        if (v >= state.n() || local[v] < 0) throw std::invalid_argument("sampled vertex is not in W_t");
        sampled.push_back(static_cast<std::uint32_t>(local[v]));
    }

    std::vector<char> in_u(w, 1);
    std::vector<std::uint32_t> N(w);
    for (std::uint32_t i = 0; i < w; ++i) N[i] = H.degree(i);
    std::size_t u_size = w;

    auto record = [&](std::uint64_t s) {
        rec.unsaturated_sizes.push_back(u_size);
        const double ps = 1.0 - 2.0 * static_cast<double>(s) / static_cast<double>(w);
        if (ps <= 0.0) return;
        const double center = band.n_beta * ps;
        const double radius = band.n_06beta / std::pow(ps, 8);
        for (std::uint32_t i : sampled) {
            if (!in_u[i]) continue;
            TrajectorySample smp;
            smp.s = s;
            smp.v = H.vertices[i];
            smp.N = N[i];
            smp.band_lo = center - radius;
            smp.band_hi = center + radius;
            smp.violated = smp.N < smp.band_lo || smp.N > smp.band_hi;
            rec.max_abs_deviation = std::max(rec.max_abs_deviation, std::abs(smp.N - center));
            if (smp.violated) {
                ++rec.violations;
                if (!rec.exit_step) rec.exit_step = s;
            }
            rec.samples.push_back(smp);
        }
    };

    auto leave_u = [&](std::uint32_t x) {
        in_u[x] = 0;
        --u_size;
        for (std::uint32_t y : H.adjacency[x]) --N[y];
    };

    // Invalid candidates stay invalid: saturation is permanent and distances
    // only shrink, so they are dropped the first time they are drawn.
    std::vector<std::uint32_t> candidates(H.edges.size());
    std::iota(candidates.begin(), candidates.end(), 0u);

    record(0);
    while (rec.steps < target_steps) {
        std::optional<Edge> chosen;
        while (!candidates.empty()) {
            const auto idx = rng.below(candidates.size());
            const Edge le = H.edges[candidates[idx]];
            candidates[idx] = candidates.back();
            candidates.pop_back();
            if (!in_u[le.u] || !in_u[le.v]) continue;
            const Vertex gu = H.vertices[le.u];
            const Vertex gv = H.vertices[le.v];
            if (state.workspace().distance(state.graph(), gu, gv, cap).at_least_bound(cap)) {
                chosen = le;
                break;
            }
        }
        if (!chosen) {
            rec.inner_frozen = true;
            break;
        }
        const Vertex gu = H.vertices[chosen->u];
        const Vertex gv = H.vertices[chosen->v];
        state.add_chord(gu, gv);
        rec.added.push_back(Edge::canonical(gu, gv));
        leave_u(chosen->u);
        leave_u(chosen->v);
        ++rec.steps;
        if (state.degree_floor() == floor0 && state.unsaturated().size() != u_size) {
            throw std::logic_error("inner process lost track of U_s");
        }
        record(rec.steps);
    }
    return rec;
}

ThreatenedCounts threatened_pairs_bruteforce(const ProcessState& state, const NibbleGraph& H,
                                             std::uint32_t ell, std::uint64_t budget) {
    if (ell == 0) throw std::invalid_argument("l must be at least 1");
    ThreatenedCounts out;
    const auto w_span = state.unsaturated();
    out.vertices.assign(w_span.begin(), w_span.end());
    const std::size_t w = out.vertices.size();
    out.per_vertex.assign(w, 0);
    if (H.vertices != out.vertices) throw std::invalid_argument("H must be built on the state's W_t");

    std::vector<std::int64_t> local(state.n(), -1);
    for (std::uint32_t i = 0; i < w; ++i) local[out.vertices[i]] = i;
    // near[i] = (j, dist) for W-vertices j at distance 1..l from i in G_t
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> near(w);
    for (std::uint32_t i = 0; i < w; ++i) {
        state.workspace().visit_ball(state.graph(), out.vertices[i], ell, [&](Vertex x, std::uint32_t d) {
            if (d > 0 && local[x] >= 0) near[i].emplace_back(static_cast<std::uint32_t>(local[x]), d);
        });
    }

    std::uint64_t visited = 0;
    std::vector<char> reached(w, 0);
    // x starts a G-segment with `remaining` weight left to spend
    auto search = [&](auto&& self, std::uint32_t x, std::uint32_t remaining) -> void {
        for (const auto& [y, d] : near[x]) {
            if (d > remaining) continue;
            if (++visited > budget) {
                throw BudgetExceeded("witness search exceeded " + std::to_string(budget) + " states");
            }
            if (d == remaining) {
                reached[y] = 1;
            } else if (remaining - d >= 2) {
                for (std::uint32_t z : H.adjacency[y]) self(self, z, remaining - d - 1);
            }
        }
    };

    for (std::uint32_t u = 0; u < w; ++u) {
        std::fill(reached.begin(), reached.end(), 0);
        search(search, u, ell);
        reached[u] = 0;
        out.per_vertex[u] = static_cast<std::uint64_t>(std::count(reached.begin(), reached.end(), 1));
    }
    std::uint64_t twice = 0;
    for (auto c : out.per_vertex) twice += c;
    out.total = twice / 2;
    return out;
}

DegreeConcentration h_degree_concentration(const NibbleGraph& H, std::size_t n, double beta) {
    DegreeConcentration dc;
    const double nd = static_cast<double>(n);
    const double center = std::pow(nd, beta);
    const double slack = std::pow(nd, -0.4 * beta);
    dc.lo = (1.0 - slack) * center;
    dc.hi = (1.0 + slack) * center;
    dc.vertices = H.vertex_count();
    for (std::uint32_t i = 0; i < H.vertex_count(); ++i) {
        const double d = H.degree(i);
        if (d < dc.lo || d > dc.hi) ++dc.outside;
    }
    return dc;
}

DiscrepancyCheck discrepancy_spot_check(const NibbleGraph& H, std::size_t n, double eps, double beta,
                                        std::size_t trials, Xoshiro256& rng) {
    DiscrepancyCheck dc;
    const double nd = static_cast<double>(n);
    const std::size_t w = H.vertex_count();
    dc.subset_size = static_cast<std::size_t>(std::floor(static_cast<double>(w) / std::pow(nd, eps / 2.0)));
    dc.ceiling = static_cast<double>(dc.subset_size) * std::pow(nd, 0.9 * beta);
    dc.trials = trials;
    std::vector<std::uint32_t> order(w);
    std::iota(order.begin(), order.end(), 0u);
    std::vector<char> in_s(w, 0);
    for (std::size_t trial = 0; trial < trials; ++trial) {
        // partial Fisher-Yates for the first subset_size entries
        for (std::size_t i = 0; i < dc.subset_size; ++i) {
            const auto j = i + rng.below(w - i);
            std::swap(order[i], order[j]);
        }
        std::fill(in_s.begin(), in_s.end(), 0);
        for (std::size_t i = 0; i < dc.subset_size; ++i) in_s[order[i]] = 1;
        std::size_t edges = 0;
        for (const Edge& e : H.edges) edges += (in_s[e.u] && in_s[e.v]) ? 1 : 0;
        dc.max_edges = std::max(dc.max_edges, edges);
        if (static_cast<double>(edges) > dc.ceiling) ++dc.failures;
    }
    return dc;
}

NibbleTrial run_nibble_trial(const NibbleTrialConfig& config) {
    NibbleTrial trial;
    trial.seed = config.seed;
    trial.schedule = make_schedule(config.n, config.k, config.c);
    const Schedule& sch = trial.schedule;

    ProcessConfig pc;
    pc.n = config.n;
    pc.k = config.k;
    pc.girth_target = config.girth_target ? *config.girth_target : derive_girth_target(config.n, config.k, config.c);
    pc.seed = config.seed;
    ProcessState state = ProcessState::from_config(pc);
    Xoshiro256 rng(config.seed);

    // Every earlier level takes n/2 steps; T is measured within the last one.
    trial.snapshot_t = static_cast<std::uint64_t>(config.k - 3) * (config.n / 2) +
                       static_cast<std::uint64_t>(std::ceil(sch.T));
    while (state.t() < trial.snapshot_t && step(state, rng) == StepOutcome::Stepped) {
    }
    trial.reached_snapshot = state.t() == trial.snapshot_t;
    if (!trial.reached_snapshot) return trial;

    trial.beta_used = config.beta_override ? *config.beta_override : sch.beta;
    const std::size_t w = state.unsaturated().size();
    const BandParameters band = band_parameters(config.n, trial.beta_used);
    trial.p = band.n_beta / static_cast<double>(w);
    if (trial.p > 1.0) {
        throw std::invalid_argument("n^beta / |W_t| = " + std::to_string(trial.p) +
                                    " exceeds 1; lower beta");
    }
    const NibbleGraph H = sample_h(state, trial.p, rng);
    trial.h_edges = H.edge_count();
    trial.degrees = h_degree_concentration(H, config.n, trial.beta_used);

    std::vector<Vertex> sampled = H.vertices;
    if (config.sample_vertices != 0 && config.sample_vertices < sampled.size()) {
        for (std::size_t i = 0; i < config.sample_vertices; ++i) {
            std::swap(sampled[i], sampled[i + rng.below(sampled.size() - i)]);
        }
        sampled.resize(config.sample_vertices);
        std::sort(sampled.begin(), sampled.end());
    }
    const std::uint64_t target = config.target_steps ? *config.target_steps : w / 4;
    trial.trajectory = run_constrained_matching(state, H, target, rng, sampled, band);
    return trial;
}

}  // namespace girthforge
