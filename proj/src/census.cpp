#include "girthforge/census.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <string>

#include "girthforge/batch.hpp"
#include "girthforge/budget.hpp"

namespace girthforge {

double log_hamilton_cycles(std::size_t n) {
    if (n < 3) throw std::invalid_argument("Hamilton cycles need n >= 3");
    const double nd = static_cast<double>(n);
    return std::lgamma(nd + 1.0) - std::log(2.0 * nd);
}

CountEstimate make_count_estimate(std::size_t n, std::uint32_t k, std::span<const double> level_log_choices) {
    if (k < 2) throw std::invalid_argument("k must be at least 2");
    if ((static_cast<std::uint64_t>(k) * n) % 2 != 0) throw std::invalid_argument("kn must be even");
    CountEstimate est;
    est.n = n;
    est.k = k;
    est.log_hamilton = log_hamilton_cycles(n);
    est.level_log_choices.assign(level_log_choices.begin(), level_log_choices.end());
    for (double x : level_log_choices) est.log_choices += x;
    const double chords = (static_cast<double>(k) - 2.0) * static_cast<double>(n) / 2.0;
    est.chord_order_correction = -std::lgamma(chords + 1.0);
    // a 2-regular Hamilton-cycle graph is its own unique Hamilton cycle
    est.hamilton_correction = k == 2 ? 0.0 : -static_cast<double>(n) * std::log(static_cast<double>(k));
    est.total = est.log_hamilton + est.log_choices + est.chord_order_correction + est.hamilton_correction;
    return est;
}

CountEstimate make_count_estimate(const RunRecord& record) {
    return make_count_estimate(record.n, record.k, record.level_log_choices);
}

double analytic_log_count(std::size_t n, std::uint32_t k) {
    const double nd = static_cast<double>(n);
    const double chords = (static_cast<double>(k) - 2.0) * nd / 2.0;
    const double e = std::numbers::e;
    return nd * std::log(nd / e) + chords * std::log(nd * nd / (2.0 * e * e)) -
           nd * std::log(static_cast<double>(k)) - std::lgamma(chords + 1.0);
}

LowerBound assemble_lower_bound(std::span<const CountEstimate> estimates, double success_rate) {
    if (estimates.empty()) throw std::invalid_argument("no successful runs to assemble");
    if (!(success_rate > 0.0 && success_rate <= 1.0)) {
        throw std::invalid_argument("success rate must lie in (0,1]");
    }
    const std::size_t n = estimates.front().n;
    const std::uint32_t k = estimates.front().k;
    double sum = 0.0;
    for (const auto& e : estimates) {
        if (e.n != n || e.k != k) throw std::invalid_argument("estimates mix different (n,k)");
        sum += e.total;
    }
    LowerBound lb;
    lb.mean_total = sum / static_cast<double>(estimates.size());
    lb.log_success_rate = std::log(success_rate);
    lb.log_count = lb.mean_total + lb.log_success_rate;
    lb.log10_count = lb.log_count / std::numbers::ln10;
    lb.analytic_reference = analytic_log_count(n, k);
    return lb;
}

std::uint32_t pair_bit(std::size_t n, Vertex u, Vertex v) {
    if (u > v) std::swap(u, v);
    if (u == v || v >= n) throw std::invalid_argument("pair_bit needs u != v < n");
    // rows 0..u-1 hold n-1, n-2, ... pairs
    const std::size_t before = static_cast<std::size_t>(u) * (2 * n - u - 1) / 2;
    return static_cast<std::uint32_t>(before + (v - u - 1));
}

std::uint64_t edge_mask(const Graph& g) {
    if (g.vertex_count() > kCensusMaxN + 1) throw std::invalid_argument("edge masks need n <= 11");
    std::uint64_t mask = 0;
    for (const Edge& e : g.edges()) mask |= std::uint64_t{1} << pair_bit(g.vertex_count(), e.u, e.v);
    return mask;
}

namespace {

struct CensusSearch {
    std::size_t n;
    std::uint32_t k;
    std::uint32_t g;
    std::uint64_t budget;
    std::atomic<std::uint64_t>& nodes;
    const std::function<void(std::uint64_t)>* visit;
    std::mutex* visit_mutex;

    std::uint32_t adj[kCensusMaxN] = {};
    std::uint32_t deg[kCensusMaxN] = {};
    std::uint64_t mask = 0;
    std::uint64_t count = 0;

    // True when v and w are within distance g-2, so joining them would close
    // a cycle shorter than g.
    bool too_close(Vertex v, Vertex w) const {
        if (g < 3) return false;
        std::uint32_t seen = 1u << v;
        std::uint32_t frontier = seen;
        for (std::uint32_t d = 1; d <= g - 2; ++d) {
            std::uint32_t next = 0;
            for (std::uint32_t f = frontier; f != 0; f &= f - 1) next |= adj[std::countr_zero(f)];
            next &= ~seen;
            if (next & (1u << w)) return true;
            if (next == 0) return false;
            seen |= next;
            frontier = next;
        }
        return false;
    }

    void link(Vertex v, Vertex w) {
        adj[v] |= 1u << w;
        adj[w] |= 1u << v;
        ++deg[v];
        ++deg[w];
        mask ^= std::uint64_t{1} << pair_bit(n, v, w);
    }
    void unlink(Vertex v, Vertex w) {
        adj[v] &= ~(1u << w);
        adj[w] &= ~(1u << v);
        --deg[v];
        --deg[w];
        mask ^= std::uint64_t{1} << pair_bit(n, v, w);
    }

    void tick() {
        if (nodes.fetch_add(1, std::memory_order_relaxed) + 1 > budget) {
            throw BudgetExceeded("census search exceeded " + std::to_string(budget) + " nodes");
        }
    }

    // Completes vertex v by choosing its remaining neighbours among w > v,
    // smallest first; `from` is the lowest candidate still allowed.
    void fill(Vertex v, Vertex from) {
        tick();
        if (deg[v] == k) {
            place(v + 1);
            return;
        }
        const std::uint32_t need = k - deg[v];
        std::uint32_t open = 0;
        for (Vertex w = from; w < n; ++w) open += deg[w] < k ? 1 : 0;
        if (open < need) return;
        for (Vertex w = from; w < n; ++w) {
            if (deg[w] >= k || too_close(v, w)) continue;
            link(v, w);
            fill(v, w + 1);
            unlink(v, w);
        }
    }

    void place(Vertex v) {
        if (v == n) {
            ++count;
            if (*visit) {
                std::lock_guard lock(*visit_mutex);
                (*visit)(mask);
            }
            return;
        }
        fill(v, v + 1);
    }
};

// Neighbour sets of vertex 0: k-subsets of {1, ..., n-1} as bitmasks.
std::vector<std::uint32_t> first_rows(std::size_t n, std::uint32_t k) {
    std::vector<std::uint32_t> rows;
    for (std::uint32_t s = 0; s < (1u << n); ++s) {
        if ((s & 1u) == 0 && static_cast<std::uint32_t>(std::popcount(s)) == k) rows.push_back(s);
    }
    return rows;
}

}  // namespace

std::uint64_t brute_force_census(std::size_t n, std::uint32_t k, std::uint32_t g, std::uint64_t budget,
                                 unsigned workers, const std::function<void(std::uint64_t)>& visit) {
    if (n == 0 || n > kCensusMaxN) throw std::invalid_argument("census needs 1 <= n <= 10");
    if ((static_cast<std::uint64_t>(k) * n) % 2 != 0) throw std::invalid_argument("kn must be even");
    if (k == 0) {
        // the empty graph, which is a forest
        if (visit) visit(0);
        return 1;
    }
    if (k >= n) return 0;

    const auto rows = first_rows(n, k);
    std::atomic<std::uint64_t> nodes{0};
    std::mutex visit_mutex;
    std::vector<std::uint64_t> counts(rows.size(), 0);
    parallel_for(rows.size(), workers, [&](std::size_t i) {
        CensusSearch search{n, k, g, budget, nodes, &visit, &visit_mutex};
        // vertex 0 has no earlier neighbours, so each of its edges is a bridge
        // in the partial graph and cannot close a cycle
        for (std::uint32_t s = rows[i]; s != 0; s &= s - 1) search.link(0, std::countr_zero(s));
        search.place(1);
        counts[i] = search.count;
    });
    std::uint64_t total = 0;
    for (auto c : counts) total += c;
    return total;
}

std::vector<std::uint64_t> census_graph_masks(std::size_t n, std::uint32_t k, std::uint32_t g,
                                              std::uint64_t budget, unsigned workers) {
    std::vector<std::uint64_t> masks;
    brute_force_census(n, k, g, budget, workers, [&](std::uint64_t m) { masks.push_back(m); });
    std::sort(masks.begin(), masks.end());
    return masks;
}

double replay_log_choices(const Graph& start, std::uint32_t k, std::uint32_t g, std::span<const Edge> insertions) {
    ProcessState state(start, k, g);
    double sum = 0.0;
    for (std::size_t i = 0; i < insertions.size(); ++i) {
        const Edge& e = insertions[i];
        if (!is_available(state, e.u, e.v)) {
            throw std::invalid_argument("insertion " + std::to_string(i) + " is not an available pair");
        }
        sum += std::log(static_cast<double>(count_available(state)));
        state.add_chord(e.u, e.v);
    }
    return sum;
}

}  // namespace girthforge
