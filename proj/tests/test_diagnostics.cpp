#include "doctest.h"

#include <cmath>

#include "girthforge/budget.hpp"
#include "girthforge/diagnostics.hpp"
#include "oracles.hpp"

using namespace girthforge;

namespace {

Graph cycle(std::size_t n, std::uint32_t cap = 3) {
    Graph g(n, cap);
    for (Vertex v = 0; v < n; ++v) g.add_edge(v, static_cast<Vertex>((v + 1) % n));
    return g;
}

// C12 plus the given chords.
ProcessState c12_with_w(std::vector<std::pair<Vertex, Vertex>> chords, std::uint32_t g) {
    Graph base = cycle(12);
    for (auto [u, v] : chords) base.add_edge(u, v);
    return ProcessState(base, 3, g);
}

void check_against_oracle(const ProcessState& s) {
    const PathStats st = path_stats(s);
    const auto w = oracle::unsaturated(s.graph(), s.k());
    const auto d = oracle::all_distances(s.graph());
    const std::uint32_t L = s.girth_target() - 2;
    std::vector<std::uint64_t> global(L + 1, 0);
    for (std::size_t i = 0; i < w.size(); ++i)
        for (std::size_t j = i + 1; j < w.size(); ++j) {
            const int x = d[w[i]][w[j]];
            if (x >= 1 && x <= static_cast<int>(L)) ++global[x];
        }
    REQUIRE(st.w_size == w.size());
    std::uint64_t forbidden = 0;
    for (std::uint32_t l = 1; l <= L; ++l) {
        REQUIRE(st.global[l] == global[l]);
        forbidden += global[l];
        std::uint64_t half = 0;
        for (std::size_t i = 0; i < st.vertices.size(); ++i) {
            half += st.per_vertex[i][l];
            REQUIRE(st.per_vertex[i][l] <= std::pow(double(s.k()) - 1, l));
        }
        REQUIRE(half == 2 * st.global[l]);
    }
    REQUIRE(st.forbidden_count == forbidden);
    REQUIRE(st.available_count + st.forbidden_count == w.size() * (w.size() - 1) / 2);
    REQUIRE(is_safe(s).safe == (forbidden == 0));
}

}  // namespace

TEST_CASE("path_stats on C12, g=5") {
    const ProcessState s(Graph::hamilton_cycle(12, 3), 3, 5);
    const PathStats st = path_stats(s);
    CHECK(st.max_length == 3);
    CHECK(st.global[1] == 12);
    CHECK(st.global[2] == 12);
    CHECK(st.global[3] == 12);
    CHECK(st.forbidden_count == 36);
    CHECK(st.available_count == 30);
    CHECK(st.w_size == 12);
}

TEST_CASE("path_stats on a saturated graph is all zero") {
    Graph k4(4, 3);
    for (Vertex u = 0; u < 4; ++u)
        for (Vertex v = u + 1; v < 4; ++v) k4.add_edge(u, v);
    const ProcessState s(k4, 3, 3);
    const PathStats st = path_stats(s);
    CHECK(st.w_size == 0);
    CHECK(st.forbidden_count == 0);
    CHECK(st.available_count == 0);
    CHECK(st.global[1] == 0);
    CHECK(is_safe(s).safe);
}

TEST_CASE("path_stats matches the oracle along random runs") {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        Xoshiro256 rng(seed);
        const std::uint32_t k = 3 + static_cast<std::uint32_t>(seed % 2);
        const std::uint32_t g = 4 + static_cast<std::uint32_t>(seed % 3);
        ProcessState s(Graph::hamilton_cycle(60, k), k, g);
        std::uint64_t t = 0;
        do {
            if (t++ % 7 == 0) check_against_oracle(s);
        } while (step(s, rng) == StepOutcome::Stepped);
        check_against_oracle(s);
    }
}

TEST_CASE("is_safe examples") {
    const ProcessState c12(Graph::hamilton_cycle(12, 3), 3, 5);
    const SafetyReport r = is_safe(c12);
    CHECK_FALSE(r.safe);
    REQUIRE(r.violating_pair.has_value());
    CHECK(r.min_pair_distance == std::optional<Distance>(Distance::exact(1)));

    // chords leave W = {0, 6}
    const ProcessState s = c12_with_w({{1, 4}, {8, 11}, {2, 9}, {3, 10}, {5, 7}}, 5);
    REQUIRE(s.unsaturated().size() == 2);
    const SafetyReport ok = is_safe(s);
    CHECK(ok.safe);
    CHECK_FALSE(ok.violating_pair.has_value());
    CHECK(ok.final_level);
    CHECK(ok.degree_floor == 2);
}

TEST_CASE("a safe snapshot always leads to saturation") {
    std::uint64_t safe_seen = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        Xoshiro256 rng(seed);
        const std::uint32_t g = 5 + static_cast<std::uint32_t>(seed % 3);
        ProcessState s(Graph::hamilton_cycle(40 + 2 * (seed % 30), 3), 3, g);
        bool was_safe = false;
        do {
            if (!was_safe && is_safe(s).safe) {
                was_safe = true;
                ++safe_seen;
            }
        } while (step(s, rng) == StepOutcome::Stepped);
        if (was_safe) REQUIRE(s.saturated());
    }
    CHECK(safe_seen > 0);
}

TEST_CASE("is_path_bounded") {
    const ProcessState c12(Graph::hamilton_cycle(12, 3), 3, 5);
    const PathBoundReport r = is_path_bounded(c12, make_schedule(12, 3, 0.5), 10.0);
    CHECK(r.bounded);
    CHECK(r.worst_margin <= 1.0);

    // saturated
    Graph k4(4, 3);
    for (Vertex u = 0; u < 4; ++u)
        for (Vertex v = u + 1; v < 4; ++v) k4.add_edge(u, v);
    CHECK(is_path_bounded(ProcessState(k4, 3, 3), make_schedule(4, 3, 0.5), 0.1).bounded);

    // adversarial: W = {0..19} consecutive on C1000, everything else matched by long chords
    Graph base = cycle(1000);
    for (Vertex i = 20; i < 510; ++i) base.add_edge(i, i + 490);
    const ProcessState adv(base, 3, 5);
    REQUIRE(adv.unsaturated().size() == 20);
    const Schedule sch = make_schedule(1000, 3, 0.5);
    const PathBoundReport bad = is_path_bounded(adv, sch, 0.1);
    CHECK_FALSE(bad.bounded);
    // clause (2) at l = 1: 19 adjacent pairs against 400*2/1000 * ln(1000)^0.1
    const double ceiling = 400.0 * 2 / 1000 * std::pow(std::log(1000.0), 0.1);
    CHECK(bad.global_margin[1] == doctest::Approx(19.0 / ceiling));
    CHECK(bad.global_margin[1] > 1.0);
}

TEST_CASE("threatening paths") {
    const Graph c6 = cycle(6, 2);
    CHECK(count_threatening_paths(c6, 3, 1, 0, 1'000'000) == 12);
    CHECK(count_threatening_paths(c6, 3, 3, 2, 1'000'000) == 0);
    CHECK(count_threatening_paths(c6, 3, 2, 1, 1'000'000) == 0);
    const auto c31 = count_threatening_paths(c6, 3, 3, 1, 1'000'000);
    CHECK(c31 == oracle::threatening_paths(c6, 3, 1));
    CHECK(static_cast<double>(c31) <= 288.0);
    CHECK(threatening_path_bound(6, 3, 3, 1) == 288.0);

    CHECK_THROWS_AS(count_threatening_paths(c6, 3, 3, 1, 100), BudgetExceeded);
    CHECK_THROWS(count_threatening_paths(c6, 3, 0, 0, 1000));
    CHECK_THROWS(count_threatening_paths(cycle(6, 3), 2, 3, 1, 1000));  // base degree 2 > k-1 = 1
}

TEST_CASE("threatening paths agree with the odometer oracle and respect the bound") {
    Xoshiro256 rng(8);
    for (int trial = 0; trial < 25; ++trial) {
        const std::size_t n = 5 + rng.below(3);
        const std::uint32_t k = 3 + static_cast<std::uint32_t>(rng.below(2));
        Graph base(n, k - 1);
        for (int i = 0; i < 3 * static_cast<int>(n); ++i) {
            const auto u = static_cast<Vertex>(rng.below(n));
            const auto v = static_cast<Vertex>(rng.below(n));
            if (u == v || base.has_edge(u, v) || base.degree(u) >= k - 1 || base.degree(v) >= k - 1) continue;
            base.add_edge(u, v);
        }
        for (std::uint32_t len = 1; len <= 5; ++len) {
            for (std::uint32_t a = 0; 2 * a + 1 <= len; ++a) {
                const auto got = count_threatening_paths(base, k, len, a, 1'000'000'000);
                REQUIRE(got == oracle::threatening_paths(base, static_cast<int>(len), static_cast<int>(a)));
                REQUIRE(static_cast<double>(got) <= threatening_path_bound(n, k, len, a));
            }
        }
    }
}
