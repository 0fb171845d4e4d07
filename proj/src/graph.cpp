#include "girthforge/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace girthforge {

Graph::Graph(std::size_t n, std::uint32_t k_max)
    : k_max_(k_max),
      min_degree_(n == 0 ? k_max + 1 : 0),
      slots_(n * k_max),
      degree_(n, 0),
      buckets_(k_max + 1),
      bucket_pos_(n) {
    if (n > std::numeric_limits<Vertex>::max()) throw GraphError("vertex count exceeds 32-bit ids");
    buckets_[0].resize(n);
    for (std::size_t v = 0; v < n; ++v) {
        buckets_[0][v] = static_cast<Vertex>(v);
        bucket_pos_[v] = static_cast<std::uint32_t>(v);
    }
}

Graph Graph::hamilton_cycle(std::size_t n, std::uint32_t k_max) {
    if (n % 2 != 0) throw GraphError("hamilton_cycle: n must be even, got " + std::to_string(n));
    if (n < 4) throw GraphError("hamilton_cycle: n must be at least 4, got " + std::to_string(n));
    if (k_max < 3) throw GraphError("hamilton_cycle: k_max must be at least 3");
    Graph g(n, k_max);
    for (std::size_t v = 0; v < n; ++v) {
        g.add_edge(static_cast<Vertex>(v), static_cast<Vertex>((v + 1) % n));
    }
    return g;
}

void Graph::check_vertex(Vertex v) const {
    if (v >= vertex_count()) {
        throw InvalidVertexError("vertex " + std::to_string(v) + " out of range for n=" +
                                 std::to_string(vertex_count()));
    }
}

bool Graph::has_edge(Vertex u, Vertex v) const {
    check_vertex(u);
    check_vertex(v);
    // scan the shorter list
    const auto nu = neighbors(u);
    const auto nv = neighbors(v);
    if (nu.size() <= nv.size()) return std::find(nu.begin(), nu.end(), v) != nu.end();
    return std::find(nv.begin(), nv.end(), u) != nv.end();
}

void Graph::move_bucket(Vertex v, std::uint32_t from, std::uint32_t to) {
    auto& src = buckets_[from];
    const std::uint32_t pos = bucket_pos_[v];
    const Vertex last = src.back();
    src[pos] = last;
    bucket_pos_[last] = pos;
    src.pop_back();
    bucket_pos_[v] = static_cast<std::uint32_t>(buckets_[to].size());
    buckets_[to].push_back(v);
}

void Graph::add_edge(Vertex u, Vertex v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw SelfLoopError("self-loop at vertex " + std::to_string(u));
    if (has_edge(u, v)) {
        throw DuplicateEdgeError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                                 ") already present");
    }
    if (degree_[u] >= k_max_ || degree_[v] >= k_max_) {
        throw DegreeOverflowError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                                  ") exceeds max degree " + std::to_string(k_max_));
    }
    for (Vertex x : {u, v}) {
        const Vertex other = x == u ? v : u;
        const std::uint32_t d = degree_[x];
        slots_[static_cast<std::size_t>(x) * k_max_ + d] = other;
        degree_[x] = d + 1;
        move_bucket(x, d, d + 1);
    }
    ++edge_count_;
    while (min_degree_ <= k_max_ && buckets_[min_degree_].empty()) ++min_degree_;
}

std::uint32_t Graph::max_degree() const {
    for (std::uint32_t d = k_max_ + 1; d-- > 0;) {
        if (!buckets_[d].empty()) return d;
    }
    return 0;
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(edge_count_);
    for (Vertex u = 0; u < vertex_count(); ++u) {
        for (Vertex v : neighbors(u)) {
            if (u < v) out.push_back({u, v});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool operator==(const Graph& a, const Graph& b) {
    return a.vertex_count() == b.vertex_count() && a.edge_count() == b.edge_count() &&
           a.edges() == b.edges();
}

std::string Distance::to_string() const {
    return is_exact() ? std::to_string(value_) : ">=" + std::to_string(value_);
}

void BfsWorkspace::reserve(std::size_t n) {
    if (mark_a_.size() >= n) return;
    mark_a_.assign(n, 0);
    mark_b_.assign(n, 0);
    depth_.assign(n, 0);
    epoch_ = 0;
}

std::uint32_t BfsWorkspace::next_epoch() {
    if (++epoch_ == 0) {
        std::fill(mark_a_.begin(), mark_a_.end(), 0);
        std::fill(mark_b_.begin(), mark_b_.end(), 0);
        epoch_ = 1;
    }
    return epoch_;
}

Distance BfsWorkspace::distance(const Graph& g, Vertex u, Vertex v, std::uint32_t cap) {
    g.check_vertex(u);
    g.check_vertex(v);
    if (cap == 0) throw std::invalid_argument("truncated_distance: cap must be >= 1");
    if (u == v) return Distance::exact(0);
    reserve(g.vertex_count());
    const std::uint32_t epoch = next_epoch();
    mark_a_[u] = epoch;
    mark_b_[v] = epoch;
    frontier_a_.assign(1, u);
    frontier_b_.assign(1, v);
    std::uint32_t radius_a = 0;
    std::uint32_t radius_b = 0;
    // Invariant: the balls of radius_a around u and radius_b around v are
    // disjoint, so distance >= radius_a + radius_b + 1. The first contact
    // made while growing one side by a layer pins the distance exactly.
    while (radius_a + radius_b + 1 < cap) {
        const bool grow_a = frontier_a_.size() <= frontier_b_.size();
        auto& frontier = grow_a ? frontier_a_ : frontier_b_;
        auto& own = grow_a ? mark_a_ : mark_b_;
        const auto& other = grow_a ? mark_b_ : mark_a_;
        if (frontier.empty()) break;
        next_.clear();
        for (Vertex x : frontier) {
            for (Vertex y : g.neighbors(x)) {
                if (other[y] == epoch) return Distance::exact(radius_a + radius_b + 1);
                if (own[y] == epoch) continue;
                own[y] = epoch;
                next_.push_back(y);
            }
        }
        frontier.swap(next_);
        (grow_a ? radius_a : radius_b) += 1;
    }
    return Distance::at_least(cap);
}

Distance truncated_distance(const Graph& g, Vertex u, Vertex v, std::uint32_t cap) {
    BfsWorkspace ws(g.vertex_count());
    return ws.distance(g, u, v, cap);
}

std::optional<std::uint32_t> girth(const Graph& g) {
    const std::size_t n = g.vertex_count();
    constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();
    std::uint32_t best = kNone;
    std::vector<std::uint32_t> stamp(n, 0), depth(n, 0);
    std::vector<Vertex> parent(n, 0), queue;
    queue.reserve(n);
    for (Vertex root = 0; root < n; ++root) {
        const std::uint32_t epoch = root + 1;
        queue.clear();
        queue.push_back(root);
        stamp[root] = epoch;
        depth[root] = 0;
        parent[root] = root;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const Vertex x = queue[head];
            // any cycle closed from here has length >= 2 * depth[x]
            if (best != kNone && 2 * depth[x] >= best) break;
            for (Vertex y : g.neighbors(x)) {
                if (stamp[y] != epoch) {
                    stamp[y] = epoch;
                    depth[y] = depth[x] + 1;
                    parent[y] = x;
                    queue.push_back(y);
                } else if (y != parent[x]) {
                    best = std::min(best, depth[x] + depth[y] + 1);
                }
            }
        }
        if (best == 3) break;
    }
    if (best == kNone) return std::nullopt;
    return best;
}

std::size_t ball_size(const Graph& g, Vertex v, std::uint32_t radius, BfsWorkspace& ws) {
    g.check_vertex(v);
    std::size_t count = 0;
    ws.visit_ball(g, v, radius, [&](Vertex, std::uint32_t) { ++count; });
    return count - 1;
}

std::size_t ball_size(const Graph& g, Vertex v, std::uint32_t radius) {
    BfsWorkspace ws(g.vertex_count());
    return ball_size(g, v, radius, ws);
}

double moore_ball_bound(std::uint32_t k, std::uint32_t radius) {
    return 2.0 * k * std::pow(static_cast<double>(k) - 1.0, radius);
}

double moore_sphere_bound(std::uint32_t k, std::uint32_t radius) {
    if (radius == 0) return 1.0;
    return k * std::pow(static_cast<double>(k) - 1.0, radius - 1);
}

}  // namespace girthforge
