// graph.hpp: bounded-degree simple graph with truncated BFS queries.
//
// Neighbors live in a flat array of n * k_max slots; degree(v) of them are
// in use. Vertices are additionally kept in one bucket per degree so the
// minimum-degree set can be sampled and iterated in O(1) per element.
#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace girthforge {

using Vertex = std::uint32_t;

struct Edge {
    Vertex u = 0;
    Vertex v = 0;

    // Canonical form has u < v.
    static Edge canonical(Vertex a, Vertex b) { return a < b ? Edge{a, b} : Edge{b, a}; }
    auto operator<=>(const Edge&) const = default;
};

class GraphError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};
class SelfLoopError : public GraphError {
public:
    using GraphError::GraphError;
};
class DuplicateEdgeError : public GraphError {
public:
    using GraphError::GraphError;
};
class DegreeOverflowError : public GraphError {
public:
    using GraphError::GraphError;
};
class InvalidVertexError : public GraphError {
public:
    using GraphError::GraphError;
};

class Graph {
public:
    Graph() = default;
    Graph(std::size_t n, std::uint32_t k_max);

    // Cycle 0-1-...-(n-1)-0. Requires even n >= 4 and k_max >= 3.
    static Graph hamilton_cycle(std::size_t n, std::uint32_t k_max);

    std::size_t vertex_count() const { return degree_.size(); }
    std::uint32_t max_degree_cap() const { return k_max_; }
    std::size_t edge_count() const { return edge_count_; }

    std::uint32_t degree(Vertex v) const { return degree_[v]; }
    std::span<const Vertex> neighbors(Vertex v) const {
        return {slots_.data() + static_cast<std::size_t>(v) * k_max_, degree_[v]};
    }

    bool has_edge(Vertex u, Vertex v) const;
    void add_edge(Vertex u, Vertex v);

    // Vertices whose current degree is exactly d (d <= k_max).
    std::span<const Vertex> vertices_of_degree(std::uint32_t d) const { return buckets_[d]; }
    // Smallest degree present; k_max + 1 on the empty graph.
    std::uint32_t min_degree() const { return min_degree_; }
    std::uint32_t max_degree() const;

    // Edge set with u < v, sorted lexicographically.
    std::vector<Edge> edges() const;

    void check_vertex(Vertex v) const;

    // Equality of vertex count and edge set; k_max is ignored.
    friend bool operator==(const Graph& a, const Graph& b);

private:
    void move_bucket(Vertex v, std::uint32_t from, std::uint32_t to);

    std::uint32_t k_max_ = 0;
    std::size_t edge_count_ = 0;
    std::uint32_t min_degree_ = 1;
    std::vector<Vertex> slots_;
    std::vector<std::uint32_t> degree_;
    std::vector<std::vector<Vertex>> buckets_;
    std::vector<std::uint32_t> bucket_pos_;
};

// Hop distance, or a marker that the distance is at least some cap.
class Distance {
public:
    static constexpr Distance exact(std::uint32_t hops) { return Distance(hops, false); }
    static constexpr Distance at_least(std::uint32_t cap) { return Distance(cap, true); }

    constexpr bool is_exact() const { return !at_least_cap_; }
    // Hop count when exact, otherwise the cap.
    constexpr std::uint32_t value() const { return value_; }

    // True iff the distance is known to be >= bound.
    constexpr bool at_least_bound(std::uint32_t bound) const { return value_ >= bound; }

    constexpr bool operator==(const Distance&) const = default;

    std::string to_string() const;

private:
    constexpr Distance(std::uint32_t value, bool at_least) : value_(value), at_least_cap_(at_least) {}

    std::uint32_t value_;
    bool at_least_cap_;
};

// Reusable BFS scratch space. Marks are epoch-stamped so a query costs only
// the size of the explored ball, never O(n).
class BfsWorkspace {
public:
    BfsWorkspace() = default;
    explicit BfsWorkspace(std::size_t n) { reserve(n); }

    void reserve(std::size_t n);

    // Bidirectional search that explores at most depth cap - 1 in total.
    Distance distance(const Graph& g, Vertex u, Vertex v, std::uint32_t cap);

    // Calls f(vertex, depth) for every vertex within max_depth of src,
    // including src at depth 0, in BFS order.
    template <class F>
    void visit_ball(const Graph& g, Vertex src, std::uint32_t max_depth, F&& f) {
        reserve(g.vertex_count());
        const std::uint32_t epoch = next_epoch();
        queue_.clear();
        queue_.push_back(src);
        mark_a_[src] = epoch;
        depth_[src] = 0;
        for (std::size_t head = 0; head < queue_.size(); ++head) {
            const Vertex x = queue_[head];
            const std::uint32_t d = depth_[x];
            f(x, d);
            if (d == max_depth) continue;
            for (Vertex y : g.neighbors(x)) {
                if (mark_a_[y] == epoch) continue;
                mark_a_[y] = epoch;
                depth_[y] = d + 1;
                queue_.push_back(y);
            }
        }
    }

    // Like visit_ball, but f returns false to stop the search early.
    template <class F>
    void visit_ball_until(const Graph& g, Vertex src, std::uint32_t max_depth, F&& f) {
        reserve(g.vertex_count());
        const std::uint32_t epoch = next_epoch();
        queue_.clear();
        queue_.push_back(src);
        mark_a_[src] = epoch;
        depth_[src] = 0;
        for (std::size_t head = 0; head < queue_.size(); ++head) {
            const Vertex x = queue_[head];
            const std::uint32_t d = depth_[x];
            if (!f(x, d)) return;
            if (d == max_depth) continue;
            for (Vertex y : g.neighbors(x)) {
                if (mark_a_[y] == epoch) continue;
                mark_a_[y] = epoch;
                depth_[y] = d + 1;
                queue_.push_back(y);
            }
        }
    }

private:
    std::uint32_t next_epoch();

    std::uint32_t epoch_ = 0;
    std::vector<std::uint32_t> mark_a_;
    std::vector<std::uint32_t> mark_b_;
    std::vector<std::uint32_t> depth_;
    std::vector<Vertex> queue_;
    std::vector<Vertex> frontier_a_, frontier_b_, next_;
};

// Exact distance if below cap, else Distance::at_least(cap). cap >= 1.
Distance truncated_distance(const Graph& g, Vertex u, Vertex v, std::uint32_t cap);

// Length of a shortest cycle; nullopt for forests.
std::optional<std::uint32_t> girth(const Graph& g);

// Number of vertices u != v with distance(v, u) <= radius.
std::size_t ball_size(const Graph& g, Vertex v, std::uint32_t radius);
std::size_t ball_size(const Graph& g, Vertex v, std::uint32_t radius, BfsWorkspace& ws);

// Moore bounds for max degree k: vertices within radius, and at exactly radius.
double moore_ball_bound(std::uint32_t k, std::uint32_t radius);
double moore_sphere_bound(std::uint32_t k, std::uint32_t radius);

}  // namespace girthforge
