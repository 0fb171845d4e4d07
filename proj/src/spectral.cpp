#include "girthforge/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "json.hpp"

#include "girthforge/budget.hpp"
#include "girthforge/rng.hpp"
#include "girthforge/text_format.hpp"

namespace girthforge {

namespace {

// BFS that counts shortest paths and ignores one edge.
class PathCounter {
public:
    explicit PathCounter(std::size_t n) : stamp_(n, 0), dist_(n, 0), sigma_(n, 0) {}

    // Explores G - {cut_a, cut_b} from src up to max_depth. Returns vertices visited.
    std::size_t explore(const Graph& g, Vertex src, std::uint32_t max_depth, Vertex cut_a, Vertex cut_b) {
        ++epoch_;
        queue_.clear();
        queue_.push_back(src);
        stamp_[src] = epoch_;
        dist_[src] = 0;
        sigma_[src] = 1;
        for (std::size_t head = 0; head < queue_.size(); ++head) {
            const Vertex x = queue_[head];
            if (dist_[x] == max_depth) continue;
            for (Vertex y : g.neighbors(x)) {
                if ((x == cut_a && y == cut_b) || (x == cut_b && y == cut_a)) continue;
                if (stamp_[y] != epoch_) {
                    stamp_[y] = epoch_;
                    dist_[y] = dist_[x] + 1;
                    sigma_[y] = sigma_[x];
                    queue_.push_back(y);
                } else if (dist_[y] == dist_[x] + 1) {
                    sigma_[y] += sigma_[x];
                }
            }
        }
        return queue_.size();
    }

    bool reached(Vertex x) const { return stamp_[x] == epoch_; }
    std::uint32_t dist(Vertex x) const { return dist_[x]; }
    uint128 sigma(Vertex x) const { return sigma_[x]; }
    const std::vector<Vertex>& visited() const { return queue_; }

private:
    std::uint64_t epoch_ = 0;
    std::vector<std::uint64_t> stamp_;
    std::vector<std::uint32_t> dist_;
    std::vector<uint128> sigma_;
    std::vector<Vertex> queue_;
};

}  // namespace

std::uint64_t count_girth_cycles(const Graph& g, std::uint64_t budget) {
    const auto gi = girth(g);
    if (!gi) throw std::invalid_argument("graph is acyclic; it has no girth cycles");
    const std::uint32_t len = *gi - 1;
    const std::uint32_t a = len / 2;
    const std::uint32_t b = len - a;
    PathCounter from_u(g.vertex_count());
    PathCounter from_v(g.vertex_count());
    std::uint64_t work = 0;
    uint128 total = 0;
    for (const Edge& e : g.edges()) {
        work += from_u.explore(g, e.u, a, e.u, e.v);
        work += from_v.explore(g, e.v, b, e.u, e.v);
        if (work > budget) throw BudgetExceeded("girth-cycle count exceeded its BFS budget");
        // every shortest u-v path of length len passes one vertex at distance a from u
        for (Vertex x : from_v.visited()) {
            if (from_v.dist(x) == b && from_u.reached(x) && from_u.dist(x) == a) {
                total += from_u.sigma(x) * from_v.sigma(x);
            }
        }
    }
    const uint128 cycles = total / *gi;
    if (cycles > std::numeric_limits<std::uint64_t>::max()) {
        throw std::overflow_error("girth-cycle count exceeds 64 bits");
    }
    return static_cast<std::uint64_t>(cycles);
}

double girth_cycle_bound(std::size_t n, std::uint32_t k, std::uint32_t g) {
    return static_cast<double>(n) * k / g * std::pow(static_cast<double>(k) - 1.0, g / 2.0);
}

std::size_t component_count(const Graph& g) {
    BfsWorkspace ws(g.vertex_count());
    std::vector<char> seen(g.vertex_count(), 0);
    std::size_t components = 0;
    const auto all = static_cast<std::uint32_t>(g.vertex_count());
    for (Vertex s = 0; s < g.vertex_count(); ++s) {
        if (seen[s]) continue;
        ++components;
        ws.visit_ball(g, s, all, [&](Vertex x, std::uint32_t) { seen[x] = 1; });
    }
    return components;
}

DiameterResult diameter(const Graph& g) {
    DiameterResult res;
    res.components = component_count(g);
    if (res.components != 1) return res;
    BfsWorkspace ws(g.vertex_count());
    std::uint32_t best = 0;
    const auto all = static_cast<std::uint32_t>(g.vertex_count());
    for (Vertex s = 0; s < g.vertex_count(); ++s) {
        ws.visit_ball(g, s, all, [&](Vertex, std::uint32_t d) { best = std::max(best, d); });
    }
    res.diameter = best;
    return res;
}

namespace {

struct PowerResult {
    double mu = 0.0;
    double residual = 0.0;
    std::uint64_t iterations = 0;
    bool converged = false;
};

void remove_mean(std::vector<double>& x) {
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= static_cast<double>(x.size());
    for (double& v : x) v -= mean;
}

double norm(const std::vector<double>& x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}

// Top eigenpair of B = shift*I + sign*A on the complement of the all-ones vector.
PowerResult power_iterate(const Graph& g, double shift, double sign, double tol, std::uint64_t max_iters,
                          std::uint64_t seed) {
    const std::size_t n = g.vertex_count();
    Xoshiro256 rng(seed);
    std::vector<double> x(n);
    std::vector<double> y(n);
    for (double& v : x) v = 2.0 * rng.uniform01() - 1.0;
    remove_mean(x);
    double nx = norm(x);
    if (nx == 0.0) throw std::invalid_argument("power iteration needs at least two vertices");
    for (double& v : x) v /= nx;

    auto apply = [&](const std::vector<double>& in, std::vector<double>& out) {
        for (Vertex v = 0; v < n; ++v) {
            double acc = 0.0;
            for (Vertex w : g.neighbors(v)) acc += in[w];
            out[v] = shift * in[v] + sign * acc;
        }
        // regularity keeps B x orthogonal to 1; this only removes rounding drift
        remove_mean(out);
    };

    PowerResult res;
    for (res.iterations = 1; res.iterations <= max_iters; ++res.iterations) {
        apply(x, y);
        double mu = 0.0;
        for (std::size_t i = 0; i < n; ++i) mu += x[i] * y[i];
        double r2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) r2 += (y[i] - mu * x[i]) * (y[i] - mu * x[i]);
        res.mu = mu;
        res.residual = std::sqrt(r2);
        if (res.residual <= tol) {
            res.converged = true;
            return res;
        }
        const double ny = norm(y);
        if (ny == 0.0) {
            res.mu = 0.0;
            res.residual = 0.0;
            res.converged = true;
            return res;
        }
        for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / ny;
    }
    res.iterations = max_iters;
    return res;
}

}  // namespace

SpectralEstimate second_eigenvalue(const Graph& g, double tol, std::uint64_t max_iters, std::uint64_t seed) {
    if (g.vertex_count() < 2 || g.edge_count() == 0) {
        throw std::invalid_argument("second_eigenvalue needs a graph with edges");
    }
    if (g.min_degree() != g.max_degree()) {
        throw std::invalid_argument("second_eigenvalue needs a regular graph");
    }
    const double k = g.max_degree();
    // A + kI and kI - A are positive semidefinite, so the dominant eigenvalue
    // on the complement of 1 is the one we want.
    const PowerResult top = power_iterate(g, k, 1.0, tol, max_iters, seed);
    const PowerResult bottom = power_iterate(g, k, -1.0, tol, max_iters, seed ^ 0x9E3779B97F4A7C15ULL);
    SpectralEstimate est;
    est.lambda2 = top.mu - k;
    est.lambda_min = k - bottom.mu;
    est.lambda = std::max(std::abs(est.lambda2), std::abs(est.lambda_min));
    est.converged = top.converged && bottom.converged;
    est.iterations = top.iterations + bottom.iterations;
    est.residual = std::max(top.residual, bottom.residual);
    return est;
}

GeometryReport geometry_report(const Graph& g, const GeometryOptions& options) {
    GeometryReport rep;
    rep.n = g.vertex_count();
    rep.k = g.max_degree();
    rep.regular = g.vertex_count() > 0 && g.min_degree() == g.max_degree();
    rep.girth = girth(g);
    rep.diameter = diameter(g);
    rep.ramanujan_threshold = rep.k >= 1 ? 2.0 * std::sqrt(static_cast<double>(rep.k) - 1.0) : 0.0;
    if (rep.girth) {
        const std::uint64_t budget = options.budget != 0 ? options.budget : enumeration_budget();
        rep.girth_cycle_count = count_girth_cycles(g, budget);
        rep.cycle_bound = girth_cycle_bound(rep.n, rep.k, *rep.girth);
    }
    if (options.lambda && rep.regular && g.edge_count() > 0) {
        rep.spectrum = second_eigenvalue(g, options.tol, options.max_iters);
        rep.near_ramanujan = rep.spectrum->lambda <= rep.ramanujan_threshold + options.ramanujan_slack;
    }
    return rep;
}

namespace {

nlohmann::json real(double x) {
    if (!std::isfinite(x)) return format_real(x);
    return std::stod(format_real(x));
}

template <class T>
nlohmann::json maybe(const std::optional<T>& v) {
    if (!v) return nullptr;
    return *v;
}

}  // namespace

std::string geometry_json(const GeometryReport& r) {
    nlohmann::ordered_json j;
    j["n"] = r.n;
    j["k"] = r.k;
    j["regular"] = r.regular;
    j["girth"] = maybe(r.girth);
    j["diameter"] = maybe(r.diameter.diameter);
    j["components"] = r.diameter.components;
    j["girth_cycle_count"] = maybe(r.girth_cycle_count);
    j["cycle_bound"] = r.cycle_bound ? real(*r.cycle_bound) : nlohmann::json(nullptr);
    if (r.spectrum) {
        j["lambda"] = real(r.spectrum->lambda);
        j["lambda2"] = real(r.spectrum->lambda2);
        j["lambda_min"] = real(r.spectrum->lambda_min);
        j["lambda_converged"] = r.spectrum->converged;
    } else {
        j["lambda"] = nullptr;
        j["lambda2"] = nullptr;
        j["lambda_min"] = nullptr;
        j["lambda_converged"] = nullptr;
    }
    j["ramanujan_threshold"] = real(r.ramanujan_threshold);
    j["near_ramanujan"] = maybe(r.near_ramanujan);
    return j.dump(2);
}

}  // namespace girthforge
