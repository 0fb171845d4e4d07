#include "girthforge/edge_list.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <string_view>
#include <vector>

namespace girthforge {

namespace {

// Parses exactly two non-negative integers separated by one space.
bool parse_pair(std::string_view line, std::uint64_t& a, std::uint64_t& b) {
    const auto space = line.find(' ');
    if (space == std::string_view::npos || space == 0 || space + 1 >= line.size()) return false;
    const auto first = line.substr(0, space);
    const auto second = line.substr(space + 1);
    auto r1 = std::from_chars(first.data(), first.data() + first.size(), a);
    if (r1.ec != std::errc() || r1.ptr != first.data() + first.size()) return false;
    auto r2 = std::from_chars(second.data(), second.data() + second.size(), b);
    return r2.ec == std::errc() && r2.ptr == second.data() + second.size();
}

[[noreturn]] void fail(std::size_t line_no, const std::string& what) {
    throw EdgeListError("edge list line " + std::to_string(line_no) + ": " + what);
}

// getline that also insists on the terminating LF.
bool read_line(std::istream& in, std::string& line, std::size_t line_no) {
    if (!std::getline(in, line)) return false;
    if (in.eof()) fail(line_no, "missing final newline");
    return true;
}

}  // namespace

void write_edge_list(std::ostream& out, const Graph& g) {
    std::string buf;
    buf.reserve(16 * (g.edge_count() + 1));
    buf += std::to_string(g.vertex_count());
    buf += ' ';
    buf += std::to_string(g.edge_count());
    buf += '\n';
    for (const Edge& e : g.edges()) {
        buf += std::to_string(e.u);
        buf += ' ';
        buf += std::to_string(e.v);
        buf += '\n';
    }
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

std::string edge_list_string(const Graph& g) {
    std::ostringstream out;
    write_edge_list(out, g);
    return out.str();
}

void write_edge_list(const std::filesystem::path& path, const Graph& g) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw EdgeListError("cannot open " + path.string() + " for writing");
    write_edge_list(out, g);
    if (!out) throw EdgeListError("write failed for " + path.string());
}

Graph read_edge_list(std::istream& in, std::optional<std::uint32_t> k_max) {
    std::string line;
    if (!read_line(in, line, 1)) fail(1, "missing header");
    std::uint64_t n = 0, m = 0;
    if (!parse_pair(line, n, m)) fail(1, "expected \"n m\"");
    if (n > 0xFFFFFFFFULL) fail(1, "vertex count too large");

    std::vector<Edge> edges;
    edges.reserve(m);
    std::vector<std::uint32_t> degree(n, 0);
    for (std::uint64_t i = 0; i < m; ++i) {
        const std::size_t line_no = i + 2;
        if (!read_line(in, line, line_no)) fail(line_no, "expected " + std::to_string(m) + " edges");
        std::uint64_t u = 0, v = 0;
        if (!parse_pair(line, u, v)) fail(line_no, "expected \"u v\"");
        if (u >= v) fail(line_no, "requires u < v");
        if (v >= n) fail(line_no, "vertex id out of range");
        const Edge e{static_cast<Vertex>(u), static_cast<Vertex>(v)};
        if (!edges.empty() && !(edges.back() < e)) fail(line_no, "edges not strictly sorted");
        edges.push_back(e);
        ++degree[u];
        ++degree[v];
    }
    if (std::getline(in, line)) fail(m + 2, "trailing content after last edge");

    const std::uint32_t observed = degree.empty() ? 0 : *std::max_element(degree.begin(), degree.end());
    const std::uint32_t cap = k_max.value_or(std::max<std::uint32_t>(observed, 1));
    if (observed > cap) {
        throw DegreeOverflowError("edge list has a vertex of degree " + std::to_string(observed) +
                                  " above the cap " + std::to_string(cap));
    }
    Graph g(n, cap);
    for (const Edge& e : edges) g.add_edge(e.u, e.v);
    return g;
}

Graph read_edge_list(const std::filesystem::path& path, std::optional<std::uint32_t> k_max) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw EdgeListError("cannot open " + path.string());
    try {
        return read_edge_list(in, k_max);
    } catch (const EdgeListError& e) {
        throw EdgeListError(path.string() + ": " + e.what());
    }
}

}  // namespace girthforge
