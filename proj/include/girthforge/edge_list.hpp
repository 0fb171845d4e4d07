// edge_list.hpp: canonical edge-list text format.
//
//   line 1:     "n m"
//   m lines:    "u v"  with 0-based ids, u < v, sorted lexicographically
//
// LF line endings, no comments. The writer emits exactly this; the reader
// accepts only this, so print(parse(x)) == x for every valid file.
#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include "girthforge/graph.hpp"

namespace girthforge {

class EdgeListError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

void write_edge_list(std::ostream& out, const Graph& g);
void write_edge_list(const std::filesystem::path& path, const Graph& g);
std::string edge_list_string(const Graph& g);

// k_max defaults to the largest degree in the file (at least 1).
Graph read_edge_list(std::istream& in, std::optional<std::uint32_t> k_max = std::nullopt);
Graph read_edge_list(const std::filesystem::path& path,
                     std::optional<std::uint32_t> k_max = std::nullopt);

}  // namespace girthforge
