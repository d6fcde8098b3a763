#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "glgp/graph.hpp"

namespace glgp::io {

// Reals are written with 17 significant digits so text round-trips exactly.
std::string format_real(double value);

// Edge list: one edge per line "u v [weight]" with 0-based ids; entry (u, v)
// of W receives the weight (default 1). '#' starts a comment. The header
// comment "# nodes N [undirected|directed]" written by store_edge_list fixes
// the node count and orientation. Without a header the node count is
// max id + 1 unless `nodes` is given.
struct EdgeListOptions {
  bool undirected = false;
  std::optional<Eigen::Index> nodes;
};

Adjacency parse_edge_list(std::istream& in, const EdgeListOptions& options = {},
                          const std::string& source = "<stream>");
Adjacency load_edge_list(const std::filesystem::path& path, const EdgeListOptions& options = {});
// Symmetric inputs are written once per unordered pair (u < v) with an
// "undirected" header; anything else lists every nonzero entry.
void write_edge_list(std::ostream& out, const Adjacency& w);
void store_edge_list(const std::filesystem::path& path, const Adjacency& w);

// Dense CSV: one row per line, comma separated.
MatrixXd parse_matrix_csv(std::istream& in, const std::string& source = "<stream>");
MatrixXd load_matrix_csv(const std::filesystem::path& path);
void write_matrix_csv(std::ostream& out, const MatrixXd& m);
void store_matrix_csv(const std::filesystem::path& path, const MatrixXd& m);

// Signals CSV: N lines of M values (row i = node i's series).
GraphSignals load_signals_csv(const std::filesystem::path& path);
void store_signals_csv(const std::filesystem::path& path, const GraphSignals& x);

// Vector as a single CSV column.
VectorXd load_vector_csv(const std::filesystem::path& path);
void store_vector_csv(const std::filesystem::path& path, const VectorXd& v);

// Writes the whole string or throws IoError naming the path.
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace glgp::io
