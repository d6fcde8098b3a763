#include "glgp/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <utility>
#include <vector>

#include "glgp/error.hpp"

namespace glgp::io {
namespace {

std::string where(const std::string& source, std::size_t line) {
  return source + ":" + std::to_string(line) + ": ";
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t pos = 0;
  while (pos < s.size()) {
    const auto start = s.find_first_not_of(" \t\r", pos);
    if (start == std::string_view::npos) break;
    auto end = s.find_first_of(" \t\r", start);
    if (end == std::string_view::npos) end = s.size();
    out.push_back(s.substr(start, end - start));
    pos = end;
  }
  return out;
}

bool parse_double(std::string_view token, double* out) {
  token = trim(token);
  if (token.empty()) return false;
  if (token.front() == '+') token.remove_prefix(1);
  const auto res = std::from_chars(token.data(), token.data() + token.size(), *out);
  return res.ec == std::errc() && res.ptr == token.data() + token.size();
}

bool parse_index(std::string_view token, long long* out) {
  const auto res = std::from_chars(token.data(), token.data() + token.size(), *out);
  return res.ec == std::errc() && res.ptr == token.data() + token.size();
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  return in;
}

}  // namespace

std::string format_real(double value) {
  char buf[32];
  // -0 prints as 0.
  std::snprintf(buf, sizeof buf, "%.17g", value == 0.0 ? 0.0 : value);
  return buf;
}

Adjacency parse_edge_list(std::istream& in, const EdgeListOptions& options,
                          const std::string& source) {
  struct Edge {
    long long u, v;
    double w;
    std::size_t line;
  };
  std::vector<Edge> edges;
  std::optional<Eigen::Index> header_nodes;
  bool undirected = options.undirected;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string_view text = raw;
    if (const auto hash = text.find('#'); hash != std::string_view::npos) {
      const auto comment = split_ws(text.substr(hash + 1));
      if (comment.size() >= 2 && comment[0] == "nodes") {
        long long n = 0;
        if (!parse_index(comment[1], &n) || n < 0) {
          throw IoError(where(source, line) + "malformed node-count header");
        }
        header_nodes = static_cast<Eigen::Index>(n);
        if (comment.size() >= 3 && comment[2] == "undirected") undirected = true;
      }
      text = text.substr(0, hash);
    }
    const auto tokens = split_ws(text);
    if (tokens.empty()) continue;
    if (tokens.size() != 2 && tokens.size() != 3) {
      throw IoError(where(source, line) + "expected 'u v [weight]'");
    }
    Edge e{0, 0, 1.0, line};
    if (!parse_index(tokens[0], &e.u) || !parse_index(tokens[1], &e.v) || e.u < 0 || e.v < 0) {
      throw IoError(where(source, line) + "node ids must be nonnegative integers");
    }
    if (tokens.size() == 3 && (!parse_double(tokens[2], &e.w) || !std::isfinite(e.w))) {
      throw IoError(where(source, line) + "malformed weight '" + std::string(tokens[2]) + "'");
    }
    if (e.u == e.v) {
      throw IoError(where(source, line) + "self-loop " + std::to_string(e.u) + " " +
                    std::to_string(e.v) + " is not allowed");
    }
    if (e.w < 0.0) throw IoError(where(source, line) + "negative weight");
    edges.push_back(e);
  }
  if (edges.empty() && !header_nodes && !options.nodes) {
    throw IoError(where(source, std::max<std::size_t>(line, 1)) + "edge list is empty");
  }

  long long max_id = -1;
  for (const auto& e : edges) max_id = std::max({max_id, e.u, e.v});
  Eigen::Index n = static_cast<Eigen::Index>(max_id + 1);
  if (header_nodes) n = *header_nodes;
  if (options.nodes) n = *options.nodes;
  if (max_id >= n) {
    throw IoError(source + ": node id " + std::to_string(max_id) + " exceeds node count " +
                  std::to_string(n));
  }

  MatrixXd w = MatrixXd::Zero(n, n);
  auto set = [&](long long r, long long c, const Edge& e) {
    double& slot = w(r, c);
    if (slot != 0.0 && slot != e.w) {
      throw IoError(where(source, e.line) + "conflicting weight for pair " + std::to_string(r) +
                    " " + std::to_string(c));
    }
    slot = e.w;
  };
  for (const auto& e : edges) {
    set(e.u, e.v, e);
    if (undirected) set(e.v, e.u, e);
  }
  return Adjacency(std::move(w));
}

Adjacency load_edge_list(const std::filesystem::path& path, const EdgeListOptions& options) {
  auto in = open_in(path);
  return parse_edge_list(in, options, path.string());
}

void write_edge_list(std::ostream& out, const Adjacency& adj) {
  const MatrixXd& w = adj.weights();
  const bool symmetric = adj.is_symmetric();
  out << "# nodes " << w.rows() << (symmetric ? " undirected" : " directed") << "\n";
  for (Eigen::Index u = 0; u < w.rows(); ++u) {
    for (Eigen::Index v = symmetric ? u + 1 : 0; v < w.cols(); ++v) {
      if (w(u, v) == 0.0) continue;
      out << u << ' ' << v;
      if (w(u, v) != 1.0) out << ' ' << format_real(w(u, v));
      out << '\n';
    }
  }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

void store_edge_list(const std::filesystem::path& path, const Adjacency& w) {
  std::ostringstream out;
  write_edge_list(out, w);
  write_text_file(path, out.str());
}

MatrixXd parse_matrix_csv(std::istream& in, const std::string& source) {
  std::vector<std::vector<double>> rows;
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const std::string_view text = trim(raw);
    if (text.empty() || text.front() == '#') continue;
    std::vector<double> row;
    std::size_t pos = 0;
    while (true) {
      const auto comma = text.find(',', pos);
      const auto field = text.substr(pos, comma == std::string_view::npos ? text.npos : comma - pos);
      double value = 0.0;
      if (!parse_double(field, &value) || !std::isfinite(value)) {
        throw IoError(where(source, line) + "malformed number '" + std::string(trim(field)) + "'");
      }
      row.push_back(value);
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw IoError(where(source, line) + "expected " + std::to_string(rows.front().size()) +
                    " columns, found " + std::to_string(row.size()));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw IoError(where(source, std::max<std::size_t>(line, 1)) + "no data rows");
  MatrixXd m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  }
  return m;
}

MatrixXd load_matrix_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  return parse_matrix_csv(in, path.string());
}

void write_matrix_csv(std::ostream& out, const MatrixXd& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << format_real(m(i, j));
    }
    out << '\n';
  }
}

void store_matrix_csv(const std::filesystem::path& path, const MatrixXd& m) {
  std::ostringstream out;
  write_matrix_csv(out, m);
  write_text_file(path, out.str());
}

GraphSignals load_signals_csv(const std::filesystem::path& path) {
  return GraphSignals(load_matrix_csv(path));
}

void store_signals_csv(const std::filesystem::path& path, const GraphSignals& x) {
  store_matrix_csv(path, x.values());
}

VectorXd load_vector_csv(const std::filesystem::path& path) {
  const MatrixXd m = load_matrix_csv(path);
  if (m.cols() == 1) return m.col(0);
  if (m.rows() == 1) return m.row(0).transpose();
  throw IoError(path.string() + ": expected a single row or column");
}

void store_vector_csv(const std::filesystem::path& path, const VectorXd& v) {
  store_matrix_csv(path, MatrixXd(v));
}

}  // namespace glgp::io
