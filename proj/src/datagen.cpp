#include "glgp/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "glgp/error.hpp"
#include "glgp/numerics.hpp"
#include "glgp/parallel.hpp"
#include "glgp/projection.hpp"

namespace glgp {

std::string_view to_string(ScaleMode mode) {
  switch (mode) {
    case ScaleMode::spectral:
      return "spectral";
    case ScaleMode::rowsum:
      return "rowsum";
    case ScaleMode::none:
      return "none";
    case ScaleMode::reference:
      return "reference";
  }
  return "none";
}

ScaleMode parse_scale_mode(std::string_view name) {
  if (name == "spectral") return ScaleMode::spectral;
  if (name == "rowsum") return ScaleMode::rowsum;
  if (name == "none") return ScaleMode::none;
  if (name == "reference") return ScaleMode::reference;
  throw std::invalid_argument("unknown scale mode '" + std::string(name) + "'");
}

double spectral_radius(const MatrixXd& w) {
  if (w.size() == 0) return 0.0;
  if (w.isApprox(w.transpose(), 0.0)) {
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(w, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericalError("spectral_radius: eigensolver failed");
    return es.eigenvalues().cwiseAbs().maxCoeff();
  }
  return spectral_radius_bound(w);
}

MatrixXd scale_adjacency(const MatrixXd& w, ScaleMode mode, double c, double reference_factor) {
  switch (mode) {
    case ScaleMode::none:
      return w;
    case ScaleMode::reference:
      return reference_factor * w;
    case ScaleMode::spectral: {
      const double rho = spectral_radius(w);
      return rho > 0.0 ? MatrixXd(w * (c / rho)) : w;
    }
    case ScaleMode::rowsum: {
      const double top = w.rowwise().sum().maxCoeff();
      return project_to_S_matrix(MatrixXd(top > 0.0 ? w * (c / top) : w), c);
    }
  }
  return w;
}

std::vector<std::pair<Eigen::Index, Eigen::Index>> gen_pa_edges(Eigen::Index n, RngStream& rng) {
  if (n < 2) throw std::invalid_argument("gen_pa_graph: need n >= 2, got " + std::to_string(n));
  std::vector<std::pair<Eigen::Index, Eigen::Index>> edges{{1, 0}};
  edges.reserve(static_cast<std::size_t>(n - 1));
  // Every edge contributes both endpoints, so a uniform pick from this list
  // is a degree-proportional pick of a node.
  std::vector<Eigen::Index> ends{0, 1};
  ends.reserve(static_cast<std::size_t>(2 * (n - 1)));
  for (Eigen::Index t = 2; t < n; ++t) {
    const Eigen::Index target = ends[rng.uniform_index(ends.size())];
    edges.emplace_back(t, target);
    ends.push_back(t);
    ends.push_back(target);
  }
  return edges;
}

Adjacency gen_pa_graph(Eigen::Index n, RngStream& rng) {
  const auto edges = gen_pa_edges(n, rng);
  MatrixXd w = MatrixXd::Zero(n, n);
  for (const auto& [u, v] : edges) w(u, v) = w(v, u) = 1.0;
  return Adjacency(std::move(w));
}

GraphSignals gen_lowpass_signals(const Adjacency& w, Eigen::Index m, double sigma, RngStream& rng,
                                 ScaleMode scale, double c) {
  if (m < 1) throw std::invalid_argument("gen_lowpass_signals: need at least one sample");
  if (!(sigma >= 0.0)) throw std::invalid_argument("gen_lowpass_signals: sigma must be >= 0");
  const Eigen::Index n = w.size();
  const MatrixXd filter = matrix_exponential(scale_adjacency(w.weights(), scale, c) / 2.0);
  const MatrixXd u = rng.normal_matrix(n, m);
  const MatrixXd noise = rng.normal_matrix(n, m);
  return GraphSignals(filter * u + sigma * noise);
}

GraphSignals gen_gmrf_signals(const Adjacency& w, Eigen::Index m, double ridge, RngStream& rng) {
  if (m < 1) throw std::invalid_argument("gen_gmrf_signals: need at least one sample");
  if (!(ridge > 0.0)) {
    throw std::invalid_argument("gen_gmrf_signals: ridge must be > 0 (the Laplacian is singular)");
  }
  if (!w.is_symmetric()) throw std::invalid_argument("gen_gmrf_signals: graph must be symmetric");
  const Eigen::Index n = w.size();
  MatrixXd precision = -w.weights();
  precision.diagonal() += w.weights().rowwise().sum();
  precision.diagonal().array() += ridge;

  // Q = R R' with R lower triangular; x = R'^{-1} z has covariance Q^{-1}.
  Eigen::LLT<MatrixXd> llt(precision);
  if (llt.info() != Eigen::Success) throw NumericalError("gen_gmrf_signals: precision not SPD");
  const MatrixXd z = rng.normal_matrix(n, m);
  return GraphSignals(llt.matrixU().solve(z));
}

Adjacency rewire(const Adjacency& w, double fraction, RngStream& rng) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) {
    throw std::invalid_argument("rewire: fraction must lie in [0, 1]");
  }
  if (!w.is_binary() || !w.is_symmetric()) {
    throw std::invalid_argument("rewire: graph must be binary and symmetric");
  }
  const Eigen::Index n = w.size();
  MatrixXd out = w.weights();

  std::vector<std::pair<Eigen::Index, Eigen::Index>> edges;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (out(i, j) != 0.0) edges.emplace_back(i, j);
    }
  }
  const auto count = static_cast<std::size_t>(std::lround(fraction * static_cast<double>(edges.size())));
  if (count == 0) return Adjacency(std::move(out));

  const std::uint64_t pairs = static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n - 1) / 2;
  if (edges.size() >= pairs) throw NumericalError("rewire: graph is complete, no pair to rewire into");

  // Partial Fisher-Yates: the first `count` slots are a uniform sample
  // without replacement.
  for (std::size_t k = 0; k < count; ++k) {
    const std::size_t pick = k + rng.uniform_index(edges.size() - k);
    std::swap(edges[k], edges[pick]);
  }

  auto pair_of = [n](std::uint64_t idx) {
    // Row-major enumeration of i < j.
    Eigen::Index i = 0;
    auto row_len = static_cast<std::uint64_t>(n - 1);
    while (idx >= row_len) {
      idx -= row_len;
      ++i;
      --row_len;
    }
    return std::make_pair(i, i + 1 + static_cast<Eigen::Index>(idx));
  };

  for (std::size_t k = 0; k < count; ++k) {
    const auto [di, dj] = edges[k];
    out(di, dj) = out(dj, di) = 0.0;
    auto usable = [&](Eigen::Index i, Eigen::Index j) {
      return out(i, j) == 0.0 && !(i == di && j == dj);
    };
    bool placed = false;
    for (int attempt = 0; attempt < 64 && !placed; ++attempt) {
      const auto [i, j] = pair_of(rng.uniform_index(pairs));
      if (usable(i, j)) {
        out(i, j) = out(j, i) = 1.0;
        placed = true;
      }
    }
    if (!placed) {
      std::vector<std::pair<Eigen::Index, Eigen::Index>> free;
      for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i + 1; j < n; ++j) {
          if (usable(i, j)) free.emplace_back(i, j);
        }
      }
      if (free.empty()) throw NumericalError("rewire: graph too dense to place a replacement edge");
      const auto [i, j] = free[rng.uniform_index(free.size())];
      out(i, j) = out(j, i) = 1.0;
    }
  }
  return Adjacency(std::move(out));
}

std::vector<WelfareRatioRow> welfare_ratio_experiment(const Adjacency& w_orig,
                                                      const std::vector<double>& fractions,
                                                      int trials, const GameSpec& game,
                                                      const RngStream& rng,
                                                      const WelfareRatioOptions& options) {
  if (trials < 1) throw std::invalid_argument("welfare_ratio_experiment: need at least one trial");
  if (w_orig.size() != game.size()) {
    throw std::invalid_argument("welfare_ratio_experiment: graph and benefit sizes differ");
  }
  const double c = game.budget();
  const double rho = spectral_radius(w_orig.weights());
  const double reference = rho > 0.0 ? c / rho : 1.0;
  const double base = game.benefit().sum();
  const double denom =
      welfare(scale_adjacency(w_orig.weights(), options.scale, c, reference), game, options.ne_tol) -
      base;
  if (!(denom > 0.0)) {
    throw NumericalError("welfare_ratio_experiment: original graph adds no welfare over 1'b");
  }

  const std::size_t nt = static_cast<std::size_t>(trials);
  const std::size_t tasks = fractions.size() * nt;
  std::vector<double> ratio(tasks, 0.0);
  std::vector<char> ok(tasks, 0);
  parallel_for(tasks, options.threads, [&](std::size_t task) {
    const std::size_t k = task / nt;
    const std::size_t t = task % nt;
    RngStream stream = rng.child(k, t);
    try {
      const Adjacency pert = rewire(w_orig, fractions[k], stream);
      const double wel =
          welfare(scale_adjacency(pert.weights(), options.scale, c, reference), game, options.ne_tol);
      ratio[task] = (wel - base) / denom;
      ok[task] = std::isfinite(ratio[task]) ? 1 : 0;
    } catch (const NumericalError&) {
      ok[task] = 0;
    }
  });

  std::vector<WelfareRatioRow> rows;
  for (std::size_t k = 0; k < fractions.size(); ++k) {
    double sum = 0.0;
    int good = 0;
    for (std::size_t t = 0; t < nt; ++t) {
      if (ok[k * nt + t]) {
        sum += ratio[k * nt + t];
        ++good;
      }
    }
    const double mean = good > 0 ? sum / good : std::nan("");
    double ss = 0.0;
    for (std::size_t t = 0; t < nt; ++t) {
      if (ok[k * nt + t]) ss += (ratio[k * nt + t] - mean) * (ratio[k * nt + t] - mean);
    }
    const double se = good > 1 ? std::sqrt(ss / (good - 1) / good) : 0.0;
    rows.push_back({fractions[k], mean, se, trials, trials - good});
  }
  return rows;
}

}  // namespace glgp
