#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include <unsupported/Eigen/MatrixFunctions>

#include "glgp/datagen.hpp"
#include "glgp/error.hpp"
#include "glgp/io.hpp"
#include "support.hpp"

using namespace glgp;

namespace {

Adjacency karate() { return io::load_edge_list(std::string(GLGP_FIXTURE_DIR) + "/karate.edges"); }

// Union-find check that an edge set on n nodes is a spanning tree.
bool is_spanning_tree(const MatrixXd& w) {
  const Eigen::Index n = w.rows();
  std::vector<Eigen::Index> parent(n);
  std::iota(parent.begin(), parent.end(), Eigen::Index{0});
  auto find = [&](Eigen::Index x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  Eigen::Index edges = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      if (w(i, j) == 0.0) continue;
      ++edges;
      const auto a = find(i), b = find(j);
      if (a == b) return false;
      parent[a] = b;
    }
  }
  return edges == n - 1;
}

std::set<std::pair<int, int>> edge_set(const MatrixXd& w) {
  std::set<std::pair<int, int>> s;
  for (int i = 0; i < w.rows(); ++i) {
    for (int j = i + 1; j < w.rows(); ++j) {
      if (w(i, j) != 0.0) s.emplace(i, j);
    }
  }
  return s;
}

MatrixXd sample_covariance(const MatrixXd& x) {
  return x * x.transpose() / static_cast<double>(x.cols());
}

}  // namespace

TEST_CASE("rng streams are reproducible and distinct") {
  RngStream a(5, 7), b(5, 7), c(5, 8), d(6, 7);
  std::vector<std::uint64_t> va, vb, vc, vd;
  for (int k = 0; k < 16; ++k) {
    va.push_back(a.next_u64());
    vb.push_back(b.next_u64());
    vc.push_back(c.next_u64());
    vd.push_back(d.next_u64());
  }
  CHECK(va == vb);
  CHECK(va != vc);
  CHECK(va != vd);
  CHECK(RngStream(5, 7).child(1, 2).next_u64() == RngStream(5, 7).child(1, 2).next_u64());
  CHECK(RngStream(5, 7).child(1, 2).next_u64() != RngStream(5, 7).child(2, 1).next_u64());
}

TEST_CASE("rng uniform and normal draws") {
  RngStream rng(1, 0);
  double sum = 0.0, sq = 0.0;
  const int n = 200000;
  for (int k = 0; k < n; ++k) {
    const double u = rng.uniform();
    REQUIRE(u >= 0.0);
    REQUIRE(u < 1.0);
    const auto i = rng.uniform_index(7);
    REQUIRE(i < 7);
    const double z = rng.normal();
    sum += z;
    sq += z * z;
  }
  CHECK(std::abs(sum / n) < 0.01);
  CHECK(std::abs(sq / n - 1.0) < 0.01);
  CHECK_THROWS_AS(rng.uniform_index(0), std::invalid_argument);
}

TEST_CASE("preferential attachment trees") {
  RngStream rng(2, 0);
  const Adjacency two = gen_pa_graph(2, rng);
  CHECK(two.weights()(0, 1) == 1.0);
  CHECK(two.nonzeros() == 2);
  for (int n : {3, 10, 50, 200}) {
    const Adjacency g = gen_pa_graph(n, rng);
    CHECK(g.is_symmetric());
    CHECK(g.is_binary());
    CHECK(is_spanning_tree(g.weights()));
  }
  CHECK_THROWS_AS(gen_pa_graph(1, rng), std::invalid_argument);

  RngStream r1(9, 1), r2(9, 1);
  CHECK(gen_pa_graph(40, r1).weights() == gen_pa_graph(40, r2).weights());
  RngStream r3(9, 1);
  const auto edges = gen_pa_edges(40, r3);
  MatrixXd from_edges = MatrixXd::Zero(40, 40);
  for (const auto& [a, b] : edges) from_edges(a, b) = from_edges(b, a) = 1.0;
  RngStream r4(9, 1);
  CHECK(from_edges == gen_pa_graph(40, r4).weights());
}

TEST_CASE("preferential attachment degrees are heavy-tailed") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    RngStream rng(seed, 3);
    std::vector<double> v(10000, 0.0);
    for (const auto& [a, b] : gen_pa_edges(10000, rng)) {
      v[a] += 1.0;
      v[b] += 1.0;
    }
    const double top = *std::max_element(v.begin(), v.end());
    std::nth_element(v.begin(), v.begin() + v.size() / 2, v.end());
    const double median = v[v.size() / 2];
    CHECK(top > 10.0 * median);
  }
}

TEST_CASE("low-pass signals") {
  RngStream rng(3, 0), twin(3, 0);
  const GraphSignals x = gen_lowpass_signals(Adjacency(MatrixXd::Zero(4, 4)), 6, 0.0, rng);
  CHECK(x.values() == twin.normal_matrix(4, 6));

  RngStream a(4, 0), b(4, 0);
  RngStream pg(4, 1);
  const Adjacency g = gen_pa_graph(12, pg);
  CHECK(gen_lowpass_signals(g, 5, 0.2, a).values() == gen_lowpass_signals(g, 5, 0.2, b).values());
}

TEST_CASE("low-pass covariance is exp(W/2) exp(W/2)' + sigma^2 I") {
  RngStream pg(5, 1);
  const Adjacency g = gen_pa_graph(6, pg);
  RngStream rng(5, 2);
  const double sigma = 0.3;
  const GraphSignals x = gen_lowpass_signals(g, 100000, sigma, rng);
  const MatrixXd h = MatrixXd(g.weights() / 2.0).exp();
  const MatrixXd ref = h * h.transpose() + sigma * sigma * MatrixXd::Identity(6, 6);
  CHECK((sample_covariance(x.values()) - ref).norm() <= 0.05 * ref.norm());
}

TEST_CASE("spectral scaling sets the spectral radius to c") {
  const Adjacency k = karate();
  const MatrixXd s = scale_adjacency(k.weights(), ScaleMode::spectral, 0.95);
  CHECK(spectral_radius(s) == doctest::Approx(0.95).epsilon(1e-12));
  CHECK(spectral_radius(k.weights()) == doctest::Approx(6.725697727631732).epsilon(1e-10));
  const MatrixXd r = scale_adjacency(k.weights(), ScaleMode::rowsum, 0.95);
  CHECK((r.rowwise().sum().array() - 0.95).abs().maxCoeff() <= 1e-12);
  CHECK(scale_adjacency(k.weights(), ScaleMode::none, 0.95) == k.weights());
  CHECK(scale_adjacency(k.weights(), ScaleMode::reference, 0.95, 0.5) == 0.5 * k.weights());
  CHECK(parse_scale_mode("rowsum") == ScaleMode::rowsum);
  CHECK_THROWS_AS(parse_scale_mode("max"), std::invalid_argument);
}

TEST_CASE("GMRF signals") {
  RngStream rng(6, 0), twin(6, 0);
  const GraphSignals x = gen_gmrf_signals(Adjacency(MatrixXd::Zero(3, 3)), 5, 1.0, rng);
  CHECK((x.values() - twin.normal_matrix(3, 5)).norm() <= 1e-15);

  const Adjacency k = karate();
  RngStream s(6, 1);
  CHECK_THROWS_AS(gen_gmrf_signals(k, 10, 0.0, s), std::invalid_argument);
  MatrixXd directed = MatrixXd::Zero(3, 3);
  directed(0, 1) = 1.0;
  CHECK_THROWS_AS(gen_gmrf_signals(Adjacency(directed), 10, 1.0, s), std::invalid_argument);
}

TEST_CASE("GMRF covariance is the inverse precision") {
  RngStream pg(7, 1);
  const Adjacency g = gen_pa_graph(6, pg);
  RngStream rng(7, 2);
  const double ridge = 0.5;
  const GraphSignals x = gen_gmrf_signals(g, 100000, ridge, rng);
  MatrixXd q = -g.weights();
  q.diagonal() += g.weights().rowwise().sum();
  q.diagonal().array() += ridge;
  const MatrixXd ref = q.inverse();
  CHECK((sample_covariance(x.values()) - ref).norm() <= 0.05 * ref.norm());
}

TEST_CASE("rewiring preserves structure") {
  const Adjacency k = karate();
  for (double f : {0.0, 0.1, 0.5, 1.0}) {
    for (std::uint64_t t = 0; t < 10; ++t) {
      RngStream rng(8, t);
      const Adjacency r = rewire(k, f, rng);
      CHECK(r.nonzeros() == k.nonzeros());
      CHECK(r.is_symmetric());
      CHECK(r.is_binary());
      CHECK(r.weights().diagonal().isZero(0.0));
      const auto before = edge_set(k.weights());
      const auto after = edge_set(r.weights());
      std::vector<std::pair<int, int>> lost;
      std::set_difference(before.begin(), before.end(), after.begin(), after.end(),
                          std::back_inserter(lost));
      // round(f E) deletions; a replacement may revive an earlier deletion.
      CHECK(lost.size() <= static_cast<std::size_t>(std::lround(f * 78)));
      if (f == 0.0) CHECK(r.weights() == k.weights());
    }
  }
}

TEST_CASE("rewiring an almost complete graph") {
  // K4 minus one edge: the only absent pair is forced.
  MatrixXd w = MatrixXd::Ones(4, 4) - MatrixXd::Identity(4, 4);
  w(0, 1) = w(1, 0) = 0.0;
  RngStream rng(9, 0);
  const Adjacency r = rewire(Adjacency(w), 1.0, rng);
  CHECK(r.nonzeros() == 10);

  MatrixXd full = MatrixXd::Ones(3, 3) - MatrixXd::Identity(3, 3);
  CHECK_THROWS_AS(rewire(Adjacency(full), 0.5, rng), NumericalError);
  CHECK_THROWS_AS(rewire(Adjacency(w), 1.5, rng), std::invalid_argument);
}

TEST_CASE("welfare ratio experiment") {
  const Adjacency k = karate();
  const GameSpec game(VectorXd::Ones(34), InteractionFunction(), 0.95);
  const RngStream rng(10, 0);
  WelfareRatioOptions opts;
  const auto zero = welfare_ratio_experiment(k, {0.0}, 5, game, rng, opts);
  CHECK(zero[0].p_pert == 1.0);
  CHECK(zero[0].std_error == 0.0);

  opts.threads = 1;
  const auto serial = welfare_ratio_experiment(k, {0.1, 0.3}, 20, game, rng, opts);
  opts.threads = 4;
  const auto threaded = welfare_ratio_experiment(k, {0.1, 0.3}, 20, game, rng, opts);
  for (std::size_t i = 0; i < serial.size(); ++i) {
    CHECK(serial[i].p_pert == threaded[i].p_pert);
    CHECK(serial[i].std_error == threaded[i].std_error);
    CHECK(serial[i].failed_trials == 0);
  }
}

TEST_CASE("welfare ratio rejects an ill-posed original graph") {
  // Unscaled binary karate has rho > 1: every equilibrium diverges.
  const Adjacency k = karate();
  const GameSpec game(VectorXd::Ones(34), InteractionFunction(), 0.95);
  WelfareRatioOptions opts;
  opts.scale = ScaleMode::none;
  CHECK_THROWS_AS(welfare_ratio_experiment(k, {0.1}, 3, game, RngStream(1, 1), opts),
                  NumericalError);
}
