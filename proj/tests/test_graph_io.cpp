#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "glgp/error.hpp"
#include "glgp/graph.hpp"
#include "glgp/io.hpp"
#include "support.hpp"

using namespace glgp;

TEST_CASE("adjacency validation") {
  MatrixXd w = MatrixXd::Zero(3, 3);
  w(0, 1) = 1.0;
  CHECK_NOTHROW(Adjacency{w});
  CHECK_FALSE(Adjacency(w).is_symmetric());
  CHECK(Adjacency(w).is_binary());
  CHECK(Adjacency(w).nonzeros() == 1);

  MatrixXd loop = w;
  loop(2, 2) = 0.5;
  CHECK_THROWS_AS(Adjacency{loop}, std::invalid_argument);
  MatrixXd neg = w;
  neg(1, 0) = -1.0;
  CHECK_THROWS_AS(Adjacency{neg}, std::invalid_argument);
  CHECK_THROWS_AS(Adjacency{MatrixXd::Zero(2, 3)}, std::invalid_argument);
}

TEST_CASE("feasible adjacency enforces the row budget") {
  const auto u = FeasibleAdjacency::uniform(5, 0.8);
  CHECK(u.weights()(0, 1) == doctest::Approx(0.2));
  CHECK(u.weights().diagonal().isZero(0.0));
  CHECK_THROWS_AS(FeasibleAdjacency(MatrixXd::Zero(3, 3), 0.5), std::invalid_argument);
  CHECK_THROWS_AS(FeasibleAdjacency::uniform(3, 1.0), std::invalid_argument);
}

TEST_CASE("distance matrix matches pairwise squared distances over 2M") {
  RngStream rng(21, 0);
  const MatrixXd x = testing::uniform_matrix(rng, 6, 4, -1.0, 1.0);
  const DistanceMatrix d = distance_matrix(GraphSignals(x));
  for (int i = 0; i < 6; ++i) {
    for (int j = 0; j < 6; ++j) {
      double s = 0.0;
      for (int m = 0; m < 4; ++m) s += (x(i, m) - x(j, m)) * (x(i, m) - x(j, m));
      CHECK(d.values()(i, j) == doctest::Approx(s / 8.0).epsilon(1e-14));
    }
  }
  CHECK(d.values() == d.values().transpose());
}

TEST_CASE("marginal benefit is the clipped, normalized top eigenvector of D") {
  RngStream rng(22, 0);
  const DistanceMatrix d = testing::random_distance(rng, 10);
  const VectorXd b = marginal_benefit_from_data(d);
  CHECK(b.sum() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK((b.array() >= 0.0).all());

  Eigen::SelfAdjointEigenSolver<MatrixXd> es(d.values());
  VectorXd v = es.eigenvectors().col(d.size() - 1);
  Eigen::Index arg;
  v.cwiseAbs().maxCoeff(&arg);
  if (v(arg) < 0) v = -v;
  const VectorXd ref = v.cwiseMax(0.0) / v.cwiseMax(0.0).sum();
  CHECK((b - ref).norm() <= 1e-8);
}

TEST_CASE("edge list parsing") {
  std::istringstream in("# a comment\n0 1\n1 2 0.5  # trailing\n\n");
  const Adjacency w = io::parse_edge_list(in);
  CHECK(w.size() == 3);
  CHECK(w.weights()(0, 1) == 1.0);
  CHECK(w.weights()(1, 2) == 0.5);
  CHECK(w.weights()(1, 0) == 0.0);

  std::istringstream und("0 1\n");
  io::EdgeListOptions opts;
  opts.undirected = true;
  CHECK(io::parse_edge_list(und, opts).is_symmetric());

  std::istringstream loop("0 1\n2 2\n");
  try {
    io::parse_edge_list(loop, {}, "g.edges");
    FAIL("self-loop accepted");
  } catch (const IoError& e) {
    CHECK(std::string(e.what()).find("g.edges:2") != std::string::npos);
  }

  std::istringstream empty("# nothing\n");
  CHECK_THROWS_AS(io::parse_edge_list(empty), IoError);
  std::istringstream conflict("0 1 1\n0 1 2\n");
  CHECK_THROWS_AS(io::parse_edge_list(conflict), IoError);
  std::istringstream bad("0 x\n");
  CHECK_THROWS_AS(io::parse_edge_list(bad), IoError);
}

TEST_CASE("edge list round trip") {
  MatrixXd w = MatrixXd::Zero(4, 4);
  w(0, 1) = w(1, 0) = 1.0;
  w(2, 3) = w(3, 2) = 0.1;
  std::ostringstream out;
  io::write_edge_list(out, Adjacency(w));
  std::istringstream in(out.str());
  CHECK(io::parse_edge_list(in).weights() == w);

  MatrixXd d = MatrixXd::Zero(3, 3);
  d(0, 2) = 2.0;
  std::ostringstream out2;
  io::write_edge_list(out2, Adjacency(d));
  std::istringstream in2(out2.str());
  CHECK(io::parse_edge_list(in2).weights() == d);
}

TEST_CASE("karate fixture") {
  const Adjacency k = io::load_edge_list(std::string(GLGP_FIXTURE_DIR) + "/karate.edges");
  CHECK(k.size() == 34);
  CHECK(k.is_symmetric());
  CHECK(k.is_binary());
  CHECK(k.nonzeros() == 2 * 78);
}

TEST_CASE("matrix CSV round trips bit-exactly") {
  RngStream rng(23, 0);
  const MatrixXd m = testing::uniform_matrix(rng, 5, 3, -1e3, 1e3);
  std::ostringstream out;
  io::write_matrix_csv(out, m);
  std::istringstream in(out.str());
  CHECK(io::parse_matrix_csv(in) == m);

  std::istringstream ragged("1,2\n3\n");
  CHECK_THROWS_AS(io::parse_matrix_csv(ragged), IoError);
  CHECK_THROWS_AS(io::load_matrix_csv("/nonexistent/file.csv"), IoError);
  CHECK(io::format_real(-0.0) == "0");
  CHECK(io::format_real(0.1) == "0.10000000000000001");
}
