#include <cstdio>
#include <doctest.h>
#include <fstream>
#include <vector>

#include <Eigen/Sparse>

#include "droplet/errors.hpp"
#include "droplet/sparse.hpp"

using namespace droplet;

namespace {

Eigen::SparseMatrix<double> from_triplets(int n, std::vector<Eigen::Triplet<double>> t) {
  Eigen::SparseMatrix<double> a(n, n);
  a.setFromTriplets(t.begin(), t.end());
  return a;
}

}  // namespace

TEST_SUITE("sparse") {

TEST_CASE("solver handles identity, indefinite, and singular systems") {
  Eigen::SparseMatrix<double> eye(3, 3);
  eye.setIdentity();
  Eigen::VectorXd b(3);
  b << 1.0, -2.0, 0.5;
  CHECK((solve_sparse(eye, b) - b).norm() <= 1e-14);

  // Symmetric indefinite 2x2 saddle [[2, 1], [1, 0]]: x = (b1, b0 - 2 b1).
  const auto s = from_triplets(2, {{0, 0, 2.0}, {0, 1, 1.0}, {1, 0, 1.0}});
  Eigen::VectorXd sb(2);
  sb << 3.0, 1.0;
  const Eigen::VectorXd sx = solve_sparse(s, sb);
  CHECK(sx[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(sx[1] == doctest::Approx(1.0).epsilon(1e-14));

  const auto sing = from_triplets(2, {{0, 0, 1.0}});
  CHECK_THROWS_AS(solve_sparse(sing, sb), SolverError);
}

TEST_CASE("dirichlet elimination keeps symmetry and exact values") {
  // 3x3 SPD system; constrain dof 1 to value 2, solve, check the free dofs see
  // the moved right-hand side.
  auto a = from_triplets(3, {{0, 0, 4.0},
                             {1, 1, 4.0},
                             {2, 2, 4.0},
                             {0, 1, 1.0},
                             {1, 0, 1.0},
                             {1, 2, 1.0},
                             {2, 1, 1.0}});
  Eigen::VectorXd rhs(3);
  rhs << 1.0, 5.0, 9.0;
  apply_dirichlet(a, rhs, {1}, {2.0});

  // Row and column 1 reduced to the identity.
  const Eigen::MatrixXd ad(a);
  CHECK(ad(1, 1) == doctest::Approx(1.0));
  CHECK(ad(1, 0) == 0.0);
  CHECK(ad(1, 2) == 0.0);
  CHECK(ad(0, 1) == 0.0);
  CHECK(ad(2, 1) == 0.0);
  CHECK((ad - ad.transpose()).norm() == 0.0);

  const Eigen::VectorXd x = solve_sparse(a, rhs);
  CHECK(x[1] == doctest::Approx(2.0).epsilon(1e-14));
  // Free equations: 4 x0 = 1 - 2, 4 x2 = 9 - 2.
  CHECK(x[0] == doctest::Approx(-0.25).epsilon(1e-13));
  CHECK(x[2] == doctest::Approx(1.75).epsilon(1e-13));
}

TEST_CASE("dirichlet with omitted values pins to zero") {
  auto a = from_triplets(2, {{0, 0, 2.0}, {0, 1, 1.0}, {1, 0, 1.0}, {1, 1, 2.0}});
  Eigen::VectorXd rhs(2);
  rhs << 4.0, 7.0;
  apply_dirichlet(a, rhs, {0});
  const Eigen::VectorXd x = solve_sparse(a, rhs);
  CHECK(x[0] == 0.0);
  CHECK(x[1] == doctest::Approx(3.5).epsilon(1e-13));
}

TEST_CASE("matrix market dump") {
  const auto a = from_triplets(2, {{0, 0, 1.5}, {1, 0, -2.0}});
  const std::string path = "test_out_matrix.mtx";
  write_matrix_market(path, a);
  std::ifstream f(path);
  REQUIRE(f.good());
  std::string header;
  std::getline(f, header);
  CHECK(header.find("MatrixMarket") != std::string::npos);
  int rows, cols, nnz;
  f >> rows >> cols >> nnz;
  CHECK(rows == 2);
  CHECK(cols == 2);
  CHECK(nnz == 2);
  std::remove(path.c_str());
}

}  // TEST_SUITE
