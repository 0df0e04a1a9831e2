#include "droplet/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "droplet/errors.hpp"

namespace droplet {

void apply_dirichlet(SpMat& a, Eigen::VectorXd& rhs, const std::vector<int>& dofs,
                     const std::vector<double>& values) {
  if (a.rows() != a.cols()) throw InvalidParameterError("apply_dirichlet: matrix must be square");
  if (rhs.size() != a.rows())
    throw InvalidParameterError("apply_dirichlet: rhs size does not match matrix");
  if (!values.empty() && values.size() != dofs.size())
    throw InvalidParameterError("apply_dirichlet: values must be parallel to dofs");

  std::vector<char> constrained(a.rows(), 0);
  Eigen::VectorXd val = Eigen::VectorXd::Zero(a.rows());
  for (std::size_t k = 0; k < dofs.size(); ++k) {
    const int d = dofs[k];
    if (d < 0 || d >= a.rows()) throw InvalidParameterError("apply_dirichlet: dof out of range");
    constrained[d] = 1;
    val[d] = values.empty() ? 0.0 : values[k];
  }

  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(a.nonZeros()) + dofs.size());
  for (int col = 0; col < a.outerSize(); ++col)
    for (SpMat::InnerIterator it(a, col); it; ++it) {
      const int r = static_cast<int>(it.row());
      const int c = static_cast<int>(it.col());
      if (constrained[r]) continue;
      if (constrained[c]) {
        rhs[r] -= it.value() * val[c];
        continue;
      }
      trip.emplace_back(r, c, it.value());
    }
  for (int j = 0; j < a.rows(); ++j)
    if (constrained[j]) {
      trip.emplace_back(j, j, 1.0);
      rhs[j] = val[j];
    }

  SpMat out(a.rows(), a.cols());
  out.setFromTriplets(trip.begin(), trip.end());
  a = std::move(out);
}

Eigen::VectorXd solve_sparse(const SpMat& a, const Eigen::VectorXd& rhs) {
  if (a.rows() != a.cols()) throw InvalidParameterError("solve_sparse: matrix must be square");
  if (rhs.size() != a.rows())
    throw InvalidParameterError("solve_sparse: rhs size does not match matrix");

  SpMat ac = a;
  ac.makeCompressed();
  Eigen::SparseLU<SpMat, Eigen::COLAMDOrdering<int>> lu;
  lu.compute(ac);
  if (lu.info() != Eigen::Success)
    throw SolverError("sparse LU factorization failed: " + lu.lastErrorMessage());
  const Eigen::VectorXd x = lu.solve(rhs);
  if (lu.info() != Eigen::Success) throw SolverError("sparse LU back-substitution failed");

  const double res = (ac * x - rhs).norm();
  const double scale = std::max(1.0, ac.norm() * x.norm() + rhs.norm());
  if (!x.allFinite() || !(res <= 1e-10 * scale))
    throw SolverError("linear solve residual " + std::to_string(res) +
                      " exceeds 1e-10 relative tolerance");
  return x;
}

void write_matrix_market(const std::string& path, const SpMat& a) {
  std::FILE* f = std::fopen(path.c_str(), "w");
  if (!f) throw std::runtime_error("write_matrix_market: cannot open " + path);
  std::fprintf(f, "%%%%MatrixMarket matrix coordinate real general\n");
  std::fprintf(f, "%ld %ld %ld\n", static_cast<long>(a.rows()), static_cast<long>(a.cols()),
               static_cast<long>(a.nonZeros()));
  for (int col = 0; col < a.outerSize(); ++col)
    for (SpMat::InnerIterator it(a, col); it; ++it)
      std::fprintf(f, "%ld %ld %.17g\n", static_cast<long>(it.row()) + 1,
                   static_cast<long>(it.col()) + 1, it.value());
  std::fclose(f);
}

}  // namespace droplet
