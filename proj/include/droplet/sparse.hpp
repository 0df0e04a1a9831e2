#pragma once

#include <string>
#include <vector>

#include <Eigen/Sparse>

namespace droplet {

using SpMat = Eigen::SparseMatrix<double>;

// Symmetric row/column elimination. Constrained rows and columns are removed,
// column contributions move to the rhs, and the diagonal entry becomes 1 so the
// solution carries the prescribed value directly. `values` is parallel to
// `dofs`; empty means homogeneous. Keeps a symmetric matrix symmetric.
void apply_dirichlet(SpMat& a, Eigen::VectorXd& rhs, const std::vector<int>& dofs,
                     const std::vector<double>& values = {});

// Direct sparse LU solve. Throws SolverError if the factorization fails (the
// message carries the zero-pivot location) or if the solution residual exceeds
// 1e-10 relative to max(1, |A||x| + |b|).
Eigen::VectorXd solve_sparse(const SpMat& a, const Eigen::VectorXd& rhs);

// MatrixMarket coordinate text dump, for offline inspection of assembled systems.
void write_matrix_market(const std::string& path, const SpMat& a);

}  // namespace droplet
