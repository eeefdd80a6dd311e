// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "core/model.hpp"
#include "core/operators.hpp"

namespace birkhoff {

/// Default cap on dense materialization (N = 512 -> n = 2570).
inline constexpr int kDefaultDenseCap = 5 * 513 + 5;

/// Decision vector chi = (X, Lambda, V, Omega, U, x_a, lambda_b, x_b, nu,
/// lambda_a), flat length 5 N_n + 5.  Segment offsets are fixed: X at 0,
/// Lambda at N_n, V at 2 N_n, Omega at 3 N_n, U at 4 N_n, then the five
/// scalars in the order above.
class DecisionVector {
 public:
  explicit DecisionVector(int num_nodes)
      : num_nodes_(num_nodes),
        data_(Eigen::VectorXd::Zero(5 * num_nodes + 5)) {}

  DecisionVector(int num_nodes, Eigen::VectorXd flat)
      : num_nodes_(num_nodes), data_(std::move(flat)) {
    require(data_.size() == 5 * num_nodes_ + 5, ErrorCode::DimensionMismatch,
            "flat decision vector has wrong length");
  }

  int num_nodes() const { return num_nodes_; }
  Eigen::Index size() const { return data_.size(); }

  const Eigen::VectorXd& flat() const { return data_; }
  Eigen::VectorXd& flat() { return data_; }

  auto X() { return data_.segment(0, num_nodes_); }
  auto Lambda() { return data_.segment(num_nodes_, num_nodes_); }
  auto V() { return data_.segment(2 * num_nodes_, num_nodes_); }
  auto Omega() { return data_.segment(3 * num_nodes_, num_nodes_); }
  auto U() { return data_.segment(4 * num_nodes_, num_nodes_); }
  auto X() const { return data_.segment(0, num_nodes_); }
  auto Lambda() const { return data_.segment(num_nodes_, num_nodes_); }
  auto V() const { return data_.segment(2 * num_nodes_, num_nodes_); }
  auto Omega() const { return data_.segment(3 * num_nodes_, num_nodes_); }
  auto U() const { return data_.segment(4 * num_nodes_, num_nodes_); }

  double& x_a() { return data_(5 * num_nodes_); }
  double& lambda_b() { return data_(5 * num_nodes_ + 1); }
  double& x_b() { return data_(5 * num_nodes_ + 2); }
  double& nu() { return data_(5 * num_nodes_ + 3); }
  double& lambda_a() { return data_(5 * num_nodes_ + 4); }
  double x_a() const { return data_(5 * num_nodes_); }
  double lambda_b() const { return data_(5 * num_nodes_ + 1); }
  double x_b() const { return data_(5 * num_nodes_ + 2); }
  double nu() const { return data_(5 * num_nodes_ + 3); }
  double lambda_a() const { return data_(5 * num_nodes_ + 4); }

 private:
  int num_nodes_;
  Eigen::VectorXd data_;
};

/// Structured Birkhoff Hessian at a linearization point: the constant
/// skeleton lives in the referenced operators; only the five node-wise
/// Hamiltonian diagonals and the 5x5 endpoint block are per-iterate data.
/// The operators must outlive the matrix.  Immutable once assembled.
struct KktMatrix {
  const BirkhoffOperators* ops = nullptr;

  // node-wise second derivatives at the linearization point
  Eigen::VectorXd h_lambda_x;  // f_x
  Eigen::VectorXd h_lambda_u;  // f_u
  Eigen::VectorXd h_xx;        // lambda * f_xx
  Eigen::VectorXd h_xu;        // lambda * f_xu (= H_ux, symmetric)
  Eigen::VectorXd h_uu;        // lambda * f_uu

  // rows 6..10 over columns (x_a, lambda_b, x_b, nu, lambda_a)
  Eigen::Matrix<double, 5, 5> endpoint;

  int num_nodes() const { return ops->size(); }
  int dim() const { return 5 * num_nodes() + 5; }
};

/// Stacked residual F(chi) = [F1..F10] in the fixed row order matching the
/// decision-vector layout.
Eigen::VectorXd residual(const DecisionVector& chi, const OcpProblem& problem,
                         const BirkhoffOperators& ops);

/// Jacobian of the residual at chi, in structured form.
KktMatrix assemble(const DecisionVector& chi, const OcpProblem& problem,
                   const BirkhoffOperators& ops);

/// Entrywise dense materialization; throws CapExceeded above the cap.
Eigen::MatrixXd to_dense(const KktMatrix& k, int dense_cap = kDefaultDenseCap);

/// A * v block-wise without densifying.  With `fast` set, the Birkhoff
/// blocks are applied through the Chebyshev cosine-transform path.
Eigen::VectorXd matvec(const KktMatrix& k, const Eigen::VectorXd& v,
                       bool fast = false);

/// Row split of Eq-style permutation: the data-independent rows (blocks 1,
/// 2 and the two quadrature rows) on top, the data-dependent rows below.
struct SplitKkt {
  Eigen::MatrixXd a0;       // (2 N_n + 2) x n, problem-independent
  Eigen::MatrixXd a_data;   // (3 N_n + 3) x n
  std::vector<int> row_order;  // original row index of each stacked row

  /// Undo the permutation: rebuild the full dense matrix.
  Eigen::MatrixXd unpermute() const;
};

SplitKkt permute_split(const KktMatrix& k, int dense_cap = kDefaultDenseCap);

/// Alternative symmetric Hessian (primal-dual ordering (X~, V~, U~, x_a,
/// x_b | Lambda, Omega, nu, lambda_b), lambda_a absent), dimension
/// 5 N_n + 4.  Hamiltonian blocks are evaluated at the same unscaled
/// iterate as assemble() and carry the 1/w_i row scaling.
Eigen::MatrixXd assemble_alt(const DecisionVector& chi,
                             const OcpProblem& problem,
                             const BirkhoffOperators& ops);

/// Storage accounting for the data-dependent part.
struct NnzReport {
  std::int64_t hamiltonian_values = 0;  // (2 Nx^2 + 2 Nx Nu + Nu^2) * N_n
  std::int64_t total_pattern = 0;       // structural nonzeros of A (scalar build)
  std::int64_t bytes = 0;               // hamiltonian_values * 8
};

/// (2 Nx^2 + 2 Nx Nu + Nu^2) * N_n, the per-node Hamiltonian storage count
/// for a general state/control dimension.
std::int64_t hamiltonian_storage(int n_x, int n_u, std::int64_t num_nodes);

NnzReport nnz_report(const KktMatrix& k, int n_x, int n_u);

/// Matrix Market coordinate export (real general, 1-based); pattern mode
/// drops the values.  Zero entries are omitted.
void write_matrix_market(const Eigen::MatrixXd& m, std::ostream& out,
                         bool pattern_only = false);

/// Reader for round-trip checks and downstream tooling.
Eigen::MatrixXd read_matrix_market(std::istream& in);

}  // namespace birkhoff
