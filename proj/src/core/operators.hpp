// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>
#include <memory>

#include "core/grid.hpp"

namespace birkhoff {

/// Which endpoint anchors the Birkhoff antiderivative basis.
enum class Anchor { A, B };  // tau = -1 resp. tau = +1

/// The Birkhoff matrices of a Lobatto grid:
///   Ba(i, j) = integral of the j-th Lagrange cardinal from -1 to tau_i,
///   Bb(i, j) = integral of the j-th Lagrange cardinal from +1 to tau_i.
/// Row 0 of Ba and row N of Bb are identically zero; row N of Ba carries the
/// quadrature weights.  Built by expanding each cardinal in the family's
/// modal basis and antidifferentiating coefficient-wise.  Immutable; the
/// fast apply below is reentrant on a shared instance.
class BirkhoffOperators {
 public:
  explicit BirkhoffOperators(Grid grid);
  ~BirkhoffOperators();

  BirkhoffOperators(const BirkhoffOperators&) = delete;
  BirkhoffOperators& operator=(const BirkhoffOperators&) = delete;
  BirkhoffOperators(BirkhoffOperators&&) noexcept;
  BirkhoffOperators& operator=(BirkhoffOperators&&) noexcept;

  const Grid& grid() const { return grid_; }
  const Eigen::MatrixXd& Ba() const { return ba_; }
  const Eigen::MatrixXd& Bb() const { return bb_; }
  int size() const { return grid_.size(); }

  /// Ba*v (resp. Bb*v) without touching the dense matrix: cosine transform
  /// to Chebyshev coefficients, antidifferentiation recurrence, transform
  /// back, anchor shift.  O(N log N).  Chebyshev-Lobatto grids only;
  /// throws UnsupportedGrid otherwise.
  Eigen::VectorXd apply_fast(Anchor anchor, const Eigen::VectorXd& v) const;

  bool has_fast_path() const;

  /// Max-abs entry of W_B * Bb + Ba^T * W_B (Lemma 1 residual).
  double lemma1_residual() const;

 private:
  Grid grid_;
  Eigen::MatrixXd ba_;
  Eigen::MatrixXd bb_;

  struct FastPlan;
  std::unique_ptr<FastPlan> fast_;
};

/// Convenience wrapper returning the operators for a freshly built grid.
inline BirkhoffOperators build_operators(Grid grid) {
  return BirkhoffOperators(std::move(grid));
}

}  // namespace birkhoff
