// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>
#include <complex>
#include <string>
#include <vector>

#include "core/kkt.hpp"

namespace birkhoff {

/// Default cap on dense eigenvalue computations (N = 128 -> n = 650).
inline constexpr int kDefaultSpectrumCap = 5 * 129 + 5;

/// Absolute tolerance on real parts at interval endpoints.
inline constexpr double kEigTol = 1e-9;

enum class DiscOrientation { Row, Column };

/// One family of Gershgorin discs.  Centers are the actual diagonal entries
/// and radii the actual off-diagonal absolute sums of the assembled matrix,
/// never the symbolic bounds.
struct DiscFamily {
  std::string label;
  DiscOrientation orientation = DiscOrientation::Row;
  Eigen::VectorXd centers;
  Eigen::VectorXd radii;
};

/// The disc families grouped the way the eigenvalue-bound argument groups
/// them: rows of blocks 1-2, columns of blocks 3-4, the two quadrature
/// rows, the control row family, the x_b row, the nu row, and the lambda_a
/// column.
std::vector<DiscFamily> gershgorin_discs(const KktMatrix& k,
                                         int dense_cap = kDefaultDenseCap);

/// Full nonsymmetric spectrum, sorted by real part (conjugate pairs stay
/// adjacent).  Throws CapExceeded / InvalidArgument per the preconditions.
std::vector<std::complex<double>> dense_spectrum(
    const Eigen::MatrixXd& m, int cap = kDefaultSpectrumCap);

/// Observed count and pass flag for one statement of the eigenvalue
/// theorem.
struct StatementCheck {
  std::string label;
  std::int64_t claimed = 0;
  std::int64_t observed = 0;
  bool pass = false;
};

struct SpectrumReport {
  int num_nodes = 0;
  int dim = 0;
  std::vector<std::complex<double>> eigenvalues;
  double spectral_radius = 0.0;
  double g_bound = 0.0;  // max over row discs of |center| + radius
  std::int64_t count_in_minus2_4 = 0;
  bool containment_row = false;
  bool containment_col = false;
  bool radius_within_bound = false;
  std::vector<StatementCheck> statements;
  std::vector<DiscFamily> families;
  double max_col_abs_sum_ba = 0.0;  // reported, not asserted
  double max_col_abs_sum_bb = 0.0;
  // the column-wise counting step needs column sums <= 2; observed to fail
  // slightly on coarse Chebyshev grids, hence flagged rather than assumed
  bool column_sums_within_two = false;
};

/// Compute discs and the dense spectrum, verify Gershgorin containment for
/// the row-disc union and the column-disc union, count eigenvalues with
/// real part in [-2, 4], and record the N-independent bound.
SpectrumReport verify_theorem1(const KktMatrix& k,
                               int spectrum_cap = kDefaultSpectrumCap);

/// Max over all rows of |diagonal| + off-diagonal abs-sum, computed from
/// the block structure without densifying.  An upper bound on the spectral
/// radius for any assembled matrix.
double gershgorin_row_bound(const KktMatrix& k);

struct SweepRow {
  int degree = 0;
  bool has_radius = true;  // false above the dense-spectrum cap
  double spectral_radius = 0.0;
  double g_bound = 0.0;
};

/// For each N: solve the problem, assemble at the solution, record the
/// spectral radius and the Gershgorin bound.  Declared here, implemented
/// next to the solver to avoid a dependency cycle.
std::vector<SweepRow> spectral_radius_sweep(const OcpProblem& problem,
                                            GridFamily family,
                                            const std::vector<int>& degrees);

/// Weak-form tolerance amplification delta / w_i and the argmax index set.
struct AmplificationResult {
  Eigen::VectorXd values;
  std::vector<int> argmax;
};

AmplificationResult weak_form_amplification(const Eigen::VectorXd& weights,
                                            double delta);

}  // namespace birkhoff
