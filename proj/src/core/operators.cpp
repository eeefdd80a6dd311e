// SPDX-License-Identifier: Apache-2.0
#include "core/operators.hpp"

#include <fftw3.h>

#include <cmath>
#include <numbers>
#include <vector>

namespace birkhoff {

namespace {

constexpr double kPi = std::numbers::pi;

// Chebyshev coefficients of the Lagrange cardinals on the Chebyshev-Lobatto
// grid.  Column j holds the coefficients of cardinal j.  With theta_i =
// (N - i) pi / N (so that tau_i = cos theta_i is increasing),
//   a_{k j} = 2 / (N cbar_k cbar_j) * cos(k theta_j),
// which is the DCT-I analysis matrix applied to unit vectors.
Eigen::MatrixXd chebyshev_cardinal_coefficients(int n) {
  const int nn = n + 1;
  Eigen::MatrixXd a(nn, nn);
  for (int j = 0; j < nn; ++j) {
    const double cj = (j == 0 || j == n) ? 2.0 : 1.0;
    for (int k = 0; k < nn; ++k) {
      const double ck = (k == 0 || k == n) ? 2.0 : 1.0;
      a(k, j) = 2.0 / (n * ck * cj) *
                std::cos(kPi * static_cast<double>(k) * (n - j) / n);
    }
  }
  return a;
}

// Legendre coefficients of the Lagrange cardinals on the Legendre-Lobatto
// grid, from the discrete transform (exact for degree <= N):
//   a_{k j} = w_j P_k(tau_j) / gamma_k,
// gamma_k = 2/(2k+1) for k < N and 2/N for k = N.
Eigen::MatrixXd legendre_cardinal_coefficients(const Grid& grid) {
  const int n = grid.degree();
  const int nn = n + 1;
  Eigen::MatrixXd p = legendre_table(grid.nodes, n);  // nn x (n+1)
  Eigen::MatrixXd a(nn, nn);
  for (int k = 0; k <= n; ++k) {
    const double gamma = (k < n) ? 2.0 / (2.0 * k + 1.0) : 2.0 / n;
    a.row(k) = grid.weights.cwiseProduct(p.col(k)).transpose() / gamma;
  }
  return a;
}

// Antidifferentiate a Chebyshev coefficient matrix column-wise: input rows
// 0..N, output rows 0..N+1 with row 0 left at zero (fixed by anchoring).
//   b_1 = a_0 - a_2 / 2,  b_m = (a_{m-1} - a_{m+1}) / (2 m) for m >= 2.
Eigen::MatrixXd chebyshev_antiderivative(const Eigen::MatrixXd& a) {
  const auto n = a.rows() - 1;
  const auto cols = a.cols();
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n + 2, cols);
  auto coef = [&](Eigen::Index k) -> Eigen::RowVectorXd {
    return (k <= n) ? Eigen::RowVectorXd(a.row(k))
                    : Eigen::RowVectorXd(Eigen::RowVectorXd::Zero(cols));
  };
  b.row(1) = a.row(0) - 0.5 * coef(2);
  for (Eigen::Index m = 2; m <= n + 1; ++m) {
    b.row(m) = (coef(m - 1) - coef(m + 1)) / (2.0 * m);
  }
  return b;
}

// Legendre antidifferentiation: b_m = a_{m-1}/(2m-1) - a_{m+1}/(2m+3).
Eigen::MatrixXd legendre_antiderivative(const Eigen::MatrixXd& a) {
  const auto n = a.rows() - 1;
  const auto cols = a.cols();
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n + 2, cols);
  auto coef = [&](Eigen::Index k) -> Eigen::RowVectorXd {
    return (k <= n) ? Eigen::RowVectorXd(a.row(k))
                    : Eigen::RowVectorXd(Eigen::RowVectorXd::Zero(cols));
  };
  for (Eigen::Index m = 1; m <= n + 1; ++m) {
    b.row(m) = coef(m - 1) / (2.0 * m - 1.0) - coef(m + 1) / (2.0 * m + 3.0);
  }
  return b;
}

}  // namespace

// DCT-I plans for the Chebyshev fast path.  Plans are created once per
// operator set with FFTW_UNALIGNED so execution may run on caller-local
// buffers from any thread.
struct BirkhoffOperators::FastPlan {
  int n = 0;  // polynomial degree
  fftw_plan plan = nullptr;
  std::vector<double> in, out;  // planning buffers only

  explicit FastPlan(int degree) : n(degree), in(degree + 1), out(degree + 1) {
    plan = fftw_plan_r2r_1d(n + 1, in.data(), out.data(), FFTW_REDFT00,
                            FFTW_ESTIMATE | FFTW_UNALIGNED);
    if (plan == nullptr) {
      throw_error(ErrorCode::Internal, "FFTW DCT-I plan creation failed");
    }
  }
  ~FastPlan() {
    if (plan != nullptr) fftw_destroy_plan(plan);
  }
};

BirkhoffOperators::BirkhoffOperators(Grid grid) : grid_(std::move(grid)) {
  const int n = grid_.degree();
  const int nn = n + 1;

  Eigen::MatrixXd coeffs;
  Eigen::MatrixXd anti;
  Eigen::MatrixXd eval;  // values of basis 0..N+1 at the nodes, nn x (nn+1)
  if (grid_.spec.family == GridFamily::ChebyshevLobatto) {
    coeffs = chebyshev_cardinal_coefficients(n);
    anti = chebyshev_antiderivative(coeffs);
    eval = chebyshev_table(grid_.nodes, n + 1);
  } else {
    coeffs = legendre_cardinal_coefficients(grid_);
    anti = legendre_antiderivative(coeffs);
    eval = legendre_table(grid_.nodes, n + 1);
  }

  // Antiderivative values up to a per-column constant; both anchors come
  // from the same product.
  Eigen::MatrixXd values = eval * anti;  // nn x nn
  ba_ = values - Eigen::VectorXd::Ones(nn) * values.row(0);
  bb_ = values - Eigen::VectorXd::Ones(nn) * values.row(n);

  if (grid_.spec.family == GridFamily::ChebyshevLobatto) {
    fast_ = std::make_unique<FastPlan>(n);
  }
}

BirkhoffOperators::~BirkhoffOperators() = default;
BirkhoffOperators::BirkhoffOperators(BirkhoffOperators&&) noexcept = default;
BirkhoffOperators& BirkhoffOperators::operator=(BirkhoffOperators&&) noexcept =
    default;

bool BirkhoffOperators::has_fast_path() const { return fast_ != nullptr; }

Eigen::VectorXd BirkhoffOperators::apply_fast(Anchor anchor,
                                              const Eigen::VectorXd& v) const {
  require(fast_ != nullptr, ErrorCode::UnsupportedGrid,
          "fast transform requires a Chebyshev-Lobatto grid");
  require(v.size() == grid_.size(), ErrorCode::DimensionMismatch,
          "vector length does not match grid size");
  const int n = grid_.degree();
  const int nn = n + 1;

  // values (increasing tau) -> theta ordering -> DCT-I -> coefficients
  std::vector<double> buf_in(nn), buf_out(nn);
  for (int j = 0; j < nn; ++j) buf_in[j] = v(n - j);
  fftw_execute_r2r(fast_->plan, buf_in.data(), buf_out.data());
  Eigen::VectorXd a(nn);
  for (int k = 0; k < nn; ++k) {
    const double ck = (k == 0 || k == n) ? 2.0 : 1.0;
    a(k) = buf_out[k] / (n * ck);
  }

  // antidifferentiation recurrence, degree grows to N + 1
  Eigen::VectorXd b = Eigen::VectorXd::Zero(nn + 1);
  auto coef = [&](int k) { return k <= n ? a(k) : 0.0; };
  b(1) = a(0) - 0.5 * coef(2);
  for (int m = 2; m <= n + 1; ++m) b(m) = (coef(m - 1) - coef(m + 1)) / (2.0 * m);

  // evaluate sum b_k T_k at the nodes: DCT-I with halved interior
  // coefficients, plus the aliased T_{N+1} correction
  buf_in[0] = b(0);
  for (int k = 1; k < n; ++k) buf_in[k] = 0.5 * b(k);
  buf_in[n] = b(n);
  fftw_execute_r2r(fast_->plan, buf_in.data(), buf_out.data());
  Eigen::VectorXd q(nn);
  for (int i = 0; i < nn; ++i) {
    const double tcorr = ((n - i) % 2 == 0 ? 1.0 : -1.0) * grid_.nodes(i);
    q(i) = buf_out[n - i] + b(n + 1) * tcorr;
  }

  const double shift = (anchor == Anchor::A) ? q(0) : q(n);
  return q.array() - shift;
}

double BirkhoffOperators::lemma1_residual() const {
  const Eigen::VectorXd& w = grid_.weights;
  Eigen::MatrixXd m = w.asDiagonal() * bb_;
  m.noalias() += ba_.transpose() * w.asDiagonal();
  return m.cwiseAbs().maxCoeff();
}

}  // namespace birkhoff
