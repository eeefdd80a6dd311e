// SPDX-License-Identifier: Apache-2.0
#include "core/grid.hpp"

#include <cmath>
#include <numbers>

namespace birkhoff {

namespace {

constexpr double kPi = std::numbers::pi;

// Clenshaw-Curtis weights for the Chebyshev-Lobatto nodes, via the exact
// cosine-sum formula.  Symmetric by construction (only half is computed).
Eigen::VectorXd clenshaw_curtis_weights(int n) {
  Eigen::VectorXd w(n + 1);
  const bool even = (n % 2 == 0);
  const double w_end = even ? 1.0 / (static_cast<double>(n) * n - 1.0)
                            : 1.0 / (static_cast<double>(n) * n);
  w(0) = w_end;
  w(n) = w_end;
  const int khalf = even ? n / 2 - 1 : (n - 1) / 2;
  for (int i = 1; i <= n / 2; ++i) {
    const double theta = kPi * static_cast<double>(i) / n;
    double v = 1.0;
    for (int k = 1; k <= khalf; ++k) {
      v -= 2.0 * std::cos(2.0 * k * theta) / (4.0 * k * k - 1.0);
    }
    if (even) v -= std::cos(n * theta) / (static_cast<double>(n) * n - 1.0);
    w(i) = 2.0 * v / n;
    w(n - i) = w(i);
  }
  return w;
}

Eigen::VectorXd chebyshev_lobatto_nodes(int n) {
  Eigen::VectorXd tau(n + 1);
  for (int i = 0; i <= n / 2; ++i) {
    const double t = std::cos(kPi * static_cast<double>(i) / n);
    tau(i) = -t;
    tau(n - i) = t;  // mirror so the grid is symmetric to the last bit
  }
  if (n % 2 == 0) tau(n / 2) = 0.0;
  return tau;
}

// Interior Legendre-Lobatto nodes are the roots of (1 - t^2) P_N'(t).
// Newton iteration with the derivative taken from the Legendre ODE,
// d/dt[(1 - t^2) P_N'] = -N (N + 1) P_N, which reduces each update to
//   t <- t - (t P_N(t) - P_{N-1}(t)) / (N_n P_N(t)).
// Chebyshev-Lobatto nodes are the initial guesses.
void legendre_lobatto(int n, Eigen::VectorXd& tau, Eigen::VectorXd& w) {
  const int nn = n + 1;
  tau = chebyshev_lobatto_nodes(n);
  const double tol = 1e-15;
  const int max_iter = 100;

  double err = 1.0;
  for (int iter = 0; err > tol; ++iter) {
    if (iter == max_iter) {
      throw_error(ErrorCode::Internal,
                  "Legendre-Lobatto node iteration did not converge for N = " +
                      std::to_string(n));
    }
    // P_{N-1}, P_N at the current nodes
    Eigen::VectorXd pkm1 = Eigen::VectorXd::Ones(nn);
    Eigen::VectorXd pk = tau;
    for (int k = 2; k <= n; ++k) {
      Eigen::VectorXd pkp1 =
          ((2.0 * k - 1.0) * tau.cwiseProduct(pk) - (k - 1.0) * pkm1) / k;
      pkm1 = pk;
      pk = pkp1;
    }
    err = 0.0;
    for (int i = 1; i < n; ++i) {
      const double dt = (tau(i) * pk(i) - pkm1(i)) / (nn * pk(i));
      tau(i) -= dt;
      err = std::max(err, std::abs(dt));
    }
  }
  tau(0) = -1.0;
  tau(n) = 1.0;
  // symmetrize, then refresh P_N for the weights
  for (int i = 1; i < nn / 2; ++i) {
    const double t = 0.5 * (tau(n - i) - tau(i));
    tau(i) = -t;
    tau(n - i) = t;
  }
  if (n % 2 == 0) tau(n / 2) = 0.0;

  Eigen::VectorXd pkm1 = Eigen::VectorXd::Ones(nn);
  Eigen::VectorXd pk = tau;
  for (int k = 2; k <= n; ++k) {
    Eigen::VectorXd pkp1 =
        ((2.0 * k - 1.0) * tau.cwiseProduct(pk) - (k - 1.0) * pkm1) / k;
    pkm1 = pk;
    pk = pkp1;
  }
  w.resize(nn);
  const double scale = 2.0 / (static_cast<double>(n) * nn);
  w(0) = scale;  // P_N(-1)^2 = 1 exactly
  w(n) = scale;
  for (int i = 1; i <= n / 2; ++i) {
    w(i) = scale / (pk(i) * pk(i));
    w(n - i) = w(i);
  }
}

}  // namespace

std::string family_name(GridFamily family) {
  return family == GridFamily::ChebyshevLobatto ? "cgl" : "lgl";
}

GridFamily family_from_name(const std::string& name) {
  if (name == "cgl" || name == "chebyshev") return GridFamily::ChebyshevLobatto;
  if (name == "lgl" || name == "legendre") return GridFamily::LegendreLobatto;
  throw_error(ErrorCode::UnknownName, "unknown grid family '" + name + "'");
}

Grid make_grid(const GridSpec& spec) {
  require(spec.degree >= 2, ErrorCode::InvalidArgument,
          "grid degree must be at least 2, got " + std::to_string(spec.degree));
  Grid g;
  g.spec = spec;
  if (spec.family == GridFamily::ChebyshevLobatto) {
    g.nodes = chebyshev_lobatto_nodes(spec.degree);
    g.weights = clenshaw_curtis_weights(spec.degree);
  } else {
    legendre_lobatto(spec.degree, g.nodes, g.weights);
  }
  return g;
}

Eigen::VectorXd quadrature_exactness_degree(const Grid& grid, int d_max) {
  require(d_max >= 0, ErrorCode::InvalidArgument, "d_max must be >= 0");
  Eigen::VectorXd err(d_max + 1);
  Eigen::VectorXd power = Eigen::VectorXd::Ones(grid.size());
  for (int k = 0; k <= d_max; ++k) {
    if (k > 0) power = power.cwiseProduct(grid.nodes);
    const double moment = (k % 2 == 0) ? 2.0 / (k + 1.0) : 0.0;
    err(k) = std::abs(grid.weights.dot(power) - moment);
  }
  return err;
}

Eigen::MatrixXd legendre_table(const Eigen::VectorXd& x, int kmax) {
  const auto m = x.size();
  Eigen::MatrixXd p(m, kmax + 1);
  p.col(0).setOnes();
  if (kmax >= 1) p.col(1) = x;
  for (int k = 2; k <= kmax; ++k) {
    p.col(k) = ((2.0 * k - 1.0) * x.cwiseProduct(p.col(k - 1)) -
                (k - 1.0) * p.col(k - 2)) /
               k;
  }
  return p;
}

Eigen::MatrixXd chebyshev_table(const Eigen::VectorXd& x, int kmax) {
  const auto m = x.size();
  Eigen::MatrixXd t(m, kmax + 1);
  t.col(0).setOnes();
  if (kmax >= 1) t.col(1) = x;
  for (int k = 2; k <= kmax; ++k) {
    t.col(k) = 2.0 * x.cwiseProduct(t.col(k - 1)) - t.col(k - 2);
  }
  return t;
}

}  // namespace birkhoff
