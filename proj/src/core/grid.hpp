// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Core>
#include <string>

#include "core/errors.hpp"

namespace birkhoff {

enum class GridFamily { ChebyshevLobatto, LegendreLobatto };

std::string family_name(GridFamily family);
GridFamily family_from_name(const std::string& name);

struct GridSpec {
  GridFamily family = GridFamily::ChebyshevLobatto;
  int degree = 2;  // polynomial degree N; the grid has N + 1 nodes
};

/// Lobatto grid on [-1, 1]: strictly increasing nodes with both endpoints
/// included, plus the interpolatory quadrature weights of the node set
/// (Clenshaw-Curtis for Chebyshev-Lobatto, Gauss-Lobatto for
/// Legendre-Lobatto).  Immutable after construction.
struct Grid {
  GridSpec spec;
  Eigen::VectorXd nodes;    // size N + 1, nodes[0] = -1, nodes[N] = +1
  Eigen::VectorXd weights;  // size N + 1, all positive, sum = 2

  int degree() const { return spec.degree; }
  int size() const { return static_cast<int>(nodes.size()); }
};

/// Build the grid for `spec`.  Throws InvalidArgument for degree < 2 and
/// Internal if the Legendre node iteration fails to converge.
Grid make_grid(const GridSpec& spec);

/// Absolute quadrature errors |sum_i w_i t_i^k - int_{-1}^{1} t^k dt| for
/// k = 0..d_max.
Eigen::VectorXd quadrature_exactness_degree(const Grid& grid, int d_max);

/// Legendre polynomial values P_0..P_kmax at x, by the three-term recurrence.
/// Column k of the result holds P_k at the given points.
Eigen::MatrixXd legendre_table(const Eigen::VectorXd& x, int kmax);

/// Chebyshev polynomial values T_0..T_kmax at x.
Eigen::MatrixXd chebyshev_table(const Eigen::VectorXd& x, int kmax);

}  // namespace birkhoff
