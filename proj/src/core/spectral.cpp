// SPDX-License-Identifier: Apache-2.0
#include "core/spectral.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace birkhoff {

namespace {

Eigen::VectorXd row_radii(const Eigen::MatrixXd& m) {
  Eigen::VectorXd r = m.cwiseAbs().rowwise().sum();
  r -= m.diagonal().cwiseAbs();
  return r;
}

Eigen::VectorXd col_radii(const Eigen::MatrixXd& m) {
  Eigen::VectorXd r = m.cwiseAbs().colwise().sum().transpose();
  r -= m.diagonal().cwiseAbs();
  return r;
}

bool in_disc_union(const std::complex<double>& z,
                   const Eigen::VectorXd& centers,
                   const Eigen::VectorXd& radii) {
  for (Eigen::Index i = 0; i < centers.size(); ++i) {
    if (std::abs(z - std::complex<double>(centers(i), 0.0)) <=
        radii(i) + kEigTol) {
      return true;
    }
  }
  return false;
}

}  // namespace

std::vector<DiscFamily> gershgorin_discs(const KktMatrix& k, int dense_cap) {
  const Eigen::MatrixXd a = to_dense(k, dense_cap);
  const int nn = k.num_nodes();
  const Eigen::VectorXd rr = row_radii(a);
  const Eigen::VectorXd cr = col_radii(a);
  const Eigen::VectorXd diag = a.diagonal();

  auto slice = [](const Eigen::VectorXd& v, int start, int len) {
    return Eigen::VectorXd(v.segment(start, len));
  };

  std::vector<DiscFamily> fams;
  fams.push_back({"rows-block-1-2", DiscOrientation::Row,
                  slice(diag, 0, 2 * nn), slice(rr, 0, 2 * nn)});
  fams.push_back({"cols-block-3-4", DiscOrientation::Column,
                  slice(diag, 2 * nn, 2 * nn), slice(cr, 2 * nn, 2 * nn)});
  fams.push_back({"rows-6-7", DiscOrientation::Row, slice(diag, 5 * nn, 2),
                  slice(rr, 5 * nn, 2)});
  fams.push_back({"row-5-control", DiscOrientation::Row,
                  slice(diag, 4 * nn, nn), slice(rr, 4 * nn, nn)});
  fams.push_back({"row-8", DiscOrientation::Row, slice(diag, 5 * nn + 2, 1),
                  slice(rr, 5 * nn + 2, 1)});
  fams.push_back({"row-9", DiscOrientation::Row, slice(diag, 5 * nn + 3, 1),
                  slice(rr, 5 * nn + 3, 1)});
  fams.push_back({"col-10", DiscOrientation::Column,
                  slice(diag, 5 * nn + 4, 1), slice(cr, 5 * nn + 4, 1)});
  return fams;
}

std::vector<std::complex<double>> dense_spectrum(const Eigen::MatrixXd& m,
                                                 int cap) {
  require(m.rows() == m.cols(), ErrorCode::DimensionMismatch,
          "spectrum needs a square matrix");
  require(m.rows() <= cap, ErrorCode::CapExceeded,
          "matrix of order " + std::to_string(m.rows()) +
              " exceeds the spectrum cap " + std::to_string(cap));
  require(m.allFinite(), ErrorCode::InvalidArgument,
          "matrix has non-finite entries");

  Eigen::EigenSolver<Eigen::MatrixXd> solver(m, /*computeEigenvectors=*/false);
  require(solver.info() == Eigen::Success, ErrorCode::Internal,
          "dense eigensolver failed to converge");

  std::vector<std::complex<double>> eig(static_cast<size_t>(m.rows()));
  for (Eigen::Index i = 0; i < m.rows(); ++i) eig[static_cast<size_t>(i)] = solver.eigenvalues()(i);
  std::stable_sort(eig.begin(), eig.end(),
                   [](const std::complex<double>& a,
                      const std::complex<double>& b) {
                     if (a.real() != b.real()) return a.real() < b.real();
                     return a.imag() > b.imag();  // conjugates adjacent, +i first
                   });
  return eig;
}

double gershgorin_row_bound(const KktMatrix& k) {
  const int nn = k.num_nodes();
  const Eigen::VectorXd ba_row = k.ops->Ba().cwiseAbs().rowwise().sum();
  const Eigen::VectorXd bb_row = k.ops->Bb().cwiseAbs().rowwise().sum();
  const double wsum = k.ops->grid().weights.cwiseAbs().sum();

  double bound = 0.0;
  for (int i = 0; i < nn; ++i) {
    bound = std::max(bound, 1.0 + ba_row(i) + 1.0);                 // block 1
    bound = std::max(bound, 1.0 + bb_row(i) + 1.0);                 // block 2
    bound = std::max(bound, std::abs(k.h_lambda_x(i)) + 1.0 +
                                std::abs(k.h_lambda_u(i)));          // block 3
    bound = std::max(bound, std::abs(k.h_xx(i)) +
                                std::abs(k.h_lambda_x(i)) + 1.0 +
                                std::abs(k.h_xu(i)));                // block 4
    bound = std::max(bound, std::abs(k.h_xu(i)) +
                                std::abs(k.h_lambda_u(i)) +
                                std::abs(k.h_uu(i)));                // block 5
  }
  for (int r = 0; r < 5; ++r) {
    double row = k.endpoint.row(r).cwiseAbs().sum();
    if (r == 0 || r == 1) row += wsum;  // the two quadrature rows
    bound = std::max(bound, row);
  }
  return bound;
}

SpectrumReport verify_theorem1(const KktMatrix& k, int spectrum_cap) {
  const int nn = k.num_nodes();
  const Eigen::MatrixXd a = to_dense(k, std::max(spectrum_cap, kDefaultDenseCap));

  SpectrumReport rep;
  rep.num_nodes = nn;
  rep.dim = k.dim();
  rep.eigenvalues = dense_spectrum(a, spectrum_cap);
  rep.families = gershgorin_discs(k, std::max(spectrum_cap, kDefaultDenseCap));

  rep.spectral_radius = 0.0;
  for (const auto& z : rep.eigenvalues)
    rep.spectral_radius = std::max(rep.spectral_radius, std::abs(z));

  const Eigen::VectorXd diag = a.diagonal();
  const Eigen::VectorXd rr = row_radii(a);
  const Eigen::VectorXd cr = col_radii(a);
  rep.g_bound = (diag.cwiseAbs() + rr).maxCoeff();
  rep.radius_within_bound = rep.spectral_radius <= rep.g_bound + kEigTol;

  rep.containment_row = true;
  rep.containment_col = true;
  for (const auto& z : rep.eigenvalues) {
    if (!in_disc_union(z, diag, rr)) rep.containment_row = false;
    if (!in_disc_union(z, diag, cr)) rep.containment_col = false;
  }

  auto count_re_in = [&](double lo, double hi) {
    std::int64_t c = 0;
    for (const auto& z : rep.eigenvalues) {
      if (z.real() >= lo - kEigTol && z.real() <= hi + kEigTol) ++c;
    }
    return c;
  };

  rep.count_in_minus2_4 = count_re_in(-2.0, 4.0);
  StatementCheck s1{"re-in-[-2,4]", 4 * static_cast<std::int64_t>(nn) + 2,
                    rep.count_in_minus2_4, false};
  s1.pass = s1.observed >= s1.claimed;

  StatementCheck s2{"re-in-[0,2]", 1, count_re_in(0.0, 2.0), false};
  s2.pass = s2.observed >= 1;

  const double r9 = std::abs(k.endpoint(3, 0)) + std::abs(k.endpoint(3, 2));
  StatementCheck s3{"nu-row-disc", 1, count_re_in(-r9, r9), false};
  s3.pass = s3.observed >= 1;

  const double ebb = k.endpoint(2, 2);
  const double re = 1.0 + std::abs(k.endpoint(2, 0)) + std::abs(k.endpoint(2, 3));
  StatementCheck s4{"xb-row-disc", 1, count_re_in(ebb - re, ebb + re), false};
  s4.pass = s4.observed >= 1;

  // union of the control discs, signed centers
  std::int64_t in_control = 0;
  for (const auto& z : rep.eigenvalues) {
    for (int i = 0; i < nn; ++i) {
      const double c = k.h_uu(i);
      const double r = std::abs(k.h_xu(i)) + std::abs(k.h_lambda_u(i));
      if (z.real() >= c - r - kEigTol && z.real() <= c + r + kEigTol) {
        ++in_control;
        break;
      }
    }
  }
  StatementCheck s5{"control-disc-union", nn, in_control, false};
  s5.pass = s5.observed >= s5.claimed;

  rep.statements = {s1, s2, s3, s4, s5};

  rep.max_col_abs_sum_ba = k.ops->Ba().cwiseAbs().colwise().sum().maxCoeff();
  rep.max_col_abs_sum_bb = k.ops->Bb().cwiseAbs().colwise().sum().maxCoeff();
  rep.column_sums_within_two =
      std::max(rep.max_col_abs_sum_ba, rep.max_col_abs_sum_bb) <= 2.0 + 1e-10;
  return rep;
}

AmplificationResult weak_form_amplification(const Eigen::VectorXd& weights,
                                            double delta) {
  require(delta > 0.0, ErrorCode::InvalidArgument, "delta must be positive");
  require((weights.array() > 0.0).all(), ErrorCode::InvalidArgument,
          "weights must be positive");
  AmplificationResult r;
  r.values = delta / weights.array();
  const double top = r.values.maxCoeff();
  for (Eigen::Index i = 0; i < r.values.size(); ++i) {
    if (r.values(i) >= top * (1.0 - 1e-12)) r.argmax.push_back(static_cast<int>(i));
  }
  return r;
}

}  // namespace birkhoff
