// SPDX-License-Identifier: Apache-2.0
//
// Space/time complexity arithmetic for the memory and table1 subcommands.
#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace cli {

/// Bytes to store the node-wise Hamiltonian data for N_x states, N_u
/// controls and N_n grid points: (2 Nx^2 + 2 Nx Nu + Nu^2) * N_n values.
/// Overflow-checked.
inline std::uint64_t memory_estimate(std::int64_t n_x, std::int64_t n_u,
                                     std::int64_t n_n,
                                     std::int64_t bytes_per_value = 8) {
  if (n_x < 1 || n_u < 0 || n_n < 1 || bytes_per_value < 1) {
    throw std::invalid_argument(
        "memory estimate needs N_x >= 1, N_u >= 0, N_n >= 1, bytes >= 1");
  }
  const std::uint64_t per_node = static_cast<std::uint64_t>(
      2 * n_x * n_x + 2 * n_x * n_u + n_u * n_u);
  std::uint64_t values = 0, bytes = 0;
  if (__builtin_mul_overflow(per_node, static_cast<std::uint64_t>(n_n),
                             &values) ||
      __builtin_mul_overflow(values,
                             static_cast<std::uint64_t>(bytes_per_value),
                             &bytes)) {
    throw std::overflow_error("memory estimate overflows 64 bits");
  }
  return bytes;
}

struct Table1Row {
  double n = 0;
  double mem_n_gb = 0;      // 8 n bytes in GB
  double mem_n2_gb = 0;     // 8 n^2 bytes in GB
  double t_n = 0;           // seconds at `flops` FLOP/s
  double t_nlogn = 0;       // natural log
  double t_n2 = 0;
  double t_n3 = 0;
};

inline Table1Row table1_row(double n, double flops = 1e12,
                            double bytes_per_value = 8.0) {
  if (n < 1 || flops <= 0) {
    throw std::invalid_argument("table row needs n >= 1 and flops > 0");
  }
  Table1Row r;
  r.n = n;
  r.mem_n_gb = bytes_per_value * n / 1e9;
  r.mem_n2_gb = bytes_per_value * n * n / 1e9;
  r.t_n = n / flops;
  r.t_nlogn = n * std::log(n) / flops;
  r.t_n2 = n * n / flops;
  r.t_n3 = n * n * n / flops;
  return r;
}

}  // namespace cli
