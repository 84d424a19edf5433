#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <ostream>
#include <vector>

#include "bosecount/spectrum.hpp"

namespace bosecount {

using BigInt = mpz_class;

/// Omega(E) for E = 0..e_max.
struct CountTable {
  SpectrumModel model;
  std::int64_t e_max = 0;
  std::vector<BigInt> omega;
};

/// Omega(N, E) for 1 <= N <= n_max, 0 <= E <= e_max; row-major by N.
struct JointTable {
  SpectrumModel model;
  std::int64_t e_max = 0;
  std::int64_t n_max = 0;
  std::vector<BigInt> cells;

  const BigInt& at(std::int64_t n, std::int64_t e) const {
    return cells[static_cast<std::size_t>((n - 1) * (e_max + 1) + e)];
  }
  BigInt& at(std::int64_t n, std::int64_t e) {
    return cells[static_cast<std::size_t>((n - 1) * (e_max + 1) + e)];
  }
};

/// D(E) = sum_{L <= E} Omega(L).
struct CumulativeTable {
  SpectrumModel model;
  std::int64_t e_max = 0;
  std::vector<BigInt> d;
};

// Production kernels (OpenMP).

/// Coefficients of prod_lambda (1 - q^lambda)^{-mult} up to q^e_max via the
/// multiplicity-aware recurrence E Omega(E) = sum_k sigma(k) Omega(E-k),
/// sigma(k) = sum_{lambda | k} lambda mult(lambda). The inner sum is an
/// OpenMP reduction; the result is exact and thread-count independent.
CountTable count_states(const SpectrumModel& model, std::int64_t e_max);

/// Omega(N, E) by adding one species at a time; rows of the 2-D table are
/// updated in parallel over E.
JointTable count_joint(const SpectrumModel& model, std::int64_t e_max, std::int64_t n_max);

// Serial references kept for testing and benchmarking.

/// In-place ascending scan new[E] += new[E - lambda], once per species copy.
CountTable count_states_reference(const SpectrumModel& model, std::int64_t e_max);
JointTable count_joint_reference(const SpectrumModel& model, std::int64_t e_max,
                                 std::int64_t n_max);

CumulativeTable cumulative(const CountTable& table);

/// Omega(E, mu) = sum_N Omega(N, E) e^{N mu}. Requires mu <= 0 and
/// n_max >= floor(e_max / lambda_min).
std::vector<double> fugacity_weighted(const JointTable& joint, double mu);

// Independent oracles.

inline constexpr std::int64_t kBruteForceMaxEnergy = 30;

/// Exhaustive enumeration of level occupations (k_1, k_2, ...), each
/// weighted by prod C(mult + k - 1, k). e_max <= kBruteForceMaxEnergy.
CountTable brute_force_oracle(const SpectrumModel& model, std::int64_t e_max);

/// Euler's pentagonal-number recurrence for p(E).
CountTable pentagonal_oracle(std::int64_t e_max);

/// Natural log of a positive big integer.
double log_big(const BigInt& v);

/// Throws SpectrumTruncated if the model is not known up to e_max.
void require_horizon(const SpectrumModel& model, std::int64_t e_max);

// CSV: `E,omega`, `N,E,omega`, `E,D`.
void write_csv(std::ostream& out, const CountTable& table);
void write_csv(std::ostream& out, const JointTable& table);
void write_csv(std::ostream& out, const CumulativeTable& table);

}  // namespace bosecount
