#include "bosecount/exact.hpp"

#include <omp.h>

#include <climits>
#include <cmath>
#include <string>

#include "bosecount/errors.hpp"

namespace bosecount {

namespace {

// Below this size the fork/join overhead dominates the reduction.
constexpr std::int64_t kParallelThreshold = 512;

std::vector<Level> levels_for(const SpectrumModel& model, std::int64_t e_max) {
  if (e_max < 1) return {};
  return model.eigenvalues_up_to(e_max);
}

CountTable empty_table(const SpectrumModel& model, std::int64_t e_max) {
  if (e_max < 0) throw DomainError("e_max must be >= 0");
  require_horizon(model, e_max);
  CountTable t{model, e_max, std::vector<BigInt>(static_cast<std::size_t>(e_max + 1), 0)};
  t.omega[0] = 1;
  return t;
}

JointTable empty_joint(const SpectrumModel& model, std::int64_t e_max, std::int64_t n_max) {
  if (e_max < 0) throw DomainError("e_max must be >= 0");
  if (n_max < 1) throw DomainError("n_max must be >= 1");
  require_horizon(model, e_max);
  JointTable t{model, e_max, n_max,
               std::vector<BigInt>(static_cast<std::size_t>(n_max * (e_max + 1)), 0)};
  return t;
}

}  // namespace

void require_horizon(const SpectrumModel& model, std::int64_t e_max) {
  const auto h = model.horizon();
  if (h && *h < e_max) {
    throw SpectrumTruncated("spectrum truncated below e_max: known up to lambda = " +
                            std::to_string(*h) + ", requested e_max = " + std::to_string(e_max));
  }
}

CountTable count_states(const SpectrumModel& model, std::int64_t e_max) {
  CountTable t = empty_table(model, e_max);
  if (e_max == 0) return t;

  // sigma(k) = sum_{lambda | k} lambda * mult(lambda)
  const auto n = static_cast<std::size_t>(e_max + 1);
  std::vector<BigInt> sigma(n, 0);
  for (const auto& lv : levels_for(model, e_max)) {
    BigInt w = BigInt(static_cast<long>(lv.lambda)) * BigInt(static_cast<long>(lv.mult));
    for (std::int64_t k = lv.lambda; k <= e_max; k += lv.lambda) sigma[k] += w;
  }
  std::vector<unsigned long> sigma_small(n, 0);
  bool small = true;
  for (std::size_t k = 0; k < n; ++k) {
    if (!sigma[k].fits_ulong_p()) {
      small = false;
      break;
    }
    sigma_small[k] = sigma[k].get_ui();
  }

  auto& omega = t.omega;
  for (std::int64_t e = 1; e <= e_max; ++e) {
    BigInt acc = 0;
#pragma omp parallel if (e >= kParallelThreshold)
    {
      BigInt partial = 0;
#pragma omp for schedule(static) nowait
      for (std::int64_t k = 1; k <= e; ++k) {
        if (small) {
          if (sigma_small[k] != 0) {
            mpz_addmul_ui(partial.get_mpz_t(), omega[e - k].get_mpz_t(), sigma_small[k]);
          }
        } else if (sigma[k] != 0) {
          mpz_addmul(partial.get_mpz_t(), omega[e - k].get_mpz_t(), sigma[k].get_mpz_t());
        }
      }
#pragma omp critical(bosecount_count_states)
      acc += partial;
    }
    mpz_divexact_ui(omega[e].get_mpz_t(), acc.get_mpz_t(), static_cast<unsigned long>(e));
  }
  return t;
}

CountTable count_states_reference(const SpectrumModel& model, std::int64_t e_max) {
  CountTable t = empty_table(model, e_max);
  auto& omega = t.omega;
  for (const auto& lv : levels_for(model, e_max)) {
    for (std::int64_t copy = 0; copy < lv.mult; ++copy) {
      for (std::int64_t e = lv.lambda; e <= e_max; ++e) omega[e] += omega[e - lv.lambda];
    }
  }
  return t;
}

JointTable count_joint(const SpectrumModel& model, std::int64_t e_max, std::int64_t n_max) {
  JointTable t = empty_joint(model, e_max, n_max);
  if (e_max == 0) return t;
  // no state with N particles below energy N * lambda_min
  const std::int64_t n_top = std::min(n_max, e_max / model.lambda_min());
  for (const auto& lv : levels_for(model, e_max)) {
    const std::int64_t lambda = lv.lambda;
    for (std::int64_t copy = 0; copy < lv.mult; ++copy) {
      // Row N reads the already-updated row N-1, so rows go in ascending order.
      for (std::int64_t nn = 1; nn <= n_top; ++nn) {
#pragma omp parallel for schedule(static) if (e_max >= kParallelThreshold)
        for (std::int64_t e = lambda; e <= e_max; ++e) {
          if (nn == 1) {
            if (e == lambda) t.at(1, e) += 1;
          } else {
            t.at(nn, e) += t.at(nn - 1, e - lambda);
          }
        }
      }
    }
  }
  return t;
}

JointTable count_joint_reference(const SpectrumModel& model, std::int64_t e_max,
                                 std::int64_t n_max) {
  JointTable t = empty_joint(model, e_max, n_max);
  for (const auto& lv : levels_for(model, e_max)) {
    for (std::int64_t copy = 0; copy < lv.mult; ++copy) {
      for (std::int64_t nn = 1; nn <= n_max; ++nn) {
        for (std::int64_t e = lv.lambda; e <= e_max; ++e) {
          if (nn == 1) {
            if (e == lv.lambda) t.at(1, e) += 1;
          } else {
            t.at(nn, e) += t.at(nn - 1, e - lv.lambda);
          }
        }
      }
    }
  }
  return t;
}

CumulativeTable cumulative(const CountTable& table) {
  CumulativeTable c{table.model, table.e_max, std::vector<BigInt>(table.omega.size())};
  BigInt running = 0;
  for (std::size_t e = 0; e < table.omega.size(); ++e) {
    running += table.omega[e];
    c.d[e] = running;
  }
  return c;
}

std::vector<double> fugacity_weighted(const JointTable& joint, double mu) {
  if (!(mu <= 0.0)) throw DomainError("fugacity_weighted: mu must be <= 0");
  const std::int64_t needed = joint.e_max / joint.model.lambda_min();
  if (joint.n_max < needed) {
    throw DomainError("fugacity_weighted: joint table incomplete (n_max = " +
                      std::to_string(joint.n_max) + " < " + std::to_string(needed) + ")");
  }
  std::vector<double> out(static_cast<std::size_t>(joint.e_max + 1), 0.0);
  out[0] = 1.0;
  for (std::int64_t e = 1; e <= joint.e_max; ++e) {
    double sum = 0.0;
    for (std::int64_t nn = 1; nn <= joint.n_max; ++nn) {
      const BigInt& v = joint.at(nn, e);
      if (v == 0) continue;
      sum += std::exp(log_big(v) + static_cast<double>(nn) * mu);
    }
    out[e] = sum;
  }
  return out;
}

namespace {

void enumerate_levels(const std::vector<Level>& levels, std::size_t i, std::int64_t remaining,
                      const BigInt& weight, std::int64_t e_max, std::vector<BigInt>& omega) {
  if (i == levels.size()) {
    omega[e_max - remaining] += weight;
    return;
  }
  const auto& lv = levels[i];
  BigInt ways;
  for (std::int64_t k = 0; k * lv.lambda <= remaining; ++k) {
    // bosons distributed over mult species: C(mult + k - 1, k)
    mpz_bin_uiui(ways.get_mpz_t(), static_cast<unsigned long>(lv.mult + k - 1),
                 static_cast<unsigned long>(k));
    enumerate_levels(levels, i + 1, remaining - k * lv.lambda, weight * ways, e_max, omega);
  }
}

}  // namespace

CountTable brute_force_oracle(const SpectrumModel& model, std::int64_t e_max) {
  if (e_max > kBruteForceMaxEnergy) {
    throw DomainError("brute_force_oracle refuses e_max = " + std::to_string(e_max) +
                      " (limit " + std::to_string(kBruteForceMaxEnergy) + ")");
  }
  CountTable t = empty_table(model, e_max);
  t.omega[0] = 0;
  enumerate_levels(levels_for(model, e_max), 0, e_max, BigInt(1), e_max, t.omega);
  return t;
}

CountTable pentagonal_oracle(std::int64_t e_max) {
  CountTable t = empty_table(SpectrumModel::partitions(), e_max);
  auto& p = t.omega;
  for (std::int64_t e = 1; e <= e_max; ++e) {
    BigInt acc = 0;
    for (std::int64_t k = 1;; ++k) {
      const std::int64_t g1 = k * (3 * k - 1) / 2;
      if (g1 > e) break;
      const std::int64_t g2 = k * (3 * k + 1) / 2;
      if (k % 2 == 1) {
        acc += p[e - g1];
        if (g2 <= e) acc += p[e - g2];
      } else {
        acc -= p[e - g1];
        if (g2 <= e) acc -= p[e - g2];
      }
    }
    p[e] = acc;
  }
  return t;
}

double log_big(const BigInt& v) {
  if (v <= 0) throw DomainError("log_big: argument must be positive");
  long exp2 = 0;
  const double mant = mpz_get_d_2exp(&exp2, v.get_mpz_t());
  return std::log(mant) + static_cast<double>(exp2) * std::log(2.0);
}

void write_csv(std::ostream& out, const CountTable& table) {
  out << "E,omega\n";
  for (std::size_t e = 0; e < table.omega.size(); ++e) {
    out << e << ',' << table.omega[e].get_str() << '\n';
  }
}

void write_csv(std::ostream& out, const JointTable& table) {
  out << "N,E,omega\n";
  for (std::int64_t nn = 1; nn <= table.n_max; ++nn) {
    for (std::int64_t e = 0; e <= table.e_max; ++e) {
      out << nn << ',' << e << ',' << table.at(nn, e).get_str() << '\n';
    }
  }
}

void write_csv(std::ostream& out, const CumulativeTable& table) {
  out << "E,D\n";
  for (std::size_t e = 0; e < table.d.size(); ++e) out << e << ',' << table.d[e].get_str() << '\n';
}

}  // namespace bosecount
