#include "bosecount/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "bosecount/errors.hpp"

namespace bosecount::specfun {

namespace {

constexpr long double kEpsL = std::numeric_limits<long double>::epsilon();

// Exact B_{2k} for k <= 10; larger indices via 2 (2k)! zeta(2k) / (2 pi)^{2k}.
constexpr std::array<long double, 11> kBernoulliSmall = {
    1.0L,
    1.0L / 6.0L,
    -1.0L / 30.0L,
    1.0L / 42.0L,
    -1.0L / 30.0L,
    5.0L / 66.0L,
    -691.0L / 2730.0L,
    7.0L / 6.0L,
    -3617.0L / 510.0L,
    43867.0L / 798.0L,
    -174611.0L / 330.0L,
};

std::array<long double, kMaxBernoulliIndex + 1> make_bernoulli_table() {
  std::array<long double, kMaxBernoulliIndex + 1> b{};
  for (int k = 0; k <= kMaxBernoulliIndex; ++k) {
    if (k < static_cast<int>(kBernoulliSmall.size())) {
      b[k] = kBernoulliSmall[k];
      continue;
    }
    long double zeta2k = 0.0L;
    for (int m = 30; m >= 1; --m) zeta2k += std::pow(static_cast<long double>(m), -2.0L * k);
    long double mag = 2.0L * zeta2k;
    for (int i = 1; i <= 2 * k; ++i) mag *= static_cast<long double>(i) / (2.0L * kPiL);
    b[k] = (k % 2 == 1) ? mag : -mag;
  }
  return b;
}

const std::array<long double, kMaxBernoulliIndex + 1>& bernoulli_table() {
  static const auto table = make_bernoulli_table();
  return table;
}

// B_{2j} / (2j)!
long double em_coeff(int j) {
  long double c = bernoulli_table()[j];
  for (int i = 1; i <= 2 * j; ++i) c /= static_cast<long double>(i);
  return c;
}

SpecialValue finish(long double value, long double bound) {
  SpecialValue out;
  out.value = static_cast<double>(value);
  const double ulp_half =
      0.5 * std::numeric_limits<double>::epsilon() * std::fabs(out.value);
  out.abs_error_bound = static_cast<double>(bound) + ulp_half +
                        static_cast<double>(std::fabs(value - static_cast<long double>(out.value)));
  return out;
}

int shift_for(long double a, int shift) {
  if (a >= shift) return 0;
  return shift - static_cast<int>(std::floor(a));
}

int shift_for_s(double s) {
  if (s >= 0.0) return kShift;
  return s >= -6.0 ? kShiftNegative : kShiftVeryNegative;
}

// sin(pi * x) with exact argument reduction.
long double sinpi(long double x) {
  long double r = std::fmod(x, 2.0L);
  if (r < 0) r += 2.0L;
  if (r == 0.0L || r == 1.0L) return 0.0L;
  if (r == 0.5L) return 1.0L;
  if (r == 1.5L) return -1.0L;
  return std::sin(kPiL * r);
}

}  // namespace

long double bernoulli_even(int k) {
  if (k < 0 || k > kMaxBernoulliIndex) {
    throw DomainError("bernoulli_even: index out of range: " + std::to_string(k));
  }
  return bernoulli_table()[k];
}

namespace detail {

SpecialValue hurwitz_em(long double s, long double a, int shift, int order) {
  const int n = shift_for(a, shift);
  long double sum = 0.0L;
  long double magnitude = 0.0L;
  for (int k = n - 1; k >= 0; --k) {
    const long double t = std::pow(a + k, -s);
    sum += t;
    magnitude += std::fabs(t);
  }
  const long double w = a + n;
  const long double w_pow = std::pow(w, -s);
  const long double integral = w * w_pow / (s - 1.0L);
  sum += integral + 0.5L * w_pow;
  magnitude += std::fabs(integral) + 0.5L * std::fabs(w_pow);

  // (s)_{2j-1} w^{-s-2j+1}
  long double poch = s;
  long double wp = w_pow / w;
  long double next_term = 0.0L;
  for (int j = 1; j <= order + 1; ++j) {
    const long double t = em_coeff(j) * poch * wp;
    if (j <= order) {
      sum += t;
      magnitude += std::fabs(t);
    } else {
      next_term = t;
    }
    poch *= (s + 2 * j - 1) * (s + 2 * j);
    wp /= w * w;
  }
  const long double bound = 2.0L * std::fabs(next_term) + 8.0L * kEpsL * magnitude;
  return finish(sum, bound);
}

SpecialValue hurwitz_em_deriv(long double s, long double a, int shift, int order) {
  const int n = shift_for(a, shift);
  long double sum = 0.0L;
  long double magnitude = 0.0L;
  for (int k = n - 1; k >= 0; --k) {
    const long double x = a + k;
    const long double t = -std::log(x) * std::pow(x, -s);
    sum += t;
    magnitude += std::fabs(t);
  }
  const long double w = a + n;
  const long double lw = std::log(w);
  const long double w_pow = std::pow(w, -s);
  const long double sm1 = s - 1.0L;
  const long double integral = w * w_pow * (-lw / sm1 - 1.0L / (sm1 * sm1));
  const long double half = -0.5L * lw * w_pow;
  sum += integral + half;
  magnitude += std::fabs(integral) + std::fabs(half);

  // P(s) = (s)_{2j-1} and its derivative, advanced two factors at a time.
  long double p = s;
  long double dp = 1.0L;
  long double wp = w_pow / w;
  long double next_term = 0.0L;
  for (int j = 1; j <= order + 1; ++j) {
    const long double t = em_coeff(j) * wp * (dp - lw * p);
    if (j <= order) {
      sum += t;
      magnitude += std::fabs(t);
    } else {
      next_term = t;
    }
    for (int i = 2 * j - 1; i <= 2 * j; ++i) {
      dp = dp * (s + i) + p;
      p *= (s + i);
    }
    wp /= w * w;
  }
  const long double bound = 2.0L * std::fabs(next_term) + 8.0L * kEpsL * magnitude;
  return finish(sum, bound);
}

}  // namespace detail

SpecialValue riemann_zeta(double s) {
  if (s == 1.0) throw PoleError("riemann_zeta: pole at s = 1");
  if (!std::isfinite(s)) throw DomainError("riemann_zeta: non-finite argument");
  if (s >= -0.5) return detail::hurwitz_em(s, 1.0L, kShift, kOrder);

  // Trivial zeros.
  if (std::floor(s) == s && std::fmod(s, 2.0) == 0.0) return {0.0, 0.0};

  // Reflection: zeta(s) = 2^s pi^{s-1} sin(pi s / 2) Gamma(1-s) zeta(1-s).
  const long double sl = s;
  const SpecialValue z1 = detail::hurwitz_em(1.0L - sl, 1.0L, kShift, kOrder);
  const SpecialValue lg = log_gamma(1.0 - s);
  const long double pref = std::pow(2.0L, sl) * std::pow(kPiL, sl - 1.0L) *
                           sinpi(sl / 2.0L) * std::exp(static_cast<long double>(lg.value));
  const long double value = pref * z1.value;
  const long double rel = z1.abs_error_bound / std::fabs(z1.value) + lg.abs_error_bound +
                          64.0L * kEpsL * (1.0L + std::fabs(sl));
  return finish(value, std::fabs(value) * rel);
}

SpecialValue riemann_zeta_deriv(int point) {
  if (point == 0) return finish(-0.5L * kLn2PiL, 2.0L * kEpsL);
  if (point == -1) return finish(1.0L / 12.0L - std::log(kGlaisherL), 2.0L * kEpsL);
  throw DomainError("riemann_zeta_deriv: unsupported point " + std::to_string(point) +
                    " (supported: 0, -1)");
}

SpecialValue hurwitz_zeta(double s, double a) {
  if (s == 1.0) throw PoleError("hurwitz_zeta: pole at s = 1");
  if (!(a > 0.0)) throw DomainError("hurwitz_zeta: requires a > 0");
  if (!std::isfinite(s) || !std::isfinite(a)) throw DomainError("hurwitz_zeta: non-finite argument");
  return detail::hurwitz_em(s, a, shift_for_s(s), kOrder);
}

SpecialValue hurwitz_zeta_deriv(double s, double a) {
  if (s == 1.0) throw PoleError("hurwitz_zeta_deriv: pole at s = 1");
  if (!(a > 0.0)) throw DomainError("hurwitz_zeta_deriv: requires a > 0");
  if (!std::isfinite(s) || !std::isfinite(a)) {
    throw DomainError("hurwitz_zeta_deriv: non-finite argument");
  }
  return detail::hurwitz_em_deriv(s, a, shift_for_s(s), kOrder);
}

SpecialValue hurwitz_zeta_deriv0(double a) {
  if (!(a > 0.0)) throw DomainError("hurwitz_zeta_deriv0: requires a > 0");
  const SpecialValue lg = log_gamma(a);
  return finish(static_cast<long double>(lg.value) - 0.5L * kLn2PiL,
                lg.abs_error_bound + 2.0L * kEpsL);
}

SpecialValue log_gamma(double x) {
  if (!(x > 0.0)) throw DomainError("log_gamma: requires x > 0");
  if (!std::isfinite(x)) throw DomainError("log_gamma: non-finite argument");
  if (x == 1.0 || x == 2.0) return {0.0, 0.0};
  constexpr long double kStirlingMin = 15.0L;
  long double z = x;
  long double prod = 1.0L;
  while (z < kStirlingMin) {
    prod *= z;
    z += 1.0L;
  }
  constexpr int kTerms = 10;
  long double series = 0.0L;
  long double zp = z;
  const long double z2 = z * z;
  long double next = 0.0L;
  for (int k = 1; k <= kTerms + 1; ++k) {
    const long double t = bernoulli_table()[k] / (2.0L * k * (2.0L * k - 1.0L) * zp);
    if (k <= kTerms) {
      series += t;
    } else {
      next = t;
    }
    zp *= z2;
  }
  const long double main = (z - 0.5L) * std::log(z) - z + 0.5L * kLn2PiL;
  const long double value = main + series - std::log(prod);
  const long double magnitude = std::fabs(main) + z + std::fabs(std::log(prod)) + 1.0L;
  return finish(value, std::fabs(next) + 8.0L * kEpsL * magnitude);
}

}  // namespace bosecount::specfun
