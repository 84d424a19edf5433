#pragma once

// Real-argument special functions: Riemann and Hurwitz zeta (values and
// s-derivatives) via Euler-Maclaurin summation, and log-Gamma via a shifted
// Stirling series. Internal arithmetic is long double; results are returned
// as double together with an absolute error bound.
//
// Truncation orders are fixed at compile time (see kShift and kOrder below)
// so results are deterministic.

namespace bosecount::specfun {

struct SpecialValue {
  double value = 0.0;
  double abs_error_bound = 0.0;
};

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr long double kPiL = 3.141592653589793238462643383279502884L;
inline constexpr long double kLn2PiL = 1.837877066409345483560659472811235279723L;
/// Glaisher-Kinkelin constant.
inline constexpr long double kGlaisherL = 1.282427129100622636875342568869791727767L;

/// Euler-Maclaurin parameters: terms are summed directly until the
/// argument reaches kShift, then kOrder Bernoulli corrections are applied.
inline constexpr int kShift = 25;
inline constexpr int kOrder = 14;
/// For s < 0 the direct terms grow like k^{-s} and cancel against the
/// integral term, so the shift is kept small there: kShiftNegative on
/// [-6, 0), kShiftVeryNegative below.
inline constexpr int kShiftNegative = 6;
inline constexpr int kShiftVeryNegative = 4;

SpecialValue riemann_zeta(double s);

/// zeta'(point) for point in {0, -1}; closed forms.
SpecialValue riemann_zeta_deriv(int point);

SpecialValue hurwitz_zeta(double s, double a);

/// d/ds zeta(s, a) at arbitrary real s != 1.
SpecialValue hurwitz_zeta_deriv(double s, double a);

/// d/ds zeta(s, a) at s = 0, i.e. ln Gamma(a) - ln(2 pi)/2.
SpecialValue hurwitz_zeta_deriv0(double a);

SpecialValue log_gamma(double x);

/// Bernoulli number B_{2k}, k = 0..kMaxBernoulliIndex.
long double bernoulli_even(int k);
inline constexpr int kMaxBernoulliIndex = 30;

namespace detail {
// Euler-Maclaurin with explicit shift and order; exposed for the
// cross-check against higher-order evaluations.
SpecialValue hurwitz_em(long double s, long double a, int shift, int order);
SpecialValue hurwitz_em_deriv(long double s, long double a, int shift, int order);
}  // namespace detail

}  // namespace bosecount::specfun
