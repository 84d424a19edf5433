#pragma once

#include <complex>
#include <cstdint>
#include <ostream>
#include <vector>

#include "bosecount/spectrum.hpp"

namespace bosecount {

using Complex = std::complex<double>;

/// tau = x + i y with x > 0.
struct HalfPlanePoint {
  double x = 1.0;
  double y = 0.0;

  Complex tau() const { return {x, y}; }
};

/// log G = principal_part + log_term + const_term + residual_J.
struct LogDecomposition {
  Complex logG;
  Complex principal_part;  ///< sum_j K_j tau^{-(n-j)}
  Complex log_term;        ///< -Z_P(0) log tau, principal branch
  double const_term = 0;   ///< Z_P'(0)
  Complex residual_J;
};

inline constexpr double kDefaultTailTol = 1e-14;

/// log G_P(tau) = -sum_l mult(l) log(1 - e^{-l tau}), principal branch per
/// factor, summed in ascending l with compensation. The series is cut once
/// the geometric bound on the remaining tail drops below `tail_tol`, so the
/// absolute error is at most tail_tol plus rounding.
Complex log_grand_partition(const SpectrumModel& model, HalfPlanePoint tau,
                            double tail_tol = kDefaultTailTol);

/// Same, but over the finite product lambda <= lambda_max (no tail).
Complex log_grand_partition_truncated(const SpectrumModel& model, HalfPlanePoint tau,
                                      std::int64_t lambda_max);

/// theta(tau) = sum_l mult(l) e^{-l tau}.
Complex heat_trace(const SpectrumModel& model, HalfPlanePoint tau,
                   double tail_tol = kDefaultTailTol);

/// Re theta(x + iy) - theta(x), for x <= |y| <= pi.
double condition_h_margin(const SpectrumModel& model, double x, double y,
                          double tail_tol = kDefaultTailTol);

/// Lemma-style decomposition of log G with J measured as the residual.
/// Requires |y| <= x.
LogDecomposition meinardus_residual(const SpectrumModel& model, const ZetaProfile& profile,
                                    HalfPlanePoint tau, double tail_tol = kDefaultTailTol);

/// Exponent C_0 of the residual decay |J(x)| = O(x^{C_0}) for dimension n,
/// with mu fixed at half its admissible range.
double residual_decay_exponent(int n);

struct ContourEstimate {
  double value = 0;        ///< Re of the quadrature
  double imag = 0;         ///< Im of the quadrature (should vanish)
  double imag_rel = 0;     ///< |imag| / |value|
  double alias_bound = 0;  ///< bound on coefficients folded in from E + M, E + 2M, ...
  std::int64_t quad_points = 0;
};

/// Omega(E) = (1/2pi) int_{|y|<=pi} e^{E(x+iy)} G_P(x+iy) dy by the periodic
/// trapezoid rule on `quad_points` nodes, with G_P truncated to lambda <= E.
/// Throws AliasingError if quad_points < E + 1.
ContourEstimate contour_extract(const SpectrumModel& model, std::int64_t energy, double x,
                                std::int64_t quad_points);

/// Serial version of the same quadrature (reference for the parallel one).
ContourEstimate contour_extract_reference(const SpectrumModel& model, std::int64_t energy,
                                          double x, std::int64_t quad_points);

/// Smallest node count >= 4(E+1) for which the alias bound is below
/// rel_tol * e^{Ex} G_P(x).
std::int64_t alias_safe_nodes(const SpectrumModel& model, std::int64_t energy, double x,
                              double rel_tol = 1e-16);

/// Minimiser of E x + log G_P(x) (G truncated to lambda <= E) over x > 0;
/// the radius where the contour integrand has the least cancellation.
double real_saddle(const SpectrumModel& model, std::int64_t energy);

struct WindowedEstimate {
  double value = 0;
  double error_bound = 0;  ///< G_P(x) e^{Ex} / T with unit spectral gap
};

/// (1/2T) int_{-T}^{T} e^{E(x+iy)} G_P(x+iy) dy by composite Gauss-Legendre,
/// for 0 < T <= pi.
WindowedEstimate windowed_extract(const SpectrumModel& model, std::int64_t energy, double x,
                                  double window);

/// One row of the diagnostic grid CSV.
struct GridSample {
  double x = 0;
  double y = 0;
  Complex logG;
  Complex J;            ///< NaN outside the sector |y| <= x
  double margin = 0;    ///< NaN outside x <= |y| <= pi
};

/// x in {0.01, 0.02, ..., 0.20}; y in +-linspace(x, pi, 20).
std::vector<GridSample> condition_h_grid(const SpectrumModel& model, const ZetaProfile* profile,
                                         int x_steps = 20, int y_steps = 20);

/// x log-spaced over [x_lo, x_hi], y = y_ratio * x.
std::vector<GridSample> residual_sweep(const SpectrumModel& model, const ZetaProfile& profile,
                                       double x_lo = 1e-3, double x_hi = 1e-1, int points = 20,
                                       double y_ratio = 0.0);

/// `x,y,re_logG,im_logG,re_J,im_J,margin`
void write_grid_csv(std::ostream& out, const std::vector<GridSample>& rows);

}  // namespace bosecount
