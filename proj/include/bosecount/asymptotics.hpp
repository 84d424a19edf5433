#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "bosecount/exact.hpp"
#include "bosecount/spectrum.hpp"

namespace bosecount {

/// Saddle point of E tau + sum_j K_j tau^{-(n-j)} on the positive axis.
struct SaddleData {
  double E = 0;
  double x_E = 0;
  double m_E = 0;       ///< E x_E
  double eta = 0;       ///< sum_j (n-j)(n-j+1) K_j x_E^{-(n-j)}
  double f_at_xE = 0;   ///< f(x_E), f(x) = sum_j (n-j+1) K_j x^j
  double exponent = 0;  ///< x_E^{-n} f(x_E)
  double residual = 0;  ///< |p_E(x_E)|
  bool eta_positive = false;
};

enum class FormulaId { Main1, Main2, HardyRamanujan, Meinardus, UpperBound };

std::string to_string(FormulaId id);

/// All estimates are carried in log space.
struct AsymptoticResult {
  double E = 0;
  double estimate_log = 0;
  double C = 0;
  double kappa = 0;
  double exponent = 0;
  FormulaId formula_id = FormulaId::Main1;
};

/// Coefficients of p_E(x) = E x^{n+1} - sum_{j<n} (n-j) K_j x^j, ascending powers.
std::vector<double> saddle_polynomial(const ZetaProfile& profile, double energy);

/// Unique positive root of p_E via bracketed Newton. Uniqueness is verified
/// (Descartes' sign rule, then a sign scan up to the Cauchy root bound);
/// throws RootError when it fails, i.e. for E below the uniqueness threshold.
SaddleData solve_saddle(const ZetaProfile& profile, double energy);

/// f(x) = sum_{j<n} (n-j+1) K_j x^j.
double f_polynomial(const ZetaProfile& profile, double x);

/// Omega(E) ~ C E^kappa exp(x_E^{-n} f(x_E)).
AsymptoticResult main_asymptotic(const ZetaProfile& profile, double energy);

/// n = 2 form with y_E = (zeta(3) Vol / (2 pi^2 E))^{1/3}.
AsymptoticResult surface_asymptotic_n2(const ZetaProfile& profile, double energy);

/// p(E) ~ e^{pi sqrt(2E/3)} / (4 E sqrt 3).
AsymptoticResult hardy_ramanujan(double energy);

struct MeinardusResult {
  AsymptoticResult result;
  double kappa1 = 0;
  bool kappa1_degenerate = false;  ///< kappa1 <= 0 for the given (C0, delta)
};

/// Classical Meinardus asymptotic for a Dirichlet series with one pole at
/// alpha (residue A), L(0) and L'(0).
MeinardusResult meinardus_general(double alpha, double A, double L0, double L0prime, double C0,
                                  double delta, double energy);

/// -Z_P(0) ln x_E + psi(x_E) + E x_E with psi(x) = sum_j K_j x^{-(n-j)}:
/// the log of the upper bound on Omega(E) up to an unknown additive constant.
double upper_bound_log(const ZetaProfile& profile, double energy);

struct StatPoint {
  std::int64_t E = 0;
  double stat = 0;
};

/// E^{-n/(n+1)} ln Omega(E) for E >= 1 with Omega(E) >= 1.
std::vector<StatPoint> knopp_statistic(const CountTable& table, const ZetaProfile& profile);

/// E^{-n/(n+1)} ln D(E) for E >= 1.
std::vector<StatPoint> weyl_average_statistic(const CumulativeTable& cum,
                                              const ZetaProfile& profile);

struct ComparisonRow {
  std::int64_t E = 0;
  double ln_exact = 0;
  double ln_estimate = 0;
  double ratio = 0;  ///< Omega(E) / estimate
  FormulaId formula_id = FormulaId::Main1;
};

/// Exact counts against every applicable formula: main1 always, main2 for
/// n = 2, Hardy-Ramanujan for the partition model.
std::vector<ComparisonRow> compare_with_exact(const CountTable& table, const ZetaProfile& profile,
                                              const std::vector<std::int64_t>& energies);

/// `E,ln_exact,ln_estimate,ratio,formula_id`
void write_comparison_csv(std::ostream& out, const std::vector<ComparisonRow>& rows);

}  // namespace bosecount
