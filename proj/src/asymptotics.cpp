#include "bosecount/asymptotics.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "bosecount/errors.hpp"
#include "bosecount/specfun.hpp"

namespace bosecount {

namespace {

constexpr double kPi = specfun::kPi;

double horner(const std::vector<double>& c, double x) {
  double v = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
  return v;
}

double horner_deriv(const std::vector<double>& c, double x) {
  double v = 0.0;
  for (std::size_t k = c.size() - 1; k >= 1; --k) v = v * x + static_cast<double>(k) * c[k];
  return v;
}

int descartes_sign_changes(const std::vector<double>& c) {
  int changes = 0;
  int last = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    const int s = (*it > 0) - (*it < 0);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void require_energy(double energy) {
  if (!(energy > 0.0) || !std::isfinite(energy)) throw DomainError("energy must be > 0");
}

}  // namespace

std::string to_string(FormulaId id) {
  switch (id) {
    case FormulaId::Main1: return "main1";
    case FormulaId::Main2: return "main2";
    case FormulaId::HardyRamanujan: return "hardy_ramanujan";
    case FormulaId::Meinardus: return "meinardus";
    case FormulaId::UpperBound: return "upper_bound";
  }
  return "unknown";
}

std::vector<double> saddle_polynomial(const ZetaProfile& profile, double energy) {
  require_energy(energy);
  const int n = profile.n;
  std::vector<double> c(static_cast<std::size_t>(n + 2), 0.0);
  for (int j = 0; j < n; ++j) c[j] = -(n - j) * profile.K[j];
  c[n + 1] = energy;
  return c;
}

double f_polynomial(const ZetaProfile& profile, double x) {
  if (!(x > 0.0)) throw DomainError("f_polynomial: requires x > 0");
  const int n = profile.n;
  double v = 0.0;
  for (int j = n - 1; j >= 0; --j) v = v * x + (n - j + 1) * profile.K[j];
  return v;
}

SaddleData solve_saddle(const ZetaProfile& profile, double energy) {
  const auto c = saddle_polynomial(profile, energy);
  const int n = profile.n;
  const double guess = std::pow(n * profile.K[0] / energy, 1.0 / (n + 1));

  if (descartes_sign_changes(c) != 1) {
    double cauchy = 0.0;
    for (int j = 0; j <= n; ++j) cauchy = std::max(cauchy, std::fabs(c[j]) / energy);
    const double top = std::max(1.0 + cauchy, 10.0 * guess);
    constexpr int kScan = 4000;
    int changes = 0;
    double prev = c[0];  // p(0) = -n K_0 < 0
    for (int i = 0; i < kScan; ++i) {
      const double x = top * std::pow(1e-12, 1.0 - static_cast<double>(i) / (kScan - 1));
      const double v = horner(c, x);
      if ((v > 0) != (prev > 0) && v != 0.0) ++changes;
      prev = v;
    }
    if (changes != 1) {
      throw RootError("non-unique root below threshold: p_E has " + std::to_string(changes) +
                      " positive sign changes at E = " + fmt(energy));
    }
  }

  double lo = 0.0;
  double hi = guess;
  while (horner(c, hi) <= 0.0) {
    lo = hi;
    hi *= 2.0;
  }
  double x = guess;
  for (int iter = 0; iter < 200; ++iter) {
    const double v = horner(c, x);
    if (v == 0.0) break;
    (v < 0.0 ? lo : hi) = x;
    const double d = horner_deriv(c, x);
    double next = x - v / d;
    if (!(d > 0.0) || !(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const bool done = std::fabs(next - x) <= 2.0 * std::numeric_limits<double>::epsilon() * x;
    x = next;
    if (done || hi - lo <= 2.0 * std::numeric_limits<double>::epsilon() * x) break;
  }
  if (!(horner_deriv(c, x) > 0.0)) {
    throw RootError("saddle root has p_E'(x_E) <= 0 at E = " + fmt(energy));
  }

  SaddleData s;
  s.E = energy;
  s.x_E = x;
  s.m_E = energy * x;
  s.residual = std::fabs(horner(c, x));
  s.f_at_xE = f_polynomial(profile, x);
  s.exponent = std::pow(x, -n) * s.f_at_xE;
  for (int j = 0; j < n; ++j) {
    s.eta += (n - j) * (n - j + 1) * profile.K[j] * std::pow(x, -(n - j));
  }
  s.eta_positive = s.eta > 0.0;
  return s;
}

AsymptoticResult main_asymptotic(const ZetaProfile& profile, double energy) {
  const SaddleData s = solve_saddle(profile, energy);
  const double n = profile.n;
  const double ln_c = profile.Zprime0 - 0.5 * std::log(2.0 * kPi * (n + 1.0)) +
                      (1.0 - 2.0 * profile.Z0) / (2.0 * (n + 1.0)) * std::log(n * profile.K[0]);
  AsymptoticResult r;
  r.E = energy;
  r.C = std::exp(ln_c);
  r.kappa = (profile.Z0 - 1.0 - n / 2.0) / (n + 1.0);
  r.exponent = s.exponent;
  r.estimate_log = ln_c + r.kappa * std::log(energy) + r.exponent;
  r.formula_id = FormulaId::Main1;
  return r;
}

AsymptoticResult surface_asymptotic_n2(const ZetaProfile& profile, double energy) {
  if (profile.n != 2) {
    throw DomainError("surface_asymptotic_n2: requires n = 2, got n = " + std::to_string(profile.n));
  }
  require_energy(energy);
  const double zeta3 = specfun::riemann_zeta(3.0).value;
  const double base = zeta3 * profile.volSigma / (2.0 * kPi * kPi);
  const double y = std::cbrt(base / energy);
  const double k0 = profile.K[0];
  const double k1 = profile.K[1];
  const double ln_c = profile.Zprime0 - 0.5 * std::log(6.0 * kPi) +
                      (1.0 - 2.0 * profile.Z0) / 6.0 * std::log(base);
  AsymptoticResult r;
  r.E = energy;
  r.C = std::exp(ln_c);
  r.kappa = (profile.Z0 - 2.0) / 3.0;
  r.exponent = 3.0 * k0 / (y * y) + k1 / y - k1 * k1 / (12.0 * k0);
  r.estimate_log = ln_c + r.kappa * std::log(energy) + r.exponent;
  r.formula_id = FormulaId::Main2;
  return r;
}

AsymptoticResult hardy_ramanujan(double energy) {
  require_energy(energy);
  AsymptoticResult r;
  r.E = energy;
  r.C = 1.0 / (4.0 * std::sqrt(3.0));
  r.kappa = -1.0;
  r.exponent = kPi * std::sqrt(2.0 * energy / 3.0);
  r.estimate_log = r.exponent - std::log(4.0 * std::sqrt(3.0)) - std::log(energy);
  r.formula_id = FormulaId::HardyRamanujan;
  return r;
}

MeinardusResult meinardus_general(double alpha, double A, double L0, double L0prime, double C0,
                                  double delta, double energy) {
  if (!(alpha > 0.0)) throw DomainError("meinardus_general: alpha must be > 0");
  if (!(A > 0.0)) throw DomainError("meinardus_general: residue A must be > 0");
  if (!(C0 > 0.0 && C0 < 1.0)) throw DomainError("meinardus_general: C0 must lie in (0, 1)");
  if (!(delta > 0.0 && delta < 0.5)) throw DomainError("meinardus_general: delta must lie in (0, 1/2)");
  require_energy(energy);
  const double base = A * std::exp(specfun::log_gamma(alpha + 1.0).value) *
                      specfun::riemann_zeta(alpha + 1.0).value;
  const double ln_c = L0prime - 0.5 * std::log(2.0 * kPi * (alpha + 1.0)) +
                      (1.0 - 2.0 * L0) / (2.0 * (alpha + 1.0)) * std::log(base);
  MeinardusResult m;
  auto& r = m.result;
  r.E = energy;
  r.C = std::exp(ln_c);
  r.kappa = (L0 - 1.0 - alpha / 2.0) / (1.0 + alpha);
  r.exponent = (alpha + 1.0) / alpha * std::pow(energy, alpha / (alpha + 1.0)) *
               std::pow(base, 1.0 / (alpha + 1.0));
  r.estimate_log = ln_c + r.kappa * std::log(energy) + r.exponent;
  r.formula_id = FormulaId::Meinardus;
  m.kappa1 = alpha / (alpha + 1.0) * std::min(C0 / alpha - delta / 4.0, 0.5 - delta);
  m.kappa1_degenerate = !(m.kappa1 > 0.0);
  return m;
}

double upper_bound_log(const ZetaProfile& profile, double energy) {
  const SaddleData s = solve_saddle(profile, energy);
  const int n = profile.n;
  double psi = 0.0;
  for (int j = 0; j < n; ++j) psi += profile.K[j] * std::pow(s.x_E, -(n - j));
  return -profile.Z0 * std::log(s.x_E) + psi + energy * s.x_E;
}

std::vector<StatPoint> knopp_statistic(const CountTable& table, const ZetaProfile& profile) {
  const double power = static_cast<double>(profile.n) / (profile.n + 1.0);
  std::vector<StatPoint> out;
  for (std::int64_t e = 1; e <= table.e_max; ++e) {
    const auto& v = table.omega[e];
    if (v < 1) continue;
    out.push_back({e, log_big(v) / std::pow(static_cast<double>(e), power)});
  }
  return out;
}

std::vector<StatPoint> weyl_average_statistic(const CumulativeTable& cum,
                                              const ZetaProfile& profile) {
  const double power = static_cast<double>(profile.n) / (profile.n + 1.0);
  std::vector<StatPoint> out;
  for (std::int64_t e = 1; e <= cum.e_max; ++e) {
    out.push_back({e, log_big(cum.d[e]) / std::pow(static_cast<double>(e), power)});
  }
  return out;
}

std::vector<ComparisonRow> compare_with_exact(const CountTable& table, const ZetaProfile& profile,
                                              const std::vector<std::int64_t>& energies) {
  std::vector<ComparisonRow> rows;
  for (const auto e : energies) {
    if (e < 1 || e > table.e_max) {
      throw DomainError("compare: energy " + std::to_string(e) + " outside table range 1.." +
                        std::to_string(table.e_max));
    }
    const auto& v = table.omega[e];
    if (v < 1) throw DomainError("compare: Omega(" + std::to_string(e) + ") = 0");
    const double ln_exact = log_big(v);
    const double ed = static_cast<double>(e);
    std::vector<AsymptoticResult> results{main_asymptotic(profile, ed)};
    if (profile.n == 2) results.push_back(surface_asymptotic_n2(profile, ed));
    if (table.model.kind() == ModelKind::Partitions) results.push_back(hardy_ramanujan(ed));
    for (const auto& r : results) {
      rows.push_back({e, ln_exact, r.estimate_log, std::exp(ln_exact - r.estimate_log), r.formula_id});
    }
  }
  return rows;
}

void write_comparison_csv(std::ostream& out, const std::vector<ComparisonRow>& rows) {
  out << "E,ln_exact,ln_estimate,ratio,formula_id\n";
  for (const auto& r : rows) {
    out << r.E << ',' << fmt(r.ln_exact) << ',' << fmt(r.ln_estimate) << ',' << fmt(r.ratio) << ','
        << to_string(r.formula_id) << '\n';
  }
}

}  // namespace bosecount
