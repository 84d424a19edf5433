#include "bosecount/gpf.hpp"

#include <omp.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "bosecount/errors.hpp"
#include "bosecount/specfun.hpp"

namespace bosecount {

namespace {

constexpr double kPi = specfun::kPi;

// Neumaier-compensated complex accumulator; order of additions is fixed by the caller.
class CompensatedSum {
public:
  void add(Complex v) {
    add_part(re_, re_c_, v.real());
    add_part(im_, im_c_, v.imag());
  }
  Complex value() const { return {re_ + re_c_, im_ + im_c_}; }

private:
  static void add_part(double& sum, double& comp, double v) {
    const double t = sum + v;
    if (std::fabs(sum) >= std::fabs(v)) {
      comp += (sum - t) + v;
    } else {
      comp += (v - t) + sum;
    }
    sum = t;
  }
  double re_ = 0, re_c_ = 0, im_ = 0, im_c_ = 0;
};

// -log(1 - w) with w = e^{-lambda tau}, principal branch, accurate for small |w|.
Complex neg_log1m_exp(double lambda, HalfPlanePoint tau) {
  const double r = std::exp(-lambda * tau.x);
  const double angle = std::remainder(lambda * tau.y, 2.0 * kPi);
  const double zr = -r * std::cos(angle);  // z = -w
  const double zi = r * std::sin(angle);
  const double re = 0.5 * std::log1p(2.0 * zr + zr * zr + zi * zi);
  const double im = std::atan2(zi, 1.0 + zr);
  return {-re, -im};
}

void require_right_half_plane(double x, const char* what) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError(std::string(what) + ": requires Re tau > 0");
  }
}

// Visits (lambda, mult) in ascending lambda until the tail bound
// `tail_of(next_lambda, next_mult, ratio)` drops below tol. Custom models
// are finite and visited completely.
template <typename Visit, typename Tail>
void for_each_level(const SpectrumModel& model, double tol, Visit&& visit, Tail&& tail_of) {
  if (model.kind() == ModelKind::Custom) {
    for (const auto& lv : model.custom_levels()) visit(lv.lambda, lv.mult);
    return;
  }
  std::int64_t lambda = model.lambda_min();
  std::int64_t mult = model.multiplicity(lambda);
  for (;;) {
    visit(lambda, mult);
    const std::int64_t next = model.multiplicity(lambda + 1);
    const std::int64_t after = model.multiplicity(lambda + 2);
    const double growth = static_cast<double>(after) / static_cast<double>(next);
    if (tail_of(lambda + 1, next, growth) < tol) break;
    ++lambda;
    mult = next;
  }
}

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on P_n.
template <int N>
struct GaussLegendre {
  std::array<double, N> nodes{};
  std::array<double, N> weights{};

  GaussLegendre() {
    for (int i = 0; i < N; ++i) {
      double z = std::cos(kPi * (i + 0.75) / (N + 0.5));
      double dp = 1.0;
      for (int iter = 0; iter < 100; ++iter) {
        double p0 = 1.0, p1 = z;
        for (int k = 2; k <= N; ++k) {
          const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = N * (z * p1 - p0) / (z * z - 1.0);
        const double dz = p1 / dp;
        z -= dz;
        if (std::fabs(dz) < 1e-16) break;
      }
      nodes[i] = z;
      weights[i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
  }
};

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

Complex log_grand_partition(const SpectrumModel& model, HalfPlanePoint tau, double tail_tol) {
  require_right_half_plane(tau.x, "log_grand_partition");
  if (!(tail_tol > 0.0)) throw DomainError("log_grand_partition: tail_tol must be > 0");
  const double u = std::exp(-tau.x);
  CompensatedSum sum;
  for_each_level(
      model, tail_tol,
      [&](std::int64_t lambda, std::int64_t mult) {
        sum.add(static_cast<double>(mult) * neg_log1m_exp(static_cast<double>(lambda), tau));
      },
      [&](std::int64_t lambda, std::int64_t mult, double growth) {
        // |log(1-w)| <= |w| / (1 - |w|) <= |w| / (1 - u)
        const double ratio = growth * u;
        if (ratio >= 1.0) return std::numeric_limits<double>::infinity();
        const double b = static_cast<double>(mult) * std::exp(-static_cast<double>(lambda) * tau.x);
        return b / ((1.0 - u) * (1.0 - ratio));
      });
  return sum.value();
}

Complex log_grand_partition_truncated(const SpectrumModel& model, HalfPlanePoint tau,
                                      std::int64_t lambda_max) {
  require_right_half_plane(tau.x, "log_grand_partition_truncated");
  CompensatedSum sum;
  if (lambda_max < 1) return {};
  for (const auto& lv : model.eigenvalues_up_to(lambda_max)) {
    sum.add(static_cast<double>(lv.mult) * neg_log1m_exp(static_cast<double>(lv.lambda), tau));
  }
  return sum.value();
}

Complex heat_trace(const SpectrumModel& model, HalfPlanePoint tau, double tail_tol) {
  require_right_half_plane(tau.x, "heat_trace");
  const double u = std::exp(-tau.x);
  CompensatedSum sum;
  for_each_level(
      model, tail_tol,
      [&](std::int64_t lambda, std::int64_t mult) {
        const double l = static_cast<double>(lambda);
        const double angle = std::remainder(l * tau.y, 2.0 * kPi);
        sum.add(static_cast<double>(mult) * std::exp(-l * tau.x) *
                Complex(std::cos(angle), -std::sin(angle)));
      },
      [&](std::int64_t lambda, std::int64_t mult, double growth) {
        const double ratio = growth * u;
        if (ratio >= 1.0) return std::numeric_limits<double>::infinity();
        return static_cast<double>(mult) * std::exp(-static_cast<double>(lambda) * tau.x) /
               (1.0 - ratio);
      });
  return sum.value();
}

double condition_h_margin(const SpectrumModel& model, double x, double y, double tail_tol) {
  require_right_half_plane(x, "condition_h_margin");
  if (!(std::fabs(y) >= x && std::fabs(y) <= kPi)) {
    throw DomainError("condition_h_margin: requires x <= |y| <= pi");
  }
  const double u = std::exp(-x);
  // Re theta(x+iy) - theta(x) = -2 sum mult e^{-l x} sin^2(l y / 2)
  CompensatedSum sum;
  for_each_level(
      model, tail_tol,
      [&](std::int64_t lambda, std::int64_t mult) {
        const double l = static_cast<double>(lambda);
        const double s = std::sin(std::remainder(l * y, 2.0 * kPi) / 2.0);
        sum.add(-2.0 * static_cast<double>(mult) * std::exp(-l * x) * s * s);
      },
      [&](std::int64_t lambda, std::int64_t mult, double growth) {
        const double ratio = growth * u;
        if (ratio >= 1.0) return std::numeric_limits<double>::infinity();
        return 2.0 * static_cast<double>(mult) * std::exp(-static_cast<double>(lambda) * x) /
               (1.0 - ratio);
      });
  return sum.value().real();
}

LogDecomposition meinardus_residual(const SpectrumModel& model, const ZetaProfile& profile,
                                    HalfPlanePoint tau, double tail_tol) {
  require_right_half_plane(tau.x, "meinardus_residual");
  if (std::fabs(tau.y) > tau.x) {
    throw SectorError("meinardus_residual: requires |Im tau| <= Re tau");
  }
  const Complex t = tau.tau();
  LogDecomposition d;
  d.logG = log_grand_partition(model, tau, tail_tol);
  const int n = profile.n;
  for (int j = 0; j < n; ++j) d.principal_part += profile.K[j] * std::pow(t, -(n - j));
  d.log_term = -profile.Z0 * std::log(t);
  d.const_term = profile.Zprime0;
  d.residual_J = d.logG - d.principal_part - d.log_term - d.const_term;
  return d;
}

double residual_decay_exponent(int n) {
  if (n < 1) throw DomainError("residual_decay_exponent: n >= 1 required");
  if (n == 1) {
    const double mu = 0.25;  // 0 < mu < 1/2
    return 0.125 + 0.75 * mu;
  }
  if (n == 2) {
    const double mu = 0.25;  // 0 < mu < 1/2
    return 0.25 + 1.5 * mu;
  }
  const double nn = n;
  const double mu = 0.5 / nn;  // 0 < mu < 1/n
  const double delta_cap =
      std::min({0.5, 4.0 / nn, (4.0 / 3.0) * (0.5 - 1.0 / nn), 4.0 * (1.0 / nn - mu)});
  const double delta = 0.5 * delta_cap;
  return nn * (mu + delta / 4.0);
}

namespace {

void check_contour_args(std::int64_t energy, double x, std::int64_t quad_points) {
  if (energy < 0) throw DomainError("contour_extract: energy must be >= 0");
  require_right_half_plane(x, "contour_extract");
  if (quad_points < energy + 1) {
    throw AliasingError("contour_extract: quad_points = " + std::to_string(quad_points) +
                        " < E + 1 = " + std::to_string(energy + 1) +
                        "; coefficients above Nyquist would fold onto Omega(E)");
  }
}

ContourEstimate finish_contour(const SpectrumModel& model, std::int64_t energy, double x,
                               std::int64_t quad_points, const std::vector<Complex>& terms,
                               double shift) {
  CompensatedSum sum;
  for (const auto& t : terms) sum.add(t);
  const Complex mean = sum.value() / static_cast<double>(quad_points);
  const double scale = std::exp(shift);
  ContourEstimate out;
  out.value = mean.real() * scale;
  out.imag = mean.imag() * scale;
  out.imag_rel = out.value != 0.0 ? std::fabs(out.imag / out.value) : std::fabs(out.imag);
  out.quad_points = quad_points;
  const double e = static_cast<double>(energy);
  const double log_half = log_grand_partition_truncated(model, {x / 2.0, 0.0}, energy).real();
  out.alias_bound = std::exp(e * x - (e + static_cast<double>(quad_points)) * x / 2.0 + log_half);
  return out;
}

Complex contour_term(const SpectrumModel& model, std::int64_t energy, double x, double y,
                     double shift) {
  const Complex lg = log_grand_partition_truncated(model, {x, y}, energy);
  const double e = static_cast<double>(energy);
  return std::exp(lg + Complex(e * x - shift, std::remainder(e * y, 2.0 * kPi)));
}

}  // namespace

ContourEstimate contour_extract(const SpectrumModel& model, std::int64_t energy, double x,
                                std::int64_t quad_points) {
  check_contour_args(energy, x, quad_points);
  if (const auto h = model.horizon(); h && *h < energy) {
    throw SpectrumTruncated("contour_extract: spectrum truncated below E");
  }
  const double shift =
      log_grand_partition_truncated(model, {x, 0.0}, energy).real() + static_cast<double>(energy) * x;
  std::vector<Complex> terms(static_cast<std::size_t>(quad_points));
  const double h = 2.0 * kPi / static_cast<double>(quad_points);
#pragma omp parallel for schedule(static)
  for (std::int64_t j = 0; j < quad_points; ++j) {
    terms[j] = contour_term(model, energy, x, -kPi + h * static_cast<double>(j), shift);
  }
  return finish_contour(model, energy, x, quad_points, terms, shift);
}

ContourEstimate contour_extract_reference(const SpectrumModel& model, std::int64_t energy,
                                          double x, std::int64_t quad_points) {
  check_contour_args(energy, x, quad_points);
  if (const auto h = model.horizon(); h && *h < energy) {
    throw SpectrumTruncated("contour_extract: spectrum truncated below E");
  }
  const double shift =
      log_grand_partition_truncated(model, {x, 0.0}, energy).real() + static_cast<double>(energy) * x;
  std::vector<Complex> terms(static_cast<std::size_t>(quad_points));
  const double h = 2.0 * kPi / static_cast<double>(quad_points);
  for (std::int64_t j = 0; j < quad_points; ++j) {
    terms[j] = contour_term(model, energy, x, -kPi + h * static_cast<double>(j), shift);
  }
  return finish_contour(model, energy, x, quad_points, terms, shift);
}

std::int64_t alias_safe_nodes(const SpectrumModel& model, std::int64_t energy, double x,
                              double rel_tol) {
  if (energy < 0) throw DomainError("alias_safe_nodes: energy must be >= 0");
  require_right_half_plane(x, "alias_safe_nodes");
  if (!(rel_tol > 0.0)) throw DomainError("alias_safe_nodes: rel_tol must be > 0");
  const double full = log_grand_partition_truncated(model, {x, 0.0}, energy).real();
  const double half = log_grand_partition_truncated(model, {x / 2.0, 0.0}, energy).real();
  // e^{Ex - (E+M)x/2} G(x/2) <= rel_tol e^{Ex} G(x)
  const double m = 2.0 / x * (half - full - std::log(rel_tol)) - static_cast<double>(energy);
  const auto needed = static_cast<std::int64_t>(std::ceil(std::max(m, 0.0)));
  return std::max<std::int64_t>(4 * (energy + 1), needed);
}

double real_saddle(const SpectrumModel& model, std::int64_t energy) {
  if (energy < 0) throw DomainError("real_saddle: energy must be >= 0");
  if (energy == 0) return 1.0;
  const double e = static_cast<double>(energy);
  auto phi = [&](double u) {
    const double x = std::exp(u);
    return e * x + log_grand_partition_truncated(model, {x, 0.0}, energy).real();
  };
  // golden section in log x; phi is convex in x
  double a = std::log(1e-4), b = std::log(10.0);
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = phi(c), fd = phi(d);
  for (int i = 0; i < 200 && b - a > 1e-12; ++i) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = phi(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = phi(d);
    }
  }
  return std::exp(0.5 * (a + b));
}

WindowedEstimate windowed_extract(const SpectrumModel& model, std::int64_t energy, double x,
                                  double window) {
  if (energy < 0) throw DomainError("windowed_extract: energy must be >= 0");
  require_right_half_plane(x, "windowed_extract");
  if (!(window > 0.0 && window <= kPi)) throw DomainError("windowed_extract: requires 0 < T <= pi");
  static const GaussLegendre<16> gl;
  const double e = static_cast<double>(energy);
  const double shift = log_grand_partition_truncated(model, {x, 0.0}, energy).real() + e * x;
  const std::int64_t panels = 64 + 2 * energy;
  const double width = 2.0 * window / static_cast<double>(panels);
  std::vector<Complex> panel_sums(static_cast<std::size_t>(panels));
#pragma omp parallel for schedule(static)
  for (std::int64_t p = 0; p < panels; ++p) {
    const double mid = -window + width * (static_cast<double>(p) + 0.5);
    CompensatedSum s;
    for (int i = 0; i < 16; ++i) {
      const double y = mid + 0.5 * width * gl.nodes[i];
      s.add(0.5 * width * gl.weights[i] * contour_term(model, energy, x, y, shift));
    }
    panel_sums[p] = s.value();
  }
  CompensatedSum total;
  for (const auto& v : panel_sums) total.add(v);
  WindowedEstimate out;
  out.value = total.value().real() / (2.0 * window) * std::exp(shift);
  const double log_g = log_grand_partition(model, {x, 0.0}).real();
  out.error_bound = std::exp(log_g + e * x) / window;
  return out;
}

std::vector<GridSample> condition_h_grid(const SpectrumModel& model, const ZetaProfile* profile,
                                         int x_steps, int y_steps) {
  if (x_steps < 1 || y_steps < 2) throw DomainError("condition_h_grid: bad grid size");
  std::vector<GridSample> rows;
  rows.reserve(static_cast<std::size_t>(x_steps * y_steps * 2));
  for (int i = 1; i <= x_steps; ++i) {
    const double x = 0.01 * i;
    for (int sign : {-1, 1}) {
      for (int j = 0; j < y_steps; ++j) {
        const double y = x + (kPi - x) * j / (y_steps - 1);
        rows.push_back({x, sign * y, {}, {}, 0.0});
      }
    }
  }
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const auto count = static_cast<std::int64_t>(rows.size());
#pragma omp parallel for schedule(dynamic, 8)
  for (std::int64_t r = 0; r < count; ++r) {
    auto& row = rows[r];
    if (profile && std::fabs(row.y) <= row.x) {
      const auto d = meinardus_residual(model, *profile, {row.x, row.y});
      row.logG = d.logG;
      row.J = d.residual_J;
    } else {
      row.logG = log_grand_partition(model, {row.x, row.y});
      row.J = {nan, nan};
    }
    row.margin = condition_h_margin(model, row.x, row.y);
  }
  return rows;
}

std::vector<GridSample> residual_sweep(const SpectrumModel& model, const ZetaProfile& profile,
                                       double x_lo, double x_hi, int points, double y_ratio) {
  if (!(x_lo > 0.0 && x_hi > x_lo) || points < 2) throw DomainError("residual_sweep: bad range");
  if (std::fabs(y_ratio) > 1.0) throw SectorError("residual_sweep: requires |y| <= x");
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<GridSample> rows(static_cast<std::size_t>(points));
  const double step = std::log(x_hi / x_lo) / (points - 1);
#pragma omp parallel for schedule(dynamic, 1)
  for (int i = 0; i < points; ++i) {
    const double x = x_lo * std::exp(step * i);
    const double y = y_ratio * x;
    const auto d = meinardus_residual(model, profile, {x, y});
    rows[i] = {x, y, d.logG, d.residual_J, nan};
  }
  return rows;
}

void write_grid_csv(std::ostream& out, const std::vector<GridSample>& rows) {
  out << "x,y,re_logG,im_logG,re_J,im_J,margin\n";
  for (const auto& r : rows) {
    out << fmt(r.x) << ',' << fmt(r.y) << ',' << fmt(r.logG.real()) << ',' << fmt(r.logG.imag())
        << ',' << fmt(r.J.real()) << ',' << fmt(r.J.imag()) << ',' << fmt(r.margin) << '\n';
  }
}

}  // namespace bosecount
