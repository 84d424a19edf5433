#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>

#include "bosecount/errors.hpp"
#include "bosecount/exact.hpp"
#include "bosecount/gpf.hpp"
#include "bosecount/specfun.hpp"

using namespace bosecount;
using specfun::kPi;

namespace {

const SpectrumModel kPart = SpectrumModel::partitions();
const SpectrumModel kS2 = SpectrumModel::sphere(2);

bool close_rel(double got, double want, double rel) {
  return std::fabs(got - want) <= rel * std::fabs(want);
}

bool close_c(Complex got, Complex want, double rel) {
  return std::abs(got - want) <= rel * std::abs(want);
}

}  // namespace

TEST_CASE("log G oracle values") {
  CHECK(close_rel(log_grand_partition(kPart, {1.0, 0.0}).real(),
                  0.684328866976887035182584598759782095894, 1e-14));
  CHECK(close_c(log_grand_partition(kPart, {0.5, 0.3}),
                {1.209546404660520938190467610814924984439, -1.193702661789613583942659757981639576833},
                1e-14));
  CHECK(close_c(log_grand_partition(kS2, {0.2, 0.1}),
                {23.36532686843451790671094981101740093402, -35.32636308813771218356710293488059755135},
                1e-13));
}

TEST_CASE("log G at large x") {
  const auto v = log_grand_partition(kPart, {10.0, 0.0});
  CHECK(close_rel(v.real(), 4.5402e-5, 1e-4));
  CHECK(v.imag() == 0.0);
}

TEST_CASE("log G truncated equals the finite product") {
  Complex direct = 0;
  const HalfPlanePoint t{0.3, 1.1};
  for (int l = 1; l <= 7; ++l) {
    direct -= static_cast<double>(kS2.multiplicity(l)) * std::log(1.0 - std::exp(-static_cast<double>(l) * t.tau()));
  }
  CHECK(close_c(log_grand_partition_truncated(kS2, t, 7), direct, 1e-14));
}

TEST_CASE("conjugate symmetry") {
  for (const auto& m : {kPart, kS2, SpectrumModel::sphere(3)}) {
    for (double x : {0.05, 0.3, 1.0}) {
      for (double y : {0.01, 0.7, 2.9}) {
        const auto a = log_grand_partition(m, {x, y});
        const auto b = log_grand_partition(m, {x, -y});
        CHECK(std::abs(a - std::conj(b)) <= 1e-15 * std::abs(a));
        const auto h = heat_trace(m, {x, y});
        CHECK(std::abs(h - std::conj(heat_trace(m, {x, -y}))) <= 1e-15 * std::abs(h));
        if (y >= x) CHECK(condition_h_margin(m, x, y) == condition_h_margin(m, x, -y));
      }
    }
  }
}

TEST_CASE("domain errors") {
  CHECK_THROWS_AS(log_grand_partition(kPart, {0.0, 1.0}), DomainError);
  CHECK_THROWS_AS(log_grand_partition(kPart, {-1.0, 0.0}), DomainError);
  CHECK_THROWS_AS(heat_trace(kPart, {0.0, 0.0}), DomainError);
  CHECK_THROWS_AS(condition_h_margin(kPart, 0.1, 0.05), DomainError);
  CHECK_THROWS_AS(condition_h_margin(kPart, 0.1, 3.2), DomainError);
  const auto p = zeta_profile(kPart);
  CHECK_THROWS_AS(meinardus_residual(kPart, p, {0.1, 0.2}), SectorError);
  CHECK_THROWS_AS(contour_extract(kPart, 10, 0.4, 10), AliasingError);
  CHECK_THROWS_AS(windowed_extract(kPart, 10, 0.4, 0.0), DomainError);
  CHECK_THROWS_AS(windowed_extract(kPart, 10, 0.4, 3.2), DomainError);
}

TEST_CASE("heat trace closed forms") {
  for (double x : {0.01, 0.1, 1.0}) {
    const double q = std::exp(-x);
    CHECK(close_rel(heat_trace(kPart, {x, 0.0}).real(), q / (1.0 - q), 1e-13));
    CHECK(close_rel(heat_trace(kPart, {x, kPi}).real(), -q / (1.0 + q), 1e-12));
  }
  // 2/x^2 leading behaviour for Sphere(2)
  const double x = 1e-3;
  CHECK(close_rel(heat_trace(kS2, {x, 0.0}).real() * x * x / 2.0, 1.0, 1e-3));
}

TEST_CASE("condition (H) margin") {
  const double m = condition_h_margin(kPart, 0.1, kPi);
  const double q = std::exp(-0.1);
  CHECK(close_rel(m, -q / (1.0 + q) - q / (1.0 - q), 1e-12));
  CHECK(m == doctest::Approx(-9.983).epsilon(1e-3));
  CHECK(condition_h_margin(kPart, 0.1, 0.1) < 0.0);
}

TEST_CASE("decomposition") {
  const auto pp = zeta_profile(kPart);
  const auto d = meinardus_residual(kPart, pp, {1e-2, 0.0});
  CHECK(close_rel(d.principal_part.real(), kPi * kPi / 6.0 / 1e-2, 1e-14));
  CHECK(d.logG == d.principal_part + d.log_term + d.const_term + d.residual_J);
  // J(x) = -x/24 + O(x^2) for partitions
  CHECK(close_rel(d.residual_J.real(), -1e-2 / 24.0, 1e-3));
  CHECK(close_rel(meinardus_residual(kPart, pp, {0.1, 0.0}).residual_J.real(), -0.1 / 24.0, 1e-2));

  const auto ps = zeta_profile(kS2);
  const auto s = meinardus_residual(kS2, ps, {1e-2, 0.0});
  const double z3 = specfun::riemann_zeta(3.0).value;
  CHECK(close_rel(s.principal_part.real(), 2.0 * z3 / 1e-4 - kPi * kPi / 6.0 / 1e-2, 1e-13));
  for (double x : {1e-3, 1e-2, 1e-1}) {
    for (double r : {0.0, 0.5, -1.0}) {
      CHECK(std::abs(meinardus_residual(kS2, ps, {x, r * x}).residual_J) <=
            10.0 * std::pow(x, residual_decay_exponent(2)));
      CHECK(std::abs(meinardus_residual(kPart, pp, {x, r * x}).residual_J) <=
            10.0 * std::pow(x, residual_decay_exponent(1)));
    }
  }
}

TEST_CASE("residual exponents") {
  CHECK(residual_decay_exponent(1) == doctest::Approx(5.0 / 16.0));
  CHECK(residual_decay_exponent(2) == doctest::Approx(5.0 / 8.0));
  CHECK(residual_decay_exponent(3) > 0.0);
  CHECK(residual_decay_exponent(8) < 1.0);
  CHECK_THROWS_AS(residual_decay_exponent(0), DomainError);
}

TEST_CASE("contour extraction") {
  const double x10 = std::sqrt(kPi * kPi / 6.0 / 10.0);
  const auto a = contour_extract(kPart, 10, x10, alias_safe_nodes(kPart, 10, x10));
  CHECK(close_rel(a.value, 42.0, 1e-9));
  CHECK(a.imag_rel < 1e-8);
  CHECK(close_rel(contour_extract(kPart, 0, 0.7, 64).value, 1.0, 1e-14));
  // 64 nodes leave an aliasing error of ~2e-8 here
  CHECK(std::fabs(contour_extract(kS2, 3, 0.5, 64).value - 9.0) > 1e-9);
  const auto nodes = alias_safe_nodes(kS2, 3, 0.5);
  const auto b = contour_extract(kS2, 3, 0.5, nodes);
  CHECK(close_rel(b.value, 9.0, 1e-9));
  const auto c = contour_extract_reference(kS2, 3, 0.5, nodes);
  CHECK(c.value == b.value);
  CHECK(c.imag == b.imag);
}

TEST_CASE("alias bound dominates the raw 4(E+1) error") {
  const auto t = count_states(kPart, 40);
  for (std::int64_t e : {10, 20, 40}) {
    const double x = real_saddle(kPart, e);
    const auto est = contour_extract(kPart, e, x, 4 * (e + 1));
    const double exact = t.omega[e].get_d();
    CHECK(std::fabs(est.value - exact) <= est.alias_bound + 1e-12 * exact);
  }
}

TEST_CASE("alias-safe node count meets 1e-8 on E <= 200") {
  for (const auto& m : {kPart, kS2}) {
    const auto t = count_states(m, 200);
    for (std::int64_t e = 0; e <= 200; e += 17) {
      const double x = real_saddle(m, e);
      const auto n = alias_safe_nodes(m, e, x);
      CHECK(n >= 4 * (e + 1));
      const auto est = contour_extract(m, e, x, n);
      const double exact = t.omega[e].get_d();
      INFO(m.name() << " E = " << e);
      CHECK(std::fabs(est.value - exact) <= 1e-8 * exact);
    }
  }
}

TEST_CASE("windowed integral respects its bound") {
  const double x = std::sqrt(kPi * kPi / 6.0 / 10.0);
  const auto w = windowed_extract(kPart, 10, x, kPi / 2.0);
  CHECK(std::fabs(w.value - 42.0) <= w.error_bound);
  const auto full = windowed_extract(kPart, 10, x, kPi);
  CHECK(close_rel(full.value, 42.0, 1e-10));
  CHECK(full.error_bound < w.error_bound);
  const double g = std::exp(log_grand_partition(kPart, {x, 0.0}).real() + 10.0 * x);
  CHECK(close_rel(full.error_bound, g / kPi, 1e-12));
}

TEST_CASE("real saddle") {
  const double x = real_saddle(kPart, 100);
  CHECK(x > 0.1);
  CHECK(x < 0.15);
  CHECK(real_saddle(kPart, 0) == 1.0);
}

TEST_CASE("grid output") {
  const auto p = zeta_profile(kPart);
  const auto g = condition_h_grid(kPart, &p);
  CHECK(g.size() == 800);
  for (const auto& r : g) CHECK(r.margin < 0.0);
  const auto s = residual_sweep(kPart, p);
  CHECK(s.size() == 20);
  CHECK(std::isnan(s.front().margin));
  CHECK(s.front().x == doctest::Approx(1e-3));
  CHECK(s.back().x == doctest::Approx(1e-1));
  std::ostringstream out;
  write_grid_csv(out, {s.front()});
  CHECK(out.str().rfind("x,y,re_logG,im_logG,re_J,im_J,margin\n0.001,0,", 0) == 0);
  CHECK(out.str().find(",nan\n") != std::string::npos);
}
