#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <fstream>

#include "bosecount/errors.hpp"
#include "bosecount/specfun.hpp"
#include "bosecount/spectrum.hpp"

using namespace bosecount;
using specfun::kPi;

namespace {

bool close_rel(double got, double want, double rel) {
  return std::fabs(got - want) <= rel * std::fabs(want);
}

// (2k+n-1)(k+n-2)! / (k! (n-1)!) in long double
long double factorial_dim(int n, int k) {
  long double num = 2.0L * k + n - 1;
  for (int i = 1; i <= k + n - 2; ++i) num *= i;
  long double den = 1.0L;
  for (int i = 1; i <= k; ++i) den *= i;
  for (int i = 1; i <= n - 1; ++i) den *= i;
  return num / den;
}

}  // namespace

TEST_CASE("eigenvalue listings") {
  CHECK(SpectrumModel::partitions().eigenvalues_up_to(4) ==
        std::vector<Level>{{1, 1}, {2, 1}, {3, 1}, {4, 1}});
  CHECK(SpectrumModel::sphere(2).eigenvalues_up_to(3) == std::vector<Level>{{1, 1}, {2, 3}, {3, 5}});
  CHECK(SpectrumModel::sphere(3).eigenvalues_up_to(4) == std::vector<Level>{{2, 1}, {3, 4}, {4, 9}});
  CHECK_THROWS_AS(SpectrumModel::partitions().eigenvalues_up_to(0), DomainError);
}

TEST_CASE("sphere multiplicities against factorial count") {
  for (int n = 2; n <= 6; ++n) {
    const auto m = SpectrumModel::sphere(n);
    for (std::int64_t cap = 1; cap <= 50; ++cap) {
      long double listed = 0, direct = 0;
      for (const auto& lv : m.eigenvalues_up_to(cap)) listed += lv.mult;
      for (int k = 0; k + n - 1 <= cap; ++k) direct += factorial_dim(n, k);
      INFO("n = " << n << ", cap = " << cap);
      CHECK(listed == direct);
    }
  }
  CHECK(SpectrumModel::sphere(2).multiplicity(7) == 13);
  CHECK(SpectrumModel::sphere(3).multiplicity(1) == 0);
}

TEST_CASE("sphere requires n >= 2") {
  CHECK_THROWS_AS(SpectrumModel::sphere(1), DomainError);
  CHECK_THROWS_AS(parse_model_spec("sphere:1"), DomainError);
}

TEST_CASE("multiplicity polynomial reproduces the table") {
  for (int n = 2; n <= 7; ++n) {
    const auto c = sphere_multiplicity_polynomial(n);
    const auto m = SpectrumModel::sphere(n);
    for (std::int64_t lam = n - 1; lam <= n + 30; ++lam) {
      long double v = 0;
      for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * lam + *it;
      CHECK(std::llround(v) == m.multiplicity(lam));
    }
  }
}

TEST_CASE("partition profile") {
  const auto p = zeta_profile(SpectrumModel::partitions());
  CHECK(p.n == 1);
  CHECK(p.A == std::vector<double>{1.0});
  CHECK(close_rel(p.K[0], kPi * kPi / 6.0, 1e-15));
  CHECK(p.Z0 == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(close_rel(p.Zprime0, -0.5 * std::log(2.0 * kPi), 1e-15));
  CHECK(close_rel(p.detP, std::sqrt(2.0 * kPi), 1e-15));
  CHECK(close_rel(p.Bn, kPi * std::sqrt(2.0 / 3.0), 1e-15));
}

TEST_CASE("sphere(2) profile") {
  const auto p = zeta_profile(SpectrumModel::sphere(2));
  const double z3 = specfun::riemann_zeta(3.0).value;
  CHECK(p.n == 2);
  CHECK(p.A[0] == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(p.A[1] == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(close_rel(p.K[0], 2.0 * z3, 1e-12));
  CHECK(close_rel(p.K[1], -kPi * kPi / 6.0, 1e-12));
  CHECK(p.Z0 == doctest::Approx(1.0 / 3.0).epsilon(1e-13));
  CHECK(close_rel(p.volSigma, 8.0 * kPi * kPi, 1e-13));
  const double zpm1 = -0.165421143700450929213919660242780642764;
  CHECK(close_rel(p.Zprime0, 2.0 * zpm1 + 0.5 * std::log(2.0 * kPi), 1e-12));
  CHECK(close_rel(p.Bn, 3.0 * std::cbrt(z3 / 2.0), 1e-12));
}

TEST_CASE("profile invariants for built-in models") {
  for (const auto& m : {SpectrumModel::partitions(), SpectrumModel::sphere(2),
                        SpectrumModel::sphere(3), SpectrumModel::sphere(4), SpectrumModel::sphere(5)}) {
    const auto p = zeta_profile(m);
    INFO(m.name());
    CHECK(p.K[0] > 0.0);
    for (int j = 0; j < p.n; ++j) {
      const double k = p.A[j] * specfun::riemann_zeta(p.n - j + 1.0).value *
                       std::exp(specfun::log_gamma(p.n - j).value);
      CHECK(close_rel(p.K[j], k, 1e-13));
    }
    CHECK(close_rel(p.Bn, p.bn_via_volume(), 1e-12));
    CHECK(close_rel(p.detP * std::exp(p.Zprime0), 1.0, 1e-12));
  }
}

TEST_CASE("sphere(3) zeta combination") {
  // mult(lambda) = (lambda - 1)^2 on lambda >= 2
  const auto p = zeta_profile(SpectrumModel::sphere(3));
  CHECK(p.A[0] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(p.A[1] == doctest::Approx(-2.0).epsilon(1e-14));
  CHECK(p.A[2] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(p.Z0 == doctest::Approx(-1.0 / 3.0).epsilon(1e-13));
  // zeta'(-2) - 2 zeta'(-1) + zeta'(0)
  const double want = -0.030448457058393270780251530471154776647 +
                      2.0 * 0.165421143700450929213919660242780642764 -
                      0.9189385332046727417803297364056176398614;
  CHECK(close_rel(p.Zprime0, want, 1e-12));
}

TEST_CASE("custom profile is not inferred") {
  const auto m = SpectrumModel::custom(1, {{1, 2}, {2, 1}});
  CHECK_THROWS_AS(zeta_profile(m), ProfileUnavailable);
}

TEST_CASE("make_profile validation") {
  CHECK_THROWS_AS(make_profile(0, {}, 0.0, 0.0), DomainError);
  CHECK_THROWS_AS(make_profile(2, {1.0}, 0.0, 0.0), DomainError);
  CHECK_THROWS_AS(make_profile(1, {-1.0}, 0.0, 0.0), DomainError);
  const auto p = make_profile(1, {1.0}, -0.5, -0.5 * std::log(2.0 * kPi));
  CHECK(close_rel(p.K[0], kPi * kPi / 6.0, 1e-15));
}

TEST_CASE("custom spectrum parsing") {
  const auto m = parse_custom_spectrum("# n=1\n1 2\n2 1\n");
  CHECK(m.kind() == ModelKind::Custom);
  CHECK(m.dimension() == 1);
  CHECK(m.custom_levels() == std::vector<Level>{{1, 2}, {2, 1}});
  CHECK(m.horizon() == 2);
  CHECK(m.eigenvalues_up_to(1) == std::vector<Level>{{1, 2}});

  const auto h = parse_custom_spectrum("# n=2 horizon=10\n# comment\n3 1\n1 4\n");
  CHECK(h.horizon() == 10);
  CHECK(h.custom_levels() == std::vector<Level>{{1, 4}, {3, 1}});
  CHECK(h.multiplicity(2) == 0);
}

TEST_CASE("custom spectrum errors") {
  auto message = [](const std::string& text) {
    try {
      parse_custom_spectrum(text);
    } catch (const ParseError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(message("# n=1\n0 1\n") == "line 2: lambda must be >= 1");
  CHECK(message("# n=1\n2 3\n2 1\n") == "line 3: duplicate eigenvalue 2");
  CHECK(message("# n=1\n1.5 1\n").find("not an integer") != std::string::npos);
  CHECK(message("# n=1\n1 0\n").find("multiplicity must be >= 1") != std::string::npos);
  CHECK(message("1 2\n") != "no error");
  CHECK(message("# n=1 horizon=1\n2 1\n") != "no error");
  CHECK(message("# n=1\n1 2 3\n") != "no error");
}

TEST_CASE("custom spectrum from file and model spec") {
  const auto path = std::filesystem::temp_directory_path() / "bosecount_spectrum_test.txt";
  {
    std::ofstream f(path);
    f << "# n=1\n1 2\n2 1\n";
  }
  const auto m = parse_model_spec("custom:" + path.string());
  CHECK(m.custom_levels() == std::vector<Level>{{1, 2}, {2, 1}});
  std::filesystem::remove(path);
  CHECK_THROWS_AS(load_custom_spectrum(path), Error);
  CHECK(parse_model_spec("partitions").kind() == ModelKind::Partitions);
  CHECK(parse_model_spec("sphere:4").dimension() == 4);
  CHECK_THROWS_AS(parse_model_spec("torus:2"), DomainError);
  CHECK_THROWS_AS(parse_model_spec("sphere:x"), DomainError);
}

TEST_CASE("custom constructor validation") {
  CHECK_THROWS_AS(SpectrumModel::custom(1, {{0, 1}}), DomainError);
  CHECK_THROWS_AS(SpectrumModel::custom(1, {{1, 0}}), DomainError);
  CHECK_THROWS_AS(SpectrumModel::custom(1, {{2, 1}, {2, 3}}), DomainError);
  CHECK_THROWS_AS(SpectrumModel::custom(1, {{5, 1}}, 3), DomainError);
  CHECK(SpectrumModel::custom(1, {{5, 1}}, 9).horizon() == 9);
}
