#include "bosecount/spectrum.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "bosecount/errors.hpp"
#include "bosecount/specfun.hpp"

namespace bosecount {

namespace {

// Exact binomial coefficient; throws on int64 overflow.
std::int64_t binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < k) return 0;
  k = std::min(k, n - k);
  __int128 c = 1;
  for (std::int64_t i = 0; i < k; ++i) {
    c = c * (n - i) / (i + 1);
    if (c > std::numeric_limits<std::int64_t>::max()) {
      throw DomainError("multiplicity overflows 64-bit integer");
    }
  }
  return static_cast<std::int64_t>(c);
}

bool parse_int(std::string_view token, std::int64_t& out) {
  if (token.empty()) return false;
  if (token.front() == '+') token.remove_prefix(1);
  const auto* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, out);
  return ec == std::errc{} && ptr == end;
}

}  // namespace

SpectrumModel SpectrumModel::partitions() { return SpectrumModel(ModelKind::Partitions, 1); }

SpectrumModel SpectrumModel::sphere(int n) {
  // S^1 would contain the eigenvalue 0, which is excluded (P > 0).
  if (n < 2) throw DomainError("sphere model requires n >= 2, got " + std::to_string(n));
  return SpectrumModel(ModelKind::Sphere, n);
}

SpectrumModel SpectrumModel::custom(int n, std::vector<Level> levels,
                                    std::optional<std::int64_t> horizon) {
  if (n < 1) throw DomainError("custom model requires dimension n >= 1");
  std::sort(levels.begin(), levels.end(),
            [](const Level& a, const Level& b) { return a.lambda < b.lambda; });
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (levels[i].lambda < 1) throw DomainError("lambda must be >= 1");
    if (levels[i].mult < 1) throw DomainError("multiplicity must be >= 1");
    if (i > 0 && levels[i].lambda == levels[i - 1].lambda) {
      throw DomainError("duplicate eigenvalue " + std::to_string(levels[i].lambda));
    }
  }
  const std::int64_t largest = levels.empty() ? 0 : levels.back().lambda;
  if (horizon && *horizon < largest) {
    throw DomainError("horizon " + std::to_string(*horizon) +
                      " is below the largest listed eigenvalue " + std::to_string(largest));
  }
  SpectrumModel m(ModelKind::Custom, n);
  m.levels_ = std::move(levels);
  m.horizon_ = horizon.value_or(largest);
  return m;
}

std::int64_t sphere_multiplicity(int n, std::int64_t k) {
  if (n < 2) throw DomainError("sphere_multiplicity: n >= 2 required");
  if (k < 0) return 0;
  // dim H_k(S^n) = C(n+k, n) - C(n+k-2, n)
  return binomial(n + k, n) - binomial(n + k - 2, n);
}

std::int64_t SpectrumModel::lambda_min() const {
  switch (kind_) {
    case ModelKind::Partitions: return 1;
    case ModelKind::Sphere: return n_ - 1;
    case ModelKind::Custom:
      if (levels_.empty()) throw DomainError("custom spectrum is empty");
      return levels_.front().lambda;
  }
  return 1;
}

std::int64_t SpectrumModel::multiplicity(std::int64_t lambda) const {
  switch (kind_) {
    case ModelKind::Partitions: return lambda >= 1 ? 1 : 0;
    case ModelKind::Sphere: return lambda >= n_ - 1 ? sphere_multiplicity(n_, lambda - n_ + 1) : 0;
    case ModelKind::Custom: {
      auto it = std::lower_bound(levels_.begin(), levels_.end(), lambda,
                                 [](const Level& l, std::int64_t v) { return l.lambda < v; });
      return (it != levels_.end() && it->lambda == lambda) ? it->mult : 0;
    }
  }
  return 0;
}

std::string SpectrumModel::name() const {
  switch (kind_) {
    case ModelKind::Partitions: return "partitions";
    case ModelKind::Sphere: return "sphere:" + std::to_string(n_);
    case ModelKind::Custom: return "custom";
  }
  return "custom";
}

std::vector<Level> SpectrumModel::eigenvalues_up_to(std::int64_t lambda_max) const {
  if (lambda_max < 1) throw DomainError("eigenvalues_up_to: lambda_max must be >= 1");
  std::vector<Level> out;
  switch (kind_) {
    case ModelKind::Partitions:
      out.reserve(static_cast<std::size_t>(lambda_max));
      for (std::int64_t l = 1; l <= lambda_max; ++l) out.push_back({l, 1});
      break;
    case ModelKind::Sphere:
      for (std::int64_t l = n_ - 1; l <= lambda_max; ++l) {
        out.push_back({l, sphere_multiplicity(n_, l - n_ + 1)});
      }
      break;
    case ModelKind::Custom:
      for (const auto& lv : levels_) {
        if (lv.lambda > lambda_max) break;
        out.push_back(lv);
      }
      break;
  }
  return out;
}

double ZetaProfile::bn_via_volume() const {
  const double nn = n;
  const double zeta = specfun::riemann_zeta(nn + 1.0).value;
  const double gamma = std::exp(specfun::log_gamma(nn).value);
  const double inner = volSigma / std::pow(2.0 * specfun::kPi * nn, nn) * zeta * gamma;
  return (nn + 1.0) * std::pow(inner, 1.0 / (nn + 1.0));
}

ZetaProfile make_profile(int n, std::vector<double> A, double Z0, double Zprime0) {
  if (n < 1) throw DomainError("profile dimension must be >= 1");
  if (static_cast<int>(A.size()) != n) {
    throw DomainError("profile needs exactly n = " + std::to_string(n) + " residues, got " +
                      std::to_string(A.size()));
  }
  ZetaProfile p;
  p.n = n;
  p.A = std::move(A);
  p.K.resize(n);
  for (int j = 0; j < n; ++j) {
    const double zeta = specfun::riemann_zeta(n - j + 1.0).value;
    const double gamma = std::exp(specfun::log_gamma(n - j).value);
    p.K[j] = p.A[j] * zeta * gamma;
  }
  if (!(p.K[0] > 0.0)) throw DomainError("profile requires K_0 > 0 (A_0 > 0)");
  p.Z0 = Z0;
  p.Zprime0 = Zprime0;
  p.detP = std::exp(-Zprime0);
  p.volSigma = std::pow(2.0 * specfun::kPi, n) * p.A[0];
  p.Bn = (n + 1.0) * std::pow(p.K[0] / std::pow(static_cast<double>(n), n), 1.0 / (n + 1.0));
  return p;
}

std::vector<long double> sphere_multiplicity_polynomial(int n) {
  if (n < 2) throw DomainError("sphere_multiplicity_polynomial: n >= 2 required");
  // (2m - n + 1) prod_{i=1}^{n-2} (m - i) / (n-1)!
  std::vector<long double> c = {static_cast<long double>(1 - n), 2.0L};
  for (int i = 1; i <= n - 2; ++i) {
    std::vector<long double> next(c.size() + 1, 0.0L);
    for (std::size_t d = 0; d < c.size(); ++d) {
      next[d + 1] += c[d];
      next[d] -= static_cast<long double>(i) * c[d];
    }
    c = std::move(next);
  }
  long double fact = 1.0L;
  for (int i = 2; i <= n - 1; ++i) fact *= i;
  for (auto& v : c) v /= fact;
  return c;
}

ZetaProfile zeta_profile(const SpectrumModel& model) {
  switch (model.kind()) {
    case ModelKind::Partitions:
      return make_profile(1, {1.0}, -0.5, specfun::riemann_zeta_deriv(0).value);
    case ModelKind::Sphere: {
      // Z_P(s) = sum_i c_i zeta_H(s - i, n - 1), with c_i the multiplicity
      // polynomial in lambda; the polynomial vanishes on 1..n-2.
      const int n = model.dimension();
      const auto c = sphere_multiplicity_polynomial(n);
      const double a = n - 1;
      std::vector<double> A(n);
      long double z0 = 0.0L;
      long double zp0 = 0.0L;
      for (int i = 0; i < n; ++i) {
        A[n - 1 - i] = static_cast<double>(c[i]);
        if (c[i] == 0.0L) continue;
        z0 += c[i] * specfun::hurwitz_zeta(-i, a).value;
        zp0 += c[i] * specfun::hurwitz_zeta_deriv(-i, a).value;
      }
      return make_profile(n, std::move(A), static_cast<double>(z0), static_cast<double>(zp0));
    }
    case ModelKind::Custom:
      throw ProfileUnavailable(
          "profile unavailable for custom spectra: supply one explicitly (--profile <json>)");
  }
  throw ProfileUnavailable("profile unavailable");
}

SpectrumModel parse_custom_spectrum(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  std::optional<int> dim;
  std::optional<std::int64_t> horizon;
  std::vector<Level> levels;
  std::set<std::int64_t> seen;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    if (line.front() == '#') {
      if (!header_seen) {
        header_seen = true;
        std::istringstream hs(line.substr(1));
        std::string tok;
        while (hs >> tok) {
          std::int64_t v = 0;
          if (tok.rfind("n=", 0) == 0) {
            if (!parse_int(tok.substr(2), v) || v < 1) throw ParseError("bad dimension '" + tok + "'", lineno);
            dim = static_cast<int>(v);
          } else if (tok.rfind("horizon=", 0) == 0) {
            if (!parse_int(tok.substr(8), v) || v < 1) throw ParseError("bad horizon '" + tok + "'", lineno);
            horizon = v;
          }
        }
        if (!dim) throw ParseError("header must declare '# n=<int>'", lineno);
      }
      continue;
    }
    if (!header_seen) throw ParseError("missing '# n=<int>' header", lineno);
    std::istringstream ls(line);
    std::string lt, mt, extra;
    if (!(ls >> lt >> mt) || (ls >> extra)) throw ParseError("expected '<lambda> <mult>'", lineno);
    std::int64_t lambda = 0, mult = 0;
    if (!parse_int(lt, lambda)) throw ParseError("eigenvalue '" + lt + "' is not an integer", lineno);
    if (!parse_int(mt, mult)) throw ParseError("multiplicity '" + mt + "' is not an integer", lineno);
    if (lambda < 1) throw ParseError("lambda must be >= 1", lineno);
    if (mult < 1) throw ParseError("multiplicity must be >= 1", lineno);
    if (!seen.insert(lambda).second) {
      throw ParseError("duplicate eigenvalue " + std::to_string(lambda), lineno);
    }
    levels.push_back({lambda, mult});
  }
  if (!dim) throw ParseError("missing '# n=<int>' header", 0);
  try {
    return SpectrumModel::custom(*dim, std::move(levels), horizon);
  } catch (const DomainError& e) {
    throw ParseError(e.what(), 0);
  }
}

SpectrumModel load_custom_spectrum(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open spectrum file: " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_custom_spectrum(buf.str());
}

SpectrumModel parse_model_spec(const std::string& spec) {
  if (spec == "partitions") return SpectrumModel::partitions();
  if (spec.rfind("sphere:", 0) == 0) {
    std::int64_t n = 0;
    if (!parse_int(spec.substr(7), n)) throw DomainError("bad sphere dimension in '" + spec + "'");
    return SpectrumModel::sphere(static_cast<int>(n));
  }
  if (spec.rfind("custom:", 0) == 0) return load_custom_spectrum(spec.substr(7));
  throw DomainError("unknown model '" + spec + "' (expected partitions | sphere:<n> | custom:<path>)");
}

}  // namespace bosecount
