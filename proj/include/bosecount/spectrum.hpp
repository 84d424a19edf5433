#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace bosecount {

/// One distinct eigenvalue with its multiplicity.
struct Level {
  std::int64_t lambda = 0;
  std::int64_t mult = 0;

  friend bool operator==(const Level&, const Level&) = default;
};

enum class ModelKind { Partitions, Sphere, Custom };

/// Integer eigenvalue sequence of a positive first-order operator.
///
/// Partitions: lambda = l, mult 1 (l >= 1), dimension 1.
/// Sphere(n):  lambda = k + n - 1, mult = dimension of the k-th spherical
///             harmonic space on S^n (k >= 0); requires n >= 2.
/// Custom:     finite list of levels, complete up to `horizon()`.
class SpectrumModel {
public:
  static SpectrumModel partitions();
  static SpectrumModel sphere(int n);
  /// `horizon` is the largest eigenvalue up to which the list is complete;
  /// defaults to the largest listed eigenvalue.
  static SpectrumModel custom(int n, std::vector<Level> levels,
                              std::optional<std::int64_t> horizon = std::nullopt);

  ModelKind kind() const noexcept { return kind_; }
  int dimension() const noexcept { return n_; }
  /// Largest eigenvalue up to which the spectrum is known (infinite models: nullopt).
  std::optional<std::int64_t> horizon() const noexcept { return horizon_; }
  std::int64_t lambda_min() const;
  /// Multiplicity of eigenvalue `lambda` (0 if absent).
  std::int64_t multiplicity(std::int64_t lambda) const;
  /// "partitions", "sphere:<n>" or "custom".
  std::string name() const;

  /// All levels with lambda <= lambda_max, strictly increasing.
  std::vector<Level> eigenvalues_up_to(std::int64_t lambda_max) const;

  /// Listed levels (Custom only; empty otherwise).
  const std::vector<Level>& custom_levels() const noexcept { return levels_; }

private:
  SpectrumModel(ModelKind kind, int n) : kind_(kind), n_(n) {}

  ModelKind kind_;
  int n_;
  std::vector<Level> levels_;
  std::optional<std::int64_t> horizon_;
};

/// Dimension of the k-th spherical harmonic space on S^n,
/// (2k+n-1)(k+n-2)! / (k! (n-1)!).
std::int64_t sphere_multiplicity(int n, std::int64_t k);

/// Pole/residue data of the spectral zeta function and derived constants.
struct ZetaProfile {
  int n = 0;
  std::vector<double> A;  ///< A_j = Res_{s=n-j} Z_P(s), j = 0..n-1
  std::vector<double> K;  ///< K_j = A_j zeta(n-j+1) Gamma(n-j)
  double Z0 = 0.0;        ///< Z_P(0)
  double Zprime0 = 0.0;   ///< Z_P'(0)
  double detP = 0.0;      ///< exp(-Z_P'(0))
  double volSigma = 0.0;  ///< (2 pi)^n A_0
  double Bn = 0.0;        ///< (n+1) (K_0 / n^n)^{1/(n+1)}

  /// B_n written through Vol(Sigma): (n+1) (Vol zeta(n+1) Gamma(n) / (2 pi n)^n)^{1/(n+1)}.
  double bn_via_volume() const;
};

/// Builds a profile from residues and the values at 0. Throws DomainError
/// unless n >= 1, A.size() == n and K_0 > 0.
ZetaProfile make_profile(int n, std::vector<double> A, double Z0, double Zprime0);

/// Closed-form profile for built-in models; throws ProfileUnavailable for Custom.
ZetaProfile zeta_profile(const SpectrumModel& model);

/// Multiplicity polynomial of Sphere(n) in m = lambda: coefficients c_i of m^i.
std::vector<long double> sphere_multiplicity_polynomial(int n);

/// Custom spectrum file: first line `# n=<int>` (optionally followed by
/// ` horizon=<int>`), then `<lambda> <mult>` lines; other `#` lines ignored.
SpectrumModel load_custom_spectrum(const std::filesystem::path& path);
SpectrumModel parse_custom_spectrum(const std::string& text);

/// "partitions" | "sphere:<n>" | "custom:<path>".
SpectrumModel parse_model_spec(const std::string& spec);

}  // namespace bosecount
