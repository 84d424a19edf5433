#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace bosecount::cli {

enum class Command { Count, Joint, Asymptote, Compare, Contour, ConditionH, Residual, Report };

enum class Format { Csv, Json };

Command parse_command(const std::string& name);
std::string to_string(Command c);

struct Tolerances {
  double contour_rel = 1e-8;     // contour vs exact
  double saddle_rel = 1e-12;     // |p_E(x_E)| / (E x_E^{n+1})
  double identity_rel = 1e-10;   // exponent = E x_E + psi(x_E)
};

struct RunConfig {
  Command command = Command::Count;
  std::string model = "partitions";
  std::int64_t e_max = 100;
  std::vector<std::int64_t> energies;
  std::optional<std::int64_t> n_max;
  std::optional<double> mu;
  double contour_x = 0.0;  // 0: real saddle of E x + log G(x)
  std::string output;      // empty: stdout
  Format format = Format::Csv;
  std::string profile_path;
  bool strict = false;
  Tolerances tol;
};

/// Comma-separated, strictly increasing positive integers.
std::vector<std::int64_t> parse_energy_list(const std::string& text);

/// Throws DomainError on an inconsistent configuration.
void validate(const RunConfig& config);

/// Runs one command, writes its output once at the end (to config.output or
/// `out`), and reports warnings and errors on `err`. Returns the exit status.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Applies BOSECOUNT_THREADS, if set, to the OpenMP runtime.
void apply_thread_env();

std::string version();

}  // namespace bosecount::cli
