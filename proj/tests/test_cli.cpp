#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "bosecount/cli.hpp"
#include "bosecount/errors.hpp"
#include "json.hpp"

using namespace bosecount;
using namespace bosecount::cli;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run_cfg(const RunConfig& cfg) {
  std::ostringstream out, err;
  const int code = run(cfg, out, err);
  return {code, out.str(), err.str()};
}

RunConfig make(Command c, const std::string& model) {
  RunConfig cfg;
  cfg.command = c;
  cfg.model = model;
  return cfg;
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

fs::path temp_file(const std::string& name, const std::string& content) {
  const auto p = fs::temp_directory_path() / name;
  std::ofstream(p) << content;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

TEST_CASE("count") {
  auto cfg = make(Command::Count, "partitions");
  cfg.e_max = 100;
  const auto r = run_cfg(cfg);
  CHECK(r.code == 0);
  CHECK(lines(r.out).back() == "100,190569292");

  cfg = make(Command::Count, "sphere:2");
  cfg.e_max = 3;
  CHECK(run_cfg(cfg).out == "E,omega\n0,1\n1,1\n2,4\n3,9\n");
}

TEST_CASE("count json keeps big integers as strings") {
  auto cfg = make(Command::Count, "partitions");
  cfg.e_max = 500;
  cfg.format = Format::Json;
  const auto j = nlohmann::json::parse(run_cfg(cfg).out);
  CHECK(j["omega"][500].get<std::string>() == "2300165032574323995027");
  CHECK(j["model"] == "partitions");
}

TEST_CASE("compare ratios approach one") {
  auto cfg = make(Command::Compare, "partitions");
  cfg.energies = {100, 400, 1600};
  const auto r = run_cfg(cfg);
  CHECK(r.code == 0);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 7);
  CHECK(ls[0] == "E,ln_exact,ln_estimate,ratio,formula_id");
  std::vector<double> gaps;
  for (const auto& l : ls) {
    if (l.find(",main1") == std::string::npos) continue;
    const auto c = l.rfind(',');
    const auto b = l.rfind(',', c - 1);
    gaps.push_back(std::fabs(std::stod(l.substr(b + 1, c - b - 1)) - 1.0));
  }
  REQUIRE(gaps.size() == 3);
  CHECK(gaps[0] > gaps[1]);
  CHECK(gaps[1] > gaps[2]);
}

TEST_CASE("joint with fugacity") {
  auto cfg = make(Command::Joint, "partitions");
  cfg.e_max = 5;
  cfg.mu = -1.0;
  const auto r = run_cfg(cfg);
  CHECK(r.code == 0);
  const auto ls = lines(r.out);
  CHECK(ls[0] == "E,omega_mu");
  const double want = std::exp(-1.0) + 2 * std::exp(-2.0) + 2 * std::exp(-3.0) + std::exp(-4.0) +
                      std::exp(-5.0);
  CHECK(std::stod(ls[6].substr(2)) == doctest::Approx(want).epsilon(1e-14));

  cfg = make(Command::Joint, "partitions");
  cfg.e_max = 5;
  cfg.n_max = 5;
  const auto plain = lines(run_cfg(cfg).out);
  CHECK(plain[0] == "N,E,omega");
  CHECK(plain[1 * 6 + 5 + 1] == "2,5,2");

  cfg.mu = -1.0;
  cfg.n_max = 2;
  CHECK(run_cfg(cfg).code == 2);
}

TEST_CASE("asymptote rows and custom profiles") {
  auto cfg = make(Command::Asymptote, "sphere:2");
  cfg.energies = {1000};
  const auto r = run_cfg(cfg);
  CHECK(r.code == 0);
  const auto ls = lines(r.out);
  REQUIRE(ls.size() == 4);
  CHECK(ls[1].rfind("1000,main1,", 0) == 0);
  CHECK(ls[2].rfind("1000,main2,", 0) == 0);
  CHECK(ls[3].rfind("1000,upper_bound,", 0) == 0);

  const auto spec = temp_file("bosecount_cli_custom.txt", "# n=1 horizon=50\n1 1\n2 1\n3 1\n");
  cfg = make(Command::Asymptote, "custom:" + spec.string());
  cfg.energies = {100};
  const auto missing = run_cfg(cfg);
  CHECK(missing.code == 2);
  CHECK(missing.err.find("--profile") != std::string::npos);

  const auto prof = temp_file("bosecount_cli_profile.json",
                              R"({"n": 1, "A": [1.0], "Z0": -0.5, "Zprime0": -0.9189385332046727})");
  cfg.profile_path = prof.string();
  CHECK(run_cfg(cfg).code == 0);

  const auto bad = temp_file("bosecount_cli_profile2.json", R"({"n": 2, "A": [2.0, -1.0], "Z0": 0, "Zprime0": 0})");
  cfg.profile_path = bad.string();
  CHECK(run_cfg(cfg).code == 2);
  cfg.profile_path = (fs::temp_directory_path() / "does_not_exist.json").string();
  CHECK(run_cfg(cfg).code == 2);
  fs::remove(spec);
  fs::remove(prof);
  fs::remove(bad);
}

TEST_CASE("strict promotes warnings") {
  const auto spec = temp_file("bosecount_cli_strict.txt", "# n=1 horizon=10\n1 1\n");
  auto cfg = make(Command::Report, "custom:" + spec.string());
  cfg.e_max = 10;
  const auto loose = run_cfg(cfg);
  CHECK(loose.code == 0);
  CHECK(loose.err.find("warning: no zeta profile") != std::string::npos);
  cfg.strict = true;
  CHECK(run_cfg(cfg).code == 1);
  fs::remove(spec);
}

TEST_CASE("contour") {
  auto cfg = make(Command::Contour, "sphere:2");
  cfg.e_max = 30;
  const auto r = run_cfg(cfg);
  CHECK(r.code == 0);
  const auto ls = lines(r.out);
  CHECK(ls[0] == "E,omega,estimate,rel_error,imag_rel,quad_points");
  CHECK(ls.size() == 32);
  CHECK(ls[4].rfind("3,9,", 0) == 0);
}

TEST_CASE("condition-h and residual grids") {
  auto cfg = make(Command::ConditionH, "sphere:2");
  const auto g = run_cfg(cfg);
  CHECK(g.code == 0);
  CHECK(lines(g.out).size() == 801);
  CHECK(lines(g.out)[0] == "x,y,re_logG,im_logG,re_J,im_J,margin");

  cfg = make(Command::Residual, "partitions");
  const auto s = run_cfg(cfg);
  CHECK(s.code == 0);
  CHECK(lines(s.out).size() == 21);
}

TEST_CASE("report") {
  auto cfg = make(Command::Report, "sphere:2");
  cfg.e_max = 40;
  cfg.energies = {20, 40};
  const auto r = run_cfg(cfg);
  CHECK(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["model"] == "sphere:2");
  CHECK(j["version"] == version());
  CHECK(j["profile"]["n"] == 2);
  CHECK(j["profile"]["Z0"].get<double>() == doctest::Approx(1.0 / 3.0));
  CHECK(j["tables"]["omega"][3] == "9");
  CHECK(j["tables"]["D"][3] == "15");
  CHECK(j["statistics"]["knopp"].size() == 40);
  CHECK(j["comparison"].size() == 4);
  for (const char* k : {"A", "K", "Zprime0", "detP", "Bn"}) CHECK(j["profile"].contains(k));

  const auto spec = temp_file("bosecount_cli_report.txt", "# n=1 horizon=10\n1 2\n");
  cfg = make(Command::Report, "custom:" + spec.string());
  cfg.e_max = 10;
  const auto c = run_cfg(cfg);
  CHECK(c.code == 0);
  CHECK(nlohmann::json::parse(c.out)["profile"].is_null());
  fs::remove(spec);
}

TEST_CASE("configuration errors") {
  auto cfg = make(Command::Count, "torus:3");
  CHECK(run_cfg(cfg).code == 2);
  cfg = make(Command::Count, "partitions");
  cfg.e_max = -1;
  CHECK(run_cfg(cfg).code == 2);
  cfg = make(Command::Compare, "partitions");
  cfg.energies = {10, 5};
  CHECK(run_cfg(cfg).code == 2);
  cfg = make(Command::Count, "custom:/nonexistent/spec.txt");
  CHECK(run_cfg(cfg).code == 2);
  cfg = make(Command::Count, "partitions");
  cfg.output = "/nonexistent/dir/out.csv";
  CHECK(run_cfg(cfg).code == 2);

  CHECK(parse_energy_list("1,2,30") == std::vector<std::int64_t>{1, 2, 30});
  CHECK_THROWS_AS(parse_energy_list("3,3"), DomainError);
  CHECK_THROWS_AS(parse_energy_list("0,1"), DomainError);
  CHECK_THROWS_AS(parse_energy_list("1,x"), DomainError);
  CHECK_THROWS_AS(parse_energy_list(""), DomainError);
  CHECK(parse_command("condition-h") == Command::ConditionH);
  CHECK_THROWS_AS(parse_command("plot"), DomainError);
}

TEST_CASE("binary output is deterministic") {
  const auto dir = fs::temp_directory_path();
  const auto a = dir / "bosecount_det_a.json", b = dir / "bosecount_det_b.json";
  const std::string exe = BOSECOUNT_CLI_PATH;
  const std::string base = exe + " report --model sphere:2 --emax 200 --energies 100,200 --format json -o ";
  CHECK(std::system(("BOSECOUNT_THREADS=1 " + base + a.string()).c_str()) == 0);
  CHECK(std::system(("BOSECOUNT_THREADS=3 " + base + b.string()).c_str()) == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(!slurp(a).empty());
  fs::remove(a);
  fs::remove(b);
  CHECK(std::system((exe + " count --model partitions --emax 10 > /dev/null").c_str()) == 0);
  CHECK(std::system((exe + " count --model nope 2> /dev/null").c_str()) != 0);
  CHECK(std::system((exe + " compare --energies 5,4 2> /dev/null").c_str()) != 0);
}
