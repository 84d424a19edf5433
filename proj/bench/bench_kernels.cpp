// Serial reference vs OpenMP kernels. Usage: bench_kernels [scale]
#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <optional>

#include "bosecount/exact.hpp"
#include "bosecount/gpf.hpp"

using namespace bosecount;

namespace {

double best_of(int reps, const std::function<void()>& f) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  }
  return best;
}

void row(const char* name, double serial, double parallel, bool same) {
  std::printf("%-34s %10.4f %10.4f %8.2fx  %s\n", name, serial, parallel, serial / parallel,
              same ? "identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  const int scale = argc > 1 ? std::atoi(argv[1]) : 1;
  const auto part = SpectrumModel::partitions();
  const auto s2 = SpectrumModel::sphere(2);
  std::printf("threads: %d\n", omp_get_max_threads());
  std::printf("%-34s %10s %10s %9s\n", "kernel", "serial s", "omp s", "speedup");

  for (const auto& [m, e] : {std::pair{part, 4000 * scale}, std::pair{s2, 800 * scale}}) {
    std::optional<CountTable> a, b;
    const double ts = best_of(3, [&] { a = count_states_reference(m, e); });
    const double tp = best_of(3, [&] { b = count_states(m, e); });
    char name[64];
    std::snprintf(name, sizeof name, "count_states %s E=%d", m.name().c_str(), e);
    row(name, ts, tp, a->omega == b->omega);
  }
  {
    const int e = 600 * scale;
    std::optional<JointTable> a, b;
    const double ts = best_of(3, [&] { a = count_joint_reference(part, e, e); });
    const double tp = best_of(3, [&] { b = count_joint(part, e, e); });
    char name[64];
    std::snprintf(name, sizeof name, "count_joint partitions E=%d", e);
    row(name, ts, tp, a->cells == b->cells);
  }
  {
    const std::int64_t e = 200 * scale;
    const double x = real_saddle(s2, e);
    const auto nodes = alias_safe_nodes(s2, e, x);
    ContourEstimate a, b;
    const double ts = best_of(3, [&] { a = contour_extract_reference(s2, e, x, nodes); });
    const double tp = best_of(3, [&] { b = contour_extract(s2, e, x, nodes); });
    char name[64];
    std::snprintf(name, sizeof name, "contour sphere:2 E=%lld", static_cast<long long>(e));
    row(name, ts, tp, a.value == b.value && a.imag == b.imag);
  }
  return 0;
}
