// Benchmark for the lattice-point counting paths: naive reference vs the
// pruned enumerator, serial and OpenMP-parallel.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <string>

#include "gramcode/lattice.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace gramcode;

namespace {

double time_once(const std::function<std::int64_t()>& f, std::int64_t* out) {
  auto start = std::chrono::steady_clock::now();
  *out = f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                       start)
      .count();
}

}  // namespace

int main(int argc, char** argv) {
  int q = 2, ell = 3;
  std::int64_t t = 240;
  std::int64_t reference_cap = 40;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--q") == 0 && i + 1 < argc)
      q = std::atoi(argv[++i]);
    else if (std::strcmp(argv[i], "--ell") == 0 && i + 1 < argc)
      ell = std::atoi(argv[++i]);
    else if (std::strcmp(argv[i], "--t") == 0 && i + 1 < argc)
      t = std::atoll(argv[++i]);
    else if (std::strcmp(argv[i], "--reference-cap") == 0 && i + 1 < argc)
      reference_cap = std::atoll(argv[++i]);
  }

  GramSet s = GramSet::full(q, ell);
  auto graph = std::make_shared<DeBruijnGraph>(s);
  Budget budget;

#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (built without OpenMP)\n");
#endif
  std::printf("gram set: full [%d]^%d, |S| = %zu, |V| = %zu\n", q, ell,
              graph->arc_count(), graph->node_count());

  if (t <= reference_cap) {
    LatticeSystem sys = build_system(graph, t, Strictness::kBoundary);
    std::int64_t c_ref = 0;
    double ref = time_once([&] { return count_points_reference(sys, budget); },
                           &c_ref);
    std::printf("t=%lld  reference: %lld points in %.3fs\n",
                static_cast<long long>(t), static_cast<long long>(c_ref), ref);
  } else {
    std::printf("t=%lld  reference skipped (above --reference-cap %lld)\n",
                static_cast<long long>(t),
                static_cast<long long>(reference_cap));
  }

  LatticeSystem sys = build_system(graph, t, Strictness::kBoundary);
  std::int64_t c_serial = 0, c_parallel = 0;
  double serial =
      time_once([&] { return count_points(sys, budget, false); }, &c_serial);
  double parallel =
      time_once([&] { return count_points(sys, budget, true); }, &c_parallel);
  std::printf("t=%lld  pruned serial:   %lld points in %.3fs\n",
              static_cast<long long>(t), static_cast<long long>(c_serial),
              serial);
  std::printf("t=%lld  pruned parallel: %lld points in %.3fs  (speedup %.2fx)\n",
              static_cast<long long>(t), static_cast<long long>(c_parallel),
              parallel, parallel > 0 ? serial / parallel : 0.0);
  if (c_serial != c_parallel) {
    std::printf("MISMATCH between serial and parallel counts\n");
    return 1;
  }
  return 0;
}
