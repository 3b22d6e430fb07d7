// Serial reference runner vs the OpenMP runner over the property suites.

#include <chrono>
#include <cstdio>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "cutrees/suites.hpp"

using namespace cutrees;

namespace {

double run(const std::string& suite, std::uint64_t seed, int cases, int threads, int* failures) {
  auto t0 = std::chrono::steady_clock::now();
  suite_report r = run_suite(suite, seed, cases, threads);
  *failures = r.failures;
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  int cases = argc > 1 ? std::atoi(argv[1]) : 60;
  std::uint64_t seed = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 7;
  int max_threads = 1;
#ifdef _OPENMP
  max_threads = omp_get_max_threads();
#endif
  std::printf("%-8s %8s %12s %12s %8s\n", "suite", "cases", "serial[s]", "omp[s]", "speedup");
  for (const auto& suite : suite_names) {
    int n = suite == "lift" ? std::max(4, cases / 10) : cases;
    int f1 = 0, f2 = 0;
    double serial = run(suite, seed, n, 1, &f1);
    double par = run(suite, seed, n, max_threads, &f2);
    if (f1 != f2) {
      std::printf("%-8s runners disagree on failures (%d vs %d)\n", suite.c_str(), f1, f2);
      return 1;
    }
    std::printf("%-8s %8d %12.3f %12.3f %7.2fx\n", suite.c_str(), n, serial, par, serial / par);
  }
  std::printf("threads: %d\n", max_threads);
  return 0;
}
