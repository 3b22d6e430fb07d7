#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cutrees/gen.hpp"
#include "cutrees/json_io.hpp"

namespace cutrees {

// Outcome of one property suite. Equal reports (timing aside) are guaranteed
// for equal (suite, seed, cases) regardless of the runner.
struct suite_report {
  std::string suite;
  std::uint64_t seed = 0;
  int cases = 0;
  int failures = 0;
  std::vector<std::string> failure_details;  // "case <i>: <what>", capped at 8
  double millis = 0;

  bool passed() const { return failures == 0; }
};

json to_json(const suite_report& r);  // timing carried separately from the deterministic fields

extern const std::vector<std::string> suite_names;  // order, cc, cancel, swap, compare, lift
bool is_suite(const std::string& name);

// Corpus bounds; the defaults keep exact arithmetic fast at desk scale.
struct suite_params {
  int max_edges = 6;
  int max_den = 64;
};

// One generated case; empty result means pass.
std::optional<std::string> run_case(const std::string& suite, std::uint64_t case_seed, const suite_params& params);

// Serial reference runner: plain loop, cases in order.
suite_report run_suite_serial(const std::string& suite, std::uint64_t seed, int cases,
                              const suite_params& params = {});
// OpenMP runner: cases sharded across threads, merged by case index.
suite_report run_suite_parallel(const std::string& suite, std::uint64_t seed, int cases, int threads,
                                const suite_params& params = {});
// threads <= 1 selects the serial reference.
suite_report run_suite(const std::string& suite, std::uint64_t seed, int cases, int threads,
                       const suite_params& params = {});

}  // namespace cutrees
