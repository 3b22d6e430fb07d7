#include "cutrees/suites.hpp"

#include <chrono>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "cutrees/lift.hpp"

namespace cutrees {

namespace {

rooted_tree unit_interval() { return rooted_tree({0, 1}, {{0, 1}}, 0); }

std::optional<std::string> fail(const std::string& what) { return what; }

// ---- order: partial order and Cu axioms ------------------------------

std::optional<std::string> case_order(rng& r, const suite_params& p) {
  rooted_tree t = random_tree(r, 1, p.max_edges);
  lsc_function f = random_lsc(r, t, 3, true, p.max_den);
  lsc_function g = random_lsc(r, t, 3, true, p.max_den);
  lsc_function h = random_lsc(r, t, 2, false, p.max_den);

  if (!leq(f, f)) return fail("leq not reflexive");
  if (leq(f, g) && leq(g, f) && !(f == g)) return fail("leq not antisymmetric on canonical forms");
  lsc_function g2 = add(f, random_lsc(r, t, 1, false));
  lsc_function h2 = add(g2, random_lsc(r, t, 1, false));
  if (!(leq(f, g2) && leq(g2, h2) && leq(f, h2))) return fail("leq not transitive on constructed chain");
  if (leq(f, g) && leq(g, h2) && !leq(f, h2)) return fail("leq not transitive on random triple");
  if (!leq(add(f, h), add(g2, h))) return fail("add not monotone");

  lsc_function below = random_cc_below(r, h2);
  if (!compactly_contained(below, h2)) return fail("constructed << pair rejected");
  if (!leq(below, h2)) return fail("<< does not imply <=");
  lsc_function below2 = random_cc_below(r, below);
  if (compactly_contained(below2, below) && !compactly_contained(below2, h2)) return fail("<< not transitive");
  // f' << g' <= bigger  and  smaller <= f' << g'
  lsc_function bigger = add(h2, random_lsc(r, t, 1, false));
  if (!compactly_contained(below, bigger)) return fail("f << g <= h does not give f << h");
  lsc_function smaller = lsc_erode(below, rat(1, 16), 5);
  if (!leq(smaller, below)) return fail("erosion is not below the function");
  if (!compactly_contained(smaller, h2)) return fail("f <= g << h does not give f << h");
  return std::nullopt;
}

// ---- cc: characterization vs oracle -----------------------------------

std::optional<std::string> case_cc(rng& r, const suite_params& p) {
  rooted_tree t = random_tree(r, 1, p.max_edges);
  lsc_function g = random_lsc(r, t, 3, r.chance(1, 4), p.max_den);
  lsc_function f = [&]() {
    switch (r.below(4)) {
      case 0: return random_cc_below(r, g);
      case 1: return g;
      case 2: return random_lsc(r, t, 3, false, p.max_den);
      default: return lsc_erode(g, rat(1, std::int64_t(r.range(3, 10))), std::uint32_t(r.range(1, 3)));
    }
  }();
  bool a = compactly_contained(f, g);
  bool b = cc_oracle(f, g);
  if (a != b)
    return fail("characterization says " + std::to_string(a) + ", oracle says " + std::to_string(b));
  return std::nullopt;
}

// ---- cancel: add(x,z) << add(y,z) forces x <= y ------------------------

std::optional<std::string> case_cancel(rng& r, const suite_params& p) {
  rooted_tree t = random_tree(r, 1, std::min(5, p.max_edges));
  for (int attempt = 0; attempt < 128; ++attempt) {
    lsc_function y = random_lsc(r, t, 3, false, p.max_den);
    lsc_function x = random_cc_below(r, y);
    // progressively tamer z; z = 0 always satisfies the precondition
    lsc_function z = attempt < 80  ? random_lsc(r, t, 2, false, p.max_den)
                     : attempt < 127 ? lsc_erode(random_lsc(r, t, 1, false), rat(1, 8), 1)
                                     : lsc_function::zero(t);
    if (!compactly_contained(add(x, z), add(y, z))) continue;
    if (!leq(x, y)) return fail("cancellation fails: add(x,z) << add(y,z) but not x <= y");
    return std::nullopt;
  }
  return fail("could not generate a triple with add(x,z) << add(y,z)");
}

// ---- swap: root-exchange identity on the interval ----------------------

std::optional<std::string> case_swap(rng& r, const suite_params& p) {
  rooted_tree I = unit_interval();
  int m = r.range(1, 3);
  std::vector<pl_function> a, b, a_swapped, b_swapped;
  for (int j = 0; j < m; ++j) {
    a.push_back(random_pl01(r, I, p.max_den));
    b.push_back(random_pl01(r, I, p.max_den));
    a_swapped.push_back(pl_affine(a.back(), rat(-1), rat(1), false));
    b_swapped.push_back(pl_affine(b.back(), rat(-1), rat(1), false));
  }
  cu_family fa(I, profile_family{a});
  cu_family fb(I, profile_family{b});
  cu_family ga(I, profile_family{a_swapped});
  cu_family gb(I, profile_family{b_swapped});
  rat d1 = d_w_interval(fa, fb);
  rat d2 = d_w_interval(ga, gb);
  if (d1 != d2)
    return fail("swap identity fails: " + rat_to_string(d1) + " vs " + rat_to_string(d2));
  return std::nullopt;
}

// ---- compare: d_W <= d_U <= (2N+2) d_W ---------------------------------

std::optional<std::string> case_compare(rng& r, const suite_params& p) {
  rooted_tree x = random_tree(r, 1, p.max_edges);
  rooted_tree y = random_tree(r, 1, std::min(4, p.max_edges));
  diagonal_hom phi = random_hom(r, y, x, 1, p.max_den);
  diagonal_hom psi = random_hom(r, y, x, 1, p.max_den);
  rat dw = d_w_tree(cu_of_hom(phi), cu_of_hom(psi));
  rat du = d_u_commutative(phi, psi);
  rat bound = rat(2 * x.edge_count() + 2) * dw;
  if (!(dw <= du)) return fail("d_W > d_U: " + rat_to_string(dw) + " > " + rat_to_string(du));
  if (!(du <= bound)) return fail("d_U > (2N+2) d_W: " + rat_to_string(du) + " > " + rat_to_string(bound));
  return std::nullopt;
}

// ---- lift: end-to-end approximate lifting --------------------------------

std::optional<std::string> case_lift(rng& r, const suite_params& p) {
  rooted_tree x = random_tree(r, 1, std::min(4, p.max_edges));
  rooted_tree y = random_tree(r, 1, std::min(3, p.max_edges));
  diagonal_hom phi = random_hom(r, y, x, 1, std::min(8, p.max_den));  // lift grids multiply the denominators
  generator_table alpha = cu_of_hom(phi);
  rat eps = r.chance(1, 2) ? rat(1, 4) : rat(1, 16);
  auto t0 = std::chrono::steady_clock::now();
  lift_result res = approximate_lift(alpha, eps);
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (!(res.certificate.d_w < eps))
    return fail("certificate d_w = " + rat_to_string(res.certificate.d_w) + " not below eps = " + rat_to_string(eps));
  if (secs >= 10.0) return fail("lift took " + std::to_string(secs) + " s (budget 10 s)");
  return std::nullopt;
}

}  // namespace

const std::vector<std::string> suite_names = {"order", "cc", "cancel", "swap", "compare", "lift"};

bool is_suite(const std::string& name) {
  for (const auto& s : suite_names)
    if (s == name) return true;
  return false;
}

std::optional<std::string> run_case(const std::string& suite, std::uint64_t seed, const suite_params& params) {
  rng r(seed);
  try {
    if (suite == "order") return case_order(r, params);
    if (suite == "cc") return case_cc(r, params);
    if (suite == "cancel") return case_cancel(r, params);
    if (suite == "swap") return case_swap(r, params);
    if (suite == "compare") return case_compare(r, params);
    if (suite == "lift") return case_lift(r, params);
  } catch (const std::exception& err) {
    return fail(std::string("exception: ") + err.what());
  }
  return fail("unknown suite " + suite);
}

namespace {

suite_report merge_results(const std::string& suite, std::uint64_t seed, int cases,
                           const std::vector<std::optional<std::string>>& results, double millis) {
  suite_report rep;
  rep.suite = suite;
  rep.seed = seed;
  rep.cases = cases;
  rep.millis = millis;
  for (int i = 0; i < cases; ++i) {
    if (results[std::size_t(i)]) {
      ++rep.failures;
      if (rep.failure_details.size() < 8)
        rep.failure_details.push_back("case " + std::to_string(i) + ": " + *results[std::size_t(i)]);
    }
  }
  return rep;
}

}  // namespace

suite_report run_suite_serial(const std::string& suite, std::uint64_t seed, int cases, const suite_params& params) {
  auto t0 = std::chrono::steady_clock::now();
  std::vector<std::optional<std::string>> results(std::size_t(cases), std::nullopt);
  for (int i = 0; i < cases; ++i)
    results[std::size_t(i)] = run_case(suite, case_seed(seed, std::uint64_t(i)), params);
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return merge_results(suite, seed, cases, results, ms);
}

suite_report run_suite_parallel(const std::string& suite, std::uint64_t seed, int cases, int threads,
                                const suite_params& params) {
  auto t0 = std::chrono::steady_clock::now();
  std::vector<std::optional<std::string>> results(std::size_t(cases), std::nullopt);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (int i = 0; i < cases; ++i)
    results[std::size_t(i)] = run_case(suite, case_seed(seed, std::uint64_t(i)), params);
#else
  (void)threads;
  for (int i = 0; i < cases; ++i)
    results[std::size_t(i)] = run_case(suite, case_seed(seed, std::uint64_t(i)), params);
#endif
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return merge_results(suite, seed, cases, results, ms);
}

suite_report run_suite(const std::string& suite, std::uint64_t seed, int cases, int threads,
                       const suite_params& params) {
  if (threads <= 1) return run_suite_serial(suite, seed, cases, params);
  return run_suite_parallel(suite, seed, cases, threads, params);
}

json to_json(const suite_report& r) {
  return {{"suite", r.suite},     {"seed", r.seed},
          {"cases", r.cases},     {"failures", r.failures},
          {"failure_details", r.failure_details}};
}

}  // namespace cutrees
