#pragma once

#include <map>

#include "cutrees/cu.hpp"

namespace cutrees {

struct infeasible_discretization : invariant_error {
  using invariant_error::invariant_error;
};
struct unrealizable_profile : invariant_error {
  using invariant_error::invariant_error;
};
struct lift_compatibility_error : invariant_error {
  using invariant_error::invariant_error;
};

// Level family t -> [(a - t)_+] of a single positive element, as left-closed
// steps with a trailing zero. Invariants: antitone and level nesting across
// cells (closure{P_{k+1} >= n} inside {P_k >= n}).
class element_profile {
 public:
  element_profile(const rooted_tree& target, std::vector<std::pair<rat, lsc_function>> steps);

  const rooted_tree& target() const { return *target_; }
  const std::vector<std::pair<rat, lsc_function>>& steps() const { return steps_; }
  lsc_function at(const rat& t) const;
  bool finite() const;

  bool operator==(const element_profile& o) const;

 private:
  const rooted_tree* target_;
  std::vector<std::pair<rat, lsc_function>> steps_;
};

// Profile of an interpolating element for a <<-decreasing chain x_0 >> ... >> x_n:
// P(0) = x_0 and P on [k/n, (k+1)/n) is the fattening interpolate(x_{k+1},
// x_k), so both sandwiches x_{k+1} << P(k/n) << x_k hold. Throws an order
// error naming the first index where the chain condition fails.
element_profile interpolate_chain(const std::vector<lsc_function>& xs, int n);

// Dyadic discretization of a table at grid 1/2^N: per edge the chain
// x_k = F_e(k/2^N) run through interpolate_chain, with the top cell raised to
// interpolate(sum of children at 0, x_{2^N - 1}) so that the branching
// constraint and the support nesting hold.
std::map<int, element_profile> discretize(const generator_table& alpha, int N);

// Diagonal entries f_1 >= ... >= f_m with rank_function(entries, s) = P(s) at
// every parameter-cell midpoint s. Rejects profiles whose supp P(0) closure
// reaches the root (no continuous realization can vanish there).
std::vector<pl_function> realize_profile(const element_profile& p);

struct lift_certificate {
  rat d_w;
  rat eps;
  int n = 0;
  int N = 0;
};

struct lift_result {
  diagonal_hom hom;
  lift_certificate certificate;
};

// Full lifting pipeline: discretize at N = n + 2 where 1/2^{n-1} < eps,
// realize sandwich towers per edge, snap to an exact representation of the
// relations, extract eigenvalue maps, and certify d_w_tree(alpha, Cu(phi))
// by exact recomputation.
lift_result approximate_lift(const generator_table& alpha, const rat& eps);

// phi_n = approximate_lift(alpha, 1/2^{n+2}) paired with
// d_u_commutative(phi_n, phi_{n+1}), n = 1..steps.
std::vector<std::pair<diagonal_hom, rat>> cauchy_driver(const generator_table& alpha, int steps);

}  // namespace cutrees
