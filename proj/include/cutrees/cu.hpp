#pragma once

#include <optional>
#include <variant>
#include <vector>

#include "cutrees/lsc.hpp"
#include "cutrees/tree_ops.hpp"

namespace cutrees {

// Piecewise-constant family t -> F(t): value of the step whose breakpoint is
// the largest one <= t (left-closed cells); the final step value must be the
// zero function and its breakpoint must be <= 1 (norm <= 1).
struct step_family {
  std::vector<std::pair<rat, lsc_function>> steps;
};

// Level family of a diagonal PL element: F(t) = rank_function(entries, t).
// Exact representation of cu_of_hom outputs (cuts move with t).
struct profile_family {
  std::vector<pl_function> entries;
};

// One edge's family t -> alpha[(g_e - t)_+].
class cu_family {
 public:
  cu_family(const rooted_tree& target, step_family s);
  cu_family(const rooted_tree& target, profile_family p);

  const rooted_tree& target() const { return *target_; }
  bool is_step() const { return std::holds_alternative<step_family>(data_); }
  const step_family& steps() const { return std::get<step_family>(data_); }
  const profile_family& profile() const { return std::get<profile_family>(data_); }

  lsc_function at(const rat& t) const;  // t >= 0
  bool is_zero() const;
  // Parameter positions where the step data changes / critical values of the
  // profile entries. Includes 0 and 1.
  std::vector<rat> parameter_breakpoints() const;

  bool operator==(const cu_family& o) const;

 private:
  const rooted_tree* target_;
  std::variant<step_family, profile_family> data_;
};

// Eq. (6): inf of the shift r making both one-sided dominations hold for all
// t >= 0. Exact for every backing pair; feasibility is monotone in r.
rat d_w_interval(const cu_family& f, const cu_family& g);
bool d_w_feasible(const cu_family& f, const cu_family& g, const rat& r);

// Cuntz morphism out of C0(X \ v), one family per edge of X.
class generator_table {
 public:
  generator_table(const rooted_tree& source, const rooted_tree& target, std::vector<cu_family> per_edge);

  const rooted_tree& source() const { return *source_; }
  const rooted_tree& target() const { return *target_; }
  const cu_family& family(int e) const { return per_edge_[std::size_t(e)]; }

  static generator_table zero(const rooted_tree& source, const rooted_tree& target);

  // Named structural invariants -> violation message, empty when valid:
  // antitone, compact decay across steps, final zero, vertex compatibility.
  std::vector<std::string> validate() const;

  bool operator==(const generator_table& o) const;
  bool operator!=(const generator_table& o) const { return !(*this == o); }

 private:
  const rooted_tree* source_;
  const rooted_tree* target_;
  std::vector<cu_family> per_edge_;
};

// *-homomorphism into C0(Y \ w) x M_m given by m eigenvalue tree maps.
class diagonal_hom {
 public:
  diagonal_hom(std::vector<pl_tree_map> maps);

  int multiplicity() const { return int(maps_.size()); }
  const std::vector<pl_tree_map>& maps() const { return maps_; }
  const rooted_tree& source() const { return maps_.front().target(); }  // X
  const rooted_tree& domain_tree() const { return maps_.front().source(); }  // Y

  bool operator==(const diagonal_hom& o) const { return maps_ == o.maps_; }

 private:
  std::vector<pl_tree_map> maps_;  // Y -> X, each sending w to v
};

// Cu(phi): per edge the exact level family of (g_e o lambda_j)_j.
generator_table cu_of_hom(const diagonal_hom& phi);

// alpha applied to a finite nonnegative-integer combination of hereditary-open
// indicators; rejects anything outside that cone.
lsc_function evaluate(const generator_table& alpha, const lsc_function& f);

// alpha[s_X]: right limit at 0+ of the sum over root edges.
lsc_function total_class(const generator_table& alpha);

// Eq. (7): max of d_w_interval over the edges of the source tree.
rat d_w_tree(const generator_table& alpha, const generator_table& beta);

// Exact d_U for multiplicity one into a commutative codomain (conjugation is
// trivial there): max over edges of ||g_e o lambda - g_e o mu||.
rat d_u_commutative(const diagonal_hom& phi, const diagonal_hom& psi);

// Upper bound on d_U for equal multiplicities: best constant permutation
// alignment of the eigenvalue maps.
rat d_u_upper_diagonal(const diagonal_hom& phi, const diagonal_hom& psi);

// k-th largest entry functions (pointwise sort, exact).
std::vector<pl_function> pointwise_sorted(const std::vector<pl_function>& entries);

}  // namespace cutrees
