#pragma once

#include <functional>
#include <vector>

#include "cutrees/extnat.hpp"
#include "cutrees/sets.hpp"

namespace cutrees {

// Per-edge step data of an lsc function: cuts 0 = t_0 < ... < t_m = 1, a value
// on each open cell (t_i, t_{i+1}) and an explicit value at each interior cut.
struct lsc_edge_data {
  std::vector<rat> cuts;
  std::vector<ext_nat> cell_values;   // size cuts.size() - 1
  std::vector<ext_nat> point_values;  // size cuts.size() - 2 (interior cuts)
};

// Lower semicontinuous N u {inf}-valued step function on X \ v. Vertex values
// are stored per non-root vertex; the root carries no value. Canonical form
// has no removable cuts.
class lsc_function {
 public:
  lsc_function(const rooted_tree& tree, std::vector<lsc_edge_data> per_edge, std::vector<ext_nat> vertex_values);

  static lsc_function zero(const rooted_tree& tree);
  static lsc_function indicator(const tree_subset& open_set);
  // Counting construction: coords per edge must contain every interior
  // position where the counters can change value.
  static lsc_function build(const rooted_tree& tree, const std::vector<std::vector<rat>>& edge_coords,
                            const std::function<ext_nat(int, const rat&)>& value_interior,
                            const std::function<ext_nat(int)>& value_vertex);

  const rooted_tree& tree() const { return *tree_; }
  const lsc_edge_data& edge_data(int e) const { return per_edge_[std::size_t(e)]; }
  ext_nat value_interior(int e, const rat& t) const;
  ext_nat value_at_vertex(int vertex_id) const;  // vertex must not be the root
  ext_nat value(const tree_point& p) const;      // p must not be the root point

  ext_nat max_value() const;
  bool finite() const;  // no inf anywhere
  bool is_zero() const;

  // {f >= n}, n >= 1; open because values are integers and f is lsc.
  tree_subset level_set(std::uint32_t n) const;

  bool operator==(const lsc_function& o) const;
  bool operator!=(const lsc_function& o) const { return !(*this == o); }

 private:
  const rooted_tree* tree_;
  std::vector<lsc_edge_data> per_edge_;
  std::vector<ext_nat> vertex_values_;  // by vertex index; root slot unused
};

// Pointwise sum, inf saturating.
lsc_function add(const lsc_function& f, const lsc_function& g);
// Pointwise order.
bool leq(const lsc_function& f, const lsc_function& g);

// Compact containment f << g, decided by level-set closures: f finite and for
// every n >= 1 the closure in X of {f >= n} avoids the root and lies inside
// {g >= n}.
bool compactly_contained(const lsc_function& f, const lsc_function& g);

// Direct-definition oracle: builds the canonical chain g_k (cap values at k,
// erode level sets inward by 1/k) and tests f <= g_k up to a structural bound.
// Test-side counterpart of compactly_contained; shares no logic with it.
bool cc_oracle(const lsc_function& f, const lsc_function& g);

// f = sum of indicators of connected open pieces, layered by {f > i}.
// Throws invariant_error when f takes the value inf.
std::vector<open_subset> decompose(const lsc_function& f);

// x -> #{j : diag[j](x) > t} as a canonical lsc function.
lsc_function rank_function(const std::vector<pl_function>& diag, const rat& t);

// z with f << z << h, by fattening each level closure of f by half the
// minimal clearance inside the corresponding level set of h.
lsc_function interpolate(const lsc_function& f, const lsc_function& h);

// Sum of indicators of the eroded (resp. dilated) level sets; values capped
// at `cap` for erode. Used by corpus generators and the oracle.
lsc_function lsc_erode(const lsc_function& f, const rat& delta, std::uint32_t cap);
lsc_function lsc_dilate(const lsc_function& f, const rat& delta);

}  // namespace cutrees
