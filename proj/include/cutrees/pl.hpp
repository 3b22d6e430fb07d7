#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "cutrees/tree.hpp"

namespace cutrees {

// Breakpoint of a piecewise-linear function on one edge.
struct pl_sample {
  rat t;  // position in [0,1]
  rat v;  // nonnegative value
};

// Continuous piecewise-linear function on a tree, exact rational data.
// Per edge: samples with t strictly increasing, first 0 and last 1, linear
// in between. Values at shared vertices must agree (global continuity).
// Canonical form drops collinear interior samples.
class pl_function {
 public:
  pl_function(const rooted_tree& tree, std::vector<std::vector<pl_sample>> per_edge);

  static pl_function constant(const rooted_tree& tree, const rat& value);

  const rooted_tree& tree() const { return *tree_; }
  const std::vector<pl_sample>& edge_samples(int e) const { return per_edge_[std::size_t(e)]; }

  rat operator()(const tree_point& p) const { return eval(p); }
  rat eval(const tree_point& p) const;
  rat value_at_vertex(int vertex_id) const;

  rat max_value() const;
  rat min_value() const;

  bool operator==(const pl_function& o) const;
  bool operator!=(const pl_function& o) const { return !(*this == o); }

 private:
  const rooted_tree* tree_;
  std::vector<std::vector<pl_sample>> per_edge_;
};

// Pointwise max(f - t, 0), the functional calculus cut (f - t)_+.
pl_function minus_plus(const pl_function& f, const rat& t);
// a*f + b, clamped below at 0 when clamp_at_zero.
pl_function pl_affine(const pl_function& f, const rat& a, const rat& b, bool clamp_at_zero);
pl_function pl_min(const pl_function& f, const pl_function& g);
pl_function pl_max(const pl_function& f, const pl_function& g);
// Pointwise max(a*f + b*g + c, 0), with breakpoints at the zero crossings.
pl_function pl_combine(const pl_function& f, const rat& a, const pl_function& g, const rat& b, const rat& c);
// Exact max over the tree of |f - g|; attained at a merged breakpoint.
rat sup_norm_diff(const pl_function& f, const pl_function& g);

// Continuous piecewise-geodesic map between trees. Per source edge: waypoints
// (s_k, p_k) with s_0 = 0 and last s = 1; on [s_k, s_{k+1}] the map traverses
// the geodesic p_k -> p_{k+1} at constant speed. Waypoint values at shared
// source vertices must agree. The root-compatibility flag (w -> v, the shape
// of C0 homomorphism data) is derived; pass `require_root_compatible` to
// reject maps without it.
class pl_tree_map {
 public:
  using waypoints = std::vector<std::pair<rat, tree_point>>;

  pl_tree_map(const rooted_tree& source, const rooted_tree& target, std::vector<waypoints> per_edge,
              bool require_root_compatible = false);

  const rooted_tree& source() const { return *source_; }
  const rooted_tree& target() const { return *target_; }
  const waypoints& edge_waypoints(int e) const { return per_edge_[std::size_t(e)]; }
  bool root_compatible() const { return root_compatible_; }

  tree_point eval(int source_edge, const rat& s) const;
  tree_point eval(const tree_point& p) const { return eval(p.edge, p.pos); }

  static pl_tree_map identity(const rooted_tree& t);
  static pl_tree_map constant_root(const rooted_tree& source, const rooted_tree& target);

  bool operator==(const pl_tree_map& o) const;

 private:
  const rooted_tree* source_;
  const rooted_tree* target_;
  std::vector<waypoints> per_edge_;
  bool root_compatible_;
};

// Pullback y -> f(m(y)); exact, breakpoints at waypoint parameters, vertex
// crossings, and preimages of f's breakpoints along each geodesic segment.
pl_function compose(const pl_function& f, const pl_tree_map& m);

}  // namespace cutrees
