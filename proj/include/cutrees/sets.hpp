#pragma once

#include <functional>
#include <vector>

#include "cutrees/pl.hpp"
#include "cutrees/tree.hpp"

namespace cutrees {

// Interval of edge-interior positions. Bounds live in [0,1]; positions 0 and 1
// are vertex positions and are never part of the interval itself (vertex
// membership is tracked separately), so closedness flags matter only for
// bounds strictly inside (0,1). lo == hi (both closed) encodes a single point.
struct edge_interval {
  rat lo, hi;
  bool lo_closed = false;
  bool hi_closed = false;
};

// Finite semi-algebraic subset of a tree X: per-edge interior intervals plus a
// vertex membership set. `root_in` can only be set on closures (subsets of
// X \ v never contain the root, but closures in X may).
class tree_subset {
 public:
  explicit tree_subset(const rooted_tree& tree);

  const rooted_tree& tree() const { return *tree_; }
  const std::vector<edge_interval>& intervals(int e) const { return per_edge_[std::size_t(e)]; }
  bool contains_interior(int e, const rat& t) const;  // t in (0,1)
  bool contains_vertex(int vertex_id) const;
  bool contains_root() const { return root_in_; }
  bool contains(const tree_point& p) const;
  bool empty() const;

  bool operator==(const tree_subset& o) const;
  bool operator!=(const tree_subset& o) const { return !(*this == o); }

  // Structural openness/closedness in the topology of X.
  bool is_open() const;
  bool is_closed() const;

  // Connected components, ordered by (edge, position) of their lowest piece.
  std::vector<tree_subset> pieces() const;

  // Membership-driven construction: coords must contain 0 and 1 per edge and
  // every position where interior membership can change.
  static tree_subset build(const rooted_tree& tree, const std::vector<std::vector<rat>>& edge_coords,
                           const std::function<bool(int, const rat&)>& mem_interior,
                           const std::function<bool(int)>& mem_vertex, bool mem_root);

  friend tree_subset set_union(const tree_subset& a, const tree_subset& b);
  friend tree_subset set_intersection(const tree_subset& a, const tree_subset& b);
  friend tree_subset set_complement(const tree_subset& a);  // in X, root included
  friend tree_subset set_closure(const tree_subset& a);

 private:
  const rooted_tree* tree_;
  std::vector<std::vector<edge_interval>> per_edge_;
  std::vector<char> vertex_in_;
  bool root_in_ = false;
};

bool subset_of(const tree_subset& a, const tree_subset& b);

// Exact distance to the closure of s, as a PL function on the tree.
// s must be nonempty.
pl_function distance_to(const tree_subset& s);

// {x : dist(x, closure(s)) < delta} — open.
tree_subset dilate(const tree_subset& s, const rat& delta);
// {x in u : dist(x, X \ u) > delta} — open; u should be open.
tree_subset erode(const tree_subset& u, const rat& delta);

// min over closure(b) of distance_to(a); both nonempty.
rat set_distance(const tree_subset& a, const tree_subset& b);

// Strict superlevel set {f > t} intersected with X \ v (the root point is
// never a member; open subsets live on X \ v).
tree_subset pl_superlevel(const pl_function& f, const rat& t);
// {f < t}, open.
tree_subset pl_strict_sublevel(const pl_function& f, const rat& t);

// An open subset of X \ v, validated: open, root-free, pieces connected and
// pairwise disjoint by construction.
class open_subset {
 public:
  explicit open_subset(tree_subset s);
  const tree_subset& set() const { return set_; }
  const rooted_tree& tree() const { return set_.tree(); }
  std::vector<tree_subset> pieces() const { return set_.pieces(); }
  bool operator==(const open_subset& o) const { return set_ == o.set_; }
  bool operator!=(const open_subset& o) const { return !(*this == o); }

 private:
  tree_subset set_;
};

// Hereditary test: open and closed under passing to points farther from the
// root. Hereditary opens are disjoint unions of sets X_e^eps.
bool is_hereditary(const tree_subset& u);

// Decompose a hereditary open set into its components (e, eps), eps in (0,1).
// Throws invariant_error if a component is not of that form (eps would be 0).
std::vector<std::pair<int, rat>> hereditary_components(const tree_subset& u);

}  // namespace cutrees
