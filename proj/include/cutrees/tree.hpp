#pragma once

#include <string>
#include <vector>

#include "cutrees/rational.hpp"

namespace cutrees {

struct tree_edge {
  int init = 0;  // vertex id at parameter 0
  int term = 0;  // vertex id at parameter 1
};

struct invariant_error : std::runtime_error {
  explicit invariant_error(const std::string& what) : std::runtime_error(what) {}
};

// Finite tree with unit-length edges oriented away from the root.
// Vertex ids are arbitrary ints; edges are referred to by their index.
class rooted_tree {
 public:
  rooted_tree(std::vector<int> vertices, std::vector<tree_edge> edges, int root);

  int root() const { return root_; }
  const std::vector<int>& vertices() const { return vertices_; }
  const std::vector<tree_edge>& edges() const { return edges_; }
  int edge_count() const { return int(edges_.size()); }
  int vertex_count() const { return int(vertices_.size()); }

  int vertex_index(int vertex_id) const;  // throws on unknown id
  bool has_vertex(int vertex_id) const;

  // Edge whose terminal vertex is `vertex_id`; -1 for the root.
  int incoming_edge(int vertex_id) const;
  const std::vector<int>& outgoing_edges(int vertex_id) const;
  // Number of edges on the path root -> vertex.
  int depth(int vertex_id) const;
  bool is_root_edge(int e) const { return edges_[e].init == root_; }
  bool is_leaf_edge(int e) const { return outgoing_edges(edges_[e].term).empty(); }
  // Root edge used as the canonical home of the root point.
  int designated_root_edge() const;

  void require_edge(int e) const;

  bool operator==(const rooted_tree& o) const {
    return root_ == o.root_ && vertices_ == o.vertices_ &&
           edges_eq(o);
  }
  bool operator!=(const rooted_tree& o) const { return !(*this == o); }

 private:
  bool edges_eq(const rooted_tree& o) const;

  std::vector<int> vertices_;
  std::vector<tree_edge> edges_;
  int root_;
  std::vector<int> vertex_index_;           // sorted-id lookup support
  std::vector<int> sorted_ids_;
  std::vector<int> incoming_;               // per vertex index
  std::vector<std::vector<int>> outgoing_;  // per vertex index
  std::vector<int> depth_;                  // per vertex index
};

// e2 is next to e1: terminal vertex of e1 is the initial vertex of e2.
bool is_next_to(int e1, int e2, const rooted_tree& t);
// e1 is beside e2: same initial vertex. The relation is between distinct edges.
bool is_beside(int e1, int e2, const rooted_tree& t);
// Edges reachable from e by next-to chains (e excluded); the set where g_e = 1.
std::vector<int> descendants(int e, const rooted_tree& t);

// Point on a tree: position t in [0,1] along an edge. Canonical form puts a
// point sitting at a vertex on the unique incoming edge with t = 1; the root
// lives at t = 0 on the designated root edge.
struct tree_point {
  int edge = 0;
  rat pos;

  static tree_point canonical(const rooted_tree& t, int edge, const rat& pos);
  static tree_point root_point(const rooted_tree& t);

  bool operator==(const tree_point& o) const { return edge == o.edge && pos == o.pos; }
  bool operator!=(const tree_point& o) const { return !(*this == o); }
};

// Vertex id of a point lying at parameter 0 or 1, or -1 for interior points.
int point_vertex(const rooted_tree& t, const tree_point& p);

// Arc-length position of a point measured from the root.
rat point_depth(const rooted_tree& t, const tree_point& p);

// One monotone run along a single edge, from parameter `from` to `to`.
struct geodesic_leg {
  int edge;
  rat from;
  rat to;
  rat length() const { return rat_abs(to - from); }
};

// The unique geodesic from a to b as edge-monotone legs (empty if a == b).
std::vector<geodesic_leg> geodesic(const rooted_tree& t, const tree_point& a, const tree_point& b);

rat tree_distance(const rooted_tree& t, const tree_point& a, const tree_point& b);

}  // namespace cutrees
