#include "cutrees/tree.hpp"

#include <algorithm>
#include <queue>

namespace cutrees {

rooted_tree::rooted_tree(std::vector<int> vertices, std::vector<tree_edge> edges, int root)
    : vertices_(std::move(vertices)), edges_(std::move(edges)), root_(root) {
  sorted_ids_ = vertices_;
  std::sort(sorted_ids_.begin(), sorted_ids_.end());
  if (std::adjacent_find(sorted_ids_.begin(), sorted_ids_.end()) != sorted_ids_.end())
    throw invariant_error("duplicate vertex id");
  vertex_index_.resize(vertices_.size());
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    auto it = std::lower_bound(sorted_ids_.begin(), sorted_ids_.end(), vertices_[i]);
    vertex_index_[std::size_t(it - sorted_ids_.begin())] = int(i);
  }
  if (!has_vertex(root_)) throw invariant_error("root vertex " + std::to_string(root_) + " not in vertex set");
  if (edges_.empty()) throw invariant_error("tree must have at least one edge");
  if (edges_.size() + 1 != vertices_.size())
    throw invariant_error("edge count must be vertex count - 1 (acyclicity)");

  incoming_.assign(vertices_.size(), -1);
  outgoing_.assign(vertices_.size(), {});
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    if (!has_vertex(edges_[e].init))
      throw invariant_error("edge " + std::to_string(e) + ": unknown initial vertex " + std::to_string(edges_[e].init));
    if (!has_vertex(edges_[e].term))
      throw invariant_error("edge " + std::to_string(e) + ": unknown terminal vertex " + std::to_string(edges_[e].term));
    int ti = vertex_index(edges_[e].term);
    if (edges_[e].term == root_)
      throw invariant_error("edge " + std::to_string(e) + " points into the root (orientation must be away from " +
                            std::to_string(root_) + ")");
    if (incoming_[std::size_t(ti)] != -1)
      throw invariant_error("vertex " + std::to_string(edges_[e].term) + " has two incoming edges");
    incoming_[std::size_t(ti)] = int(e);
    outgoing_[std::size_t(vertex_index(edges_[e].init))].push_back(int(e));
  }

  // Connectivity + depths by BFS from the root.
  depth_.assign(vertices_.size(), -1);
  std::queue<int> q;
  depth_[std::size_t(vertex_index(root_))] = 0;
  q.push(root_);
  int seen = 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int e : outgoing_[std::size_t(vertex_index(v))]) {
      int w = edges_[std::size_t(e)].term;
      if (depth_[std::size_t(vertex_index(w))] == -1) {
        depth_[std::size_t(vertex_index(w))] = depth_[std::size_t(vertex_index(v))] + 1;
        ++seen;
        q.push(w);
      }
    }
  }
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    if (depth_[i] == -1)
      throw invariant_error("vertex " + std::to_string(vertices_[i]) + " unreachable from the root (disconnected)");
  (void)seen;
}

bool rooted_tree::edges_eq(const rooted_tree& o) const {
  if (edges_.size() != o.edges_.size()) return false;
  for (std::size_t i = 0; i < edges_.size(); ++i)
    if (edges_[i].init != o.edges_[i].init || edges_[i].term != o.edges_[i].term) return false;
  return true;
}

bool rooted_tree::has_vertex(int vertex_id) const {
  return std::binary_search(sorted_ids_.begin(), sorted_ids_.end(), vertex_id);
}

int rooted_tree::vertex_index(int vertex_id) const {
  auto it = std::lower_bound(sorted_ids_.begin(), sorted_ids_.end(), vertex_id);
  if (it == sorted_ids_.end() || *it != vertex_id)
    throw invariant_error("unknown vertex id " + std::to_string(vertex_id));
  return vertex_index_[std::size_t(it - sorted_ids_.begin())];
}

int rooted_tree::incoming_edge(int vertex_id) const { return incoming_[std::size_t(vertex_index(vertex_id))]; }

const std::vector<int>& rooted_tree::outgoing_edges(int vertex_id) const {
  return outgoing_[std::size_t(vertex_index(vertex_id))];
}

int rooted_tree::depth(int vertex_id) const { return depth_[std::size_t(vertex_index(vertex_id))]; }

int rooted_tree::designated_root_edge() const {
  const auto& out = outgoing_edges(root_);
  if (out.empty()) throw invariant_error("root has no outgoing edge");
  return *std::min_element(out.begin(), out.end());
}

void rooted_tree::require_edge(int e) const {
  if (e < 0 || e >= edge_count()) throw invariant_error("unknown edge id " + std::to_string(e));
}

bool is_next_to(int e1, int e2, const rooted_tree& t) {
  t.require_edge(e1);
  t.require_edge(e2);
  return t.edges()[std::size_t(e1)].term == t.edges()[std::size_t(e2)].init;
}

bool is_beside(int e1, int e2, const rooted_tree& t) {
  t.require_edge(e1);
  t.require_edge(e2);
  if (e1 == e2) throw invariant_error("is_beside is a relation between distinct edges");
  return t.edges()[std::size_t(e1)].init == t.edges()[std::size_t(e2)].init;
}

std::vector<int> descendants(int e, const rooted_tree& t) {
  t.require_edge(e);
  std::vector<int> out;
  std::vector<int> stack{e};
  while (!stack.empty()) {
    int cur = stack.back();
    stack.pop_back();
    for (int nxt : t.outgoing_edges(t.edges()[std::size_t(cur)].term)) {
      out.push_back(nxt);
      stack.push_back(nxt);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

tree_point tree_point::canonical(const rooted_tree& t, int edge, const rat& pos) {
  t.require_edge(edge);
  if (pos < 0 || pos > 1) throw invariant_error("point position outside [0,1]");
  if (pos == 0) {
    int v = t.edges()[std::size_t(edge)].init;
    if (v == t.root()) return {t.designated_root_edge(), rat(0)};
    return {t.incoming_edge(v), rat(1)};
  }
  return {edge, pos};
}

tree_point tree_point::root_point(const rooted_tree& t) { return {t.designated_root_edge(), rat(0)}; }

int point_vertex(const rooted_tree& t, const tree_point& p) {
  if (p.pos == 0) return t.edges()[std::size_t(p.edge)].init;
  if (p.pos == 1) return t.edges()[std::size_t(p.edge)].term;
  return -1;
}

rat point_depth(const rooted_tree& t, const tree_point& p) {
  return rat(t.depth(t.edges()[std::size_t(p.edge)].init)) + p.pos;
}

namespace {

// Edges on the path from the root down to `v`, in root-to-v order.
std::vector<int> root_chain(const rooted_tree& t, int v) {
  std::vector<int> chain;
  while (v != t.root()) {
    int e = t.incoming_edge(v);
    chain.push_back(e);
    v = t.edges()[std::size_t(e)].init;
  }
  std::reverse(chain.begin(), chain.end());
  return chain;
}

}  // namespace

std::vector<geodesic_leg> geodesic(const rooted_tree& t, const tree_point& a, const tree_point& b) {
  tree_point ca = tree_point::canonical(t, a.edge, a.pos);
  tree_point cb = tree_point::canonical(t, b.edge, b.pos);
  if (ca == cb) return {};
  if (ca.edge == cb.edge) return {{ca.edge, ca.pos, cb.pos}};

  // Chains of edges from the root to each point's edge.
  std::vector<int> cha = root_chain(t, t.edges()[std::size_t(ca.edge)].init);
  cha.push_back(ca.edge);
  std::vector<int> chb = root_chain(t, t.edges()[std::size_t(cb.edge)].init);
  chb.push_back(cb.edge);
  std::size_t common = 0;
  while (common < cha.size() && common < chb.size() && cha[common] == chb[common]) ++common;

  std::vector<geodesic_leg> legs;
  if (common == cha.size()) {
    // a's edge is an ancestor of b's edge: a lies on chb[common-1] already.
    // Walk down from a.
    legs.push_back({ca.edge, ca.pos, rat(1)});
    for (std::size_t i = common; i + 1 < chb.size(); ++i) legs.push_back({chb[i], rat(0), rat(1)});
    legs.push_back({cb.edge, rat(0), cb.pos});
  } else if (common == chb.size()) {
    legs.push_back({ca.edge, ca.pos, rat(0)});
    for (std::size_t i = cha.size() - 2; i + 1 > common; --i) legs.push_back({cha[i], rat(1), rat(0)});
    legs.push_back({cb.edge, rat(1), cb.pos});
  } else {
    // Diverging below the meet vertex: go up from a, then down to b.
    legs.push_back({ca.edge, ca.pos, rat(0)});
    for (std::size_t i = cha.size() - 2; i + 1 > common; --i) legs.push_back({cha[i], rat(1), rat(0)});
    for (std::size_t i = common; i + 1 < chb.size(); ++i) legs.push_back({chb[i], rat(0), rat(1)});
    legs.push_back({cb.edge, rat(0), cb.pos});
  }
  // Drop zero-length end legs (a or b sitting exactly at the turn vertex).
  std::vector<geodesic_leg> out;
  for (const auto& l : legs)
    if (l.from != l.to) out.push_back(l);
  return out;
}

rat tree_distance(const rooted_tree& t, const tree_point& a, const tree_point& b) {
  rat d = 0;
  for (const auto& l : geodesic(t, a, b)) d += l.length();
  return d;
}

}  // namespace cutrees
