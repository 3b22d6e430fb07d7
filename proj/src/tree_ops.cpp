#include "cutrees/tree_ops.hpp"

#include <algorithm>

namespace cutrees {

pl_function generator(int e, const rooted_tree& t) {
  t.require_edge(e);
  std::vector<int> desc = descendants(e, t);
  std::vector<std::vector<pl_sample>> samples(std::size_t(t.edge_count()),
                                              {{rat(0), rat(0)}, {rat(1), rat(0)}});
  samples[std::size_t(e)] = {{rat(0), rat(0)}, {rat(1), rat(1)}};
  for (int d : desc) samples[std::size_t(d)] = {{rat(0), rat(1)}, {rat(1), rat(1)}};
  return pl_function(t, std::move(samples));
}

rat pl_min_over(const pl_function& f, const tree_subset& closed_set) {
  tree_subset c = set_closure(closed_set);
  if (c.empty()) throw invariant_error("pl_min_over: empty set");
  const rooted_tree& t = f.tree();
  bool have = false;
  rat best;
  auto consider = [&](const rat& v) {
    if (!have || v < best) {
      best = v;
      have = true;
    }
  };
  for (int vid : t.vertices())
    if (c.contains_vertex(vid) || (vid == t.root() && c.contains_root())) consider(f.value_at_vertex(vid));
  for (int e = 0; e < t.edge_count(); ++e)
    for (const auto& iv : c.intervals(e)) {
      for (const rat& x : {iv.lo, iv.hi}) consider(f.eval(tree_point::canonical(t, e, x)));
      for (const auto& s : f.edge_samples(e))
        if (s.t >= iv.lo && s.t <= iv.hi) consider(s.v);
    }
  return best;
}

bool check_relations(const std::map<int, pl_function>& family, const rooted_tree& t) {
  if (int(family.size()) != t.edge_count()) throw invariant_error("check_relations: one function per edge required");
  // the relations are indexed by the edges of t; the representing functions
  // may live on another tree (a representation in a different algebra)
  for (const auto& [e, h] : family) {
    t.require_edge(e);
    if (h.tree() != family.begin()->second.tree())
      throw invariant_error("check_relations: family members on different trees");
    if (h.min_value() < 0 || h.max_value() > 1)
      throw invariant_error("check_relations: values outside [0,1] on edge " + std::to_string(e));
  }
  std::vector<tree_subset> supports;
  supports.reserve(std::size_t(t.edge_count()));
  for (int e = 0; e < t.edge_count(); ++e) supports.push_back(pl_superlevel(family.at(e), rat(0)));
  for (int e1 = 0; e1 < t.edge_count(); ++e1)
    for (int e2 = 0; e2 < t.edge_count(); ++e2) {
      if (e1 == e2) continue;
      if (is_beside(e1, e2, t) && e1 < e2) {
        if (!set_intersection(supports[std::size_t(e1)], supports[std::size_t(e2)]).empty()) return false;
      }
      if (is_next_to(e1, e2, t)) {
        // {h_e2 > 0} subset of {h_e1 = 1}; by continuity min over the closure
        if (supports[std::size_t(e2)].empty()) continue;
        if (pl_min_over(family.at(e1), set_closure(supports[std::size_t(e2)])) != 1) return false;
      }
    }
  return true;
}

open_subset hereditary_open(int e, const rat& eps, const rooted_tree& t) {
  t.require_edge(e);
  if (!(eps > 0 && eps < 1)) throw invariant_error("hereditary_open: eps must lie in (0,1)");
  std::vector<int> desc = descendants(e, t);
  std::vector<char> in_sub(std::size_t(t.edge_count()), 0);
  for (int d : desc) in_sub[std::size_t(d)] = 1;
  std::vector<char> in_vertex(std::size_t(t.vertex_count()), 0);
  in_vertex[std::size_t(t.vertex_index(t.edges()[std::size_t(e)].term))] = 1;
  for (int d : desc) in_vertex[std::size_t(t.vertex_index(t.edges()[std::size_t(d)].term))] = 1;
  std::vector<std::vector<rat>> cs(std::size_t(t.edge_count()));
  cs[std::size_t(e)].push_back(eps);
  tree_subset s = tree_subset::build(
      t, cs,
      [&](int ee, const rat& x) {
        if (ee == e) return x > eps;
        return in_sub[std::size_t(ee)] != 0;
      },
      [&](int vid) { return in_vertex[std::size_t(t.vertex_index(vid))] != 0; }, false);
  return open_subset(std::move(s));
}

open_subset superlevel(const pl_function& f, const rat& t) {
  if (t < 0) throw invariant_error("superlevel: t must be >= 0");
  return open_subset(pl_superlevel(f, t));
}

}  // namespace cutrees
