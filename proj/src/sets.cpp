#include "cutrees/sets.hpp"

#include <algorithm>
#include <numeric>

namespace cutrees {

namespace {

std::vector<rat> with_bounds(std::vector<rat> coords) {
  coords.push_back(rat(0));
  coords.push_back(rat(1));
  std::sort(coords.begin(), coords.end());
  coords.erase(std::unique(coords.begin(), coords.end()), coords.end());
  return coords;
}

}  // namespace

tree_subset::tree_subset(const rooted_tree& tree)
    : tree_(&tree), per_edge_(std::size_t(tree.edge_count())), vertex_in_(std::size_t(tree.vertex_count()), 0) {}

bool tree_subset::contains_interior(int e, const rat& t) const {
  for (const auto& iv : per_edge_[std::size_t(e)]) {
    if (t < iv.lo || (t == iv.lo && !iv.lo_closed && iv.lo > 0)) continue;
    if (t > iv.hi || (t == iv.hi && !iv.hi_closed && iv.hi < 1)) continue;
    if (t > 0 && t < 1) return true;
  }
  return false;
}

bool tree_subset::contains_vertex(int vertex_id) const {
  if (vertex_id == tree_->root()) return root_in_;
  return vertex_in_[std::size_t(tree_->vertex_index(vertex_id))] != 0;
}

bool tree_subset::contains(const tree_point& p) const {
  tree_point c = tree_point::canonical(*tree_, p.edge, p.pos);
  int v = point_vertex(*tree_, c);
  if (v >= 0) return contains_vertex(v);
  return contains_interior(c.edge, c.pos);
}

bool tree_subset::empty() const {
  if (root_in_) return false;
  for (char c : vertex_in_)
    if (c) return false;
  for (const auto& ivs : per_edge_)
    if (!ivs.empty()) return false;
  return true;
}

bool tree_subset::operator==(const tree_subset& o) const {
  if (*tree_ != *o.tree_ || root_in_ != o.root_in_ || vertex_in_ != o.vertex_in_) return false;
  for (std::size_t e = 0; e < per_edge_.size(); ++e) {
    const auto& a = per_edge_[e];
    const auto& b = o.per_edge_[e];
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
      bool alo = a[i].lo_closed && a[i].lo > 0 && a[i].lo < 1;
      bool blo = b[i].lo_closed && b[i].lo > 0 && b[i].lo < 1;
      bool ahi = a[i].hi_closed && a[i].hi > 0 && a[i].hi < 1;
      bool bhi = b[i].hi_closed && b[i].hi > 0 && b[i].hi < 1;
      if (a[i].lo != b[i].lo || a[i].hi != b[i].hi || alo != blo || ahi != bhi) return false;
    }
  }
  return true;
}

tree_subset tree_subset::build(const rooted_tree& tree, const std::vector<std::vector<rat>>& edge_coords,
                               const std::function<bool(int, const rat&)>& mem_interior,
                               const std::function<bool(int)>& mem_vertex, bool mem_root) {
  tree_subset s(tree);
  s.root_in_ = mem_root;
  for (int vi = 0; vi < tree.vertex_count(); ++vi) {
    int id = tree.vertices()[std::size_t(vi)];
    if (id != tree.root() && mem_vertex(id)) s.vertex_in_[std::size_t(tree.vertex_index(id))] = 1;
  }
  for (int e = 0; e < tree.edge_count(); ++e) {
    std::vector<rat> cs = with_bounds(edge_coords[std::size_t(e)]);
    // Items alternate point c_0, cell (c_0,c_1), point c_1, ... point c_m.
    // Boundary points 0 and 1 are vertex positions, never interval members.
    std::vector<edge_interval>& out = s.per_edge_[std::size_t(e)];
    bool in_run = false;
    edge_interval cur;
    auto start = [&](const rat& lo, bool closed) {
      cur = {lo, lo, closed, closed};
      in_run = true;
    };
    auto extend = [&](const rat& hi, bool closed) {
      cur.hi = hi;
      cur.hi_closed = closed;
    };
    auto flush = [&]() {
      if (in_run) {
        out.push_back(cur);
        in_run = false;
      }
    };
    for (std::size_t i = 0; i < cs.size(); ++i) {
      bool pt = cs[i] > 0 && cs[i] < 1 && mem_interior(e, cs[i]);
      if (pt) {
        if (!in_run) start(cs[i], true);
        else extend(cs[i], true);
      } else if (cs[i] > 0 && cs[i] < 1) {
        flush();
      }
      if (i + 1 < cs.size()) {
        rat mid = (cs[i] + cs[i + 1]) / 2;
        if (mem_interior(e, mid)) {
          if (!in_run) start(cs[i], false);
          extend(cs[i + 1], false);
        } else {
          flush();
        }
      }
    }
    flush();
  }
  return s;
}

namespace {

std::vector<std::vector<rat>> gather_coords(const tree_subset& a) {
  std::vector<std::vector<rat>> cs(std::size_t(a.tree().edge_count()));
  for (int e = 0; e < a.tree().edge_count(); ++e)
    for (const auto& iv : a.intervals(e)) {
      cs[std::size_t(e)].push_back(iv.lo);
      cs[std::size_t(e)].push_back(iv.hi);
    }
  return cs;
}

std::vector<std::vector<rat>> merge_coords(std::vector<std::vector<rat>> a, const std::vector<std::vector<rat>>& b) {
  for (std::size_t e = 0; e < a.size(); ++e) a[e].insert(a[e].end(), b[e].begin(), b[e].end());
  return a;
}

}  // namespace

tree_subset set_union(const tree_subset& a, const tree_subset& b) {
  if (a.tree() != b.tree()) throw invariant_error("set_union: different trees");
  auto cs = merge_coords(gather_coords(a), gather_coords(b));
  return tree_subset::build(
      a.tree(), cs, [&](int e, const rat& t) { return a.contains_interior(e, t) || b.contains_interior(e, t); },
      [&](int v) { return a.contains_vertex(v) || b.contains_vertex(v); }, a.contains_root() || b.contains_root());
}

tree_subset set_intersection(const tree_subset& a, const tree_subset& b) {
  if (a.tree() != b.tree()) throw invariant_error("set_intersection: different trees");
  auto cs = merge_coords(gather_coords(a), gather_coords(b));
  return tree_subset::build(
      a.tree(), cs, [&](int e, const rat& t) { return a.contains_interior(e, t) && b.contains_interior(e, t); },
      [&](int v) { return a.contains_vertex(v) && b.contains_vertex(v); }, a.contains_root() && b.contains_root());
}

tree_subset set_complement(const tree_subset& a) {
  auto cs = gather_coords(a);
  return tree_subset::build(
      a.tree(), cs, [&](int e, const rat& t) { return !a.contains_interior(e, t); },
      [&](int v) { return !a.contains_vertex(v); }, !a.contains_root());
}

tree_subset set_closure(const tree_subset& a) {
  const rooted_tree& t = a.tree();
  auto cs = gather_coords(a);
  // vertex touched if an interval reaches its position
  std::vector<char> touched(std::size_t(t.vertex_count()), 0);
  bool root_touched = a.contains_root();
  for (int e = 0; e < t.edge_count(); ++e) {
    for (const auto& iv : a.intervals(e)) {
      if (iv.lo == 0) {
        int v = t.edges()[std::size_t(e)].init;
        if (v == t.root())
          root_touched = true;
        else
          touched[std::size_t(t.vertex_index(v))] = 1;
      }
      if (iv.hi == 1) touched[std::size_t(t.vertex_index(t.edges()[std::size_t(e)].term))] = 1;
    }
  }
  return tree_subset::build(
      t, cs,
      [&](int e, const rat& x) {
        if (a.contains_interior(e, x)) return true;
        for (const auto& iv : a.intervals(e))
          if (x >= iv.lo && x <= iv.hi) return true;  // endpoint of some interval
        return false;
      },
      [&](int v) {
        return a.contains_vertex(v) || touched[std::size_t(t.vertex_index(v))] != 0;
      },
      root_touched);
}

bool subset_of(const tree_subset& a, const tree_subset& b) {
  if (a.tree() != b.tree()) throw invariant_error("subset_of: different trees");
  if (a.contains_root() && !b.contains_root()) return false;
  for (int v : a.tree().vertices())
    if (v != a.tree().root() && a.contains_vertex(v) && !b.contains_vertex(v)) return false;
  for (int e = 0; e < a.tree().edge_count(); ++e) {
    std::vector<rat> cs;
    for (const auto& iv : a.intervals(e)) {
      cs.push_back(iv.lo);
      cs.push_back(iv.hi);
    }
    for (const auto& iv : b.intervals(e)) {
      cs.push_back(iv.lo);
      cs.push_back(iv.hi);
    }
    cs = with_bounds(std::move(cs));
    for (std::size_t i = 0; i + 1 < cs.size(); ++i) {
      if (cs[i] > 0 && a.contains_interior(e, cs[i]) && !b.contains_interior(e, cs[i])) return false;
      rat mid = (cs[i] + cs[i + 1]) / 2;
      if (a.contains_interior(e, mid) && !b.contains_interior(e, mid)) return false;
    }
  }
  return true;
}

bool tree_subset::is_open() const {
  if (root_in_) return false;
  for (int e = 0; e < tree_->edge_count(); ++e)
    for (const auto& iv : per_edge_[std::size_t(e)]) {
      if (iv.lo > 0 && iv.lo < 1 && iv.lo_closed) return false;
      if (iv.hi > 0 && iv.hi < 1 && iv.hi_closed) return false;
      if (iv.lo == iv.hi) return false;
    }
  for (int v : tree_->vertices()) {
    if (v == tree_->root() || !contains_vertex(v)) continue;
    // every incident edge side must approach the vertex
    int in = tree_->incoming_edge(v);
    bool ok = false;
    for (const auto& iv : per_edge_[std::size_t(in)])
      if (iv.hi == 1) ok = true;
    if (!ok) return false;
    for (int e : tree_->outgoing_edges(v)) {
      bool okk = false;
      for (const auto& iv : per_edge_[std::size_t(e)])
        if (iv.lo == 0) okk = true;
      if (!okk) return false;
    }
  }
  return true;
}

bool tree_subset::is_closed() const { return set_closure(*this) == *this; }

std::vector<tree_subset> tree_subset::pieces() const {
  const rooted_tree& t = *tree_;
  // nodes: intervals per edge, then vertices
  std::vector<std::pair<int, int>> nodes;  // (edge, interval index)
  std::vector<std::vector<int>> by_edge(std::size_t(t.edge_count()));
  for (int e = 0; e < t.edge_count(); ++e)
    for (std::size_t i = 0; i < per_edge_[std::size_t(e)].size(); ++i) {
      by_edge[std::size_t(e)].push_back(int(nodes.size()));
      nodes.push_back({e, int(i)});
    }
  std::size_t total = nodes.size() + std::size_t(t.vertex_count());
  std::vector<int> parent(total, 0);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    while (parent[std::size_t(x)] != x) x = parent[std::size_t(x)] = parent[std::size_t(parent[std::size_t(x)])];
    return x;
  };
  auto unite = [&](int x, int y) { parent[std::size_t(find(x))] = find(y); };

  auto vertex_node = [&](int vid) { return int(nodes.size()) + t.vertex_index(vid); };
  for (int e = 0; e < t.edge_count(); ++e) {
    const auto& ivs = per_edge_[std::size_t(e)];
    for (std::size_t i = 0; i < ivs.size(); ++i) {
      int vi = t.edges()[std::size_t(e)].init;
      int vt = t.edges()[std::size_t(e)].term;
      if (ivs[i].lo == 0 && vi != t.root() && contains_vertex(vi)) unite(by_edge[std::size_t(e)][i], vertex_node(vi));
      if (ivs[i].hi == 1 && contains_vertex(vt)) unite(by_edge[std::size_t(e)][i], vertex_node(vt));
    }
  }

  // group ids in first-appearance order: edges by index then vertices
  std::vector<int> reps;
  auto rep_index = [&](int root) {
    for (std::size_t i = 0; i < reps.size(); ++i)
      if (reps[i] == root) return int(i);
    reps.push_back(root);
    return int(reps.size()) - 1;
  };
  std::vector<tree_subset> out;
  for (int e = 0; e < t.edge_count(); ++e)
    for (std::size_t i = 0; i < per_edge_[std::size_t(e)].size(); ++i) {
      int g = rep_index(find(by_edge[std::size_t(e)][i]));
      while (int(out.size()) <= g) out.push_back(tree_subset(t));
      out[std::size_t(g)].per_edge_[std::size_t(e)].push_back(per_edge_[std::size_t(e)][i]);
    }
  for (int vid : t.vertices()) {
    if (vid == t.root() || !contains_vertex(vid)) continue;
    int g = rep_index(find(vertex_node(vid)));
    while (int(out.size()) <= g) out.push_back(tree_subset(t));
    out[std::size_t(g)].vertex_in_[std::size_t(t.vertex_index(vid))] = 1;
  }
  return out;
}

pl_function distance_to(const tree_subset& s) {
  const rooted_tree& t = s.tree();
  tree_subset c = set_closure(s);
  if (c.empty()) throw invariant_error("distance_to: empty set");
  // vertex labels by relaxation
  rat big = rat(2 * t.edge_count() + 2);
  std::vector<rat> dv(std::size_t(t.vertex_count()), big);
  for (int vid : t.vertices())
    if (c.contains_vertex(vid) || (vid == t.root() && c.contains_root())) dv[std::size_t(t.vertex_index(vid))] = 0;
  auto edge_local = [&](int e, bool from_init) -> rat {
    rat best = big;
    for (const auto& iv : c.intervals(e)) best = rat_min(best, from_init ? iv.lo : rat(1 - iv.hi));
    return best;
  };
  for (int e = 0; e < t.edge_count(); ++e) {
    int a = t.vertex_index(t.edges()[std::size_t(e)].init);
    int b = t.vertex_index(t.edges()[std::size_t(e)].term);
    dv[std::size_t(a)] = rat_min(dv[std::size_t(a)], edge_local(e, true));
    dv[std::size_t(b)] = rat_min(dv[std::size_t(b)], edge_local(e, false));
  }
  for (int pass = 0; pass < t.vertex_count(); ++pass) {
    bool changed = false;
    for (int e = 0; e < t.edge_count(); ++e) {
      auto a = std::size_t(t.vertex_index(t.edges()[std::size_t(e)].init));
      auto b = std::size_t(t.vertex_index(t.edges()[std::size_t(e)].term));
      if (dv[a] + 1 < dv[b]) {
        dv[b] = dv[a] + 1;
        changed = true;
      }
      if (dv[b] + 1 < dv[a]) {
        dv[a] = dv[b] + 1;
        changed = true;
      }
    }
    if (!changed) break;
  }

  // per-edge lower envelope of: d_init + t, d_term + (1-t), tents to intervals
  std::vector<std::vector<pl_sample>> out(std::size_t(t.edge_count()));
  for (int e = 0; e < t.edge_count(); ++e) {
    rat d0 = dv[std::size_t(t.vertex_index(t.edges()[std::size_t(e)].init))];
    rat d1 = dv[std::size_t(t.vertex_index(t.edges()[std::size_t(e)].term))];
    // affine pieces as (value at kink positions); env = min of segment functions
    std::vector<rat> kinks;
    for (const auto& iv : c.intervals(e)) {
      kinks.push_back(iv.lo);
      kinks.push_back(iv.hi);
    }
    std::vector<rat> grid = with_bounds(kinks);
    auto value = [&](const rat& x) {
      rat v = rat_min(rat(d0 + x), rat(d1 + 1 - x));
      for (const auto& iv : c.intervals(e)) {
        rat dd = x < iv.lo ? rat(iv.lo - x) : (x > iv.hi ? rat(x - iv.hi) : rat(0));
        v = rat_min(v, dd);
      }
      return v;
    };
    // min of 1-Lipschitz ±1-slope pieces: kinks occur at grid points and at
    // crossings of the slope-+1 / slope--1 envelopes between grid points.
    std::vector<pl_sample> samples;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (i > 0) {
        rat a = grid[i - 1], b = grid[i];
        rat va = value(a), vb = value(b);
        // potential valley / ridge between: envelope is min of v-shapes, so one
        // interior kink at most, where (va - a-slope run) meets from the right.
        // Solve x with va + (x-a)*s1 == vb + (b-x)*s2 for slopes ±1.
        for (int s1 : {-1, 1})
          for (int s2 : {-1, 1}) {
            // left line: va + s1 (x-a); right line: vb - s2 (b-x) going left
            rat denom = rat(s1) - rat(s2);
            if (denom == 0) continue;
            rat x = (vb - va + rat(s1) * a - rat(s2) * b) / denom;
            if (x > a && x < b) samples.push_back({x, value(x)});
          }
      }
      samples.push_back({grid[i], value(grid[i])});
    }
    std::sort(samples.begin(), samples.end(), [](const pl_sample& a, const pl_sample& b) { return a.t < b.t; });
    std::vector<pl_sample> dedup;
    for (const auto& p : samples)
      if (dedup.empty() || dedup.back().t != p.t) dedup.push_back(p);
    out[std::size_t(e)] = std::move(dedup);
  }
  return pl_function(t, std::move(out));
}

tree_subset pl_superlevel(const pl_function& f, const rat& t) {
  const rooted_tree& tr = f.tree();
  std::vector<std::vector<rat>> cs(std::size_t(tr.edge_count()));
  for (int e = 0; e < tr.edge_count(); ++e) {
    const auto& s = f.edge_samples(e);
    for (std::size_t i = 0; i < s.size(); ++i) {
      cs[std::size_t(e)].push_back(s[i].t);
      if (i > 0) {
        const auto& a = s[i - 1];
        const auto& b = s[i];
        if ((a.v < t && b.v > t) || (a.v > t && b.v < t))
          cs[std::size_t(e)].push_back(a.t + (t - a.v) * (b.t - a.t) / (b.v - a.v));
      }
    }
  }
  return tree_subset::build(
      tr, cs, [&](int e, const rat& x) { return f.eval({e, x}) > t; },
      [&](int v) { return f.value_at_vertex(v) > t; }, false);
}

tree_subset pl_strict_sublevel(const pl_function& f, const rat& t) {
  const rooted_tree& tr = f.tree();
  std::vector<std::vector<rat>> cs(std::size_t(tr.edge_count()));
  for (int e = 0; e < tr.edge_count(); ++e) {
    const auto& s = f.edge_samples(e);
    for (std::size_t i = 0; i < s.size(); ++i) {
      cs[std::size_t(e)].push_back(s[i].t);
      if (i > 0) {
        const auto& a = s[i - 1];
        const auto& b = s[i];
        if ((a.v < t && b.v > t) || (a.v > t && b.v < t))
          cs[std::size_t(e)].push_back(a.t + (t - a.v) * (b.t - a.t) / (b.v - a.v));
      }
    }
  }
  return tree_subset::build(
      tr, cs, [&](int e, const rat& x) { return f.eval({e, x}) < t; },
      [&](int v) { return f.value_at_vertex(v) < t; },
      false);
}

tree_subset dilate(const tree_subset& s, const rat& delta) {
  return pl_strict_sublevel(distance_to(s), delta);
}

tree_subset erode(const tree_subset& u, const rat& delta) {
  tree_subset comp = set_complement(u);  // contains the root, never empty
  return pl_superlevel(distance_to(comp), delta);
}

rat set_distance(const tree_subset& a, const tree_subset& b) {
  pl_function da = distance_to(a);
  tree_subset cb = set_closure(b);
  if (cb.empty()) throw invariant_error("set_distance: empty set");
  rat best = rat(2 * a.tree().edge_count() + 2);
  const rooted_tree& t = a.tree();
  for (int vid : t.vertices()) {
    if (cb.contains_vertex(vid) || (vid == t.root() && cb.contains_root()))
      best = rat_min(best, da.value_at_vertex(vid));
  }
  for (int e = 0; e < t.edge_count(); ++e) {
    for (const auto& iv : cb.intervals(e)) {
      for (const rat& x : {iv.lo, iv.hi}) {
        if (x > 0 && x < 1) best = rat_min(best, da.eval({e, x}));
        if (x == 0) best = rat_min(best, da.eval(tree_point::canonical(t, e, rat(0))));
        if (x == 1) best = rat_min(best, da.eval({e, rat(1)}));
      }
      for (const auto& smp : da.edge_samples(e))
        if (smp.t >= iv.lo && smp.t <= iv.hi) best = rat_min(best, smp.v);
    }
  }
  return best;
}

open_subset::open_subset(tree_subset s) : set_(std::move(s)) {
  if (!set_.is_open()) throw invariant_error("open_subset: set is not open in X or touches the root");
}

bool is_hereditary(const tree_subset& u) {
  if (!u.is_open()) return false;
  const rooted_tree& t = u.tree();
  for (int e = 0; e < t.edge_count(); ++e) {
    const auto& ivs = u.intervals(e);
    if (ivs.empty()) {
      // vertex membership would demand the outgoing edge covered near 0
      continue;
    }
    if (ivs.size() > 1) return false;
    if (ivs[0].hi != 1) return false;
    if (!u.contains_vertex(t.edges()[std::size_t(e)].term)) return false;
  }
  for (int vid : t.vertices()) {
    if (vid == t.root() || !u.contains_vertex(vid)) continue;
    for (int e : t.outgoing_edges(vid)) {
      const auto& ivs = u.intervals(e);
      if (ivs.size() != 1 || ivs[0].lo != 0 || ivs[0].hi != 1) return false;
    }
  }
  return true;
}

std::vector<std::pair<int, rat>> hereditary_components(const tree_subset& u) {
  if (!is_hereditary(u)) throw invariant_error("set is not hereditary open");
  std::vector<std::pair<int, rat>> out;
  const rooted_tree& t = u.tree();
  for (int e = 0; e < t.edge_count(); ++e) {
    const auto& ivs = u.intervals(e);
    if (ivs.empty()) continue;
    // shallowest edge of its component: initial vertex not in the set
    int vi = t.edges()[std::size_t(e)].init;
    bool top = (vi == t.root()) || !u.contains_vertex(vi);
    if (!top) continue;
    if (ivs[0].lo == 0)
      throw invariant_error("hereditary component reaches its initial vertex openly (eps = 0, outside the cone)");
    out.push_back({e, ivs[0].lo});
  }
  return out;
}

}  // namespace cutrees
