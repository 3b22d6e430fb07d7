#include "cutrees/pl.hpp"

#include <algorithm>
#include <map>

namespace cutrees {

namespace {

void canonicalize_edge(std::vector<pl_sample>& s) {
  std::vector<pl_sample> out;
  out.reserve(s.size());
  for (const auto& p : s) {
    while (out.size() >= 2) {
      const auto& a = out[out.size() - 2];
      const auto& b = out[out.size() - 1];
      // drop b if collinear with a..p
      if ((b.v - a.v) * (p.t - a.t) == (p.v - a.v) * (b.t - a.t))
        out.pop_back();
      else
        break;
    }
    out.push_back(p);
  }
  s = std::move(out);
}

rat interp(const std::vector<pl_sample>& s, const rat& t) {
  auto it = std::lower_bound(s.begin(), s.end(), t,
                             [](const pl_sample& a, const rat& x) { return a.t < x; });
  if (it != s.end() && it->t == t) return it->v;
  const pl_sample& hi = *it;
  const pl_sample& lo = *(it - 1);
  return lo.v + (hi.v - lo.v) * (t - lo.t) / (hi.t - lo.t);
}

// Merged strictly-increasing breakpoint positions of two sample lists.
std::vector<rat> merged_grid(const std::vector<pl_sample>& a, const std::vector<pl_sample>& b) {
  std::vector<rat> g;
  g.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].t <= b[j].t)) {
      if (g.empty() || g.back() != a[i].t) g.push_back(a[i].t);
      ++i;
    } else {
      if (g.empty() || g.back() != b[j].t) g.push_back(b[j].t);
      ++j;
    }
  }
  return g;
}

}  // namespace

pl_function::pl_function(const rooted_tree& tree, std::vector<std::vector<pl_sample>> per_edge)
    : tree_(&tree), per_edge_(std::move(per_edge)) {
  if (int(per_edge_.size()) != tree.edge_count())
    throw invariant_error("pl_function: need one sample list per edge");
  for (int e = 0; e < tree.edge_count(); ++e) {
    auto& s = per_edge_[std::size_t(e)];
    if (s.size() < 2 || s.front().t != 0 || s.back().t != 1)
      throw invariant_error("pl_function: edge " + std::to_string(e) + " samples must span [0,1]");
    for (std::size_t i = 0; i + 1 < s.size(); ++i)
      if (!(s[i].t < s[i + 1].t))
        throw invariant_error("pl_function: edge " + std::to_string(e) + " breakpoints not strictly increasing");
    for (const auto& p : s)
      if (p.v < 0) throw invariant_error("pl_function: negative value on edge " + std::to_string(e));
    canonicalize_edge(s);
  }
  // Global continuity across shared vertices.
  for (int v : tree.vertices()) {
    rat val;
    bool have = false;
    auto check = [&](const rat& x) {
      if (!have) {
        val = x;
        have = true;
      } else if (val != x) {
        throw invariant_error("pl_function: discontinuous at vertex " + std::to_string(v));
      }
    };
    int in = (v == tree.root()) ? -1 : tree.incoming_edge(v);
    if (in >= 0) check(per_edge_[std::size_t(in)].back().v);
    for (int e : tree.outgoing_edges(v)) check(per_edge_[std::size_t(e)].front().v);
  }
}

pl_function pl_function::constant(const rooted_tree& tree, const rat& value) {
  std::vector<std::vector<pl_sample>> s(std::size_t(tree.edge_count()),
                                        {{rat(0), value}, {rat(1), value}});
  return pl_function(tree, std::move(s));
}

rat pl_function::eval(const tree_point& p) const {
  tree_point c = tree_point::canonical(*tree_, p.edge, p.pos);
  return interp(per_edge_[std::size_t(c.edge)], c.pos);
}

rat pl_function::value_at_vertex(int vertex_id) const {
  if (vertex_id == tree_->root()) return per_edge_[std::size_t(tree_->designated_root_edge())].front().v;
  int e = tree_->incoming_edge(vertex_id);
  return per_edge_[std::size_t(e)].back().v;
}

rat pl_function::max_value() const {
  rat m = per_edge_[0][0].v;
  for (const auto& s : per_edge_)
    for (const auto& p : s) m = rat_max(m, p.v);
  return m;
}

rat pl_function::min_value() const {
  rat m = per_edge_[0][0].v;
  for (const auto& s : per_edge_)
    for (const auto& p : s) m = rat_min(m, p.v);
  return m;
}

bool pl_function::operator==(const pl_function& o) const {
  if (*tree_ != *o.tree_) return false;
  for (std::size_t e = 0; e < per_edge_.size(); ++e) {
    const auto& a = per_edge_[e];
    const auto& b = o.per_edge_[e];
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i].t != b[i].t || a[i].v != b[i].v) return false;
  }
  return true;
}

namespace {

// Apply a scalar piecewise-linear transform to each edge, inserting breakpoints
// where the transform kinks (at value crossings of `crossing`).
template <typename F>
pl_function map_values(const pl_function& f, const std::vector<rat>& crossings, F&& transform) {
  std::vector<std::vector<pl_sample>> out(std::size_t(f.tree().edge_count()));
  for (int e = 0; e < f.tree().edge_count(); ++e) {
    const auto& s = f.edge_samples(e);
    std::vector<pl_sample> r;
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (i > 0) {
        // insert crossing points inside (t_{i-1}, t_i)
        const auto& a = s[i - 1];
        const auto& b = s[i];
        std::vector<rat> hits;
        for (const rat& c : crossings) {
          if ((a.v < c && b.v > c) || (a.v > c && b.v < c)) {
            rat t = a.t + (c - a.v) * (b.t - a.t) / (b.v - a.v);
            hits.push_back(t);
          }
        }
        std::sort(hits.begin(), hits.end());
        for (const rat& t : hits) {
          rat v = a.v + (b.v - a.v) * (t - a.t) / (b.t - a.t);
          r.push_back({t, transform(v)});
        }
      }
      r.push_back({s[i].t, transform(s[i].v)});
    }
    out[std::size_t(e)] = std::move(r);
  }
  return pl_function(f.tree(), std::move(out));
}

}  // namespace

pl_function minus_plus(const pl_function& f, const rat& t) {
  if (t < 0) throw invariant_error("minus_plus: t must be >= 0");
  return map_values(f, {t}, [&](const rat& v) { return v > t ? rat(v - t) : rat(0); });
}

pl_function pl_affine(const pl_function& f, const rat& a, const rat& b, bool clamp_at_zero) {
  if (!clamp_at_zero) return map_values(f, {}, [&](const rat& v) { return a * v + b; });
  if (a == 0) return pl_function::constant(f.tree(), rat_max(rat(0), b));
  rat cross = -b / a;
  return map_values(f, {cross}, [&](const rat& v) { return rat_max(rat(0), rat(a * v + b)); });
}

namespace {

pl_function pointwise_combine(const pl_function& f, const pl_function& g, bool take_min) {
  if (f.tree() != g.tree()) throw invariant_error("pl min/max: functions on different trees");
  std::vector<std::vector<pl_sample>> out(std::size_t(f.tree().edge_count()));
  for (int e = 0; e < f.tree().edge_count(); ++e) {
    const auto& fs = f.edge_samples(e);
    const auto& gs = g.edge_samples(e);
    std::vector<rat> grid = merged_grid(fs, gs);
    std::vector<pl_sample> r;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (i > 0) {
        // crossing of the two affine pieces inside the cell
        rat t0 = grid[i - 1], t1 = grid[i];
        rat f0 = interp(fs, t0), f1 = interp(fs, t1);
        rat g0 = interp(gs, t0), g1 = interp(gs, t1);
        rat d0 = f0 - g0, d1 = f1 - g1;
        if ((d0 < 0 && d1 > 0) || (d0 > 0 && d1 < 0)) {
          rat tx = t0 + d0 * (t1 - t0) / (d0 - d1);
          r.push_back({tx, interp(fs, tx)});  // f == g there
        }
      }
      rat fv = interp(fs, grid[i]), gv = interp(gs, grid[i]);
      r.push_back({grid[i], take_min ? rat_min(fv, gv) : rat_max(fv, gv)});
    }
    out[std::size_t(e)] = std::move(r);
  }
  return pl_function(f.tree(), std::move(out));
}

}  // namespace

pl_function pl_min(const pl_function& f, const pl_function& g) { return pointwise_combine(f, g, true); }
pl_function pl_max(const pl_function& f, const pl_function& g) { return pointwise_combine(f, g, false); }

pl_function pl_combine(const pl_function& f, const rat& a, const pl_function& g, const rat& b, const rat& c) {
  if (f.tree() != g.tree()) throw invariant_error("pl_combine: functions on different trees");
  std::vector<std::vector<pl_sample>> out(std::size_t(f.tree().edge_count()));
  for (int e = 0; e < f.tree().edge_count(); ++e) {
    const auto& fs = f.edge_samples(e);
    const auto& gs = g.edge_samples(e);
    std::vector<pl_sample> r;
    rat prev_t, prev_v;
    for (const rat& t : merged_grid(fs, gs)) {
      rat v = a * interp(fs, t) + b * interp(gs, t) + c;
      if (!r.empty() && ((prev_v < 0 && v > 0) || (prev_v > 0 && v < 0))) {
        rat tx = prev_t + prev_v * (t - prev_t) / (prev_v - v);
        r.push_back({tx, rat(0)});
      }
      r.push_back({t, rat_max(v, rat(0))});
      prev_t = t;
      prev_v = v;
    }
    out[std::size_t(e)] = std::move(r);
  }
  return pl_function(f.tree(), std::move(out));
}

rat sup_norm_diff(const pl_function& f, const pl_function& g) {
  if (f.tree() != g.tree()) throw invariant_error("sup_norm_diff: functions on different trees");
  rat best = 0;
  for (int e = 0; e < f.tree().edge_count(); ++e) {
    for (const rat& t : merged_grid(f.edge_samples(e), g.edge_samples(e))) {
      rat d = rat_abs(interp(f.edge_samples(e), t) - interp(g.edge_samples(e), t));
      best = rat_max(best, d);
    }
  }
  return best;
}

pl_tree_map::pl_tree_map(const rooted_tree& source, const rooted_tree& target, std::vector<waypoints> per_edge,
                         bool require_root_compatible)
    : source_(&source), target_(&target), per_edge_(std::move(per_edge)), root_compatible_(false) {
  if (int(per_edge_.size()) != source.edge_count())
    throw invariant_error("pl_tree_map: need one waypoint list per source edge");
  for (int e = 0; e < source.edge_count(); ++e) {
    auto& w = per_edge_[std::size_t(e)];
    if (w.size() < 2 || w.front().first != 0 || w.back().first != 1)
      throw invariant_error("pl_tree_map: edge " + std::to_string(e) + " waypoints must span [0,1]");
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
      if (!(w[i].first < w[i + 1].first))
        throw invariant_error("pl_tree_map: edge " + std::to_string(e) + " parameters not strictly increasing");
    for (auto& [s, p] : w) p = tree_point::canonical(target, p.edge, p.pos);
  }
  // Continuity across shared source vertices.
  for (int v : source.vertices()) {
    const tree_point* ref = nullptr;
    int in = (v == source.root()) ? -1 : source.incoming_edge(v);
    if (in >= 0) ref = &per_edge_[std::size_t(in)].back().second;
    for (int e : source.outgoing_edges(v)) {
      const tree_point& p = per_edge_[std::size_t(e)].front().second;
      if (ref && !(*ref == p)) throw invariant_error("pl_tree_map: discontinuous at vertex " + std::to_string(v));
      if (!ref) ref = &p;
    }
  }
  tree_point at_root = per_edge_[std::size_t(source.designated_root_edge())].front().second;
  root_compatible_ = at_root == tree_point::root_point(target);
  if (require_root_compatible && !root_compatible_)
    throw invariant_error("pl_tree_map: root is not sent to the target root");
}

tree_point pl_tree_map::eval(int source_edge, const rat& s) const {
  source_->require_edge(source_edge);
  if (s < 0 || s > 1) throw invariant_error("pl_tree_map: parameter outside [0,1]");
  const auto& w = per_edge_[std::size_t(source_edge)];
  auto it = std::lower_bound(w.begin(), w.end(), s,
                             [](const std::pair<rat, tree_point>& a, const rat& x) { return a.first < x; });
  if (it != w.end() && it->first == s) return it->second;
  const auto& lo = *(it - 1);
  const auto& hi = *it;
  rat frac = (s - lo.first) / (hi.first - lo.first);
  auto legs = geodesic(*target_, lo.second, hi.second);
  rat total = 0;
  for (const auto& l : legs) total += l.length();
  if (total == 0) return lo.second;
  rat want = frac * total;
  for (const auto& l : legs) {
    rat len = l.length();
    if (want <= len) {
      rat pos = l.from + (l.to > l.from ? want : -want);
      return tree_point::canonical(*target_, l.edge, pos);
    }
    want -= len;
  }
  return hi.second;
}

pl_tree_map pl_tree_map::identity(const rooted_tree& t) {
  std::vector<waypoints> w(std::size_t(t.edge_count()));
  for (int e = 0; e < t.edge_count(); ++e)
    w[std::size_t(e)] = {{rat(0), tree_point::canonical(t, e, rat(0))}, {rat(1), {e, rat(1)}}};
  return pl_tree_map(t, t, std::move(w));
}

pl_tree_map pl_tree_map::constant_root(const rooted_tree& source, const rooted_tree& target) {
  tree_point r = tree_point::root_point(target);
  std::vector<waypoints> w(std::size_t(source.edge_count()), waypoints{{rat(0), r}, {rat(1), r}});
  return pl_tree_map(source, target, std::move(w));
}

bool pl_tree_map::operator==(const pl_tree_map& o) const {
  if (*source_ != *o.source_ || *target_ != *o.target_) return false;
  return per_edge_ == o.per_edge_;
}

pl_function compose(const pl_function& f, const pl_tree_map& m) {
  if (f.tree() != m.target()) throw invariant_error("compose: function tree is not the map's target");
  const rooted_tree& y = m.source();
  std::vector<std::vector<pl_sample>> out(std::size_t(y.edge_count()));
  for (int e = 0; e < y.edge_count(); ++e) {
    const auto& w = m.edge_waypoints(e);
    std::vector<pl_sample> r;
    r.push_back({w[0].first, f.eval(w[0].second)});
    for (std::size_t k = 0; k + 1 < w.size(); ++k) {
      const rat s0 = w[k].first, s1 = w[k + 1].first;
      auto legs = geodesic(f.tree(), w[k].second, w[k + 1].second);
      rat total = 0;
      for (const auto& l : legs) total += l.length();
      if (total == 0) {
        r.push_back({s1, f.eval(w[k + 1].second)});
        continue;
      }
      rat walked = 0;
      for (const auto& l : legs) {
        const auto& fs = f.edge_samples(l.edge);
        // breakpoints of f interior to this leg, in traversal order
        std::vector<rat> cuts;
        for (const auto& smp : fs) {
          bool inside = l.from < l.to ? (smp.t > l.from && smp.t < l.to) : (smp.t < l.from && smp.t > l.to);
          if (inside) cuts.push_back(smp.t);
        }
        if (l.from > l.to) std::reverse(cuts.begin(), cuts.end());
        for (const rat& c : cuts) {
          rat along = walked + rat_abs(c - l.from);
          rat s = s0 + (s1 - s0) * along / total;
          r.push_back({s, interp(fs, c)});
        }
        walked += l.length();
        rat s_end = s0 + (s1 - s0) * walked / total;
        r.push_back({s_end, interp(fs, l.to)});
      }
    }
    // collapse duplicate parameters (vertex crossings emit both sides)
    std::vector<pl_sample> dedup;
    for (const auto& p : r) {
      if (!dedup.empty() && dedup.back().t == p.t) {
        dedup.back().v = p.v;
      } else {
        dedup.push_back(p);
      }
    }
    out[std::size_t(e)] = std::move(dedup);
  }
  return pl_function(y, std::move(out));
}

}  // namespace cutrees
