#include "cutrees/lsc.hpp"

#include <algorithm>

namespace cutrees {

namespace {

std::vector<rat> with_bounds(std::vector<rat> coords) {
  coords.push_back(rat(0));
  coords.push_back(rat(1));
  std::sort(coords.begin(), coords.end());
  coords.erase(std::unique(coords.begin(), coords.end()), coords.end());
  return coords;
}

void canonicalize_edge(lsc_edge_data& d) {
  lsc_edge_data out;
  out.cuts.push_back(d.cuts.front());
  for (std::size_t i = 1; i + 1 < d.cuts.size(); ++i) {
    if (d.point_values[i - 1] == d.cell_values[i - 1] && d.cell_values[i - 1] == d.cell_values[i]) continue;
    out.cuts.push_back(d.cuts[i]);
    out.point_values.push_back(d.point_values[i - 1]);
    out.cell_values.push_back(d.cell_values[i - 1]);
  }
  out.cuts.push_back(d.cuts.back());
  out.cell_values.push_back(d.cell_values.back());
  // removed cuts merge equal neighbours, so surviving cell values are right
  std::size_t ci = 0;
  lsc_edge_data fixed;
  fixed.cuts = out.cuts;
  for (std::size_t i = 0; i + 1 < out.cuts.size(); ++i) {
    while (d.cuts[ci + 1] <= out.cuts[i]) ++ci;
    fixed.cell_values.push_back(d.cell_values[ci]);
    if (i + 2 < out.cuts.size()) {
      std::size_t pi = ci;
      while (d.cuts[pi + 1] < out.cuts[i + 1]) ++pi;
      fixed.point_values.push_back(d.point_values[pi]);
    }
  }
  d = std::move(fixed);
}

}  // namespace

lsc_function::lsc_function(const rooted_tree& tree, std::vector<lsc_edge_data> per_edge,
                           std::vector<ext_nat> vertex_values)
    : tree_(&tree), per_edge_(std::move(per_edge)), vertex_values_(std::move(vertex_values)) {
  if (int(per_edge_.size()) != tree.edge_count()) throw invariant_error("lsc_function: one edge record per edge");
  if (int(vertex_values_.size()) != tree.vertex_count())
    throw invariant_error("lsc_function: one value slot per vertex");
  for (int e = 0; e < tree.edge_count(); ++e) {
    auto& d = per_edge_[std::size_t(e)];
    if (d.cuts.size() < 2 || d.cuts.front() != 0 || d.cuts.back() != 1)
      throw invariant_error("lsc_function: edge " + std::to_string(e) + " cuts must span [0,1]");
    for (std::size_t i = 0; i + 1 < d.cuts.size(); ++i)
      if (!(d.cuts[i] < d.cuts[i + 1]))
        throw invariant_error("lsc_function: edge " + std::to_string(e) + " cuts not strictly increasing");
    if (d.cell_values.size() + 1 != d.cuts.size() || d.point_values.size() + 2 != d.cuts.size())
      throw invariant_error("lsc_function: edge " + std::to_string(e) + " value counts mismatch");
    for (std::size_t i = 0; i < d.point_values.size(); ++i)
      if (d.point_values[i] > min(d.cell_values[i], d.cell_values[i + 1]))
        throw invariant_error("lsc_function: edge " + std::to_string(e) + " violates lower semicontinuity at cut " +
                              rat_to_string(d.cuts[i + 1]));
    canonicalize_edge(d);
  }
  for (int vid : tree.vertices()) {
    if (vid == tree.root()) continue;
    ext_nat v = vertex_values_[std::size_t(tree.vertex_index(vid))];
    ext_nat lim = ext_nat::inf();
    lim = min(lim, per_edge_[std::size_t(tree.incoming_edge(vid))].cell_values.back());
    for (int e : tree.outgoing_edges(vid)) lim = min(lim, per_edge_[std::size_t(e)].cell_values.front());
    if (v > lim)
      throw invariant_error("lsc_function: vertex " + std::to_string(vid) + " value above adjacent limits");
  }
  vertex_values_[std::size_t(tree.vertex_index(tree.root()))] = ext_nat(0);
}

lsc_function lsc_function::zero(const rooted_tree& tree) {
  std::vector<lsc_edge_data> pe(std::size_t(tree.edge_count()));
  for (auto& d : pe) {
    d.cuts = {rat(0), rat(1)};
    d.cell_values = {ext_nat(0)};
  }
  return lsc_function(tree, std::move(pe), std::vector<ext_nat>(std::size_t(tree.vertex_count()), ext_nat(0)));
}

lsc_function lsc_function::build(const rooted_tree& tree, const std::vector<std::vector<rat>>& edge_coords,
                                 const std::function<ext_nat(int, const rat&)>& value_interior,
                                 const std::function<ext_nat(int)>& value_vertex) {
  std::vector<lsc_edge_data> pe(std::size_t(tree.edge_count()));
  for (int e = 0; e < tree.edge_count(); ++e) {
    auto cs = with_bounds(edge_coords[std::size_t(e)]);
    auto& d = pe[std::size_t(e)];
    d.cuts = cs;
    for (std::size_t i = 0; i + 1 < cs.size(); ++i) {
      d.cell_values.push_back(value_interior(e, (cs[i] + cs[i + 1]) / 2));
      if (i + 2 < cs.size()) d.point_values.push_back(value_interior(e, cs[i + 1]));
    }
  }
  std::vector<ext_nat> vv(std::size_t(tree.vertex_count()), ext_nat(0));
  for (int vid : tree.vertices())
    if (vid != tree.root()) vv[std::size_t(tree.vertex_index(vid))] = value_vertex(vid);
  return lsc_function(tree, std::move(pe), std::move(vv));
}

lsc_function lsc_function::indicator(const tree_subset& open_set) {
  std::vector<std::vector<rat>> cs(std::size_t(open_set.tree().edge_count()));
  for (int e = 0; e < open_set.tree().edge_count(); ++e)
    for (const auto& iv : open_set.intervals(e)) {
      cs[std::size_t(e)].push_back(iv.lo);
      cs[std::size_t(e)].push_back(iv.hi);
    }
  return build(
      open_set.tree(), cs,
      [&](int e, const rat& t) { return ext_nat(open_set.contains_interior(e, t) ? 1 : 0); },
      [&](int vid) { return ext_nat(open_set.contains_vertex(vid) ? 1 : 0); });
}

ext_nat lsc_function::value_interior(int e, const rat& t) const {
  const auto& d = per_edge_[std::size_t(e)];
  auto it = std::lower_bound(d.cuts.begin(), d.cuts.end(), t);
  std::size_t i = std::size_t(it - d.cuts.begin());
  if (it != d.cuts.end() && *it == t) {
    if (i == 0 || i + 1 == d.cuts.size()) throw invariant_error("value_interior: vertex position");
    return d.point_values[i - 1];
  }
  return d.cell_values[i - 1];
}

ext_nat lsc_function::value_at_vertex(int vertex_id) const {
  if (vertex_id == tree_->root()) throw invariant_error("lsc_function has no value at the root");
  return vertex_values_[std::size_t(tree_->vertex_index(vertex_id))];
}

ext_nat lsc_function::value(const tree_point& p) const {
  tree_point c = tree_point::canonical(*tree_, p.edge, p.pos);
  int v = point_vertex(*tree_, c);
  if (v >= 0) return value_at_vertex(v);
  return value_interior(c.edge, c.pos);
}

ext_nat lsc_function::max_value() const {
  ext_nat m(0);
  for (const auto& d : per_edge_)
    for (const auto& v : d.cell_values) m = max(m, v);
  return m;  // cuts/vertices never exceed adjacent cells (lsc)
}

bool lsc_function::finite() const { return !max_value().is_inf(); }

bool lsc_function::is_zero() const { return *this == zero(*tree_); }

tree_subset lsc_function::level_set(std::uint32_t n) const {
  ext_nat lvl(n);
  std::vector<std::vector<rat>> cs(std::size_t(tree_->edge_count()));
  for (int e = 0; e < tree_->edge_count(); ++e) {
    const auto& c = per_edge_[std::size_t(e)].cuts;
    cs[std::size_t(e)].assign(c.begin(), c.end());
  }
  return tree_subset::build(
      *tree_, cs, [&](int e, const rat& t) { return value_interior(e, t) >= lvl; },
      [&](int vid) { return value_at_vertex(vid) >= lvl; }, false);
}

bool lsc_function::operator==(const lsc_function& o) const {
  if (*tree_ != *o.tree_ || vertex_values_.size() != o.vertex_values_.size()) return false;
  for (std::size_t i = 0; i < vertex_values_.size(); ++i)
    if (vertex_values_[i] != o.vertex_values_[i]) return false;
  for (std::size_t e = 0; e < per_edge_.size(); ++e) {
    const auto& a = per_edge_[e];
    const auto& b = o.per_edge_[e];
    if (a.cuts != b.cuts) return false;
    for (std::size_t i = 0; i < a.cell_values.size(); ++i)
      if (a.cell_values[i] != b.cell_values[i]) return false;
    for (std::size_t i = 0; i < a.point_values.size(); ++i)
      if (a.point_values[i] != b.point_values[i]) return false;
  }
  return true;
}

namespace {

std::vector<std::vector<rat>> merged_cuts(const lsc_function& f, const lsc_function& g) {
  std::vector<std::vector<rat>> cs(std::size_t(f.tree().edge_count()));
  for (int e = 0; e < f.tree().edge_count(); ++e) {
    const auto& a = f.edge_data(e).cuts;
    const auto& b = g.edge_data(e).cuts;
    cs[std::size_t(e)].assign(a.begin(), a.end());
    cs[std::size_t(e)].insert(cs[std::size_t(e)].end(), b.begin(), b.end());
  }
  return cs;
}

}  // namespace

lsc_function add(const lsc_function& f, const lsc_function& g) {
  if (f.tree() != g.tree()) throw invariant_error("add: functions on different trees");
  return lsc_function::build(
      f.tree(), merged_cuts(f, g),
      [&](int e, const rat& t) { return f.value_interior(e, t) + g.value_interior(e, t); },
      [&](int vid) { return f.value_at_vertex(vid) + g.value_at_vertex(vid); });
}

bool leq(const lsc_function& f, const lsc_function& g) {
  if (f.tree() != g.tree()) throw invariant_error("leq: functions on different trees");
  auto cs = merged_cuts(f, g);
  for (int e = 0; e < f.tree().edge_count(); ++e) {
    auto grid = with_bounds(cs[std::size_t(e)]);
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
      if (grid[i] > 0 && f.value_interior(e, grid[i]) > g.value_interior(e, grid[i])) return false;
      rat mid = (grid[i] + grid[i + 1]) / 2;
      if (f.value_interior(e, mid) > g.value_interior(e, mid)) return false;
    }
  }
  for (int vid : f.tree().vertices())
    if (vid != f.tree().root() && f.value_at_vertex(vid) > g.value_at_vertex(vid)) return false;
  return true;
}

bool compactly_contained(const lsc_function& f, const lsc_function& g) {
  if (f.tree() != g.tree()) throw invariant_error("compactly_contained: functions on different trees");
  if (!f.finite()) return false;
  std::uint32_t m = f.max_value().finite();
  for (std::uint32_t n = 1; n <= m; ++n) {
    tree_subset level = f.level_set(n);
    if (level.empty()) continue;
    tree_subset cl = set_closure(level);
    if (cl.contains_root()) return false;
    if (!subset_of(cl, g.level_set(n))) return false;
  }
  return true;
}

namespace {

lsc_function sum_of_indicators(const rooted_tree& tree, const std::vector<tree_subset>& sets) {
  std::vector<std::vector<rat>> cs(std::size_t(tree.edge_count()));
  for (const auto& s : sets)
    for (int e = 0; e < tree.edge_count(); ++e)
      for (const auto& iv : s.intervals(e)) {
        cs[std::size_t(e)].push_back(iv.lo);
        cs[std::size_t(e)].push_back(iv.hi);
      }
  return lsc_function::build(
      tree, cs,
      [&](int e, const rat& t) {
        std::uint32_t c = 0;
        for (const auto& s : sets)
          if (s.contains_interior(e, t)) ++c;
        return ext_nat(c);
      },
      [&](int vid) {
        std::uint32_t c = 0;
        for (const auto& s : sets)
          if (s.contains_vertex(vid)) ++c;
        return ext_nat(c);
      });
}

rat min_cut_gap(const lsc_function& f, const lsc_function& g) {
  rat gap(1);
  auto cs = merged_cuts(f, g);
  for (int e = 0; e < f.tree().edge_count(); ++e) {
    auto grid = with_bounds(cs[std::size_t(e)]);
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) gap = rat_min(gap, rat(grid[i + 1] - grid[i]));
  }
  return gap;
}

}  // namespace

bool cc_oracle(const lsc_function& f, const lsc_function& g) {
  if (f.tree() != g.tree()) throw invariant_error("cc_oracle: functions on different trees");
  if (!f.finite()) return false;
  // structural bound: once 1/k undercuts every breakpoint gap and k clears
  // max f, the chain member g_k decides the question
  rat gap = min_cut_gap(f, g);
  std::uint32_t k_star = std::uint32_t(rat_floor(1 / gap).convert_to<long long>()) + 1;
  std::uint32_t mf = f.max_value().finite();
  if (k_star < mf) k_star = mf;
  if (k_star < 1) k_star = 1;
  std::vector<std::uint32_t> ks;
  for (std::uint32_t k = 1; k < k_star; k *= 2) ks.push_back(k);
  ks.push_back(k_star);
  for (std::uint32_t k : ks) {
    if (leq(f, lsc_erode(g, rat(1, k), k))) return true;
  }
  return false;
}

lsc_function lsc_erode(const lsc_function& f, const rat& delta, std::uint32_t cap) {
  std::vector<tree_subset> sets;
  ext_nat m = f.max_value();
  std::uint32_t top = m.is_inf() ? cap : std::min(cap, m.finite());
  for (std::uint32_t n = 1; n <= top; ++n) {
    tree_subset lvl = f.level_set(n);
    if (lvl.empty()) break;
    tree_subset er = erode(lvl, delta);
    if (er.empty()) break;
    sets.push_back(std::move(er));
  }
  return sum_of_indicators(f.tree(), sets);
}

lsc_function lsc_dilate(const lsc_function& f, const rat& delta) {
  if (!f.finite()) throw invariant_error("lsc_dilate: function must be finite");
  std::vector<tree_subset> sets;
  std::uint32_t top = f.max_value().finite();
  for (std::uint32_t n = 1; n <= top; ++n) {
    tree_subset lvl = f.level_set(n);
    if (lvl.empty()) break;
    sets.push_back(dilate(lvl, delta));
  }
  return sum_of_indicators(f.tree(), sets);
}

std::vector<open_subset> decompose(const lsc_function& f) {
  if (!f.finite()) throw invariant_error("decompose: function takes the value inf");
  std::vector<open_subset> out;
  std::uint32_t m = f.max_value().finite();
  for (std::uint32_t i = 1; i <= m; ++i) {
    for (auto& piece : f.level_set(i).pieces()) out.push_back(open_subset(std::move(piece)));
  }
  return out;
}

lsc_function rank_function(const std::vector<pl_function>& diag, const rat& t) {
  if (diag.empty()) throw invariant_error("rank_function: empty diagonal");
  if (t < 0) throw invariant_error("rank_function: t must be >= 0");
  const rooted_tree& tree = diag.front().tree();
  for (const auto& f : diag)
    if (f.tree() != tree) throw invariant_error("rank_function: entries on different trees");
  std::vector<tree_subset> sets;
  sets.reserve(diag.size());
  for (const auto& f : diag) sets.push_back(pl_superlevel(f, t));
  return sum_of_indicators(tree, sets);
}

lsc_function interpolate(const lsc_function& f, const lsc_function& h) {
  if (!compactly_contained(f, h)) throw invariant_error("interpolate: precondition f << h fails (order error)");
  std::uint32_t m = f.finite() ? f.max_value().finite() : 0;
  std::vector<tree_subset> closures;
  rat delta(-1);
  for (std::uint32_t n = 1; n <= m; ++n) {
    tree_subset lvl = f.level_set(n);
    if (lvl.empty()) break;
    tree_subset cl = set_closure(lvl);
    rat clearance = set_distance(set_complement(h.level_set(n)), cl);
    if (delta < 0 || clearance / 2 < delta) delta = clearance / 2;
    closures.push_back(std::move(cl));
  }
  if (closures.empty()) return lsc_function::zero(f.tree());
  std::vector<tree_subset> layers;
  layers.reserve(closures.size());
  for (const auto& cl : closures) layers.push_back(dilate(cl, delta));
  return sum_of_indicators(f.tree(), layers);
}

}  // namespace cutrees
