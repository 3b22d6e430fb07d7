#include "cutrees/gen.hpp"

#include <algorithm>
#include <set>

namespace cutrees {

rooted_tree random_tree(rng& r, int min_edges, int max_edges) {
  int n = r.range(min_edges, max_edges);
  std::vector<int> vs;
  std::vector<tree_edge> es;
  vs.push_back(0);
  for (int v = 1; v <= n; ++v) {
    vs.push_back(v);
    es.push_back({r.range(0, v - 1), v});
  }
  return rooted_tree(std::move(vs), std::move(es), 0);
}

rat random_rat01(rng& r, int max_den) {
  int q = r.range(1, max_den);
  int p = r.range(0, q);
  return rat(p, q);
}

rat random_rat_open(rng& r, int max_den) {
  int q = r.range(2, max_den);
  int p = r.range(1, q - 1);
  return rat(p, q);
}

namespace {

std::vector<rat> random_cuts(rng& r, int max_interior, int max_den) {
  std::set<rat> cuts;
  int k = r.range(0, max_interior);
  for (int i = 0; i < k; ++i) cuts.insert(random_rat_open(r, max_den));
  std::vector<rat> out{rat(0)};
  out.insert(out.end(), cuts.begin(), cuts.end());
  out.push_back(rat(1));
  return out;
}

}  // namespace

lsc_function random_lsc(rng& r, const rooted_tree& t, std::uint32_t max_val, bool allow_inf,
                        int max_den) {
  std::vector<lsc_edge_data> pe(std::size_t(t.edge_count()));
  for (int e = 0; e < t.edge_count(); ++e) {
    auto& d = pe[std::size_t(e)];
    d.cuts = random_cuts(r, 3, max_den);
    for (std::size_t i = 0; i + 1 < d.cuts.size(); ++i) {
      ext_nat v = allow_inf && r.chance(1, 8) ? ext_nat::inf() : ext_nat(std::uint32_t(r.range(0, int(max_val))));
      d.cell_values.push_back(v);
      if (i + 2 < d.cuts.size()) d.point_values.push_back(ext_nat(0));  // filled below
    }
    for (std::size_t i = 0; i < d.point_values.size(); ++i) {
      ext_nat cap = min(d.cell_values[i], d.cell_values[i + 1]);
      std::uint32_t hi = cap.is_inf() ? max_val : cap.finite();
      d.point_values[i] = r.chance(1, 2) ? ext_nat(std::uint32_t(r.range(0, int(hi)))) : cap;
    }
  }
  std::vector<ext_nat> vv(std::size_t(t.vertex_count()), ext_nat(0));
  for (int vid : t.vertices()) {
    if (vid == t.root()) continue;
    ext_nat cap = pe[std::size_t(t.incoming_edge(vid))].cell_values.back();
    for (int e : t.outgoing_edges(vid)) cap = min(cap, pe[std::size_t(e)].cell_values.front());
    std::uint32_t hi = cap.is_inf() ? max_val : cap.finite();
    vv[std::size_t(t.vertex_index(vid))] = r.chance(2, 3) ? cap : ext_nat(std::uint32_t(r.range(0, int(hi))));
  }
  return lsc_function(t, std::move(pe), std::move(vv));
}

pl_function random_pl01(rng& r, const rooted_tree& t, int max_den) {
  std::vector<rat> vertex_vals(std::size_t(t.vertex_count()));
  for (int vid : t.vertices()) vertex_vals[std::size_t(t.vertex_index(vid))] = random_rat01(r, max_den);
  std::vector<std::vector<pl_sample>> pe(std::size_t(t.edge_count()));
  for (int e = 0; e < t.edge_count(); ++e) {
    auto cuts = random_cuts(r, 2, max_den);
    std::vector<pl_sample> s;
    for (std::size_t i = 0; i < cuts.size(); ++i) {
      rat v;
      if (i == 0)
        v = vertex_vals[std::size_t(t.vertex_index(t.edges()[std::size_t(e)].init))];
      else if (i + 1 == cuts.size())
        v = vertex_vals[std::size_t(t.vertex_index(t.edges()[std::size_t(e)].term))];
      else
        v = random_rat01(r, max_den);
      s.push_back({cuts[i], v});
    }
    pe[std::size_t(e)] = std::move(s);
  }
  return pl_function(t, std::move(pe));
}

tree_point random_point(rng& r, const rooted_tree& t, int max_den) {
  return tree_point::canonical(t, r.range(0, t.edge_count() - 1), random_rat01(r, max_den));
}

pl_tree_map random_map(rng& r, const rooted_tree& source, const rooted_tree& target, int max_den) {
  std::vector<tree_point> images(std::size_t(source.vertex_count()), tree_point::root_point(target));
  for (int vid : source.vertices())
    images[std::size_t(source.vertex_index(vid))] =
        (vid == source.root()) ? tree_point::root_point(target) : random_point(r, target, max_den);
  std::vector<pl_tree_map::waypoints> pe(std::size_t(source.edge_count()));
  for (int e = 0; e < source.edge_count(); ++e) {
    pl_tree_map::waypoints w;
    w.push_back({rat(0), images[std::size_t(source.vertex_index(source.edges()[std::size_t(e)].init))]});
    int k = r.range(0, 2);
    std::set<rat> ss;
    for (int i = 0; i < k; ++i) ss.insert(random_rat_open(r, max_den));
    for (const rat& s : ss) w.push_back({s, random_point(r, target, max_den)});
    w.push_back({rat(1), images[std::size_t(source.vertex_index(source.edges()[std::size_t(e)].term))]});
    pe[std::size_t(e)] = std::move(w);
  }
  return pl_tree_map(source, target, std::move(pe));
}

diagonal_hom random_hom(rng& r, const rooted_tree& domain, const rooted_tree& source, int multiplicity, int max_den) {
  std::vector<pl_tree_map> maps;
  for (int j = 0; j < multiplicity; ++j) maps.push_back(random_map(r, domain, source, max_den));
  return diagonal_hom(std::move(maps));
}

lsc_function random_cc_below(rng& r, const lsc_function& g) {
  rat delta(1, std::int64_t(r.range(4, 16)));
  std::uint32_t cap = std::uint32_t(r.range(1, 4));
  return lsc_erode(g, delta, cap);
}

std::vector<lsc_function> random_chain(rng& r, const rooted_tree& t, int n) {
  // x_n small and clear of the root, then fatten upward
  lsc_function x = lsc_erode(random_lsc(r, t, 2, false), rat(1, std::int64_t(r.range(6, 12))), 2);
  std::vector<lsc_function> chain{x};
  for (int k = n - 1; k >= 0; --k) {
    const lsc_function& prev = chain.back();
    // room below the root: dilation must stay strictly inside X \ v
    rat delta(1, std::int64_t(r.range(8, 24)));
    if (!prev.is_zero()) {
      tree_subset supp = set_closure(prev.level_set(1));
      if (!supp.empty()) {
        rat root_gap = distance_to(supp).value_at_vertex(t.root());
        if (root_gap > 0 && delta >= root_gap) delta = root_gap / 2;
      }
    }
    lsc_function next = prev.is_zero() ? prev : lsc_dilate(prev, delta);
    if (r.chance(1, 3)) {
      lsc_function extra = lsc_erode(random_lsc(r, t, 2, false), rat(1, 8), 1);
      next = add(next, extra);
    }
    chain.push_back(std::move(next));
  }
  std::reverse(chain.begin(), chain.end());
  return chain;
}

generator_table random_step_table(rng& r, const rooted_tree& source, const rooted_tree& target, int max_den) {
  diagonal_hom phi = random_hom(r, target, source, r.range(1, 2), max_den);
  generator_table exact = cu_of_hom(phi);
  std::vector<cu_family> fams;
  for (int e = 0; e < source.edge_count(); ++e) {
    std::set<rat> bps{rat(0)};
    for (const rat& b : exact.family(e).parameter_breakpoints())
      if (b < 1 && r.chance(1, 2)) bps.insert(b);
    int extra = r.range(0, 2);
    for (int i = 0; i < extra; ++i) bps.insert(random_rat_open(r, max_den));
    step_family st;
    for (const rat& b : bps) st.steps.push_back({b, exact.family(e).at(b)});
    st.steps.push_back({rat(1), lsc_function::zero(target)});
    fams.push_back(cu_family(target, std::move(st)));
  }
  return generator_table(source, target, std::move(fams));
}

}  // namespace cutrees
