#include "cutrees/lift.hpp"

#include <algorithm>

namespace cutrees {

element_profile::element_profile(const rooted_tree& target, std::vector<std::pair<rat, lsc_function>> steps)
    : target_(&target), steps_(std::move(steps)) {
  if (steps_.empty()) throw invariant_error("element_profile: empty step family");
  if (steps_.front().first != 0) throw invariant_error("element_profile: first step must start at 0");
  for (std::size_t i = 0; i + 1 < steps_.size(); ++i)
    if (!(steps_[i].first < steps_[i + 1].first))
      throw invariant_error("element_profile: parameters not strictly increasing");
  if (steps_.back().first > 1) throw invariant_error("element_profile: parameter beyond 1 (norm <= 1)");
  for (const auto& [t, L] : steps_)
    if (L.tree() != target) throw invariant_error("element_profile: value on wrong tree");
  if (!steps_.back().second.is_zero()) {
    if (steps_.back().first == 1) throw invariant_error("element_profile: family must vanish from 1 on");
    steps_.push_back({rat(1), lsc_function::zero(target)});
  }
  std::vector<std::pair<rat, lsc_function>> merged;
  for (auto& s : steps_) {
    if (!merged.empty() && merged.back().second == s.second) continue;
    merged.push_back(std::move(s));
  }
  steps_ = std::move(merged);
  // antitone + level nesting across consecutive cells
  for (std::size_t k = 0; k + 1 < steps_.size(); ++k) {
    const lsc_function& hi = steps_[k].second;
    const lsc_function& lo = steps_[k + 1].second;
    if (!leq(lo, hi))
      throw invariant_error("element_profile: antitone fails at " + rat_to_string(steps_[k + 1].first));
    if (lo.finite()) {
      std::uint32_t m = lo.max_value().finite();
      for (std::uint32_t j = 1; j <= m; ++j) {
        tree_subset lvl = lo.level_set(j);
        if (lvl.empty()) break;
        if (!subset_of(set_closure(lvl), hi.level_set(j)))
          throw invariant_error("element_profile: level nesting fails at " + rat_to_string(steps_[k + 1].first) +
                                " level " + std::to_string(j));
      }
    }
  }
}

lsc_function element_profile::at(const rat& t) const {
  if (t < 0) throw invariant_error("element_profile: parameter must be >= 0");
  std::size_t i = 0;
  while (i + 1 < steps_.size() && steps_[i + 1].first <= t) ++i;
  return steps_[i].second;
}

bool element_profile::finite() const {
  for (const auto& [t, L] : steps_)
    if (!L.finite()) return false;
  return true;
}

bool element_profile::operator==(const element_profile& o) const {
  if (*target_ != *o.target_ || steps_.size() != o.steps_.size()) return false;
  for (std::size_t i = 0; i < steps_.size(); ++i)
    if (steps_[i].first != o.steps_[i].first || !(steps_[i].second == o.steps_[i].second)) return false;
  return true;
}

element_profile interpolate_chain(const std::vector<lsc_function>& xs, int n) {
  if (n < 1) throw invariant_error("interpolate_chain: n must be positive");
  if (int(xs.size()) != n + 1) throw invariant_error("interpolate_chain: need n + 1 chain elements");
  const rooted_tree& y = xs.front().tree();
  for (int k = 0; k < n; ++k)
    if (!compactly_contained(xs[std::size_t(k + 1)], xs[std::size_t(k)]))
      throw invariant_error("interpolate_chain: chain condition fails at index " + std::to_string(k));
  std::vector<std::pair<rat, lsc_function>> steps;
  steps.push_back({rat(0), xs[0]});
  for (int k = 1; k < n; ++k)
    steps.push_back({rat(k, n), interpolate(xs[std::size_t(k + 1)], xs[std::size_t(k)])});
  return element_profile(y, std::move(steps));
}

std::map<int, element_profile> discretize(const generator_table& alpha, int N) {
  if (N < 1) throw invariant_error("discretize: N must be positive");
  const rooted_tree& x = alpha.source();
  const rooted_tree& y = alpha.target();
  long grid = 1L << N;
  std::map<int, element_profile> out;
  for (int e = 0; e < x.edge_count(); ++e) {
    std::vector<lsc_function> chain;
    chain.reserve(std::size_t(grid) + 1);
    for (long k = 0; k <= grid; ++k) chain.push_back(alpha.family(e).at(rat(k, grid)));
    if (!chain.back().is_zero())
      throw infeasible_discretization("discretize: family of edge " + std::to_string(e) + " does not vanish at 1");
    lsc_function children_sum = lsc_function::zero(y);
    for (int e2 = 0; e2 < x.edge_count(); ++e2)
      if (is_next_to(e, e2, x)) children_sum = add(children_sum, alpha.family(e2).at(rat(0)));
    std::optional<element_profile> base;
    try {
      base.emplace(interpolate_chain(chain, int(grid)));
    } catch (const invariant_error& err) {
      throw infeasible_discretization("discretize: edge " + std::to_string(e) + ": " + err.what() +
                                      " (table too coarse for grid 1/2^" + std::to_string(N) + "?)");
    }
    if (!children_sum.is_zero()) {
      if (!compactly_contained(children_sum, chain[std::size_t(grid - 1)]))
        throw infeasible_discretization("discretize: edge " + std::to_string(e) +
                                        ": children do not sit compactly below F_e((2^N-1)/2^N)");
      lsc_function top = interpolate(children_sum, chain[std::size_t(grid - 1)]);
      std::vector<std::pair<rat, lsc_function>> steps = base->steps();
      // replace the family on [(2^N-1)/2^N, 1) with the raised layer
      rat t_top(grid - 1, grid);
      std::vector<std::pair<rat, lsc_function>> adjusted;
      for (auto& s : steps)
        if (s.first < t_top) adjusted.push_back(std::move(s));
      adjusted.push_back({t_top, std::move(top)});
      out.emplace(e, element_profile(y, std::move(adjusted)));
    } else {
      out.emplace(e, std::move(*base));
    }
  }
  return out;
}

// ---- realization ----------------------------------------------------------

namespace {

struct tower_cells {
  // nonempty level sets of the profile cells at one rank level, with their
  // cell boundaries [t_k, t_{k+1})
  std::vector<rat> t;            // size cells + 1
  std::vector<tree_subset> w;    // size cells
};

// Distance clearance dist(closure(inner), X \ outer); positive by nesting.
rat clearance(const tree_subset& outer, const tree_subset& inner) {
  return set_distance(set_complement(outer), inner);
}

// Probe-exact realization of one rank level: continuous PL f with
// {f > (t_k + t_{k+1})/2} equal to w_k for every cell. The caps, slopes and
// collar rates are shared across levels (keyed by the profile cell index) so
// that the entries come out pointwise decreasing in the level.
pl_function realize_level_exact(const rooted_tree& y, const tower_cells& tc, const std::vector<rat>& probe,
                                const std::vector<rat>& cap, const std::vector<rat>& mu, const rat& rho) {
  std::size_t kk = tc.w.size();
  pl_function f = pl_function::constant(y, rat(0));
  for (std::size_t k = 0; k < kk; ++k) {
    pl_function d = distance_to(set_complement(tc.w[k]));
    pl_function e = distance_to(tc.w[k]);
    rat nu = probe[k] / rho;
    // tau_k = min(cap_k, max(s_k + mu_k*d - nu_k*e, 0)); the zero clamp is
    // free under the outer max with 0
    pl_function tau = pl_min(pl_function::constant(y, cap[k]), pl_combine(d, mu[k], e, -nu, probe[k]));
    f = pl_max(f, tau);
  }
  return f;
}

// Sandwich realization used by the lift: supp f = w_0 exactly, f vanishes at
// the root, f >= t_{k+1} on w_{k+1} and f <= t_k outside w_k. Since the w_k
// are nested, on the band w_k \ w_{k+1} the function is
// clamp(mu_k * dist(x, X \ w_k), t_k, t_{k+1}), assembled edge by edge.
pl_function realize_level_inner(const rooted_tree& y, const tower_cells& tc) {
  std::size_t kk = tc.w.size();
  std::vector<pl_function> dist;
  std::vector<rat> mu(kk);
  dist.reserve(kk);
  for (std::size_t k = 0; k < kk; ++k) {
    dist.push_back(distance_to(set_complement(tc.w[k])));
    mu[k] = (k + 1 < kk) ? rat(tc.t[k + 1] / clearance(tc.w[k], tc.w[k + 1]))
                         : rat_max(rat(1), tc.t[k + 1] * rat(4));
  }
  std::vector<std::vector<pl_sample>> out(std::size_t(y.edge_count()));
  for (int e = 0; e < y.edge_count(); ++e) {
    // nested levels: the number of intervals covering a cell is k* + 1
    std::vector<std::pair<rat, int>> events;
    for (std::size_t k = 0; k < kk; ++k)
      for (const auto& iv : tc.w[k].intervals(e)) {
        events.push_back({iv.lo, +1});
        events.push_back({iv.hi, -1});
      }
    std::vector<rat> coords{rat(0), rat(1)};
    for (const auto& [c, d] : events) coords.push_back(c);
    std::sort(coords.begin(), coords.end());
    coords.erase(std::unique(coords.begin(), coords.end()), coords.end());
    std::sort(events.begin(), events.end(),
              [](const auto& a, const auto& b) { return a.first < b.first || (a.first == b.first && a.second < b.second); });
    std::vector<pl_sample>& samples = out[std::size_t(e)];
    std::size_t ev = 0;
    int depth = 0;
    for (std::size_t i = 0; i + 1 < coords.size(); ++i) {
      // advance events through coords[i]: closings first, then openings
      while (ev < events.size() && events[ev].first <= coords[i]) depth += events[ev++].second;
      int kstar = depth - 1;
      const rat &a = coords[i], &b = coords[i + 1];
      if (kstar < 0) {
        if (samples.empty() || samples.back().t != a) samples.push_back({a, rat(0)});
        samples.push_back({b, rat(0)});
        continue;
      }
      const pl_function& d = dist[std::size_t(kstar)];
      const rat &floor_v = tc.t[std::size_t(kstar)], &cap_v = tc.t[std::size_t(kstar) + 1];
      auto clamp = [&](const rat& v) { return rat_min(cap_v, rat_max(floor_v, v)); };
      // d's kinks inside the cell plus clamp crossings between them
      std::vector<pl_sample> cell;
      cell.push_back({a, mu[std::size_t(kstar)] * d.eval({e, a})});
      for (const auto& s : d.edge_samples(e))
        if (s.t > a && s.t < b) cell.push_back({s.t, mu[std::size_t(kstar)] * s.v});
      cell.push_back({b, mu[std::size_t(kstar)] * d.eval({e, b})});
      for (std::size_t j = 0; j < cell.size(); ++j) {
        if (j > 0) {
          const auto& p = cell[j - 1];
          const auto& q = cell[j];
          for (const rat& lvl : {floor_v, cap_v}) {
            if ((p.v < lvl && q.v > lvl) || (p.v > lvl && q.v < lvl)) {
              rat tx = p.t + (lvl - p.v) * (q.t - p.t) / (q.v - p.v);
              samples.push_back({tx, lvl});
            }
          }
        }
        samples.push_back({cell[j].t, clamp(cell[j].v)});
      }
    }
    std::sort(samples.begin(), samples.end(), [](const pl_sample& a, const pl_sample& b) { return a.t < b.t; });
    std::vector<pl_sample> dedup;
    for (const auto& s : samples)
      if (dedup.empty() || dedup.back().t != s.t) dedup.push_back(s);
    out[std::size_t(e)] = std::move(dedup);
  }
  return pl_function(y, std::move(out));
}

// Cells of a profile at one rank level: the nonempty prefix of the level sets.
tower_cells level_cells(const element_profile& p, std::uint32_t j) {
  tower_cells tc;
  const auto& st = p.steps();
  for (std::size_t k = 0; k + 1 < st.size(); ++k) {
    tree_subset w = st[k].second.level_set(j);
    if (w.empty()) break;
    tc.t.push_back(st[k].first);
    tc.w.push_back(std::move(w));
    tc.t.push_back(st[k + 1].first);
  }
  // t was pushed pairwise; dedupe to cells + 1 entries
  if (!tc.w.empty()) {
    std::vector<rat> ts;
    ts.push_back(tc.t.front());
    for (std::size_t i = 1; i < tc.t.size(); i += 2) ts.push_back(tc.t[i]);
    tc.t = std::move(ts);
  }
  return tc;
}

}  // namespace

std::vector<pl_function> realize_profile(const element_profile& p) {
  if (!p.finite()) throw unrealizable_profile("realize_profile: profile takes the value inf");
  const rooted_tree& y = p.target();
  lsc_function p0 = p.steps().front().second;
  if (p0.is_zero()) return {};
  std::uint32_t m = p0.max_value().finite();
  if (set_closure(p0.level_set(1)).contains_root())
    throw unrealizable_profile(
        "realize_profile: supp P(0) has the root in its closure; no continuous entry can both vanish at the root "
        "and exceed the first probe there");
  // every tower lives on a prefix of the profile's cell ladder
  const auto& st = p.steps();
  std::size_t cells = st.size() - 1;
  std::vector<rat> probe(cells), cap(cells);
  for (std::size_t k = 0; k < cells; ++k) probe[k] = (st[k].first + st[k + 1].first) / 2;
  for (std::size_t k = 0; k < cells; ++k) cap[k] = (k + 1 < cells) ? probe[k + 1] : st[cells].first;

  // collar bound and per-cell slope: half resp. all of the least clearance
  // across the levels, so the entries are pointwise decreasing in the level
  rat rho(-1);
  std::vector<rat> gamma_min(cells, rat(-1));
  std::vector<tower_cells> towers;
  towers.reserve(m);
  for (std::uint32_t j = 1; j <= m; ++j) {
    tower_cells tc = level_cells(p, j);
    for (std::size_t k = 0; k + 1 < tc.w.size(); ++k) {
      rat g = clearance(tc.w[k], tc.w[k + 1]);
      if (gamma_min[k] < 0 || g < gamma_min[k]) gamma_min[k] = g;
      if (rho < 0 || g / 2 < rho) rho = g / 2;
    }
    towers.push_back(std::move(tc));
  }
  if (rho < 0) rho = rat(1, 2);
  std::vector<rat> mu(cells, rat(1));
  for (std::size_t k = 0; k < cells; ++k)
    if (gamma_min[k] > 0) mu[k] = (cap[k] - probe[k]) / gamma_min[k];
  std::vector<pl_function> out;
  out.reserve(m);
  for (std::uint32_t j = 1; j <= m; ++j)
    out.push_back(realize_level_exact(y, towers[j - 1], probe, cap, mu, rho));
  return out;
}

// ---- approximate lift ------------------------------------------------------

namespace {

// Exact-relation snap: c = min(1, f / (1 - 1/2^N)); ||c - f|| <= 1/2^N.
pl_function snap_to_one(const pl_function& f, int N) {
  rat thresh = rat(1) - rat(1, 1L << N);
  return pl_min(pl_function::constant(f.tree(), rat(1)), pl_affine(f, rat(1) / thresh, rat(0), false));
}

// Eigenvalue map from one exact-relation family: on each cell of the merged
// breakpoint grid the deepest supported edge is constant and the position on
// it is affine, so cell boundaries are the waypoints.
pl_tree_map extract_map(const std::map<int, pl_function>& family, const rooted_tree& x, const rooted_tree& y) {
  std::vector<pl_tree_map::waypoints> per_edge(std::size_t(y.edge_count()));
  for (int ye = 0; ye < y.edge_count(); ++ye) {
    std::vector<rat> grid{rat(0), rat(1)};
    for (const auto& [e, c] : family)
      for (const auto& smp : c.edge_samples(ye)) grid.push_back(smp.t);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    pl_tree_map::waypoints w;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
      rat mid = (grid[i] + grid[i + 1]) / 2;
      int deepest = -1;
      for (const auto& [e, c] : family)
        if (c.eval({ye, mid}) > 0 &&
            (deepest < 0 || x.depth(x.edges()[std::size_t(e)].init) > x.depth(x.edges()[std::size_t(deepest)].init)))
          deepest = e;
      auto point_at = [&](const rat& s) {
        if (deepest < 0) return tree_point::root_point(x);
        return tree_point::canonical(x, deepest, family.at(deepest).eval({ye, s}));
      };
      if (i == 0) w.push_back({grid[i], point_at(grid[i])});
      w.push_back({grid[i + 1], point_at(grid[i + 1])});
    }
    per_edge[std::size_t(ye)] = std::move(w);
  }
  return pl_tree_map(y, x, std::move(per_edge), true);
}

int pick_n(const rat& eps) {
  if (!(eps > 0)) throw invariant_error("approximate_lift: eps must be positive");
  int n = 1;
  while (rat(1, 1L << (n - 1)) >= eps) {
    ++n;
    if (n > 40) throw invariant_error("approximate_lift: eps too small (grid overflow)");
  }
  return n;
}

}  // namespace

lift_result approximate_lift(const generator_table& alpha, const rat& eps) {
  const rooted_tree& x = alpha.source();
  const rooted_tree& y = alpha.target();
  {
    auto errs = alpha.validate();
    if (!errs.empty()) throw lift_compatibility_error("approximate_lift: invalid table: " + errs.front());
  }
  lsc_function tc = total_class(alpha);
  if (!tc.finite())
    throw lift_compatibility_error("approximate_lift: total class is not finite (alpha[s_X] <= m*[s_Y] fails)");

  int n = pick_n(eps);
  int N = n + 2;

  // trivial table: the constant-root homomorphism
  bool all_zero = true;
  for (int e = 0; e < x.edge_count(); ++e)
    if (!alpha.family(e).is_zero()) all_zero = false;
  if (all_zero) {
    diagonal_hom phi({pl_tree_map::constant_root(y, x)});
    rat d = d_w_tree(alpha, cu_of_hom(phi));
    return {phi, {d, eps, n, N}};
  }

  std::map<int, element_profile> profiles = discretize(alpha, N);

  // Per-edge tower counts and supports.
  std::vector<std::uint32_t> rank_e(std::size_t(x.edge_count()), 0);
  for (int e = 0; e < x.edge_count(); ++e) {
    const lsc_function& p0 = profiles.at(e).steps().front().second;
    rank_e[std::size_t(e)] = p0.finite() ? p0.max_value().finite() : 0;
  }
  std::uint32_t max_rank = *std::max_element(rank_e.begin(), rank_e.end());

  // Layer assignment. Rank-one tables: one layer per root subtree, greedily
  // colored so that overlapping root supports use distinct layers. Higher
  // ranks: identity pairing, requiring per-level disjointness of siblings.
  std::vector<int> root_color(std::size_t(x.edge_count()), 0);
  int layers = 0;
  if (max_rank <= 1) {
    std::vector<int> root_edges;
    for (int e = 0; e < x.edge_count(); ++e)
      if (x.is_root_edge(e)) root_edges.push_back(e);
    std::vector<tree_subset> supp;
    for (int e : root_edges) supp.push_back(alpha.family(e).at(rat(0)).level_set(1));
    for (std::size_t i = 0; i < root_edges.size(); ++i) {
      if (supp[i].empty()) {
        root_color[std::size_t(root_edges[i])] = 1;
        continue;
      }
      int color = 1;
      for (bool retry = true; retry;) {
        retry = false;
        for (std::size_t jj = 0; jj < i; ++jj)
          if (root_color[std::size_t(root_edges[jj])] == color && !supp[jj].empty() &&
              !set_intersection(supp[i], supp[jj]).empty()) {
            ++color;
            retry = true;
            break;
          }
      }
      root_color[std::size_t(root_edges[i])] = color;
      layers = std::max(layers, color);
    }
    // propagate the root color down the subtree
    for (int e = 0; e < x.edge_count(); ++e) {
      int cur = e;
      while (!x.is_root_edge(cur)) cur = x.incoming_edge(x.edges()[std::size_t(cur)].init);
      root_color[std::size_t(e)] = root_color[std::size_t(cur)];
    }
    layers = std::max(layers, 1);
  } else {
    layers = int(max_rank);
    // per-level sibling disjointness (identity pairing feasibility)
    for (int e1 = 0; e1 < x.edge_count(); ++e1)
      for (int e2 = e1 + 1; e2 < x.edge_count(); ++e2) {
        if (!is_beside(e1, e2, x)) continue;
        std::uint32_t top = std::min(rank_e[std::size_t(e1)], rank_e[std::size_t(e2)]);
        for (std::uint32_t j = 1; j <= top; ++j) {
          tree_subset a = alpha.family(e1).at(rat(0)).level_set(j);
          tree_subset b = alpha.family(e2).at(rat(0)).level_set(j);
          if (!set_intersection(a, b).empty())
            throw lift_compatibility_error(
                "approximate_lift: sibling edges " + std::to_string(e1) + " and " + std::to_string(e2) +
                " have overlapping supports at level " + std::to_string(j) +
                "; identity tower pairing cannot represent the relations");
        }
      }
  }

  // Inner towers + snap, per edge and rank level.
  std::vector<std::vector<pl_function>> snapped(std::size_t(x.edge_count()));
  for (int e = 0; e < x.edge_count(); ++e) {
    for (std::uint32_t j = 1; j <= rank_e[std::size_t(e)]; ++j) {
      tower_cells cells = level_cells(profiles.at(e), j);
      if (cells.w.empty()) break;
      snapped[std::size_t(e)].push_back(snap_to_one(realize_level_inner(y, cells), N));
    }
  }

  // Assemble per-layer relation families and extract eigenvalue maps.
  std::vector<pl_tree_map> maps;
  pl_function zero = pl_function::constant(y, rat(0));
  for (int L = 1; L <= layers; ++L) {
    std::map<int, pl_function> fam;
    for (int e = 0; e < x.edge_count(); ++e) {
      const auto& tow = snapped[std::size_t(e)];
      if (max_rank <= 1) {
        bool active = root_color[std::size_t(e)] == L && !tow.empty();
        fam.emplace(e, active ? tow[0] : zero);
      } else {
        fam.emplace(e, std::size_t(L) <= tow.size() ? tow[std::size_t(L - 1)] : zero);
      }
    }
    if (!check_relations(fam, x))
      throw lift_compatibility_error("approximate_lift: layer " + std::to_string(L) +
                                     " towers violate the edge relations (not composable)");
    maps.push_back(extract_map(fam, x, y));
  }

  diagonal_hom phi(std::move(maps));
  rat d = d_w_tree(alpha, cu_of_hom(phi));
  if (!(d < eps))
    throw lift_compatibility_error("approximate_lift: certificate failed, d_w = " + rat_to_string(d) +
                                   " for eps = " + rat_to_string(eps));
  return {phi, {d, eps, n, N}};
}

std::vector<std::pair<diagonal_hom, rat>> cauchy_driver(const generator_table& alpha, int steps) {
  if (steps < 1) throw invariant_error("cauchy_driver: steps must be positive");
  std::vector<diagonal_hom> homs;
  for (int n = 1; n <= steps + 1; ++n) {
    lift_result r = approximate_lift(alpha, rat(1, 1L << (n + 2)));
    if (r.hom.multiplicity() != 1)
      throw lift_compatibility_error("cauchy_driver: table is not multiplicity-1 liftable");
    homs.push_back(std::move(r.hom));
  }
  std::vector<std::pair<diagonal_hom, rat>> out;
  for (int n = 1; n <= steps; ++n)
    out.push_back({homs[std::size_t(n - 1)],
                   d_u_commutative(homs[std::size_t(n - 1)], homs[std::size_t(n)])});
  return out;
}

}  // namespace cutrees
