#include "cutrees/cu.hpp"

#include <algorithm>

namespace cutrees {

namespace {

std::vector<rat> sorted_unique(std::vector<rat> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

cu_family::cu_family(const rooted_tree& target, step_family s) : target_(&target), data_(std::move(s)) {
  auto& st = std::get<step_family>(data_).steps;
  if (st.empty()) throw invariant_error("cu_family: empty step family");
  if (st.front().first != 0) throw invariant_error("cu_family: first step must start at 0");
  for (std::size_t i = 0; i + 1 < st.size(); ++i)
    if (!(st[i].first < st[i + 1].first)) throw invariant_error("cu_family: steps not strictly increasing");
  if (st.back().first > 1) throw invariant_error("cu_family: last step beyond 1");
  for (auto& [t, L] : st)
    if (L.tree() != target) throw invariant_error("cu_family: value on wrong tree");
  if (!st.back().second.is_zero()) {
    if (st.back().first == 1)
      throw invariant_error("cu_family: family must vanish from 1 on (norm <= 1)");
    st.push_back({rat(1), lsc_function::zero(target)});
  }
  // canonical: merge equal consecutive values
  std::vector<std::pair<rat, lsc_function>> merged;
  for (auto& s2 : st) {
    if (!merged.empty() && merged.back().second == s2.second) continue;
    merged.push_back(std::move(s2));
  }
  st = std::move(merged);
}

cu_family::cu_family(const rooted_tree& target, profile_family p) : target_(&target), data_(std::move(p)) {
  auto& entries = std::get<profile_family>(data_).entries;
  for (const auto& f : entries) {
    if (f.tree() != target) throw invariant_error("cu_family: profile entry on wrong tree");
    if (f.min_value() < 0 || f.max_value() > 1)
      throw invariant_error("cu_family: profile entry values outside [0,1]");
  }
  entries = pointwise_sorted(entries);
  // canonical: drop identically-zero entries
  while (!entries.empty() && entries.back().max_value() == 0) entries.pop_back();
}

lsc_function cu_family::at(const rat& t) const {
  if (t < 0) throw invariant_error("cu_family: parameter must be >= 0");
  if (is_step()) {
    const auto& st = steps().steps;
    std::size_t i = 0;
    while (i + 1 < st.size() && st[i + 1].first <= t) ++i;
    return st[i].second;
  }
  if (profile().entries.empty()) return lsc_function::zero(*target_);
  return rank_function(profile().entries, t);
}

bool cu_family::is_zero() const {
  if (is_step()) {
    for (const auto& [t, L] : steps().steps)
      if (!L.is_zero()) return false;
    return true;
  }
  return profile().entries.empty();
}

std::vector<rat> cu_family::parameter_breakpoints() const {
  std::vector<rat> out{rat(0), rat(1)};
  if (is_step()) {
    for (const auto& [t, L] : steps().steps) out.push_back(t);
  } else {
    for (const auto& f : profile().entries)
      for (int e = 0; e < target_->edge_count(); ++e)
        for (const auto& s : f.edge_samples(e)) out.push_back(s.v);
  }
  return sorted_unique(std::move(out));
}

bool cu_family::operator==(const cu_family& o) const {
  if (*target_ != *o.target_ || is_step() != o.is_step()) return false;
  if (is_step()) {
    const auto& a = steps().steps;
    const auto& b = o.steps().steps;
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i].first != b[i].first || !(a[i].second == b[i].second)) return false;
    return true;
  }
  return profile().entries == o.profile().entries;
}

// ---- d_W on single-edge families --------------------------------------

namespace {

// All ordinates where comparisons against the profile's counting functions
// can change: entry values at breakpoints, at vertices, at the positions of
// the given extra cuts, and at pairwise crossings.
std::vector<rat> critical_ordinates(const profile_family& p, const rooted_tree& y,
                                    const std::vector<std::vector<rat>>& extra_positions) {
  std::vector<rat> out{rat(0), rat(1)};
  const auto& es = p.entries;
  for (const auto& f : es)
    for (int e = 0; e < y.edge_count(); ++e) {
      for (const auto& s : f.edge_samples(e)) out.push_back(s.v);
      for (const rat& x : extra_positions[std::size_t(e)]) out.push_back(f.eval({e, x}));
    }
  // pairwise crossing ordinates (including crossings at merged breakpoints)
  for (std::size_t i = 0; i < es.size(); ++i)
    for (std::size_t j = i + 1; j < es.size(); ++j)
      for (int e = 0; e < y.edge_count(); ++e) {
        const auto& a = es[i].edge_samples(e);
        const auto& b = es[j].edge_samples(e);
        std::vector<rat> grid;
        for (const auto& s : a) grid.push_back(s.t);
        for (const auto& s : b) grid.push_back(s.t);
        grid = sorted_unique(std::move(grid));
        for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
          rat a0 = es[i].eval({e, grid[k]}), a1 = es[i].eval({e, grid[k + 1]});
          rat b0 = es[j].eval({e, grid[k]}), b1 = es[j].eval({e, grid[k + 1]});
          rat d0 = a0 - b0, d1 = a1 - b1;
          if ((d0 < 0 && d1 > 0) || (d0 > 0 && d1 < 0)) {
            rat tx = grid[k] + d0 * (grid[k + 1] - grid[k]) / (d0 - d1);
            out.push_back(es[i].eval({e, tx}));
          }
        }
      }
  return sorted_unique(std::move(out));
}

// forall y: L(y) <= #{j : entries_j(y) >= b}   (b > 0)
bool leq_closed_count(const lsc_function& L, const profile_family& p, const rat& b) {
  const rooted_tree& y = L.tree();
  auto count_at = [&](const tree_point& pt) {
    std::uint32_t c = 0;
    for (const auto& f : p.entries)
      if (f.eval(pt) >= b) ++c;
    return ext_nat(c);
  };
  for (int e = 0; e < y.edge_count(); ++e) {
    std::vector<rat> cs(L.edge_data(e).cuts.begin(), L.edge_data(e).cuts.end());
    for (const auto& f : p.entries)
      for (std::size_t i = 0; i < f.edge_samples(e).size(); ++i) {
        const auto& s = f.edge_samples(e);
        cs.push_back(s[i].t);
        if (i > 0 && ((s[i - 1].v < b && s[i].v > b) || (s[i - 1].v > b && s[i].v < b)))
          cs.push_back(s[i - 1].t + (b - s[i - 1].v) * (s[i].t - s[i - 1].t) / (s[i].v - s[i - 1].v));
      }
    cs = sorted_unique(std::move(cs));
    for (std::size_t i = 0; i + 1 < cs.size(); ++i) {
      if (cs[i] > 0 && L.value_interior(e, cs[i]) > count_at({e, cs[i]})) return false;
      rat mid = (cs[i] + cs[i + 1]) / 2;
      if (L.value_interior(e, mid) > count_at({e, mid})) return false;
    }
  }
  for (int vid : y.vertices()) {
    if (vid == y.root()) continue;
    if (L.value_at_vertex(vid) > count_at({y.incoming_edge(vid), rat(1)})) return false;
  }
  return true;
}

bool feasible_step_step(const step_family& F, const step_family& G, const rat& r) {
  // direction: F(t + r) <= G(t) for all t >= 0
  auto dir = [&](const step_family& A, const step_family& B) {
    // A(t + r) <= B(t); cells cut at B's breakpoints and A's shifted ones
    std::vector<rat> grid{rat(0)};
    for (const auto& [t, L] : B.steps) grid.push_back(t);
    for (const auto& [t, L] : A.steps)
      if (t - r >= 0) grid.push_back(t - r);
    grid = sorted_unique(std::move(grid));
    auto value = [](const step_family& S, const rat& t) -> const lsc_function& {
      std::size_t i = 0;
      while (i + 1 < S.steps.size() && S.steps[i + 1].first <= t) ++i;
      return S.steps[i].second;
    };
    for (const rat& a : grid)
      if (!leq(value(A, a + r), value(B, a))) return false;
    return true;
  };
  return dir(F, G) && dir(G, F);
}

bool feasible_prof_prof(const profile_family& F, const profile_family& G, const rooted_tree& y, const rat& r) {
  const auto& sf = F.entries;  // sorted by cu_family canonicalization
  const auto& sg = G.entries;
  std::size_t m = std::max(sf.size(), sg.size());
  pl_function zero = pl_function::constant(y, rat(0));
  // k-th largest values must track within r (values >= 0, so the t >= 0
  // clamp in the defining condition is vacuous)
  for (std::size_t k = 0; k < m; ++k) {
    const pl_function& a = k < sf.size() ? sf[k] : zero;
    const pl_function& b = k < sg.size() ? sg[k] : zero;
    if (sup_norm_diff(a, b) > r) return false;
  }
  return true;
}

// Both one-sided shift conditions for a step family F against a profile family G.
bool feasible_step_prof(const step_family& F, const profile_family& G, const rooted_tree& y, const rat& r) {
  for (std::size_t k = 0; k < F.steps.size(); ++k) {
    const rat& a = F.steps[k].first;
    const lsc_function& L = F.steps[k].second;
    bool last = (k + 1 == F.steps.size());
    // F(t + r) <= G(t): F is L on sigma-cell [a, b), i.e. t in [a-r, b-r);
    // the infimum of G over a half-open range is the closed count at its sup.
    if (!L.is_zero() && !last) {
      rat b = F.steps[k + 1].first;
      if (b - r > 0 && !leq_closed_count(L, G, b - r)) return false;
    }
    // G(t + r) <= F(t) on [a, b): G antitone, so the sup sits at t = a.
    lsc_function ga = G.entries.empty() ? lsc_function::zero(y) : rank_function(G.entries, a + r);
    if (!leq(ga, L)) return false;
  }
  return true;
}

}  // namespace

bool d_w_feasible(const cu_family& f, const cu_family& g, const rat& r) {
  if (f.target() != g.target()) throw invariant_error("d_w: families over different target trees");
  if (r < 0) return false;
  if (f.is_step() && g.is_step()) return feasible_step_step(f.steps(), g.steps(), r);
  if (!f.is_step() && !g.is_step()) return feasible_prof_prof(f.profile(), g.profile(), f.target(), r);
  if (f.is_step()) return feasible_step_prof(f.steps(), g.profile(), f.target(), r);
  return feasible_step_prof(g.steps(), f.profile(), f.target(), r);
}

rat d_w_interval(const cu_family& f, const cu_family& g) {
  if (f.target() != g.target()) throw invariant_error("d_w: families over different target trees");

  // profile/profile has a closed form: max over k of sup|gamma_(k) - eta_(k)|
  if (!f.is_step() && !g.is_step()) {
    const auto& a = f.profile().entries;
    const auto& b = g.profile().entries;
    std::size_t m = std::max(a.size(), b.size());
    if (m == 0) return rat(0);
    pl_function zero = pl_function::constant(f.target(), rat(0));
    rat d(0);
    for (std::size_t k = 0; k < m; ++k)
      d = rat_max(d, sup_norm_diff(k < a.size() ? a[k] : zero, k < b.size() ? b[k] : zero));
    return d;
  }

  // candidate sweep with midpoint probes; feasibility is monotone in r
  std::vector<rat> cands{rat(0), rat(1)};
  auto add_diffs = [&](const std::vector<rat>& xs, const std::vector<rat>& ys) {
    for (const rat& x : xs)
      for (const rat& y : ys) {
        rat d = rat_abs(x - y);
        if (d <= 1) cands.push_back(d);
      }
  };
  if (f.is_step() && g.is_step()) {
    add_diffs(f.parameter_breakpoints(), g.parameter_breakpoints());
  } else {
    const cu_family& st = f.is_step() ? f : g;
    const cu_family& pr = f.is_step() ? g : f;
    std::vector<std::vector<rat>> positions(std::size_t(f.target().edge_count()));
    for (const auto& [t, L] : st.steps().steps)
      for (int e = 0; e < f.target().edge_count(); ++e)
        for (const rat& c : L.edge_data(e).cuts) positions[std::size_t(e)].push_back(c);
    add_diffs(st.parameter_breakpoints(), critical_ordinates(pr.profile(), f.target(), positions));
  }
  cands = sorted_unique(std::move(cands));

  // least feasible candidate by binary search (monotone feasibility)
  std::size_t lo = 0, hi = cands.size() - 1;
  if (d_w_feasible(f, g, cands[lo])) return cands[lo];
  while (lo + 1 < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (d_w_feasible(f, g, cands[mid]))
      hi = mid;
    else
      lo = mid;
  }
  // open infimum: the whole gap below cands[hi] may already be feasible
  rat probe = (cands[lo] + cands[hi]) / 2;
  if (d_w_feasible(f, g, probe)) return cands[lo];
  return cands[hi];
}

// ---- generator tables ---------------------------------------------------

generator_table::generator_table(const rooted_tree& source, const rooted_tree& target,
                                 std::vector<cu_family> per_edge)
    : source_(&source), target_(&target), per_edge_(std::move(per_edge)) {
  if (int(per_edge_.size()) != source.edge_count())
    throw invariant_error("generator_table: one family per source edge");
  for (const auto& fam : per_edge_)
    if (fam.target() != target) throw invariant_error("generator_table: family over wrong target tree");
}

generator_table generator_table::zero(const rooted_tree& source, const rooted_tree& target) {
  std::vector<cu_family> fams;
  for (int e = 0; e < source.edge_count(); ++e)
    fams.push_back(cu_family(target, step_family{{{rat(0), lsc_function::zero(target)}}}));
  return generator_table(source, target, std::move(fams));
}

std::vector<std::string> generator_table::validate() const {
  std::vector<std::string> errs;
  for (int e = 0; e < source_->edge_count(); ++e) {
    const cu_family& fam = per_edge_[std::size_t(e)];
    if (fam.is_step()) {
      const auto& st = fam.steps().steps;
      for (std::size_t k = 0; k + 1 < st.size(); ++k) {
        if (!leq(st[k + 1].second, st[k].second))
          errs.push_back("edge " + std::to_string(e) + ": antitone fails at step " + rat_to_string(st[k + 1].first));
        else if (!compactly_contained(st[k + 1].second, st[k].second))
          errs.push_back("edge " + std::to_string(e) + ": compact decay fails at step " +
                         rat_to_string(st[k + 1].first));
      }
    }
    // vertex compatibility: sum of children at 0 below the family near 1
    lsc_function sum = lsc_function::zero(*target_);
    bool any = false;
    for (int e2 = 0; e2 < source_->edge_count(); ++e2)
      if (is_next_to(e, e2, *source_)) {
        sum = add(sum, per_edge_[std::size_t(e2)].at(rat(0)));
        any = true;
      }
    if (any) {
      if (fam.is_step()) {
        const auto& st = fam.steps().steps;
        // minimal value on [0,1): the cell containing points just below 1
        rat probe = st.back().first < 1 ? rat((st.back().first + 1) / 2) : st[st.size() - 2].first;
        if (!leq(sum, fam.at(probe)))
          errs.push_back("edge " + std::to_string(e) + ": vertex compatibility fails (children exceed F_e near 1)");
      } else {
        if (!leq_closed_count(sum, fam.profile(), rat(1)))
          errs.push_back("edge " + std::to_string(e) + ": vertex compatibility fails (children exceed F_e near 1)");
      }
    }
  }
  return errs;
}

bool generator_table::operator==(const generator_table& o) const {
  if (*source_ != *o.source_ || *target_ != *o.target_) return false;
  for (std::size_t e = 0; e < per_edge_.size(); ++e)
    if (!(per_edge_[e] == o.per_edge_[e])) return false;
  return true;
}

diagonal_hom::diagonal_hom(std::vector<pl_tree_map> maps) : maps_(std::move(maps)) {
  if (maps_.empty()) throw invariant_error("diagonal_hom: multiplicity must be >= 1");
  for (const auto& m : maps_)
    if (m.source() != maps_.front().source() || m.target() != maps_.front().target())
      throw invariant_error("diagonal_hom: maps with mismatched trees");
}

generator_table cu_of_hom(const diagonal_hom& phi) {
  const rooted_tree& x = phi.source();
  const rooted_tree& y = phi.domain_tree();
  std::vector<cu_family> fams;
  fams.reserve(std::size_t(x.edge_count()));
  for (int e = 0; e < x.edge_count(); ++e) {
    pl_function ge = generator(e, x);
    std::vector<pl_function> entries;
    entries.reserve(std::size_t(phi.multiplicity()));
    for (const auto& lam : phi.maps()) entries.push_back(compose(ge, lam));
    fams.push_back(cu_family(y, profile_family{std::move(entries)}));
  }
  return generator_table(x, y, std::move(fams));
}

lsc_function evaluate(const generator_table& alpha, const lsc_function& f) {
  if (f.tree() != alpha.source()) throw invariant_error("evaluate: argument on wrong tree");
  if (!f.finite())
    throw invariant_error("evaluate: unsupported (argument outside the hereditary-generated cone: takes inf)");
  lsc_function out = lsc_function::zero(alpha.target());
  std::uint32_t m = f.max_value().finite();
  for (std::uint32_t n = 1; n <= m; ++n) {
    tree_subset lvl = f.level_set(n);
    if (lvl.empty()) continue;
    if (!is_hereditary(lvl))
      throw invariant_error("evaluate: unsupported (level set " + std::to_string(n) + " is not hereditary open)");
    for (const auto& [e, eps] : hereditary_components(lvl)) out = add(out, alpha.family(e).at(eps));
  }
  return out;
}

lsc_function total_class(const generator_table& alpha) {
  lsc_function out = lsc_function::zero(alpha.target());
  for (int e = 0; e < alpha.source().edge_count(); ++e)
    if (alpha.source().is_root_edge(e)) out = add(out, alpha.family(e).at(rat(0)));
  return out;
}

rat d_w_tree(const generator_table& alpha, const generator_table& beta) {
  if (alpha.source() != beta.source() || alpha.target() != beta.target())
    throw invariant_error("d_w_tree: mismatched trees");
  rat d(0);
  for (int e = 0; e < alpha.source().edge_count(); ++e)
    d = rat_max(d, d_w_interval(alpha.family(e), beta.family(e)));
  return d;
}

rat d_u_commutative(const diagonal_hom& phi, const diagonal_hom& psi) {
  if (phi.multiplicity() != 1 || psi.multiplicity() != 1)
    throw invariant_error("d_u_commutative: unsupported for multiplicity > 1 (use d_u_upper_diagonal)");
  if (phi.source() != psi.source() || phi.domain_tree() != psi.domain_tree())
    throw invariant_error("d_u_commutative: mismatched trees");
  const rooted_tree& x = phi.source();
  rat d(0);
  for (int e = 0; e < x.edge_count(); ++e) {
    pl_function ge = generator(e, x);
    d = rat_max(d, sup_norm_diff(compose(ge, phi.maps()[0]), compose(ge, psi.maps()[0])));
  }
  return d;
}

rat d_u_upper_diagonal(const diagonal_hom& phi, const diagonal_hom& psi) {
  if (phi.multiplicity() != psi.multiplicity())
    throw invariant_error("d_u_upper_diagonal: multiplicities differ");
  if (phi.source() != psi.source() || phi.domain_tree() != psi.domain_tree())
    throw invariant_error("d_u_upper_diagonal: mismatched trees");
  const rooted_tree& x = phi.source();
  int m = phi.multiplicity();
  // per (edge, i, j) sup norms, then best constant permutation
  std::vector<std::vector<rat>> cost(std::size_t(m), std::vector<rat>(std::size_t(m), rat(0)));
  for (int e = 0; e < x.edge_count(); ++e) {
    pl_function ge = generator(e, x);
    std::vector<pl_function> a, b;
    for (int j = 0; j < m; ++j) {
      a.push_back(compose(ge, phi.maps()[std::size_t(j)]));
      b.push_back(compose(ge, psi.maps()[std::size_t(j)]));
    }
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        cost[std::size_t(i)][std::size_t(j)] = rat_max(cost[std::size_t(i)][std::size_t(j)],
                                                       sup_norm_diff(a[std::size_t(i)], b[std::size_t(j)]));
  }
  std::vector<int> perm(std::size_t(m), 0);
  for (int i = 0; i < m; ++i) perm[std::size_t(i)] = i;
  rat best(-1);
  do {
    rat worst(0);
    for (int i = 0; i < m; ++i) worst = rat_max(worst, cost[std::size_t(i)][std::size_t(perm[std::size_t(i)])]);
    if (best < 0 || worst < best) best = worst;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

std::vector<pl_function> pointwise_sorted(const std::vector<pl_function>& entries) {
  if (entries.size() <= 1) return entries;
  const rooted_tree& t = entries.front().tree();
  std::size_t m = entries.size();
  // per edge: merged grid + pairwise crossings; between those all entries are
  // affine with constant order, so the k-th largest is affine per cell
  std::vector<std::vector<rat>> grids(std::size_t(t.edge_count()));
  for (int e = 0; e < t.edge_count(); ++e) {
    std::vector<rat> g;
    for (const auto& f : entries)
      for (const auto& s : f.edge_samples(e)) g.push_back(s.t);
    g = sorted_unique(std::move(g));
    std::vector<rat> withx = g;
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j)
        for (std::size_t k = 0; k + 1 < g.size(); ++k) {
          rat a0 = entries[i].eval({e, g[k]}), a1 = entries[i].eval({e, g[k + 1]});
          rat b0 = entries[j].eval({e, g[k]}), b1 = entries[j].eval({e, g[k + 1]});
          rat d0 = a0 - b0, d1 = a1 - b1;
          if ((d0 < 0 && d1 > 0) || (d0 > 0 && d1 < 0))
            withx.push_back(g[k] + d0 * (g[k + 1] - g[k]) / (d0 - d1));
        }
    grids[std::size_t(e)] = sorted_unique(std::move(withx));
  }
  std::vector<pl_function> out;
  for (std::size_t k = 0; k < m; ++k) {
    std::vector<std::vector<pl_sample>> samples(std::size_t(t.edge_count()));
    for (int e = 0; e < t.edge_count(); ++e) {
      for (const rat& x : grids[std::size_t(e)]) {
        std::vector<rat> vals;
        for (const auto& f : entries) vals.push_back(f.eval({e, x}));
        std::sort(vals.begin(), vals.end(), std::greater<rat>());
        samples[std::size_t(e)].push_back({x, vals[k]});
      }
    }
    out.push_back(pl_function(t, std::move(samples)));
  }
  return out;
}

}  // namespace cutrees
