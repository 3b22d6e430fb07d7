#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cutrees/gen.hpp"
#include "cutrees/lsc.hpp"
#include "cutrees/tree_ops.hpp"

using namespace cutrees;

namespace {

rooted_tree unit_interval() { return rooted_tree({0, 1}, {{0, 1}}, 0); }
rooted_tree v_tree() { return rooted_tree({0, 1, 2, 3}, {{0, 1}, {1, 2}, {1, 3}}, 0); }

// n * indicator of (a, 1] on the unit interval (vertex at 1 included)
lsc_function tail(const rooted_tree& i, const rat& a, std::uint32_t n) {
  lsc_edge_data d;
  if (a == 0) {
    d.cuts = {rat(0), rat(1)};
    d.cell_values = {ext_nat(n)};
  } else {
    d.cuts = {rat(0), a, rat(1)};
    d.cell_values = {ext_nat(0), ext_nat(n)};
    d.point_values = {ext_nat(0)};
  }
  return lsc_function(i, {d}, {ext_nat(0), ext_nat(n)});
}

// n * indicator of the open interval (a, b), 0 < a < b < 1
lsc_function bump(const rooted_tree& i, const rat& a, const rat& b, std::uint32_t n) {
  lsc_edge_data d;
  d.cuts = {rat(0), a, b, rat(1)};
  d.cell_values = {ext_nat(0), ext_nat(n), ext_nat(0)};
  d.point_values = {ext_nat(0), ext_nat(0)};
  return lsc_function(i, {d}, {ext_nat(0), ext_nat(0)});
}

lsc_function inf_tail(const rooted_tree& i) {
  lsc_edge_data d;
  d.cuts = {rat(0), rat(1)};
  d.cell_values = {ext_nat::inf()};
  return lsc_function(i, {d}, {ext_nat(0), ext_nat::inf()});
}

}  // namespace

TEST_SUITE_BEGIN("lsc semigroup");

TEST_CASE("validation") {
  rooted_tree i = unit_interval();
  // breakpoint value above a side limit violates lower semicontinuity
  lsc_edge_data d;
  d.cuts = {rat(0), rat(1, 2), rat(1)};
  d.cell_values = {ext_nat(0), ext_nat(1)};
  d.point_values = {ext_nat(1)};
  CHECK_THROWS_AS(lsc_function(i, {d}, {ext_nat(0), ext_nat(1)}), invariant_error);
  // vertex value above the incoming limit
  lsc_edge_data ok;
  ok.cuts = {rat(0), rat(1)};
  ok.cell_values = {ext_nat(0)};
  CHECK_THROWS_AS(lsc_function(i, {ok}, {ext_nat(0), ext_nat(1)}), invariant_error);
}

TEST_CASE("canonical form drops removable cuts") {
  rooted_tree i = unit_interval();
  lsc_edge_data d;
  d.cuts = {rat(0), rat(1, 3), rat(1)};
  d.cell_values = {ext_nat(2), ext_nat(2)};
  d.point_values = {ext_nat(2)};
  lsc_function f(i, {d}, {ext_nat(0), ext_nat(2)});
  CHECK(f.edge_data(0).cuts.size() == 2);
  CHECK(f.value_interior(0, rat(1, 3)) == ext_nat(2));
}

TEST_CASE("add") {
  rooted_tree i = unit_interval();
  lsc_function s = add(tail(i, rat(1, 2), 1), tail(i, rat(1, 4), 1));
  CHECK(s.value_interior(0, rat(1, 5)) == ext_nat(0));
  CHECK(s.value_interior(0, rat(1, 4)) == ext_nat(0));
  CHECK(s.value_interior(0, rat(1, 3)) == ext_nat(1));
  CHECK(s.value_interior(0, rat(1, 2)) == ext_nat(1));
  CHECK(s.value_interior(0, rat(3, 4)) == ext_nat(2));
  CHECK(s.value_at_vertex(1) == ext_nat(2));

  lsc_function f = tail(i, rat(1, 3), 2);
  CHECK(add(f, lsc_function::zero(i)) == f);
  CHECK(add(inf_tail(i), tail(i, rat(1, 2), 1)) == inf_tail(i));
}

TEST_CASE("leq") {
  rooted_tree i = unit_interval();
  CHECK(leq(tail(i, rat(1, 2), 1), tail(i, rat(1, 4), 1)));
  CHECK_FALSE(leq(tail(i, rat(1, 4), 1), tail(i, rat(1, 2), 1)));

  rooted_tree t = v_tree();
  lsc_function a = lsc_function::indicator(hereditary_open(0, rat(1, 3), t).set());
  lsc_function b = lsc_function::indicator(hereditary_open(0, rat(1, 4), t).set());
  CHECK(leq(a, b));
  CHECK_FALSE(leq(b, a));
}

TEST_CASE("compactly_contained examples") {
  rooted_tree i = unit_interval();
  lsc_function f = tail(i, rat(1, 2), 1);
  lsc_function g = tail(i, rat(1, 4), 1);
  CHECK(compactly_contained(f, g));
  CHECK_FALSE(compactly_contained(f, f));  // closure [1/2,1] not inside (1/2,1]
  CHECK(compactly_contained(lsc_function::zero(i), lsc_function::zero(i)));
  CHECK(compactly_contained(lsc_function::zero(i), g));
  CHECK_FALSE(compactly_contained(inf_tail(i), inf_tail(i)));  // unbounded
  CHECK(compactly_contained(bump(i, rat(1, 4), rat(3, 4), 2), tail(i, rat(1, 8), 2)));
  // escaping to the root: closure of (0,1] contains 0
  CHECK_FALSE(compactly_contained(tail(i, rat(0), 1), tail(i, rat(0), 1)));
}

TEST_CASE("cc_oracle agrees on the worked examples") {
  rooted_tree i = unit_interval();
  CHECK(cc_oracle(tail(i, rat(1, 2), 1), tail(i, rat(1, 4), 1)));
  CHECK_FALSE(cc_oracle(tail(i, rat(1, 2), 1), tail(i, rat(1, 2), 1)));
  CHECK_FALSE(cc_oracle(inf_tail(i), inf_tail(i)));
  CHECK(cc_oracle(bump(i, rat(1, 4), rat(3, 4), 2), tail(i, rat(0), 2)));
}

TEST_CASE("characterization agrees with the oracle on random pairs") {
  rng r(29);
  int checked = 0;
  for (int it = 0; it < 120; ++it) {
    rooted_tree t = random_tree(r, 1, 5);
    lsc_function g = random_lsc(r, t, 3, r.chance(1, 5));
    lsc_function f = r.chance(1, 2) ? random_cc_below(r, g) : random_lsc(r, t, 3, false);
    CHECK(compactly_contained(f, g) == cc_oracle(f, g));
    ++checked;
  }
  CHECK(checked == 120);
}

TEST_CASE("decompose") {
  rooted_tree i = unit_interval();
  // two bumps at one level -> two pieces
  lsc_function two = add(bump(i, rat(1, 4), rat(1, 2), 1), bump(i, rat(3, 4), rat(9, 10), 1));
  auto pieces = decompose(two);
  CHECK(pieces.size() == 2);
  CHECK(pieces[0].set().contains({0, rat(1, 3)}));
  CHECK(pieces[1].set().contains({0, rat(4, 5)}));

  // staircase: layers (1/4,1] and (1/2,1]
  lsc_function stair = add(tail(i, rat(1, 2), 1), tail(i, rat(1, 4), 1));
  auto layers = decompose(stair);
  CHECK(layers.size() == 2);
  CHECK(layers[0].set() == pl_superlevel(generator(0, i), rat(1, 4)));
  CHECK(layers[1].set() == pl_superlevel(generator(0, i), rat(1, 2)));

  CHECK(decompose(lsc_function::zero(i)).empty());
  CHECK_THROWS_AS(decompose(inf_tail(i)), invariant_error);
}

TEST_CASE("decompose round-trips") {
  rng r(31);
  for (int it = 0; it < 30; ++it) {
    rooted_tree t = random_tree(r, 1, 5);
    lsc_function f = random_lsc(r, t, 3, false);
    lsc_function sum = lsc_function::zero(t);
    for (const auto& piece : decompose(f)) sum = add(sum, lsc_function::indicator(piece.set()));
    CHECK(sum == f);
  }
}

TEST_CASE("rank_function") {
  rooted_tree i = unit_interval();
  pl_function ramp = generator(0, i);
  CHECK(rank_function({ramp}, rat(1, 2)) == tail(i, rat(1, 2), 1));
  CHECK(rank_function({ramp, ramp}, rat(1, 4)) == tail(i, rat(1, 4), 2));

  pl_function dbl(i, {{{rat(0), rat(0)}, {rat(1, 2), rat(1)}, {rat(1), rat(1)}}});  // min(2s,1)
  lsc_function want = add(tail(i, rat(1, 4), 1), tail(i, rat(1, 2), 1));
  CHECK(rank_function({ramp, dbl}, rat(1, 2)) == want);
}

TEST_CASE("rank bridge: rank of a cut generator is the hereditary indicator") {
  rng r(37);
  for (int it = 0; it < 12; ++it) {
    rooted_tree t = random_tree(r, 1, 6);
    int e = r.range(0, t.edge_count() - 1);
    rat eps = random_rat_open(r, 16);
    CHECK(rank_function({generator(e, t)}, eps) ==
          lsc_function::indicator(hereditary_open(e, eps, t).set()));
  }
}

TEST_CASE("interpolate") {
  rooted_tree i = unit_interval();
  lsc_function f = tail(i, rat(1, 2), 1);
  lsc_function h = tail(i, rat(1, 4), 1);
  lsc_function z = interpolate(f, h);
  CHECK(z == tail(i, rat(3, 8), 1));  // clearance 1/4, fattened by 1/8
  CHECK(compactly_contained(f, z));
  CHECK(compactly_contained(z, h));

  CHECK(interpolate(lsc_function::zero(i), h) == lsc_function::zero(i));
  CHECK_THROWS_AS(interpolate(h, f), invariant_error);  // precondition violated
}

TEST_CASE("interpolate sandwiches random pairs") {
  rng r(41);
  for (int it = 0; it < 40; ++it) {
    rooted_tree t = random_tree(r, 1, 5);
    lsc_function h = random_lsc(r, t, 3, false);
    lsc_function f = random_cc_below(r, h);
    lsc_function z = interpolate(f, h);
    CHECK(compactly_contained(f, z));
    CHECK(compactly_contained(z, h));
  }
}

TEST_CASE("cancellation") {
  rng r(43);
  int hits = 0;
  for (int it = 0; it < 1200 && hits < 60; ++it) {
    rooted_tree t = random_tree(r, 1, 4);
    lsc_function y = random_lsc(r, t, 3, false);
    lsc_function x = random_cc_below(r, y);
    lsc_function z = it % 3 == 0 ? lsc_erode(random_lsc(r, t, 2, false), rat(1, 12), 2)
                                 : random_lsc(r, t, 2, false);
    if (!compactly_contained(add(x, z), add(y, z))) continue;
    ++hits;
    CHECK(leq(x, y));
  }
  CHECK(hits >= 60);
}

TEST_SUITE_END();

TEST_CASE("distance functions match pointwise tree distance to the set") {
  rng r(103);
  for (int it = 0; it < 12; ++it) {
    rooted_tree t = random_tree(r, 1, 5);
    lsc_function f = random_lsc(r, t, 2, false);
    tree_subset lvl = f.level_set(1);
    if (lvl.empty()) continue;
    pl_function d = distance_to(lvl);
    tree_subset cl = set_closure(lvl);
    // oracle: distance to a finite dense sample of the closure, refined by
    // the interval endpoints; the PL distance can never exceed it and must
    // vanish exactly on the closure
    for (int rep = 0; rep < 8; ++rep) {
      tree_point p = random_point(r, t, 16);
      rat dp = d.eval(p);
      CHECK(dp >= 0);
      if (cl.contains(p)) {
        CHECK(dp == 0);
      } else {
        rat best(-1);
        for (int e = 0; e < t.edge_count(); ++e)
          for (const auto& iv : cl.intervals(e)) {
            for (const rat& x : {iv.lo, iv.hi, rat((iv.lo + iv.hi) / 2)}) {
              rat cand = tree_distance(t, p, tree_point::canonical(t, e, x));
              if (best < 0 || cand < best) best = cand;
            }
          }
        for (int v : t.vertices())
          if (v != t.root() && cl.contains_vertex(v)) {
            rat cand = tree_distance(t, p, tree_point::canonical(t, t.incoming_edge(v), rat(1)));
            if (best < 0 || cand < best) best = cand;
          }
        REQUIRE(best >= 0);
        CHECK(dp <= best);          // never above any witness
        CHECK(dp >= best - rat(0)); // interval ends are the closest closure points
        CHECK(dp == best);
      }
    }
    // 1-Lipschitz along each edge
    for (int e = 0; e < t.edge_count(); ++e) {
      const auto& s = d.edge_samples(e);
      for (std::size_t i = 0; i + 1 < s.size(); ++i)
        CHECK(rat_abs(s[i + 1].v - s[i].v) <= s[i + 1].t - s[i].t);
    }
  }
}

TEST_CASE("canonicalization preserves values") {
  rooted_tree i = unit_interval();
  // redundant cuts at 1/3 and 2/3 carrying no change
  lsc_edge_data d;
  d.cuts = {rat(0), rat(1, 3), rat(1, 2), rat(2, 3), rat(1)};
  d.cell_values = {ext_nat(1), ext_nat(1), ext_nat(2), ext_nat(2)};
  d.point_values = {ext_nat(1), ext_nat(1), ext_nat(2)};
  lsc_function f(i, {d}, {ext_nat(0), ext_nat(2)});
  CHECK(f.edge_data(0).cuts.size() == 3);  // only 0, 1/2, 1 survive
  for (int k = 1; k < 24; ++k) {
    rat x(k, 24);
    ext_nat want = x < rat(1, 2) ? ext_nat(1) : (x == rat(1, 2) ? ext_nat(1) : ext_nat(2));
    CHECK(f.value_interior(0, x) == want);
  }
}
