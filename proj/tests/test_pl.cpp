#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cutrees/gen.hpp"
#include "cutrees/tree_ops.hpp"

using namespace cutrees;

namespace {

rooted_tree unit_interval() { return rooted_tree({0, 1}, {{0, 1}}, 0); }
rooted_tree v_tree() { return rooted_tree({0, 1, 2, 3}, {{0, 1}, {1, 2}, {1, 3}}, 0); }

pl_function ramp(const rooted_tree& i) { return generator(0, i); }

// min(t + 3/10, 1) on the unit interval
pl_function shifted_ramp(const rooted_tree& i) {
  return pl_function(i, {{{rat(0), rat(3, 10)}, {rat(7, 10), rat(1)}, {rat(1), rat(1)}}});
}

}  // namespace

TEST_SUITE_BEGIN("pl calculus");

TEST_CASE("construction and canonical form") {
  rooted_tree i = unit_interval();
  // collinear middle sample is dropped
  pl_function f(i, {{{rat(0), rat(0)}, {rat(1, 2), rat(1, 2)}, {rat(1), rat(1)}}});
  CHECK(f == ramp(i));
  // continuity across the shared vertex is enforced
  rooted_tree t = v_tree();
  std::vector<pl_sample> flat = {{rat(0), rat(0)}, {rat(1), rat(0)}};
  std::vector<std::vector<pl_sample>> bad(3, flat);
  bad[0] = {{rat(0), rat(0)}, {rat(1), rat(1)}};  // 1 at the vertex, children start at 0
  CHECK_THROWS_AS(pl_function(t, bad), invariant_error);
}

TEST_CASE("eval") {
  rooted_tree t = v_tree();
  CHECK(generator(0, t).eval({0, rat(1, 2)}) == rat(1, 2));
  CHECK(generator(0, t).eval({2, rat(2, 5)}) == rat(1));
  CHECK(generator(1, t).eval({0, rat(1)}) == rat(0));  // canonical-form evaluation at the vertex
}

TEST_CASE("minus_plus") {
  rooted_tree i = unit_interval();
  pl_function f = minus_plus(ramp(i), rat(1, 4));
  CHECK(f.eval({0, rat(1, 4)}) == rat(0));
  CHECK(f.eval({0, rat(1, 8)}) == rat(0));
  CHECK(f.eval({0, rat(1, 2)}) == rat(1, 4));
  CHECK(f.eval({0, rat(1)}) == rat(3, 4));
  CHECK(minus_plus(ramp(i), rat(0)) == ramp(i));

  // V-tree generator cut at 1/3, checked by dense rational sampling
  rooted_tree t = v_tree();
  pl_function g = minus_plus(generator(0, t), rat(1, 3));
  for (int e = 0; e < 3; ++e)
    for (int k = 0; k <= 60; ++k) {
      rat x(k, 60);
      rat want = rat_max(rat(0), rat(generator(0, t).eval({e, x}) - rat(1, 3)));
      CHECK(g.eval({e, x}) == want);
    }
  CHECK(g.eval({1, rat(1, 2)}) == rat(2, 3));
}

TEST_CASE("minus_plus composes additively") {
  rng r(3);
  rooted_tree t = random_tree(r, 1, 4);
  for (int it = 0; it < 20; ++it) {
    pl_function f = random_pl01(r, t, 12);
    rat s = random_rat01(r, 8), u = random_rat01(r, 8);
    CHECK(minus_plus(minus_plus(f, s), u) == minus_plus(f, s + u));
  }
}

TEST_CASE("sup_norm_diff") {
  rooted_tree i = unit_interval();
  pl_function f = ramp(i);
  pl_function g = shifted_ramp(i);
  CHECK(sup_norm_diff(f, g) == rat(3, 10));
  // grid oracle at denominator-100 rationals reaches the same maximum
  rat grid_max(0);
  for (int k = 0; k <= 100; ++k) {
    rat x(k, 100);
    grid_max = rat_max(grid_max, rat_abs(f.eval({0, x}) - g.eval({0, x})));
  }
  CHECK(grid_max == rat(3, 10));
  CHECK(sup_norm_diff(f, f) == rat(0));
  CHECK(sup_norm_diff(pl_function::constant(i, rat(0)), ramp(i)) == rat(1));
}

TEST_CASE("sup_norm_diff is a metric") {
  rng r(5);
  rooted_tree t = random_tree(r, 1, 4);
  for (int it = 0; it < 25; ++it) {
    pl_function f = random_pl01(r, t, 10);
    pl_function g = random_pl01(r, t, 10);
    pl_function h = random_pl01(r, t, 10);
    CHECK(sup_norm_diff(f, g) == sup_norm_diff(g, f));
    CHECK(sup_norm_diff(f, h) <= sup_norm_diff(f, g) + sup_norm_diff(g, h));
    if (sup_norm_diff(f, g) == 0) CHECK(f == g);
  }
}

TEST_CASE("compose on the interval") {
  rooted_tree i = unit_interval();
  CHECK(compose(ramp(i), pl_tree_map::identity(i)) == ramp(i));

  // s -> min(2s, 1)
  pl_tree_map doubling(i, i, {{{rat(0), tree_point::root_point(i)}, {rat(1, 2), {0, rat(1)}}, {rat(1), {0, rat(1)}}}});
  pl_function comp = compose(ramp(i), doubling);
  for (int k = 0; k <= 40; ++k) {
    rat s(k, 40);
    CHECK(comp.eval({0, s}) == rat_min(rat(1), rat(2) * s));
  }
}

TEST_CASE("compose through a branch vertex") {
  rooted_tree t = v_tree();
  rooted_tree i = unit_interval();
  // trace v -> a -> b at double speed: on e1 for s in [1/2, 1]
  pl_tree_map m(i, t, {{{rat(0), tree_point::root_point(t)}, {rat(1, 2), {0, rat(1)}}, {rat(1), {1, rat(1)}}}});
  pl_function f = compose(generator(1, t), m);
  for (int k = 0; k <= 20; ++k) {
    rat s(k, 20);
    rat want = s <= rat(1, 2) ? rat(0) : rat(2) * s - 1;
    CHECK(f.eval({0, s}) == want);
  }
  // waypoints on distinct branches force travel through the vertex
  pl_tree_map swing(i, t,
                    {{{rat(0), tree_point::root_point(t)}, {rat(1, 2), {1, rat(1, 2)}}, {rat(1), {2, rat(1, 2)}}}});
  pl_function g2 = compose(generator(2, t), swing);
  CHECK(g2.eval({0, rat(1, 2)}) == rat(0));
  CHECK(g2.eval({0, rat(1)}) == rat(1, 2));
  CHECK(g2.eval({0, rat(3, 4)}) == rat(0));  // still on the way down e1
}

TEST_CASE("compose respects evaluation pointwise") {
  rng r(17);
  for (int it = 0; it < 15; ++it) {
    rooted_tree x = random_tree(r, 1, 4);
    rooted_tree y = random_tree(r, 1, 4);
    pl_tree_map m = random_map(r, y, x, 8);
    pl_function f = random_pl01(r, x, 8);
    pl_function c = compose(f, m);
    for (int k = 0; k < 12; ++k) {
      tree_point p = random_point(r, y, 16);
      CHECK(c.eval(p) == f.eval(m.eval(p)));
    }
  }
}

TEST_CASE("superlevel") {
  rooted_tree i = unit_interval();
  tree_subset s = pl_superlevel(ramp(i), rat(1, 2));
  CHECK(s.contains({0, rat(3, 4)}));
  CHECK(s.contains({0, rat(1)}));
  CHECK_FALSE(s.contains({0, rat(1, 2)}));
  CHECK(pl_superlevel(ramp(i), rat(1)).empty());
  CHECK(pl_superlevel(ramp(i), rat(2)).empty());

  // plateau ramp: 0 on [0,1/4], linear to 1 at 3/4, then flat
  pl_function plateau(i, {{{rat(0), rat(0)}, {rat(1, 4), rat(0)}, {rat(3, 4), rat(1)}, {rat(1), rat(1)}}});
  tree_subset p = pl_superlevel(plateau, rat(1, 2));
  CHECK(p == pl_superlevel(ramp(i), rat(1, 2)));
}

TEST_CASE("superlevel commutes with minus_plus") {
  rng r(23);
  rooted_tree t = random_tree(r, 1, 4);
  for (int it = 0; it < 20; ++it) {
    pl_function f = random_pl01(r, t, 10);
    rat s = random_rat01(r, 6);
    rat u = random_rat_open(r, 6);
    CHECK(pl_superlevel(minus_plus(f, s), u) == pl_superlevel(f, s + u));
  }
}

TEST_CASE("map validation") {
  rooted_tree i = unit_interval();
  rooted_tree t = v_tree();
  // root must go to the root
  CHECK_THROWS_AS(pl_tree_map(i, t, {{{rat(0), {1, rat(1, 2)}}, {rat(1), {1, rat(1)}}}}, true), invariant_error);
  CHECK_FALSE(pl_tree_map(i, t, {{{rat(0), {1, rat(1, 2)}}, {rat(1), {1, rat(1)}}}}).root_compatible());
  CHECK_NOTHROW(pl_tree_map::constant_root(i, t));
  CHECK_NOTHROW(pl_tree_map::identity(t));
}

TEST_SUITE_END();
