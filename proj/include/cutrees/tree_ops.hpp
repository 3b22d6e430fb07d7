#pragma once

#include <map>

#include "cutrees/pl.hpp"
#include "cutrees/sets.hpp"

namespace cutrees {

// Canonical generator g_e: linear ramp 0 -> 1 along e, constantly 1 on every
// descendant edge, 0 elsewhere.
pl_function generator(int e, const rooted_tree& t);

// Relations of the universal algebra on the edge generators, decided exactly
// on PL supports: disjoint supports for beside pairs; {h2 > 0} inside
// {h1 = 1} when e2 is next to e1. Values must lie in [0,1].
bool check_relations(const std::map<int, pl_function>& family, const rooted_tree& t);

// X_e^eps: descendants of e plus the points of e farther than eps from its
// initial vertex. eps must lie in (0,1).
open_subset hereditary_open(int e, const rat& eps, const rooted_tree& t);

// {f > t} as a validated open subset of X \ v.
open_subset superlevel(const pl_function& f, const rat& t);

// Exact minimum of f over a nonempty closed subset.
rat pl_min_over(const pl_function& f, const tree_subset& closed_set);

}  // namespace cutrees
