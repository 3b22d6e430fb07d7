#pragma once

#include <cstdint>

#include "cutrees/cu.hpp"

namespace cutrees {

// Deterministic splitmix64 stream; identical across platforms (no
// std::uniform_* involved anywhere in the corpus).
class rng {
 public:
  explicit rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  // uniform in [0, n)
  std::uint64_t below(std::uint64_t n) { return n ? next() % n : 0; }
  int range(int lo, int hi) { return lo + int(below(std::uint64_t(hi - lo + 1))); }
  bool chance(int num, int den) { return below(std::uint64_t(den)) < std::uint64_t(num); }

 private:
  std::uint64_t state_;
};

inline std::uint64_t case_seed(std::uint64_t suite_seed, std::uint64_t index) {
  rng r(suite_seed ^ (0x51d9f2c7a43b11ULL * (index + 1)));
  return r.next();
}

rooted_tree random_tree(rng& r, int min_edges, int max_edges);
rat random_rat01(rng& r, int max_den);            // in [0,1]
rat random_rat_open(rng& r, int max_den);         // in (0,1)
lsc_function random_lsc(rng& r, const rooted_tree& t, std::uint32_t max_val, bool allow_inf,
                        int max_den = 16);
pl_function random_pl01(rng& r, const rooted_tree& t, int max_den);  // values in [0,1]
tree_point random_point(rng& r, const rooted_tree& t, int max_den);
pl_tree_map random_map(rng& r, const rooted_tree& source, const rooted_tree& target, int max_den);
diagonal_hom random_hom(rng& r, const rooted_tree& domain, const rooted_tree& source, int multiplicity, int max_den);

// f << g by construction (eroded level sets).
lsc_function random_cc_below(rng& r, const lsc_function& g);
// <<-decreasing chain x_0 >> x_1 >> ... >> x_n with supports clear of the root.
std::vector<lsc_function> random_chain(rng& r, const rooted_tree& t, int n);
// Valid step-backed table: a random multiplicity-1 or -2 hom sampled on a
// random parameter grid.
generator_table random_step_table(rng& r, const rooted_tree& source, const rooted_tree& target, int max_den);

}  // namespace cutrees
