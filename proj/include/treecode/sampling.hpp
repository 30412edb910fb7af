#pragma once

#include <vector>

#include "treecode/bijection.hpp"
#include "treecode/degree_tree.hpp"
#include "treecode/rng.hpp"
#include "treecode/tree.hpp"

namespace treecode {

// Exact samplers: a uniform code decoded through the matching bijection is a
// uniform tree, so every sampler below is uniform on its family by
// construction. All randomness flows through the caller's RandomSource.

RootedTree sample_uniform_rooted(int n, RandomSource& rng);

// Uniform over sequences of length n-1 in which exactly counts[c] labels
// occur exactly c times: assign labels to child-count classes by a uniform
// permutation cut into blocks, then shuffle the resulting multiset.
Code sample_constrained_sequence(const TypeVector& type, RandomSource& rng);

RootedTree sample_uniform_type(const TypeVector& type, RandomSource& rng);
RootedForest sample_uniform_forest(int n, const std::vector<Vertex>& roots,
                                   RandomSource& rng);
DegreeTree sample_uniform_degree(const DegreeSequence& d, RandomSource& rng);

// Split of one (a+b)-child class into an a-child and a b-child vertex,
// consuming a leaf. Applicable to a type iff counts[a+b] >= 1 and
// counts[0] >= 1.
struct CoveringMove {
  int a = 1;
  int b = 1;
};

bool move_applicable(const TypeVector& type, const CoveringMove& move);
TypeVector apply_move(const TypeVector& type, const CoveringMove& move);

// One coupled draw: V_n uniform constrained for `type`; X uniform among
// labels appearing a+b times, Y uniform among absent labels; a uniformly
// chosen a of X's occurrences replaced by Y give V_m. Marginals are uniform
// on both families, and the first repeat of V_n is never later than that of
// V_m, so the smallest-labeled leaf is never deeper in T_n than in T_m.
struct CoupledPair {
  Code seq_lower, seq_upper;
  RootedTree tree_lower, tree_upper;
};

CoupledPair sample_coupled_cover(const TypeVector& type, const CoveringMove& move,
                                 RandomSource& rng);

// Replaces a of X's occurrences in-place semantics on a copy (helper shared
// by single moves and chains).
Code apply_coupled_move(const Code& seq, const CoveringMove& move, RandomSource& rng);

// Couples a whole covering chain: trees[0] has `type`, trees[k] the type
// after moves[0..k-1]. The pathwise first-repeat monotonicity composes.
std::vector<RootedTree> sample_coupled_chain(const TypeVector& type,
                                             const std::vector<CoveringMove>& moves,
                                             RandomSource& rng);

}  // namespace treecode
