#pragma once

#include <functional>
#include <string>
#include <vector>

#include "treecode/bijection.hpp"
#include "treecode/degree_tree.hpp"
#include "treecode/rng.hpp"

namespace treecode {

// Multiset of d vertices of a degree tree, sorted by its discovery order.
// Build via multiset_from_indices; grow_step relies on the ordering.
struct GrowthMultiset {
  std::vector<Vertex> sorted;  // packed ids, ascending in the discovery order
};

// Maps a multiset of indices in [m+L] to the corresponding vertices under
// the discovery order (index 1 = root). Indices need not be sorted.
GrowthMultiset multiset_from_indices(const DegreeTree& t,
                                     const std::vector<int>& indices);

// One growth step: adds internal vertex m+1 with w.size() children and
// leaves l_{L+1}..l_{L+d-1}. If w_1 is the root, m+1 is attached above it and
// becomes the root; otherwise m+1 splices into the edge above w_1. Each later
// w_j either contributes a fresh leaf to m+1 (when equal to its predecessor)
// or moves under m+1, leaving a fresh leaf with its former parent.
// Applied to a uniform tree and an independent uniform multiset, the output
// is uniform for the extended degree sequence.
DegreeTree grow_step(const DegreeTree& t, const GrowthMultiset& w);

// Inserts count copies of label `m+1` into a degree code, one immediately
// before each discovery slot in `indices` (slots 1..m+L; slot i is where the
// i-th vertex in discovery order first appears; slot m+L is one past the
// end). Together with decode_modified this reproduces grow_step exactly.
Code insert_repeats(const Code& v, Vertex new_label, const std::vector<int>& indices);

// Modified decoding for an extended degree sequence d' = (d_1..d_m, d):
// repeats of m+1 claim the fresh leaves l_{L+1}.. in order of appearance,
// other repeats claim l_1.. in order, and the final path ends at l_L.
DegreeTree decode_modified(const Code& v, const DegreeSequence& d_extended);

// Inverse of decode_modified, built right to left from parent pointers.
Code encode_modified(const DegreeTree& t);

// Canonical leaf-labeled shape: internal labels forgotten, children ordered
// by the minimum leaf index in their subtree (leaf indices are distinct, so
// this is total; child count breaks impossible ties).
struct LeafShape {
  std::string canon;
  bool operator==(const LeafShape& o) const = default;
  bool operator<(const LeafShape& o) const { return canon < o.canon; }
};

LeafShape unlabel_internal(const DegreeTree& t);

// Shape plus the canonical preorder position (0-based, among internal
// vertices) of one distinguished internal vertex.
std::pair<LeafShape, int> shape_with_marked_internal(const DegreeTree& t,
                                                     int internal_label);

// Uniform random multiset of size d with elements in {1..m}, via the subset
// bijection: a uniform d-subset of {1..m+d-1} shifted back down.
std::vector<int> uniform_index_multiset(int d, int m, RandomSource& rng);

// The d-ary chain: T(1) is the unique one-internal-vertex tree; each step
// draws an independent uniform multiset of d current vertices and applies
// grow_step. Emits (m, T(m)) for m = 1..m_max; the marginal law of the
// leaf-labeled shape at every m is uniform.
void grow_dary_chain(int d, int m_max, RandomSource& rng,
                     const std::function<void(int, const DegreeTree&)>& emit);

DegreeTree unique_single_internal_tree(int d);

}  // namespace treecode
