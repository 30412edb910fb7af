#pragma once

#include <vector>

#include "treecode/degree_tree.hpp"
#include "treecode/tree.hpp"

namespace treecode {

using Code = std::vector<Vertex>;

// Context a coding sequence is interpreted under; carried by the IO wrapper
// and validated before decoding.
struct SequenceContext {
  enum class Kind { Rooted, Unrooted, Marked, Forest, Degree };
  Kind kind = Kind::Rooted;
  int n = 0;
  int r = 0;                  // marked
  int variant = 1;            // unrooted: 1 = drop leading 1, 2 = open-path variant
  std::vector<Vertex> roots;  // forest
  DegreeSequence degrees;     // degree

  int expected_length() const;
};

struct CodingSequence {
  SequenceContext context;
  Code entries;

  // throws std::invalid_argument naming the first violated constraint
  void require_valid() const;
};

// Line-breaking code of a rooted tree: concatenation of the paths to the
// leaves in ascending label order, each path starting at the already-coded
// part and omitting its final point. Length n-1; the multiplicity of label k
// equals k's child count.
Code encode_rooted(const RootedTree& t);

// Inverse: repeats delimit the paths, absent labels (ascending) terminate
// them. Every v in [n]^(n-1) decodes to a tree; for n == 1, v must be empty.
RootedTree decode_rooted(const Code& v, int n);

// Unrooted variant 1: root at vertex 1, encode, drop the forced leading 1.
// decode_unrooted returns the tree rooted at vertex 1 (canonical).
Code encode_unrooted(const RootedTree& t);  // root field ignored
RootedTree decode_unrooted(const Code& v, int n);

// Unrooted variant 2: the first path runs between the two smallest-labeled
// degree-1 vertices (both endpoints dropped); the rest proceeds as in the
// rooted code with both endpoints treated as used. Round-trips and hits all
// n^(n-2) codes; kept behind its own entry points.
Code encode_unrooted_v2(const RootedTree& t);  // root field ignored
RootedTree decode_unrooted_v2(const Code& v, int n);

// Marked variant: the first r paths end at the marked vertices and keep
// their final entry (a mark on an already-visited vertex contributes a
// single-entry path); remaining paths go to the unvisited leaves ascending,
// final point omitted. Length n+r-1; each vertex appears
// (#children + #marks) times.
Code encode_marked(const MarkedTree& mt);
MarkedTree decode_marked(const Code& v, int n, int r);

// Forest variant: all roots start out visited; a repeat is a position whose
// entry was seen before or lies in the root set. Length n-|S|.
Code encode_forest(const RootedForest& f);
RootedForest decode_forest(const Code& v, int n, const std::vector<Vertex>& roots);

// Fixed-degree variant: leaves are the abstract labels l_1..l_L, path i ends
// at l_i. The code lies in S_d (label i appears exactly d_i times).
Code encode_degree(const DegreeTree& t);
DegreeTree decode_degree(const Code& v, const DegreeSequence& d);

}  // namespace treecode
