#pragma once

#include <string>
#include <vector>

#include "treecode/tree.hpp"

namespace treecode {

// Prescribed child counts for internal vertices 1..m. Fixes the leaf count:
// a tree where internal i has d_i children has exactly 1 + sum(d_i - 1) leaves.
struct DegreeSequence {
  std::vector<int> d;

  int m() const { return static_cast<int>(d.size()); }
  int leaf_count() const {
    int L = 1;
    for (int di : d) L += di - 1;
    return L;
  }
  int vertex_count() const { return m() + leaf_count(); }
  int code_length() const { return vertex_count() - 1; }
  bool valid() const {
    if (d.empty()) return false;
    for (int di : d)
      if (di < 1) return false;
    return true;
  }
  bool operator==(const DegreeSequence& o) const = default;
};

// Tagged vertex of a degree tree: internal label i (an integer in 1..m) or
// abstract leaf label l_j (j in 1..L).
struct VertexId {
  enum class Kind { Internal, Leaf };
  Kind kind = Kind::Internal;
  int index = 0;

  static VertexId internal(int i) { return {Kind::Internal, i}; }
  static VertexId leaf(int j) { return {Kind::Leaf, j}; }
  bool is_leaf() const { return kind == Kind::Leaf; }
  std::string to_string() const {
    return (is_leaf() ? "l" : "") + std::to_string(index);
  }
  bool operator==(const VertexId& o) const = default;
};

// Rooted tree on internal labels {1..m} and leaf labels {l_1..l_L} where
// internal i has exactly degrees.d[i-1] children and every l_j is a leaf.
//
// Storage packs vertices as ints so traversal code is shared with RootedTree:
// internal i <-> i, leaf l_j <-> m + j. The packed root is always internal.
struct DegreeTree {
  DegreeSequence degrees;
  Vertex root = 0;             // packed id
  std::vector<Vertex> parent;  // packed ids, size m+L+1, 0 for the root

  int m() const { return degrees.m(); }
  int leaf_count() const { return degrees.leaf_count(); }
  int vertex_count() const { return degrees.vertex_count(); }

  bool is_leaf_id(Vertex packed) const { return packed > m(); }
  VertexId unpack(Vertex packed) const {
    return is_leaf_id(packed) ? VertexId::leaf(packed - m())
                              : VertexId::internal(packed);
  }
  Vertex pack(VertexId v) const {
    return v.is_leaf() ? m() + v.index : v.index;
  }

  bool operator==(const DegreeTree& o) const = default;
};

ValidationReport validate(const DegreeTree& t);
void require_valid(const DegreeTree& t);

// The total order in which vertices are first discovered along the
// line-breaking paths P_1..P_L (the path to l_i starts at the already
// discovered set and ends at l_i). Starts with the root, lists every
// vertex exactly once.
std::vector<VertexId> discovery_order(const DegreeTree& t);
std::vector<Vertex> discovery_order_packed(const DegreeTree& t);

int height(const DegreeTree& t);

}  // namespace treecode
