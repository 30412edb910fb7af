#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "treecode/bigint.hpp"
#include "treecode/degree_tree.hpp"
#include "treecode/rational.hpp"
#include "treecode/tree.hpp"

namespace treecode::oracle {

// Everything here enumerates parent maps directly and checks acyclicity by
// walking parent links; no code path touches the sequence bijections, so
// these streams serve as independent ground truth for them.

// Caps keep full enumeration tractable; raise deliberately via the limits
// argument (the CLI prints a warning when it does).
struct Limits {
  int max_n = 7;             // rooted trees / forests
  int max_degree_total = 8;  // m + L for degree trees
};

// Yields every rooted tree on [n], fixed sequential order (by root, then
// parent-map counter), each exactly once. pin_root > 0 restricts the stream
// to that root, so workers can split the outer loop and emit in order.
class RootedTreeCursor {
 public:
  explicit RootedTreeCursor(int n, Limits limits = {}, Vertex pin_root = 0);
  std::optional<RootedTree> next();

 private:
  bool advance();
  int n_;
  Vertex root_ = 1;
  Vertex pin_root_ = 0;
  std::vector<Vertex> parent_;  // counter state over non-root positions
  bool fresh_ = true;
  bool done_ = false;
};

// pin_outer_parent > 0 fixes the parent of the largest non-root vertex (the
// outermost loop digit), so pinned streams are contiguous blocks of the
// sequential order.
class ForestCursor {
 public:
  ForestCursor(int n, std::vector<Vertex> roots, Limits limits = {},
               Vertex pin_outer_parent = 0);
  std::optional<RootedForest> next();

 private:
  bool advance();
  int n_;
  std::vector<Vertex> roots_;
  std::vector<bool> is_root_;
  std::vector<Vertex> parent_;
  Vertex outer_digit_ = 0;  // largest non-root vertex, 0 when S = [n]
  Vertex pin_outer_parent_ = 0;
  bool fresh_ = true;
  bool done_ = false;
};

class DegreeTreeCursor {
 public:
  explicit DegreeTreeCursor(DegreeSequence d, Limits limits = {},
                            Vertex pin_root = 0);
  std::optional<DegreeTree> next();

 private:
  bool advance();
  DegreeSequence d_;
  Vertex root_ = 1;
  Vertex pin_root_ = 0;
  std::vector<Vertex> parent_;
  bool fresh_ = true;
  bool done_ = false;
};

std::vector<RootedTree> enumerate_rooted(int n, Limits limits = {});
std::vector<RootedForest> enumerate_forests(int n, const std::vector<Vertex>& roots,
                                            Limits limits = {});
std::vector<DegreeTree> enumerate_degree_trees(const DegreeSequence& d,
                                               Limits limits = {});

void for_each_rooted(int n, const std::function<void(const RootedTree&)>& fn,
                     Limits limits = {});

// Closed-form counts in exact integers.
BigUint count_rooted(int n);             // n^(n-1)
BigUint count_forests(int n, int s);     // s * n^(n-s-1)
BigUint count_type(const TypeVector& tv);
BigUint count_degree_trees(const DegreeSequence& d);  // (m+L-1)! / prod d_i!

// All valid type vectors for vertex count n (sum n_c = n, sum c*n_c = n-1).
std::vector<TypeVector> enumerate_types(int n);

// Exact depth laws averaged over the uniform tree, by full enumeration.
// Values are depths (ascending); probabilities are exact rationals.
struct ExactPmf {
  std::vector<int> values;
  std::vector<Rational> probs;
};
ExactPmf exact_leaf_depth_distribution(int n, Limits limits = {});    // n >= 2
ExactPmf exact_vertex_depth_distribution(int n, Limits limits = {});  // n >= 1

}  // namespace treecode::oracle
