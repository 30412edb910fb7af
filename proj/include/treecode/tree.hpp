#pragma once

#include <optional>
#include <string>
#include <vector>

namespace treecode {

using Vertex = int;  // vertex labels are 1-based

// Labeled rooted tree on {1..n}, stored as a parent map.
// parent[v] == 0 exactly for the root; parent[0] is unused padding.
struct RootedTree {
  int n = 0;
  Vertex root = 0;
  std::vector<Vertex> parent;  // size n+1

  static RootedTree single_vertex() { return RootedTree{1, 1, {0, 0}}; }
  bool operator==(const RootedTree& o) const = default;
};

// Forest on {1..n} with distinguished root set; parent[s] == 0 for s in roots.
struct RootedForest {
  int n = 0;
  std::vector<Vertex> roots;   // ascending, nonempty
  std::vector<Vertex> parent;  // size n+1

  bool operator==(const RootedForest& o) const = default;
};

// Rooted tree with an ordered list of marked vertices (repeats allowed).
struct MarkedTree {
  RootedTree tree;
  std::vector<Vertex> marks;

  bool operator==(const MarkedTree& o) const = default;
};

// counts[c] = number of vertices with exactly c children.
// Valid for some rooted tree iff sum(counts) = n and sum(c*counts[c]) = n-1.
struct TypeVector {
  std::vector<long long> counts;

  long long vertex_count() const {
    long long s = 0;
    for (long long c : counts) s += c;
    return s;
  }
  long long child_sum() const {
    long long s = 0;
    for (std::size_t c = 0; c < counts.size(); ++c)
      s += static_cast<long long>(c) * counts[c];
    return s;
  }
  bool valid() const;
  void trim();  // drop trailing zero classes

  bool operator==(const TypeVector& o) const { return counts == o.counts; }
};

struct ValidationReport {
  bool ok = true;
  std::string error;    // first violated invariant
  Vertex offender = 0;  // offending vertex when applicable
};

ValidationReport validate(const RootedTree& t);
ValidationReport validate(const RootedForest& f);

// throws std::invalid_argument with the report text when invalid
void require_valid(const RootedTree& t);
void require_valid(const RootedForest& f);

// Structural queries. All expect validated inputs.
std::vector<std::vector<Vertex>> child_lists(const RootedTree& t);
std::vector<std::vector<Vertex>> child_lists(const RootedForest& f);

// Non-root vertices of total degree 1, ascending. A degree-1 root is not a leaf.
std::vector<Vertex> leaves(const RootedTree& t);
std::vector<Vertex> leaves(const RootedForest& f);

int depth(const RootedTree& t, Vertex v);  // parent steps from v to the root
int height(const RootedTree& t);           // max depth over all vertices
int height(const RootedForest& f);         // max depth within any component
std::vector<int> all_depths(const RootedTree& t);

// The unique path that starts in S, leaves S immediately, and ends at x;
// the single-vertex path (x) when x is in S. S must be nonempty and
// connected in t (throws std::invalid_argument otherwise).
std::vector<Vertex> path_from_set(const RootedTree& t,
                                  const std::vector<Vertex>& S, Vertex x);

TypeVector type_of(const RootedTree& t);

// Same tree re-rooted at new_root (parent map recomputed).
RootedTree reroot(const RootedTree& t, Vertex new_root);

// Undirected edges {min, max}, sorted; shared by equality checks and IO.
std::vector<std::pair<Vertex, Vertex>> edge_set(const RootedTree& t);
std::vector<std::pair<Vertex, Vertex>> edge_set(const RootedForest& f);

}  // namespace treecode
