#include "treecode/bijection.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>
#include <string>

namespace treecode {

int SequenceContext::expected_length() const {
  switch (kind) {
    case Kind::Rooted:
      return n - 1;
    case Kind::Unrooted:
      return n - 2;
    case Kind::Marked:
      return n + r - 1;
    case Kind::Forest:
      return n - static_cast<int>(roots.size());
    case Kind::Degree:
      return degrees.code_length();
  }
  return 0;
}

void CodingSequence::require_valid() const {
  const int len = static_cast<int>(entries.size());
  if (len != context.expected_length())
    throw std::invalid_argument("sequence has length " + std::to_string(len) +
                                ", expected " +
                                std::to_string(context.expected_length()));
  const int max_label = context.kind == SequenceContext::Kind::Degree
                            ? context.degrees.m()
                            : context.n;
  for (int i = 0; i < len; ++i) {
    if (entries[i] < 1 || entries[i] > max_label)
      throw std::invalid_argument("entry " + std::to_string(entries[i]) +
                                  " out of range at position " +
                                  std::to_string(i + 1));
  }
  if (context.kind == SequenceContext::Kind::Forest && len >= 1) {
    if (std::find(context.roots.begin(), context.roots.end(), entries[0]) ==
        context.roots.end())
      throw std::invalid_argument("first entry must be a root");
  }
  if (context.kind == SequenceContext::Kind::Degree) {
    std::vector<int> mult(context.degrees.m() + 1, 0);
    for (Vertex x : entries) ++mult[x];
    for (int i = 1; i <= context.degrees.m(); ++i)
      if (mult[i] != context.degrees.d[i - 1])
        throw std::invalid_argument("label " + std::to_string(i) + " appears " +
                                    std::to_string(mult[i]) + " times, expected " +
                                    std::to_string(context.degrees.d[i - 1]));
  }
}

namespace {

void check_entries(const Code& v, int n, int expected_len) {
  if (static_cast<int>(v.size()) != expected_len)
    throw std::invalid_argument("sequence has length " + std::to_string(v.size()) +
                                ", expected " + std::to_string(expected_len));
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] < 1 || v[i] > n)
      throw std::invalid_argument("entry " + std::to_string(v[i]) +
                                  " out of range at position " +
                                  std::to_string(i + 1));
}

// Walks from `leaf` up to the first visited vertex and appends the path to
// the code, excluding `leaf` itself; marks the path visited.
void append_path_to(const std::vector<Vertex>& parent, std::vector<bool>& visited,
                    Vertex leaf, Code& out) {
  std::vector<Vertex> stack;
  Vertex u = leaf;
  while (!visited[u]) {
    stack.push_back(u);
    u = parent[u];
  }
  out.push_back(u);
  for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
    visited[*it] = true;
    if (*it != leaf) out.push_back(*it);
  }
}

}  // namespace

Code encode_rooted(const RootedTree& t) {
  require_valid(t);
  Code out;
  out.reserve(t.n - 1);
  std::vector<bool> visited(t.n + 1, false);
  visited[t.root] = true;
  for (Vertex leaf : leaves(t)) append_path_to(t.parent, visited, leaf, out);
  return out;
}

RootedTree decode_rooted(const Code& v, int n) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  check_entries(v, n, n - 1);
  if (n == 1) return RootedTree::single_vertex();

  std::vector<bool> appears(n + 1, false);
  for (Vertex x : v) appears[x] = true;
  std::vector<Vertex> absent;
  for (Vertex x = 1; x <= n; ++x)
    if (!appears[x]) absent.push_back(x);

  RootedTree t{n, v[0], std::vector<Vertex>(n + 1, 0)};
  std::vector<bool> seen(n + 1, false);
  seen[v[0]] = true;
  Vertex prev = v[0];
  std::size_t next_leaf = 0;
  for (std::size_t j = 1; j < v.size(); ++j) {
    const Vertex x = v[j];
    if (seen[x]) {
      // repeat: previous path ends here, at the next absent label
      assert(t.parent[absent[next_leaf]] == 0);
      t.parent[absent[next_leaf]] = prev;
      ++next_leaf;
      prev = x;
    } else {
      assert(t.parent[x] == 0);
      t.parent[x] = prev;
      seen[x] = true;
      prev = x;
    }
  }
  assert(next_leaf + 1 == absent.size());
  t.parent[absent[next_leaf]] = prev;
  return t;
}

Code encode_unrooted(const RootedTree& t) {
  if (t.n < 2) throw std::invalid_argument("unrooted code needs n >= 2");
  require_valid(t);
  const RootedTree rooted_at_1 = t.root == 1 ? t : reroot(t, 1);
  Code v = encode_rooted(rooted_at_1);
  assert(v[0] == 1);
  v.erase(v.begin());
  return v;
}

RootedTree decode_unrooted(const Code& v, int n) {
  if (n < 2) throw std::invalid_argument("unrooted code needs n >= 2");
  check_entries(v, n, n - 2);
  Code full;
  full.reserve(v.size() + 1);
  full.push_back(1);
  full.insert(full.end(), v.begin(), v.end());
  return decode_rooted(full, n);
}

namespace {

// degree-1 vertices of the underlying unrooted tree, ascending
std::vector<Vertex> degree_one_vertices(const RootedTree& t) {
  std::vector<int> deg(t.n + 1, 0);
  for (Vertex v = 1; v <= t.n; ++v)
    if (t.parent[v] != 0) {
      ++deg[v];
      ++deg[t.parent[v]];
    }
  std::vector<Vertex> out;
  for (Vertex v = 1; v <= t.n; ++v)
    if (deg[v] == 1) out.push_back(v);
  return out;
}

}  // namespace

Code encode_unrooted_v2(const RootedTree& t) {
  if (t.n < 2) throw std::invalid_argument("unrooted code needs n >= 2");
  require_valid(t);
  const auto ends = degree_one_vertices(t);
  const Vertex a = ends[0], b = ends[1];
  // orient from a so b's ancestor chain is the a-b path
  const RootedTree ta = reroot(t, a);
  Code out;
  out.reserve(t.n - 2);
  std::vector<bool> visited(t.n + 1, false);
  // closed a-b path, emitted without its endpoints
  {
    std::vector<Vertex> path;
    Vertex u = b;
    while (u != 0) {
      path.push_back(u);
      u = ta.parent[u];
    }
    std::reverse(path.begin(), path.end());  // a ... b
    for (Vertex w : path) visited[w] = true;
    for (std::size_t i = 1; i + 1 < path.size(); ++i) out.push_back(path[i]);
  }
  for (Vertex leaf : ends) {
    if (leaf == a || leaf == b) continue;
    append_path_to(ta.parent, visited, leaf, out);
  }
  return out;
}

RootedTree decode_unrooted_v2(const Code& v, int n) {
  if (n < 2) throw std::invalid_argument("unrooted code needs n >= 2");
  check_entries(v, n, n - 2);

  std::vector<bool> appears(n + 1, false);
  for (Vertex x : v) appears[x] = true;
  std::vector<Vertex> absent;  // all degree-1 vertices of the result
  for (Vertex x = 1; x <= n; ++x)
    if (!appears[x]) absent.push_back(x);
  assert(absent.size() >= 2);
  const Vertex a = absent[0], b = absent[1];

  std::vector<Vertex> parent(n + 1, 0);  // oriented away from a
  std::vector<bool> seen(n + 1, false);
  seen[a] = true;
  Vertex prev = a;
  std::size_t next_leaf = 2;  // absent[0], absent[1] are the path endpoints
  bool first_path_open = true;
  for (std::size_t j = 0; j < v.size(); ++j) {
    const Vertex x = v[j];
    if (seen[x]) {
      const Vertex leaf = first_path_open ? b : absent[next_leaf++];
      first_path_open = false;
      assert(parent[leaf] == 0);
      parent[leaf] = prev;
      prev = x;
    } else {
      assert(parent[x] == 0);
      parent[x] = prev;
      seen[x] = true;
      prev = x;
    }
  }
  const Vertex last_leaf = first_path_open ? b : absent[next_leaf++];
  parent[last_leaf] = prev;
  assert(next_leaf == absent.size());

  RootedTree t{n, a, std::move(parent)};
  return reroot(t, 1);  // canonical unrooted representation
}

Code encode_marked(const MarkedTree& mt) {
  require_valid(mt.tree);
  if (mt.marks.empty()) throw std::invalid_argument("marked code needs r >= 1");
  const RootedTree& t = mt.tree;
  for (Vertex m : mt.marks)
    if (m < 1 || m > t.n) throw std::invalid_argument("mark out of range");

  Code out;
  out.reserve(t.n + mt.marks.size() - 1);
  std::vector<bool> visited(t.n + 1, false);
  visited[t.root] = true;
  for (Vertex mark : mt.marks) {
    if (visited[mark]) {
      out.push_back(mark);  // single-vertex path
      continue;
    }
    std::vector<Vertex> stack;
    Vertex u = mark;
    while (!visited[u]) {
      stack.push_back(u);
      u = t.parent[u];
    }
    out.push_back(u);
    for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
      visited[*it] = true;
      out.push_back(*it);  // marked paths keep their final point
    }
  }
  for (Vertex leaf : leaves(t)) {
    if (visited[leaf]) continue;
    append_path_to(t.parent, visited, leaf, out);
  }
  return out;
}

MarkedTree decode_marked(const Code& v, int n, int r) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  if (r < 1) throw std::invalid_argument("marked code needs r >= 1");
  check_entries(v, n, n + r - 1);

  std::vector<bool> appears(n + 1, false);
  for (Vertex x : v) appears[x] = true;
  std::vector<Vertex> absent;
  for (Vertex x = 1; x <= n; ++x)
    if (!appears[x]) absent.push_back(x);

  MarkedTree mt;
  mt.tree = RootedTree{n, v[0], std::vector<Vertex>(n + 1, 0)};
  std::vector<bool> seen(n + 1, false);
  seen[v[0]] = true;
  Vertex prev = v[0];
  int path_index = 1;  // paths 1..r end at marks, later ones at absent labels
  std::size_t next_leaf = 0;
  for (std::size_t j = 1; j < v.size(); ++j) {
    const Vertex x = v[j];
    if (seen[x]) {
      if (path_index <= r) {
        mt.marks.push_back(prev);  // previous path's final entry is its mark
      } else {
        mt.tree.parent[absent[next_leaf]] = prev;
        ++next_leaf;
      }
      ++path_index;
      prev = x;
    } else {
      mt.tree.parent[x] = prev;
      seen[x] = true;
      prev = x;
    }
  }
  if (path_index <= r) {
    mt.marks.push_back(prev);
  } else {
    mt.tree.parent[absent[next_leaf]] = prev;
    ++next_leaf;
  }
  assert(next_leaf == absent.size());
  assert(static_cast<int>(mt.marks.size()) == r);
  return mt;
}

Code encode_forest(const RootedForest& f) {
  require_valid(f);
  Code out;
  out.reserve(f.n - f.roots.size());
  std::vector<bool> visited(f.n + 1, false);
  for (Vertex s : f.roots) visited[s] = true;
  for (Vertex leaf : leaves(f)) append_path_to(f.parent, visited, leaf, out);
  return out;
}

RootedForest decode_forest(const Code& v, int n, const std::vector<Vertex>& roots) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  if (roots.empty()) throw std::invalid_argument("root set must be nonempty");
  std::vector<bool> is_root(n + 1, false);
  for (Vertex s : roots) {
    if (s < 1 || s > n) throw std::invalid_argument("root out of range");
    if (is_root[s]) throw std::invalid_argument("duplicate root");
    is_root[s] = true;
  }
  check_entries(v, n, n - static_cast<int>(roots.size()));

  RootedForest f{n, roots, std::vector<Vertex>(n + 1, 0)};
  std::sort(f.roots.begin(), f.roots.end());
  if (v.empty()) return f;
  if (!is_root[v[0]])
    throw std::invalid_argument("first entry " + std::to_string(v[0]) +
                                " must be a root");

  std::vector<bool> appears(n + 1, false);
  for (Vertex x : v) appears[x] = true;
  std::vector<Vertex> absent;  // of [n] \ S
  for (Vertex x = 1; x <= n; ++x)
    if (!appears[x] && !is_root[x]) absent.push_back(x);

  std::vector<bool> seen(n + 1, false);
  seen[v[0]] = true;
  Vertex prev = v[0];
  std::size_t next_leaf = 0;
  for (std::size_t j = 1; j < v.size(); ++j) {
    const Vertex x = v[j];
    if (seen[x] || is_root[x]) {
      f.parent[absent[next_leaf]] = prev;
      ++next_leaf;
      seen[x] = true;
      prev = x;
    } else {
      f.parent[x] = prev;
      seen[x] = true;
      prev = x;
    }
  }
  f.parent[absent[next_leaf]] = prev;
  ++next_leaf;
  assert(next_leaf == absent.size());
  return f;
}

Code encode_degree(const DegreeTree& t) {
  require_valid(t);
  const int m = t.m();
  Code out;
  out.reserve(t.degrees.code_length());
  std::vector<bool> visited(t.vertex_count() + 1, false);
  visited[t.root] = true;
  for (int j = 1; j <= t.leaf_count(); ++j)
    append_path_to(t.parent, visited, m + j, out);
  return out;
}

DegreeTree decode_degree(const Code& v, const DegreeSequence& d) {
  if (!d.valid()) throw std::invalid_argument("invalid degree sequence");
  const int m = d.m(), total = d.vertex_count();
  CodingSequence cs{SequenceContext{SequenceContext::Kind::Degree, 0, 0, 1, {}, d}, v};
  cs.require_valid();  // length and multiplicities

  DegreeTree t;
  t.degrees = d;
  t.root = v[0];
  t.parent.assign(total + 1, 0);
  std::vector<bool> seen(m + 1, false);
  seen[v[0]] = true;
  Vertex prev = v[0];
  int next_leaf = 1;
  for (std::size_t j = 1; j < v.size(); ++j) {
    const Vertex x = v[j];
    if (seen[x]) {
      t.parent[m + next_leaf] = prev;
      ++next_leaf;
      prev = x;
    } else {
      t.parent[x] = prev;
      seen[x] = true;
      prev = x;
    }
  }
  t.parent[m + next_leaf] = prev;
  ++next_leaf;
  assert(next_leaf == d.leaf_count() + 1);
  return t;
}

}  // namespace treecode
