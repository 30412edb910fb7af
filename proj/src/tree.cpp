#include "treecode/tree.hpp"

#include <algorithm>
#include <stdexcept>

namespace treecode {

bool TypeVector::valid() const {
  for (long long c : counts)
    if (c < 0) return false;
  const long long n = vertex_count();
  return n >= 1 && child_sum() == n - 1;
}

void TypeVector::trim() {
  while (!counts.empty() && counts.back() == 0) counts.pop_back();
}

namespace {

// Walks parent links from every vertex, detecting cycles and stray roots.
// roots_mask[v] true for vertices that must have parent == 0.
ValidationReport check_parent_map(int n, const std::vector<Vertex>& parent,
                                  const std::vector<bool>& roots_mask) {
  if (static_cast<int>(parent.size()) != n + 1)
    return {false, "parent map has wrong size", 0};
  for (Vertex v = 1; v <= n; ++v) {
    if (roots_mask[v]) {
      if (parent[v] != 0)
        return {false, "root has a parent", v};
    } else {
      if (parent[v] < 1 || parent[v] > n)
        return {false, "parent out of range", v};
    }
  }
  // 0 unvisited, 1 in progress, 2 done
  std::vector<char> state(n + 1, 0);
  for (Vertex v = 1; v <= n; ++v) {
    if (state[v]) continue;
    Vertex u = v;
    std::vector<Vertex> chain;
    while (!roots_mask[u] && state[u] == 0) {
      state[u] = 1;
      chain.push_back(u);
      u = parent[u];
    }
    if (state[u] == 1) return {false, "cycle at vertex " + std::to_string(u), u};
    for (Vertex w : chain) state[w] = 2;
    state[u] = 2;
  }
  return {};
}

}  // namespace

ValidationReport validate(const RootedTree& t) {
  if (t.n < 1) return {false, "vertex count must be positive", 0};
  if (t.root < 1 || t.root > t.n) return {false, "root out of range", t.root};
  std::vector<bool> roots_mask(t.n + 1, false);
  roots_mask[t.root] = true;
  return check_parent_map(t.n, t.parent, roots_mask);
}

ValidationReport validate(const RootedForest& f) {
  if (f.n < 1) return {false, "vertex count must be positive", 0};
  if (f.roots.empty()) return {false, "root set must be nonempty", 0};
  std::vector<bool> roots_mask(f.n + 1, false);
  for (Vertex s : f.roots) {
    if (s < 1 || s > f.n) return {false, "root out of range", s};
    if (roots_mask[s]) return {false, "duplicate root", s};
    roots_mask[s] = true;
  }
  return check_parent_map(f.n, f.parent, roots_mask);
}

void require_valid(const RootedTree& t) {
  auto rep = validate(t);
  if (!rep.ok) throw std::invalid_argument("invalid tree: " + rep.error);
}

void require_valid(const RootedForest& f) {
  auto rep = validate(f);
  if (!rep.ok) throw std::invalid_argument("invalid forest: " + rep.error);
}

namespace {

std::vector<std::vector<Vertex>> children_of(int n, const std::vector<Vertex>& parent) {
  std::vector<std::vector<Vertex>> ch(n + 1);
  for (Vertex v = 1; v <= n; ++v)
    if (parent[v] != 0) ch[parent[v]].push_back(v);
  return ch;
}

std::vector<Vertex> childless_nonroots(int n, const std::vector<Vertex>& parent) {
  std::vector<int> child_count(n + 1, 0);
  for (Vertex v = 1; v <= n; ++v)
    if (parent[v] != 0) ++child_count[parent[v]];
  std::vector<Vertex> out;
  for (Vertex v = 1; v <= n; ++v)
    if (parent[v] != 0 && child_count[v] == 0) out.push_back(v);
  return out;  // ascending by construction
}

}  // namespace

std::vector<std::vector<Vertex>> child_lists(const RootedTree& t) {
  return children_of(t.n, t.parent);
}

std::vector<std::vector<Vertex>> child_lists(const RootedForest& f) {
  return children_of(f.n, f.parent);
}

std::vector<Vertex> leaves(const RootedTree& t) {
  return childless_nonroots(t.n, t.parent);
}

std::vector<Vertex> leaves(const RootedForest& f) {
  return childless_nonroots(f.n, f.parent);
}

int depth(const RootedTree& t, Vertex v) {
  if (v < 1 || v > t.n)
    throw std::invalid_argument("unknown vertex " + std::to_string(v));
  int d = 0;
  while (t.parent[v] != 0) {
    v = t.parent[v];
    ++d;
  }
  return d;
}

std::vector<int> all_depths(const RootedTree& t) {
  std::vector<int> d(t.n + 1, -1);
  d[t.root] = 0;
  for (Vertex v = 1; v <= t.n; ++v) {
    if (d[v] >= 0) continue;
    // walk up to a known depth, then unwind
    std::vector<Vertex> chain;
    Vertex u = v;
    while (d[u] < 0) {
      chain.push_back(u);
      u = t.parent[u];
    }
    int base = d[u];
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) d[*it] = ++base;
  }
  d.erase(d.begin());  // drop index 0
  return d;            // d[v-1] = depth of v
}

int height(const RootedTree& t) {
  const auto d = all_depths(t);
  return *std::max_element(d.begin(), d.end());
}

int height(const RootedForest& f) {
  std::vector<int> d(f.n + 1, -1);
  for (Vertex s : f.roots) d[s] = 0;
  int best = 0;
  for (Vertex v = 1; v <= f.n; ++v) {
    std::vector<Vertex> chain;
    Vertex u = v;
    while (d[u] < 0) {
      chain.push_back(u);
      u = f.parent[u];
    }
    int base = d[u];
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) d[*it] = ++base;
    best = std::max(best, d[v]);
  }
  return best;
}

std::vector<Vertex> path_from_set(const RootedTree& t,
                                  const std::vector<Vertex>& S, Vertex x) {
  if (S.empty()) throw std::invalid_argument("path_from_set: S must be nonempty");
  std::vector<bool> in_s(t.n + 1, false);
  for (Vertex s : S) {
    if (s < 1 || s > t.n)
      throw std::invalid_argument("path_from_set: S contains unknown vertex");
    in_s[s] = true;
  }
  if (x < 1 || x > t.n)
    throw std::invalid_argument("path_from_set: unknown vertex " + std::to_string(x));

  // connectivity of S inside t: each non-minimal-depth S vertex must reach
  // another S vertex via its parent
  {
    const auto d = all_depths(t);
    Vertex top = 0;
    int dmin = t.n + 1;
    for (Vertex s : S)
      if (d[s - 1] < dmin) dmin = d[s - 1], top = s;
    for (Vertex s : S) {
      if (s == top) continue;
      if (!in_s[t.parent[s]])
        throw std::invalid_argument("path_from_set: S not connected");
    }
  }

  if (in_s[x]) return {x};

  // path from x up to the root; the first S vertex hit, if any, ends the search
  std::vector<Vertex> up;
  {
    Vertex u = x;
    while (true) {
      up.push_back(u);
      if (in_s[u]) break;
      if (t.parent[u] == 0) break;
      u = t.parent[u];
    }
  }
  if (in_s[up.back()]) {
    std::reverse(up.begin(), up.end());
    return up;
  }
  // x's ancestor chain missed S, so the path descends from S: the chain of S's
  // shallowest vertex meets x's chain at their lowest common ancestor
  std::vector<bool> on_up(t.n + 1, false);
  for (Vertex u : up) on_up[u] = true;
  // walk from any S vertex up to the meeting point
  Vertex s0 = S.front();
  std::vector<Vertex> from_s;
  Vertex u = s0;
  while (!on_up[u]) {
    from_s.push_back(u);
    u = t.parent[u];
  }
  // trim from_s so the path leaves S immediately: keep only the last S vertex
  std::size_t start = 0;
  for (std::size_t i = 0; i < from_s.size(); ++i)
    if (in_s[from_s[i]]) start = i;
  // assemble: last S vertex ... meeting point ... x
  std::vector<Vertex> path(from_s.begin() + static_cast<long>(start), from_s.end());
  bool emit = false;
  for (auto it = up.rbegin(); it != up.rend(); ++it) {
    if (*it == u) emit = true;
    if (emit) path.push_back(*it);
  }
  return path;
}

TypeVector type_of(const RootedTree& t) {
  std::vector<int> child_count(t.n + 1, 0);
  for (Vertex v = 1; v <= t.n; ++v)
    if (t.parent[v] != 0) ++child_count[t.parent[v]];
  TypeVector tv;
  for (Vertex v = 1; v <= t.n; ++v) {
    const int c = child_count[v];
    if (static_cast<int>(tv.counts.size()) <= c) tv.counts.resize(c + 1, 0);
    ++tv.counts[c];
  }
  tv.trim();
  return tv;
}

RootedTree reroot(const RootedTree& t, Vertex new_root) {
  if (new_root < 1 || new_root > t.n)
    throw std::invalid_argument("reroot: unknown vertex");
  RootedTree r{t.n, new_root, std::vector<Vertex>(t.n + 1, 0)};
  // flip parent pointers along the path new_root -> old root
  for (Vertex v = 1; v <= t.n; ++v) r.parent[v] = t.parent[v];
  Vertex v = new_root, prev = 0;
  while (v != 0) {
    const Vertex next = t.parent[v];
    r.parent[v] = prev;
    prev = v;
    v = next;
  }
  return r;
}

namespace {

std::vector<std::pair<Vertex, Vertex>> edges_of(int n, const std::vector<Vertex>& parent) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (Vertex v = 1; v <= n; ++v)
    if (parent[v] != 0)
      e.emplace_back(std::min(v, parent[v]), std::max(v, parent[v]));
  std::sort(e.begin(), e.end());
  return e;
}

}  // namespace

std::vector<std::pair<Vertex, Vertex>> edge_set(const RootedTree& t) {
  return edges_of(t.n, t.parent);
}

std::vector<std::pair<Vertex, Vertex>> edge_set(const RootedForest& f) {
  return edges_of(f.n, f.parent);
}

}  // namespace treecode
