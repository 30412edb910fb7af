#include "treecode/degree_tree.hpp"

#include <algorithm>
#include <stdexcept>

namespace treecode {

ValidationReport validate(const DegreeTree& t) {
  if (!t.degrees.valid()) return {false, "invalid degree sequence", 0};
  const int m = t.m(), total = t.vertex_count();
  if (t.root < 1 || t.root > total) return {false, "root out of range", t.root};
  if (t.root > m) return {false, "root must be an internal vertex", t.root};
  if (static_cast<int>(t.parent.size()) != total + 1)
    return {false, "parent map has wrong size", 0};

  std::vector<int> child_count(total + 1, 0);
  for (Vertex v = 1; v <= total; ++v) {
    if (v == t.root) {
      if (t.parent[v] != 0) return {false, "root has a parent", v};
      continue;
    }
    const Vertex p = t.parent[v];
    if (p < 1 || p > total) return {false, "parent out of range", v};
    if (p > m) return {false, "leaf used as a parent", v};
    ++child_count[p];
  }
  for (int i = 1; i <= m; ++i)
    if (child_count[i] != t.degrees.d[i - 1])
      return {false, "internal vertex has wrong child count", i};
  // acyclicity among internals (leaves cannot be on a cycle)
  std::vector<char> state(total + 1, 0);
  state[t.root] = 2;
  for (Vertex v = 1; v <= total; ++v) {
    if (state[v]) continue;
    Vertex u = v;
    std::vector<Vertex> chain;
    while (u != t.root && state[u] == 0) {
      state[u] = 1;
      chain.push_back(u);
      u = t.parent[u];
    }
    if (state[u] == 1) return {false, "cycle at vertex " + std::to_string(u), u};
    for (Vertex w : chain) state[w] = 2;
  }
  return {};
}

void require_valid(const DegreeTree& t) {
  auto rep = validate(t);
  if (!rep.ok) throw std::invalid_argument("invalid degree tree: " + rep.error);
}

std::vector<Vertex> discovery_order_packed(const DegreeTree& t) {
  const int m = t.m(), total = t.vertex_count();
  std::vector<bool> visited(total + 1, false);
  std::vector<Vertex> order;
  order.reserve(total);
  visited[t.root] = true;
  order.push_back(t.root);
  for (int j = 1; j <= t.leaf_count(); ++j) {
    const Vertex leaf = m + j;
    // walk up to the visited set, then record the new vertices downward
    std::vector<Vertex> stack;
    Vertex u = leaf;
    while (!visited[u]) {
      stack.push_back(u);
      u = t.parent[u];
    }
    for (auto it = stack.rbegin(); it != stack.rend(); ++it) {
      visited[*it] = true;
      order.push_back(*it);
    }
  }
  return order;
}

std::vector<VertexId> discovery_order(const DegreeTree& t) {
  std::vector<VertexId> out;
  for (Vertex v : discovery_order_packed(t)) out.push_back(t.unpack(v));
  return out;
}

int height(const DegreeTree& t) {
  const int total = t.vertex_count();
  std::vector<int> d(total + 1, -1);
  d[t.root] = 0;
  int best = 0;
  for (Vertex v = 1; v <= total; ++v) {
    std::vector<Vertex> chain;
    Vertex u = v;
    while (d[u] < 0) {
      chain.push_back(u);
      u = t.parent[u];
    }
    int base = d[u];
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) d[*it] = ++base;
    best = std::max(best, d[v]);
  }
  return best;
}

}  // namespace treecode
