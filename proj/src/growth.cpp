#include "treecode/growth.hpp"

#include <algorithm>
#include <cassert>
#include <stdexcept>

namespace treecode {

GrowthMultiset multiset_from_indices(const DegreeTree& t,
                                     const std::vector<int>& indices) {
  const auto order = discovery_order_packed(t);
  GrowthMultiset w;
  w.sorted.reserve(indices.size());
  std::vector<int> idx = indices;
  std::sort(idx.begin(), idx.end());
  for (int i : idx) {
    if (i < 1 || i > static_cast<int>(order.size()))
      throw std::invalid_argument("multiset index " + std::to_string(i) +
                                  " out of range");
    w.sorted.push_back(order[i - 1]);
  }
  return w;
}

DegreeTree grow_step(const DegreeTree& t, const GrowthMultiset& w) {
  require_valid(t);
  const int d = static_cast<int>(w.sorted.size());
  if (d < 1) throw std::invalid_argument("growth multiset must be nonempty");
  const int m = t.m(), L = t.leaf_count(), total = t.vertex_count();
  for (Vertex x : w.sorted)
    if (x < 1 || x > total)
      throw std::invalid_argument("multiset element not in tree");
#ifndef NDEBUG
  {
    const auto order = discovery_order_packed(t);
    std::vector<int> rank(total + 1, 0);
    for (int i = 0; i < total; ++i) rank[order[i]] = i;
    for (std::size_t i = 1; i < w.sorted.size(); ++i)
      assert(rank[w.sorted[i - 1]] <= rank[w.sorted[i]] &&
             "multiset must be sorted by discovery order");
  }
#endif

  DegreeTree out;
  out.degrees.d = t.degrees.d;
  out.degrees.d.push_back(d);
  const int new_internal = m + 1;
  const int new_total = out.degrees.vertex_count();
  out.parent.assign(new_total + 1, 0);

  // old packed ids shift: internal i -> i, leaf m+j -> m+1+j
  auto remap = [&](Vertex x) { return x <= m ? x : x + 1; };
  for (Vertex x = 1; x <= total; ++x)
    if (x != t.root) out.parent[remap(x)] = remap(t.parent[x]);
  out.root = remap(t.root);

  auto new_leaf = [&](int j) { return new_internal + L + j; };  // l_{L+j}

  const Vertex w1 = remap(w.sorted[0]);
  if (w.sorted[0] == t.root) {
    out.parent[w1] = new_internal;
    out.root = new_internal;
  } else {
    const Vertex v = out.parent[w1];
    out.parent[new_internal] = v;
    out.parent[w1] = new_internal;
  }
  for (int j = 2; j <= d; ++j) {
    if (w.sorted[j - 1] == w.sorted[j - 2]) {
      out.parent[new_leaf(j - 1)] = new_internal;
    } else {
      const Vertex wj = remap(w.sorted[j - 1]);
      const Vertex v = out.parent[wj];
      out.parent[new_leaf(j - 1)] = v;
      out.parent[wj] = new_internal;
    }
  }
  return out;
}

Code insert_repeats(const Code& v, Vertex new_label, const std::vector<int>& indices) {
  std::vector<int> idx = indices;
  std::sort(idx.begin(), idx.end());
  for (int i : idx)
    if (i < 1 || i > static_cast<int>(v.size()) + 1)
      throw std::invalid_argument("insertion slot out of range");
  Code out;
  out.reserve(v.size() + idx.size());
  std::size_t k = 0;
  for (std::size_t pos = 1; pos <= v.size() + 1; ++pos) {
    while (k < idx.size() && static_cast<std::size_t>(idx[k]) == pos) {
      out.push_back(new_label);
      ++k;
    }
    if (pos <= v.size()) out.push_back(v[pos - 1]);
  }
  return out;
}

DegreeTree decode_modified(const Code& v, const DegreeSequence& d_extended) {
  if (!d_extended.valid()) throw std::invalid_argument("invalid degree sequence");
  const int m_new = d_extended.m();  // the grown vertex carries label m_new
  const int total = d_extended.vertex_count();
  CodingSequence cs{
      SequenceContext{SequenceContext::Kind::Degree, 0, 0, 1, {}, d_extended}, v};
  cs.require_valid();

  // leaf budget of the pre-growth sequence
  DegreeSequence base;
  base.d.assign(d_extended.d.begin(), d_extended.d.end() - 1);
  const int L = base.d.empty() ? 1 : base.leaf_count();

  DegreeTree t;
  t.degrees = d_extended;
  t.root = v[0];
  t.parent.assign(total + 1, 0);

  std::vector<bool> seen(m_new + 1, false);
  seen[v[0]] = true;
  Vertex prev = v[0];
  int other_repeats = 0;
  int fresh_used = 0;  // repeats of m_new claim l_{L+1}, l_{L+2}, ...
  for (std::size_t j = 1; j < v.size(); ++j) {
    const Vertex x = v[j];
    if (seen[x]) {
      int leaf_index;
      if (x == m_new) {
        ++fresh_used;
        leaf_index = L + fresh_used;
      } else {
        ++other_repeats;
        leaf_index = other_repeats;
      }
      t.parent[m_new + leaf_index] = prev;
      prev = x;
    } else {
      t.parent[x] = prev;
      seen[x] = true;
      prev = x;
    }
  }
  t.parent[m_new + L] = prev;  // final path ends at l_L
  assert(fresh_used == d_extended.d.back() - 1);
  assert(other_repeats == L - 1);
  return t;
}

Code encode_modified(const DegreeTree& t) {
  require_valid(t);
  const int m_new = t.m();
  const int total = t.vertex_count();
  DegreeSequence base;
  base.d.assign(t.degrees.d.begin(), t.degrees.d.end() - 1);
  const int L = base.d.empty() ? 1 : base.leaf_count();
  const int L_new = t.leaf_count();

  std::vector<int> child_count(m_new + 1, 0);
  for (Vertex x = 1; x <= total; ++x)
    if (x != t.root) ++child_count[t.parent[x]];

  const int len = t.degrees.code_length();
  Code v(len, 0);
  std::vector<int> suffix_count(m_new + 1, 0);
  std::vector<bool> used(L_new + 1, false);
  int next_fresh = L_new;  // scans l_{L'}..l_{L+1}
  int next_low = L - 1;    // scans l_{L-1}..l_1

  v[len - 1] = t.parent[m_new + L];
  ++suffix_count[v[len - 1]];
  used[L] = true;
  for (int j = len - 2; j >= 0; --j) {
    const Vertex succ = v[j + 1];
    if (suffix_count[succ] == child_count[succ]) {
      v[j] = t.parent[succ];
    } else {
      int i_star;
      if (succ == m_new) {
        while (next_fresh > L && used[next_fresh]) --next_fresh;
        if (next_fresh <= L)
          throw std::logic_error("internal error: fresh leaf ordering exhausted");
        i_star = next_fresh;
      } else {
        while (next_low >= 1 && used[next_low]) --next_low;
        if (next_low < 1)
          throw std::logic_error("internal error: leaf ordering exhausted");
        i_star = next_low;
      }
      used[i_star] = true;
      v[j] = t.parent[m_new + i_star];
    }
    ++suffix_count[v[j]];
  }
  return v;
}

namespace {

struct ShapeNode {
  int min_leaf = 0;
  std::string canon;
  std::vector<int> internal_preorder;  // internal labels in canonical preorder
};

ShapeNode shape_rec(const DegreeTree& t,
                    const std::vector<std::vector<Vertex>>& children, Vertex v) {
  if (t.is_leaf_id(v)) {
    const int j = v - t.m();
    return {j, "l" + std::to_string(j), {}};
  }
  std::vector<ShapeNode> subs;
  subs.reserve(children[v].size());
  for (Vertex c : children[v]) subs.push_back(shape_rec(t, children, c));
  std::sort(subs.begin(), subs.end(), [](const ShapeNode& a, const ShapeNode& b) {
    if (a.min_leaf != b.min_leaf) return a.min_leaf < b.min_leaf;
    return a.canon.size() < b.canon.size();  // unreachable tiebreak
  });
  ShapeNode out;
  out.min_leaf = subs.front().min_leaf;
  out.canon = "(";
  out.internal_preorder.push_back(v);
  for (std::size_t i = 0; i < subs.size(); ++i) {
    if (i) out.canon += ",";
    out.canon += subs[i].canon;
    out.internal_preorder.insert(out.internal_preorder.end(),
                                 subs[i].internal_preorder.begin(),
                                 subs[i].internal_preorder.end());
  }
  out.canon += ")";
  return out;
}

ShapeNode shape_of(const DegreeTree& t) {
  std::vector<std::vector<Vertex>> children(t.vertex_count() + 1);
  for (Vertex x = 1; x <= t.vertex_count(); ++x)
    if (x != t.root) children[t.parent[x]].push_back(x);
  return shape_rec(t, children, t.root);
}

}  // namespace

LeafShape unlabel_internal(const DegreeTree& t) {
  require_valid(t);
  return {shape_of(t).canon};
}

std::pair<LeafShape, int> shape_with_marked_internal(const DegreeTree& t,
                                                     int internal_label) {
  require_valid(t);
  const ShapeNode node = shape_of(t);
  const auto it = std::find(node.internal_preorder.begin(),
                            node.internal_preorder.end(), internal_label);
  if (it == node.internal_preorder.end())
    throw std::invalid_argument("internal vertex not in tree");
  return {{node.canon},
          static_cast<int>(it - node.internal_preorder.begin())};
}

std::vector<int> uniform_index_multiset(int d, int m, RandomSource& rng) {
  if (d < 1 || m < 1) throw std::invalid_argument("need d >= 1 and m >= 1");
  auto subset = rng.distinct_sorted(d, m + d - 1);
  std::vector<int> out;
  out.reserve(d);
  for (int j = 0; j < d; ++j)
    out.push_back(static_cast<int>(subset[j]) - j);
  return out;
}

DegreeTree unique_single_internal_tree(int d) {
  if (d < 1) throw std::invalid_argument("need d >= 1");
  DegreeTree t;
  t.degrees.d = {d};
  t.root = 1;
  t.parent.assign(t.vertex_count() + 1, 0);
  for (int j = 1; j <= d; ++j) t.parent[1 + j] = 1;
  return t;
}

void grow_dary_chain(int d, int m_max, RandomSource& rng,
                     const std::function<void(int, const DegreeTree&)>& emit) {
  if (d < 2) throw std::invalid_argument("chain needs d >= 2");
  if (m_max < 1) throw std::invalid_argument("need m_max >= 1");
  DegreeTree t = unique_single_internal_tree(d);
  emit(1, t);
  for (int m = 1; m < m_max; ++m) {
    const auto indices = uniform_index_multiset(d, t.vertex_count(), rng);
    t = grow_step(t, multiset_from_indices(t, indices));
    emit(m + 1, t);
  }
}

}  // namespace treecode
