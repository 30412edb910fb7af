#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <set>
#include <string>

#include "treecode/growth.hpp"
#include "treecode/oracle.hpp"
#include "treecode/statistics.hpp"

using namespace treecode;

namespace {

DegreeTree cherry() {  // root 1 with leaves l1, l2
  DegreeTree t;
  t.degrees.d = {2};
  t.root = 1;
  t.parent = {0, 0, 1, 1};
  return t;
}

const Code kQuaternaryCode{2, 2, 3, 2, 4, 4, 1, 1, 2, 1, 3, 4, 3, 4, 1, 3};
const Code kGrownCode{2, 2, 5, 5, 3, 2, 4, 4, 5, 1, 5, 1, 2, 1, 3, 4, 3, 4, 1, 3};

DegreeTree quaternary() {
  return decode_degree(kQuaternaryCode, DegreeSequence{{4, 4, 4, 4}});
}

std::vector<DegreeSequence> small_degree_sequences(int max_vertices) {
  std::vector<DegreeSequence> out;
  // compositions of every total up to max_vertices - 1
  std::vector<std::vector<int>> stack{{}};
  while (!stack.empty()) {
    auto cur = stack.back();
    stack.pop_back();
    int sum = 0;
    for (int x : cur) sum += x;
    if (!cur.empty() && sum + 1 <= max_vertices) out.push_back(DegreeSequence{cur});
    for (int next = 1; sum + next + 1 <= max_vertices; ++next) {
      auto ext = cur;
      ext.push_back(next);
      stack.push_back(ext);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("multiset_from_indices uses the discovery order") {
  const DegreeTree t = quaternary();
  const GrowthMultiset w = multiset_from_indices(t, {3, 3, 7, 8});
  // discovery order starts 2, l1, 3, l2, 4, l3, 1, l4 so indices 3,3,7,8
  // pick the multiset {3, 3, 1, l4}
  REQUIRE(w.sorted.size() == 4);
  CHECK(t.unpack(w.sorted[0]) == VertexId::internal(3));
  CHECK(t.unpack(w.sorted[1]) == VertexId::internal(3));
  CHECK(t.unpack(w.sorted[2]) == VertexId::internal(1));
  CHECK(t.unpack(w.sorted[3]) == VertexId::leaf(4));

  CHECK(t.unpack(multiset_from_indices(t, {1}).sorted[0]) == VertexId::internal(2));
  CHECK(t.unpack(multiset_from_indices(t, {17}).sorted[0]) == VertexId::leaf(13));
  CHECK_THROWS_AS(multiset_from_indices(t, {18}), std::invalid_argument);
}

TEST_CASE("grow_step on the two cherry examples") {
  const DegreeTree t = cherry();
  {
    // multiset {1, 1}: new root 2 with children 1 and l3
    const DegreeTree g = grow_step(t, multiset_from_indices(t, {1, 1}));
    CHECK(g.degrees.d == std::vector<int>{2, 2});
    CHECK(g.unpack(g.root) == VertexId::internal(2));
    CHECK(g.parent[1] == 2);
    CHECK(g.parent[g.pack(VertexId::leaf(3))] == 2);
    CHECK(g.parent[g.pack(VertexId::leaf(1))] == 1);
    CHECK(g.parent[g.pack(VertexId::leaf(2))] == 1);
    CHECK(validate(g).ok);
  }
  {
    // multiset {l1, l2}: root stays 1, vertex 2 takes both leaves
    const DegreeTree g = grow_step(t, multiset_from_indices(t, {2, 3}));
    CHECK(g.unpack(g.root) == VertexId::internal(1));
    CHECK(g.parent[2] == 1);
    CHECK(g.parent[g.pack(VertexId::leaf(3))] == 1);
    CHECK(g.parent[g.pack(VertexId::leaf(1))] == 2);
    CHECK(g.parent[g.pack(VertexId::leaf(2))] == 2);
    CHECK(validate(g).ok);
  }
}

TEST_CASE("grow_step reproduces the quaternary growth figure") {
  const DegreeTree t = quaternary();
  const DegreeTree grown = grow_step(t, multiset_from_indices(t, {3, 3, 7, 8}));
  const DegreeTree expected = decode_modified(kGrownCode, DegreeSequence{{4, 4, 4, 4, 4}});
  CHECK(grown == expected);
  CHECK(validate(grown).ok);
}

TEST_CASE("insert_repeats places copies before discovery slots") {
  CHECK(insert_repeats(kQuaternaryCode, 5, {3, 3, 7, 8}) == kGrownCode);
  CHECK(insert_repeats({1, 1}, 2, {1, 1}) == Code{2, 2, 1, 1});
  CHECK(insert_repeats({1, 1}, 2, {2, 3}) == Code{1, 2, 1, 2});
  CHECK(insert_repeats({1, 1}, 2, {3}) == Code{1, 1, 2});
}

TEST_CASE("modified decode equals plain decode when the new vertex is a unary tail") {
  // d' = (1,1): the new label appears once, so no reordering can occur
  const DegreeSequence d{{1, 1}};
  CHECK(decode_modified({1, 2}, d) == decode_degree({1, 2}, d));
  CHECK(decode_modified({2, 1}, d) == decode_degree({2, 1}, d));
}

TEST_CASE("modified encode reproduces the 20-entry worked sequence") {
  const DegreeTree grown = decode_modified(kGrownCode, DegreeSequence{{4, 4, 4, 4, 4}});
  CHECK(encode_modified(grown) == kGrownCode);
}

TEST_CASE("modified bijection round trips for every small degree sequence") {
  for (const DegreeSequence& d : small_degree_sequences(7)) {
    Code v;
    for (int i = 1; i <= d.m(); ++i)
      for (int k = 0; k < d.d[i - 1]; ++k) v.push_back(i);
    std::sort(v.begin(), v.end());
    std::set<std::string> seen;
    do {
      const DegreeTree t = decode_modified(v, d);
      CHECK(validate(t).ok);
      CHECK(encode_modified(t) == v);
      std::string key = std::to_string(t.root) + ":";
      for (Vertex x = 1; x <= t.vertex_count(); ++x)
        key += std::to_string(t.parent[x]) + ",";
      seen.insert(key);
    } while (std::next_permutation(v.begin(), v.end()));
    CHECK(BigUint(seen.size()) == oracle::count_degree_trees(d));
  }
}

TEST_CASE("grow_step agrees with the repeat-inserted sequence route, exhaustively") {
  // all trees with m+L <= 6, all multisets of size d for d = 1..3
  for (const DegreeSequence& d : small_degree_sequences(6)) {
    oracle::DegreeTreeCursor cur(d);
    while (auto t = cur.next()) {
      const int total = t->vertex_count();
      for (int grow_d = 1; grow_d <= 3; ++grow_d) {
        // enumerate multisets of size grow_d over [total]
        std::vector<int> idx(grow_d, 1);
        while (true) {
          const DegreeTree grown = grow_step(*t, multiset_from_indices(*t, idx));
          DegreeSequence ext = t->degrees;
          ext.d.push_back(grow_d);
          const DegreeTree via_code = decode_modified(
              insert_repeats(encode_degree(*t), t->m() + 1, idx), ext);
          CHECK(grown == via_code);
          // conservation: one internal, grow_d - 1 leaves, grow_d edges added
          CHECK(grown.m() == t->m() + 1);
          CHECK(grown.leaf_count() == t->leaf_count() + grow_d - 1);
          CHECK(validate(grown).ok);
          int i = grow_d - 1;
          while (i >= 0 && idx[i] == total) --i;
          if (i < 0) break;
          ++idx[i];
          for (int j = i + 1; j < grow_d; ++j) idx[j] = idx[i];
          continue;
        }
      }
    }
  }
}

TEST_CASE("unlabel_internal is stable under internal relabeling") {
  // two 2-internal binary trees differing only by swapping labels 1 and 2
  DegreeTree a;
  a.degrees.d = {2, 2};
  a.root = 1;
  a.parent.assign(6, 0);
  a.parent[2] = 1;                       // 2 under 1
  a.parent[a.pack(VertexId::leaf(1))] = 1;
  a.parent[a.pack(VertexId::leaf(2))] = 2;
  a.parent[a.pack(VertexId::leaf(3))] = 2;

  DegreeTree b;
  b.degrees.d = {2, 2};
  b.root = 2;
  b.parent.assign(6, 0);
  b.parent[1] = 2;
  b.parent[b.pack(VertexId::leaf(1))] = 2;
  b.parent[b.pack(VertexId::leaf(2))] = 1;
  b.parent[b.pack(VertexId::leaf(3))] = 1;

  CHECK(unlabel_internal(a) == unlabel_internal(b));

  DegreeTree c = a;  // different leaf placement
  c.parent[c.pack(VertexId::leaf(1))] = 2;
  c.parent[c.pack(VertexId::leaf(2))] = 1;
  CHECK_FALSE(unlabel_internal(a) == unlabel_internal(c));
}

TEST_CASE("the quaternary shape survives permuting internal labels") {
  const DegreeTree t = quaternary();
  const LeafShape base = unlabel_internal(t);
  // swap internal labels 3 and 4 throughout
  auto swap_id = [](Vertex v) { return v == 3 ? 4 : v == 4 ? 3 : v; };
  DegreeTree swapped = t;
  swapped.parent.assign(t.vertex_count() + 1, 0);
  for (Vertex v = 1; v <= t.vertex_count(); ++v) {
    if (v == t.root) continue;
    swapped.parent[swap_id(v)] = swap_id(t.parent[v]);
  }
  swapped.root = swap_id(t.root);
  REQUIRE(validate(swapped).ok);
  CHECK(unlabel_internal(swapped) == base);
}

TEST_CASE("uniform multisets have the exact combinations-with-repetition law") {
  // d=2 over [3]: 6 multisets, each with probability 1/6
  RandomSource rng(424242, 0);
  std::map<std::vector<int>, long long> counts;
  const long long N = 60000;
  for (long long i = 0; i < N; ++i) ++counts[uniform_index_multiset(2, 3, rng)];
  REQUIRE(counts.size() == 6);
  std::vector<long long> flat;
  for (auto& [k, c] : counts) flat.push_back(c);
  CHECK(chi_square_uniform(flat).p_value > 1e-3);
}

TEST_CASE("one growth step transports the uniform law") {
  // starting from the unique tree for (2), a uniform multiset of size 2
  // must land uniformly on the six trees for (2,2)
  std::map<std::string, int> index;
  for (const auto& t : oracle::enumerate_degree_trees(DegreeSequence{{2, 2}})) {
    std::string key = std::to_string(t.root) + ":";
    for (Vertex v = 1; v <= t.vertex_count(); ++v)
      key += std::to_string(t.parent[v]) + ",";
    index.emplace(key, index.size());
  }
  REQUIRE(index.size() == 6);
  RandomSource rng(20250808, 78);
  std::vector<long long> counts(6, 0);
  for (int i = 0; i < 6 * 200; ++i) {
    const DegreeTree base = cherry();
    const auto idx = uniform_index_multiset(2, base.vertex_count(), rng);
    const DegreeTree grown = grow_step(base, multiset_from_indices(base, idx));
    std::string key = std::to_string(grown.root) + ":";
    for (Vertex v = 1; v <= grown.vertex_count(); ++v)
      key += std::to_string(grown.parent[v]) + ",";
    ++counts[index.at(key)];
  }
  CHECK(chi_square_uniform(counts).p_value > 1e-3);
}

TEST_CASE("binary chain marginals are uniform over leaf-labeled shapes") {
  // m=2: three shapes, equally likely
  RandomSource rng(20250808, 77);
  std::map<std::string, long long> counts;
  const long long N = 10000;
  for (long long i = 0; i < N; ++i) {
    DegreeTree last = unique_single_internal_tree(2);
    grow_dary_chain(2, 2, rng, [&](int, const DegreeTree& t) { last = t; });
    ++counts[unlabel_internal(last).canon];
  }
  REQUIRE(counts.size() == 3);
  std::vector<long long> flat;
  for (auto& [k, c] : counts) flat.push_back(c);
  CHECK(chi_square_uniform(flat).p_value > 1e-3);
}

TEST_CASE("ternary trees with two internals have ten shapes") {
  std::set<std::string> shapes;
  oracle::DegreeTreeCursor cur(DegreeSequence{{3, 3}});
  while (auto t = cur.next()) shapes.insert(unlabel_internal(*t).canon);
  CHECK(shapes.size() == 10);
}

TEST_CASE("grow chain needs a seedable source but no other state") {
  RandomSource a(7, 0), b(7, 0);
  std::string run_a, run_b;
  grow_dary_chain(2, 6, a, [&](int m, const DegreeTree& t) {
    run_a += std::to_string(m) + unlabel_internal(t).canon;
  });
  grow_dary_chain(2, 6, b, [&](int m, const DegreeTree& t) {
    run_b += std::to_string(m) + unlabel_internal(t).canon;
  });
  CHECK(run_a == run_b);
}
