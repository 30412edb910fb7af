#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "treecode/bijection.hpp"
#include "treecode/degree_tree.hpp"
#include "treecode/oracle.hpp"
#include "treecode/tree.hpp"

using namespace treecode;

namespace {

RootedTree make_tree(int n, Vertex root, std::vector<std::pair<Vertex, Vertex>> edges) {
  RootedTree t{n, root, std::vector<Vertex>(n + 1, 0)};
  for (auto [child, parent] : edges) t.parent[child] = parent;
  return t;
}

// star: root 1, children 2 and 3
const RootedTree kStar3 = make_tree(3, 1, {{2, 1}, {3, 1}});
// path 2 - 3 - 1 rooted at 2
const RootedTree kPath3 = make_tree(3, 2, {{3, 2}, {1, 3}});

}  // namespace

TEST_CASE("validate accepts the smallest tree") {
  CHECK(validate(RootedTree::single_vertex()).ok);
}

TEST_CASE("validate rejects a rooted two-cycle") {
  const RootedTree t = make_tree(2, 1, {{1, 2}, {2, 1}});
  const auto rep = validate(t);
  CHECK_FALSE(rep.ok);
  CHECK(rep.error.find("root has a parent") != std::string::npos);
}

TEST_CASE("validate names a self-loop vertex") {
  const RootedTree t = make_tree(3, 1, {{2, 1}, {3, 3}});
  const auto rep = validate(t);
  CHECK_FALSE(rep.ok);
  CHECK(rep.error.find("cycle at vertex 3") != std::string::npos);
  CHECK(rep.offender == 3);
}

TEST_CASE("forest validation catches a component without a root") {
  RootedForest f{4, {1}, {0, 0, 1, 4, 3}};  // 3 and 4 form a two-cycle
  CHECK_FALSE(validate(f).ok);
  f.parent = {0, 0, 1, 1, 3};
  CHECK(validate(f).ok);
}

TEST_CASE("leaves of a star and of a path") {
  CHECK(leaves(kStar3) == std::vector<Vertex>{2, 3});
  // root 2 has degree 1 but is not a leaf
  CHECK(leaves(kPath3) == std::vector<Vertex>{1});
  CHECK(leaves(RootedTree::single_vertex()).empty());
}

TEST_CASE("depth and height") {
  CHECK(depth(kStar3, 1) == 0);
  CHECK(depth(kStar3, 3) == 1);
  CHECK(depth(kPath3, 1) == 2);
  CHECK_THROWS_AS(depth(kStar3, 7), std::invalid_argument);
  CHECK(height(RootedTree::single_vertex()) == 0);
  CHECK(height(kStar3) == 1);
  CHECK(height(kPath3) == 2);
}

TEST_CASE("path_from_set") {
  CHECK(path_from_set(kStar3, {1}, 3) == std::vector<Vertex>{1, 3});
  CHECK(path_from_set(kPath3, {2}, 1) == std::vector<Vertex>{2, 3, 1});
  CHECK(path_from_set(kStar3, {1, 2}, 2) == std::vector<Vertex>{2});
  // descending path: S on one branch, target on another
  CHECK(path_from_set(kStar3, {2}, 3) == std::vector<Vertex>{2, 1, 3});
  CHECK_THROWS_AS(path_from_set(kStar3, {2, 3}, 1), std::invalid_argument);
}

TEST_CASE("type_of") {
  CHECK(type_of(RootedTree::single_vertex()).counts == std::vector<long long>{1});
  CHECK(type_of(kStar3).counts == std::vector<long long>{2, 0, 1});
  CHECK(type_of(kPath3).counts == std::vector<long long>{1, 2});
}

TEST_CASE("parent depth consistency over all small trees") {
  for (int n = 1; n <= 5; ++n) {
    oracle::for_each_rooted(n, [&](const RootedTree& t) {
      const auto d = all_depths(t);
      for (Vertex v = 1; v <= n; ++v) {
        if (v == t.root) continue;
        CHECK(d[t.parent[v] - 1] == d[v - 1] - 1);
      }
      CHECK(leaves(t).empty() == (n == 1));
      const TypeVector tv = type_of(t);
      CHECK(tv.vertex_count() == n);
      CHECK(tv.child_sum() == n - 1);
    });
  }
}

TEST_CASE("reroot preserves the edge set") {
  const RootedTree r3 = reroot(kPath3, 3);
  CHECK(r3.root == 3);
  CHECK(edge_set(r3) == edge_set(kPath3));
  CHECK(validate(r3).ok);
  const RootedTree back = reroot(r3, 2);
  CHECK(back == kPath3);
}

TEST_CASE("degree tree validation enforces child counts") {
  DegreeTree t;
  t.degrees.d = {2};
  t.root = 1;
  t.parent = {0, 0, 1, 1};  // l1, l2 under 1
  CHECK(validate(t).ok);
  t.parent[3] = 0;  // detach l2
  CHECK_FALSE(validate(t).ok);
}

TEST_CASE("discovery order on tiny degree trees") {
  DegreeTree t;
  t.degrees.d = {1};
  t.root = 1;
  t.parent = {0, 0, 1};
  auto order = discovery_order(t);
  REQUIRE(order.size() == 2);
  CHECK(order[0] == VertexId::internal(1));
  CHECK(order[1] == VertexId::leaf(1));

  // m=1, d=(2): 1 then l1 then l2, matching the code (1,1)
  DegreeTree t2;
  t2.degrees.d = {2};
  t2.root = 1;
  t2.parent = {0, 0, 1, 1};
  auto order2 = discovery_order(t2);
  REQUIRE(order2.size() == 3);
  CHECK(order2[0] == VertexId::internal(1));
  CHECK(order2[1] == VertexId::leaf(1));
  CHECK(order2[2] == VertexId::leaf(2));
}

TEST_CASE("discovery order lists every vertex once, root first") {
  for (const DegreeSequence& d :
       {DegreeSequence{{2, 2}}, DegreeSequence{{3, 1, 2}}, DegreeSequence{{1, 1}}}) {
    oracle::DegreeTreeCursor cur(d);
    while (auto t = cur.next()) {
      const auto order = discovery_order_packed(*t);
      CHECK(static_cast<int>(order.size()) == t->vertex_count());
      CHECK(order.front() == t->root);
      std::vector<bool> seen(t->vertex_count() + 1, false);
      for (Vertex v : order) {
        CHECK_FALSE(seen[v]);
        seen[v] = true;
      }
    }
  }
}
