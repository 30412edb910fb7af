#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <set>
#include <string>

#include "treecode/oracle.hpp"
#include "treecode/sampling.hpp"
#include "treecode/statistics.hpp"

using namespace treecode;

namespace {

std::string key_of(const RootedTree& t) {
  std::string s = std::to_string(t.root) + ":";
  for (Vertex v = 1; v <= t.n; ++v) s += std::to_string(t.parent[v]) + ",";
  return s;
}

std::string key_of(const RootedForest& f) {
  std::string s;
  for (Vertex v = 1; v <= f.n; ++v) s += std::to_string(f.parent[v]) + ",";
  return s;
}

std::string key_of(const DegreeTree& t) {
  std::string s = std::to_string(t.root) + ":";
  for (Vertex v = 1; v <= t.vertex_count(); ++v)
    s += std::to_string(t.parent[v]) + ",";
  return s;
}

// chi-square of sampled keys against a uniform law over the enumerated family
template <typename Objects, typename Sampler>
double uniformity_pvalue(const Objects& all, Sampler draw) {
  std::map<std::string, int> index;
  for (const auto& obj : all) index.emplace(key_of(obj), index.size());
  std::vector<long long> counts(index.size(), 0);
  const long long N = 200 * static_cast<long long>(index.size());
  for (long long i = 0; i < N; ++i) ++counts[index.at(key_of(draw()))];
  return chi_square_uniform(counts).p_value;
}

}  // namespace

TEST_CASE("identical seeds reproduce identical streams") {
  RandomSource a(123, 7), b(123, 7);
  for (int i = 0; i < 1000; ++i) CHECK(a.next_u64() == b.next_u64());
  RandomSource c(123, 8);
  bool same = true;
  for (int i = 0; i < 16; ++i) same = same && (a.next_u64() == c.next_u64());
  CHECK_FALSE(same);
}

TEST_CASE("substreams are reproducible and distinct") {
  const RandomSource base(42, 0);
  RandomSource s0 = base.substream(0), s0b = base.substream(0);
  RandomSource s1 = base.substream(1);
  CHECK(s0.next_u64() == s0b.next_u64());
  CHECK(s0.next_u64() != s1.next_u64());
}

TEST_CASE("uniform_below covers its range without bias at small moduli") {
  RandomSource rng(5, 0);
  std::vector<long long> counts(7, 0);
  for (int i = 0; i < 70000; ++i) ++counts[rng.uniform_below(7)];
  CHECK(chi_square_uniform(counts).p_value > 1e-3);
  CHECK_THROWS_AS(rng.uniform_below(0), std::invalid_argument);
}

TEST_CASE("sampled trees are uniform for tiny families") {
  RandomSource rng(20250808, 1);
  CHECK(uniformity_pvalue(oracle::enumerate_rooted(3), [&] {
          return sample_uniform_rooted(3, rng);
        }) > 1e-3);
  CHECK(uniformity_pvalue(oracle::enumerate_rooted(4), [&] {
          return sample_uniform_rooted(4, rng);
        }) > 1e-3);
}

TEST_CASE("sample_uniform_rooted trivial and n=2 cases") {
  RandomSource rng(0, 0);
  CHECK(sample_uniform_rooted(1, rng) == RootedTree::single_vertex());
  CHECK(uniformity_pvalue(oracle::enumerate_rooted(2), [&] {
          return sample_uniform_rooted(2, rng);
        }) > 1e-3);
}

TEST_CASE("a single-root forest has the law of trees rooted there") {
  // S = {1}: the sixteen 4-vertex trees rooted at 1, uniformly
  std::vector<RootedTree> rooted_at_1;
  oracle::for_each_rooted(4, [&](const RootedTree& t) {
    if (t.root == 1) rooted_at_1.push_back(t);
  });
  REQUIRE(rooted_at_1.size() == 16);
  RandomSource rng(20250808, 10);
  CHECK(uniformity_pvalue(rooted_at_1, [&] {
          const RootedForest f = sample_uniform_forest(4, {1}, rng);
          return RootedTree{f.n, 1, f.parent};
        }) > 1e-3);
}

TEST_CASE("constrained sequences hit every arrangement uniformly") {
  // type {0:1, 1:2} at n=3: six sequences with two distinct labels once each
  TypeVector type;
  type.counts = {1, 2};
  RandomSource rng(20250808, 2);
  std::map<std::string, long long> counts;
  const long long N = 1200;
  for (long long i = 0; i < N; ++i) {
    const Code v = sample_constrained_sequence(type, rng);
    REQUIRE(v.size() == 2);
    counts[std::to_string(v[0]) + "," + std::to_string(v[1])] += 1;
  }
  REQUIRE(counts.size() == 6);
  std::vector<long long> flat;
  for (auto& [k, c] : counts) flat.push_back(c);
  CHECK(chi_square_uniform(flat).p_value > 1e-3);
}

TEST_CASE("constrained sequence of the star type is a constant run") {
  TypeVector star;
  star.counts = {4, 0, 0, 0, 1};  // n=5, one 4-child vertex
  RandomSource rng(9, 0);
  for (int i = 0; i < 50; ++i) {
    const Code v = sample_constrained_sequence(star, rng);
    REQUIRE(v.size() == 4);
    CHECK(std::set<Vertex>(v.begin(), v.end()).size() == 1);
  }
  TypeVector single;
  single.counts = {1};
  CHECK(sample_constrained_sequence(single, rng).empty());
  CHECK(sample_uniform_type(single, rng) == RootedTree::single_vertex());
}

TEST_CASE("typed tree sampling is uniform") {
  TypeVector star;
  star.counts = {2, 0, 1};
  std::vector<RootedTree> stars;
  oracle::for_each_rooted(3, [&](const RootedTree& t) {
    if (type_of(t) == star) stars.push_back(t);
  });
  REQUIRE(stars.size() == 3);
  RandomSource rng(20250808, 3);
  CHECK(uniformity_pvalue(stars, [&] { return sample_uniform_type(star, rng); }) >
        1e-3);

  TypeVector path;
  path.counts = {1, 2};
  std::vector<RootedTree> paths;
  oracle::for_each_rooted(3, [&](const RootedTree& t) {
    if (type_of(t) == path) paths.push_back(t);
  });
  REQUIRE(paths.size() == 6);
  CHECK(uniformity_pvalue(paths, [&] { return sample_uniform_type(path, rng); }) >
        1e-3);
}

TEST_CASE("forest sampling is uniform and respects the root set") {
  RandomSource rng(20250808, 4);
  CHECK(uniformity_pvalue(oracle::enumerate_forests(3, {1, 2}), [&] {
          return sample_uniform_forest(3, {1, 2}, rng);
        }) > 1e-3);
  CHECK(uniformity_pvalue(oracle::enumerate_forests(4, {1, 2}), [&] {
          return sample_uniform_forest(4, {1, 2}, rng);
        }) > 1e-3);
  // S = [n]: the edgeless forest, always
  const RootedForest f = sample_uniform_forest(3, {1, 2, 3}, rng);
  CHECK(edge_set(f).empty());
}

TEST_CASE("degree tree sampling is uniform") {
  RandomSource rng(20250808, 5);
  const DegreeSequence d{{2, 2}};
  CHECK(uniformity_pvalue(oracle::enumerate_degree_trees(d), [&] {
          return sample_uniform_degree(d, rng);
        }) > 1e-3);
  const DegreeSequence single{{1}};
  CHECK(sample_uniform_degree(single, rng).vertex_count() == 2);
}

TEST_CASE("covering moves validate and transform types") {
  TypeVector star;
  star.counts = {2, 0, 1};  // n=3 star
  const CoveringMove split{1, 1};
  CHECK(move_applicable(star, split));
  const TypeVector path = apply_move(star, split);
  CHECK(path.counts == std::vector<long long>{1, 2});
  CHECK_FALSE(move_applicable(path, split));  // no 2-child vertex left
  CHECK_THROWS_AS(apply_move(path, split), std::invalid_argument);
}

TEST_CASE("coupled pairs preserve per-sample monotonicity at n=3") {
  TypeVector star;
  star.counts = {2, 0, 1};
  RandomSource rng(20250808, 6);
  for (int i = 0; i < 2000; ++i) {
    const CoupledPair pair = sample_coupled_cover(star, {1, 1}, rng);
    CHECK(type_of(pair.tree_lower).counts == std::vector<long long>{2, 0, 1});
    CHECK(type_of(pair.tree_upper).counts == std::vector<long long>{1, 2});
    const int d_lo = depth(pair.tree_lower, leaves(pair.tree_lower).front());
    const int d_hi = depth(pair.tree_upper, leaves(pair.tree_upper).front());
    CHECK(d_lo == 1);  // stars have all leaves at depth 1
    CHECK(d_hi == 2);  // paths have their leaf at depth 2
  }
}

TEST_CASE("first-repeat monotonicity holds pathwise at n=50") {
  TypeVector base;
  base.counts = {25, 11, 9, 0, 5};
  REQUIRE(base.valid());
  REQUIRE(base.vertex_count() == 50);
  RandomSource rng(20250808, 7);
  for (int i = 0; i < 10000; ++i) {
    const CoupledPair pair = sample_coupled_cover(base, {2, 2}, rng);
    const int lo = first_repeat_index(pair.seq_lower).value_or(50);
    const int hi = first_repeat_index(pair.seq_upper).value_or(50);
    CHECK(std::min(lo, 50) <= std::min(hi, 50));
    CHECK(depth(pair.tree_lower, leaves(pair.tree_lower).front()) <=
          depth(pair.tree_upper, leaves(pair.tree_upper).front()));
  }
}

TEST_CASE("coupled chains compose covering moves") {
  TypeVector base;
  base.counts = {3, 0, 0, 1};  // n=4: one 3-child vertex
  RandomSource rng(20250808, 8);
  const std::vector<CoveringMove> moves = {{1, 2}, {1, 1}};
  const auto chain = sample_coupled_chain(base, moves, rng);
  REQUIRE(chain.size() == 3);
  CHECK(type_of(chain[0]).counts == std::vector<long long>{3, 0, 0, 1});
  CHECK(type_of(chain[1]).counts == std::vector<long long>{2, 1, 1});
  CHECK(type_of(chain[2]).counts == std::vector<long long>{1, 3});
  int prev = 0;
  for (const RootedTree& t : chain) {
    const int d = depth(t, leaves(t).front());
    CHECK(prev <= d);
    prev = d;
  }
}

TEST_CASE("coupled marginals are uniform on both families") {
  TypeVector small;
  small.counts = {3, 0, 2};  // n=5, 60 trees
  const CoveringMove move{1, 1};
  std::vector<RootedTree> lower_family, upper_family;
  const TypeVector target = apply_move(small, move);
  oracle::for_each_rooted(5, [&](const RootedTree& t) {
    if (type_of(t) == small) lower_family.push_back(t);
    if (type_of(t) == target) upper_family.push_back(t);
  });
  REQUIRE(lower_family.size() == 60);
  REQUIRE(upper_family.size() == 360);
  std::map<std::string, int> lower_index, upper_index;
  for (const auto& t : lower_family) lower_index.emplace(key_of(t), lower_index.size());
  for (const auto& t : upper_family) upper_index.emplace(key_of(t), upper_index.size());
  std::vector<long long> lower_counts(60, 0), upper_counts(360, 0);
  RandomSource rng(20250808, 9);
  const long long N = 200 * 360;
  for (long long i = 0; i < N; ++i) {
    const CoupledPair pair = sample_coupled_cover(small, move, rng);
    ++lower_counts[lower_index.at(key_of(pair.tree_lower))];
    ++upper_counts[upper_index.at(key_of(pair.tree_upper))];
  }
  CHECK(chi_square_uniform(lower_counts).p_value > 1e-3);
  CHECK(chi_square_uniform(upper_counts).p_value > 1e-3);
}
