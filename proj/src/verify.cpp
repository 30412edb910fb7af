#include "treecode/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "treecode/bijection.hpp"
#include "treecode/growth.hpp"
#include "treecode/oracle.hpp"
#include "treecode/sampling.hpp"
#include "treecode/statistics.hpp"
#include "treecode/tree.hpp"

namespace treecode::verify {

namespace {

constexpr std::uint64_t kBaseSeed = 20250808;
constexpr double kPThreshold = 1e-3;

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

std::string tree_key(const RootedTree& t) {
  std::string s = std::to_string(t.root) + ":";
  for (Vertex v = 1; v <= t.n; ++v) s += std::to_string(t.parent[v]) + ",";
  return s;
}

std::string forest_key(const RootedForest& f) {
  std::string s;
  for (Vertex r : f.roots) s += std::to_string(r) + ".";
  s += ":";
  for (Vertex v = 1; v <= f.n; ++v) s += std::to_string(f.parent[v]) + ",";
  return s;
}

std::string degree_key(const DegreeTree& t) {
  std::string s = std::to_string(t.root) + ":";
  for (Vertex v = 1; v <= t.vertex_count(); ++v)
    s += std::to_string(t.parent[v]) + ",";
  return s;
}

std::string type_key(const TypeVector& tv) {
  std::string s;
  for (long long c : tv.counts) s += std::to_string(c) + ",";
  return s;
}

// odometer over [n]^len, calling fn for each sequence
template <typename Fn>
void for_each_sequence(int n, int len, Fn fn) {
  Code v(len, 1);
  while (true) {
    fn(v);
    int i = 0;
    while (i < len && v[i] == n) v[i++] = 1;
    if (i == len) break;
    ++v[i];
  }
}

// every nonempty subset of [n], ascending within each subset
std::vector<std::vector<Vertex>> all_subsets(int n) {
  std::vector<std::vector<Vertex>> out;
  for (unsigned mask = 1; mask < (1u << n); ++mask) {
    std::vector<Vertex> s;
    for (int v = 1; v <= n; ++v)
      if (mask & (1u << (v - 1))) s.push_back(v);
    out.push_back(std::move(s));
  }
  return out;
}

// ordered tuples of positive integers with the given sum
void compositions_of(int total, std::vector<int>& acc,
                     std::vector<std::vector<int>>& out) {
  if (total == 0) {
    if (!acc.empty()) out.push_back(acc);
    return;
  }
  for (int first = 1; first <= total; ++first) {
    acc.push_back(first);
    compositions_of(total - first, acc, out);
    acc.pop_back();
  }
}

std::vector<DegreeSequence> all_degree_sequences(int max_total_vertices) {
  std::vector<DegreeSequence> out;
  std::vector<std::vector<int>> comps;
  std::vector<int> acc;
  // m + L = 1 + sum(d) <= max_total_vertices
  for (int sum = 1; sum <= max_total_vertices - 1; ++sum)
    compositions_of(sum, acc, comps);
  for (auto& c : comps) out.push_back(DegreeSequence{std::move(c)});
  return out;
}

// ---- worked example fixtures: a quaternary tree and one growth step ----

DegreeTree quaternary_example() {
  DegreeTree t;
  t.degrees.d = {4, 4, 4, 4};
  const int m = 4;
  auto leaf = [&](int j) { return m + j; };
  t.root = 2;
  t.parent.assign(t.vertex_count() + 1, 0);
  t.parent[leaf(1)] = 2;
  t.parent[3] = 2;
  t.parent[4] = 2;
  t.parent[leaf(6)] = 2;
  t.parent[leaf(2)] = 3;
  t.parent[leaf(8)] = 3;
  t.parent[leaf(10)] = 3;
  t.parent[leaf(13)] = 3;
  t.parent[leaf(3)] = 4;
  t.parent[1] = 4;
  t.parent[leaf(9)] = 4;
  t.parent[leaf(11)] = 4;
  t.parent[leaf(4)] = 1;
  t.parent[leaf(5)] = 1;
  t.parent[leaf(7)] = 1;
  t.parent[leaf(12)] = 1;
  return t;
}

const Code kQuaternaryCode = {2, 2, 3, 2, 4, 4, 1, 1, 2, 1, 3, 4, 3, 4, 1, 3};

DegreeTree quaternary_grown_example() {
  DegreeTree t;
  t.degrees.d = {4, 4, 4, 4, 4};
  const int m = 5;
  auto leaf = [&](int j) { return m + j; };
  t.root = 2;
  t.parent.assign(t.vertex_count() + 1, 0);
  t.parent[leaf(1)] = 2;
  t.parent[5] = 2;
  t.parent[4] = 2;
  t.parent[leaf(6)] = 2;
  t.parent[3] = 5;
  t.parent[leaf(14)] = 5;
  t.parent[1] = 5;
  t.parent[leaf(4)] = 5;
  t.parent[leaf(2)] = 3;
  t.parent[leaf(8)] = 3;
  t.parent[leaf(10)] = 3;
  t.parent[leaf(13)] = 3;
  t.parent[leaf(3)] = 4;
  t.parent[leaf(15)] = 4;
  t.parent[leaf(9)] = 4;
  t.parent[leaf(11)] = 4;
  t.parent[leaf(16)] = 1;
  t.parent[leaf(5)] = 1;
  t.parent[leaf(7)] = 1;
  t.parent[leaf(12)] = 1;
  return t;
}

const Code kQuaternaryGrownCode = {2, 2, 5, 5, 3, 2, 4, 4, 5, 1,
                                   5, 1, 2, 1, 3, 4, 3, 4, 1, 3};

// ---- criteria ----

CriterionResult criterion_cayley_count() {
  CriterionResult r{1, "cayley-count", true, ""};
  for (int n = 1; n <= 6 && r.pass; ++n) {
    std::set<std::string> decoded;
    bool all_valid = true;
    for_each_sequence(n, n - 1, [&](const Code& v) {
      const RootedTree t = decode_rooted(v, n);
      if (!validate(t).ok) all_valid = false;
      decoded.insert(tree_key(t));
    });
    std::set<std::string> enumerated;
    oracle::for_each_rooted(
        n, [&](const RootedTree& t) { enumerated.insert(tree_key(t)); });
    const auto expected = oracle::count_rooted(n);
    const bool count_ok = BigUint(decoded.size()) == expected &&
                          BigUint(enumerated.size()) == expected;
    if (!count_ok || !all_valid || decoded != enumerated) {
      r.pass = false;
      r.detail = "mismatch at n=" + std::to_string(n);
    }
  }
  if (r.pass) r.detail = "decode([n]^(n-1)) = all n^(n-1) trees, n=1..6, exact";
  return r;
}

CriterionResult criterion_round_trips() {
  CriterionResult r{2, "round-trips", true, ""};
  std::string failures;

  // rooted, n <= 6
  for (int n = 1; n <= 6; ++n) {
    for_each_sequence(n, n - 1, [&](const Code& v) {
      if (encode_rooted(decode_rooted(v, n)) != v) failures += " rooted-ed n=" + std::to_string(n);
    });
    oracle::for_each_rooted(n, [&](const RootedTree& t) {
      if (decode_rooted(encode_rooted(t), n) != t) failures += " rooted-de n=" + std::to_string(n);
    });
  }
  // unrooted (both variants), n <= 6
  for (int n = 2; n <= 6; ++n) {
    std::set<std::string> seen1, seen2;
    for_each_sequence(n, n - 2, [&](const Code& v) {
      const RootedTree t1 = decode_unrooted(v, n);
      if (encode_unrooted(t1) != v) failures += " unrooted-ed n=" + std::to_string(n);
      seen1.insert(tree_key(t1));
      const RootedTree t2 = decode_unrooted_v2(v, n);
      if (encode_unrooted_v2(t2) != v)
        failures += " unrooted2-ed n=" + std::to_string(n);
      seen2.insert(tree_key(t2));
    });
    // every unrooted tree (canonically rooted at 1) is reached exactly once
    std::set<std::string> unrooted_all;
    oracle::for_each_rooted(n, [&](const RootedTree& t) {
      if (t.root == 1) unrooted_all.insert(tree_key(t));
    });
    if (seen1 != unrooted_all) failures += " unrooted-cover n=" + std::to_string(n);
    if (seen2 != unrooted_all) failures += " unrooted2-cover n=" + std::to_string(n);
  }
  // forests over all root sets, n <= 6
  for (int n = 1; n <= 6; ++n) {
    for (const auto& roots : all_subsets(n)) {
      const int s = static_cast<int>(roots.size());
      std::set<std::string> decoded;
      if (n - s == 0) {
        const RootedForest f = decode_forest({}, n, roots);
        if (encode_forest(f) != Code{}) failures += " forest-ed";
        decoded.insert(forest_key(f));
      } else {
        for_each_sequence(n, n - s - 1, [&](const Code& tail) {
          for (Vertex first : roots) {
            Code v{first};
            v.insert(v.end(), tail.begin(), tail.end());
            const RootedForest f = decode_forest(v, n, roots);
            if (encode_forest(f) != v)
              failures += " forest-ed n=" + std::to_string(n);
            decoded.insert(forest_key(f));
          }
        });
      }
      std::set<std::string> enumerated;
      oracle::ForestCursor cur(n, roots);
      while (auto f = cur.next()) {
        enumerated.insert(forest_key(*f));
        if (decode_forest(encode_forest(*f), n, roots) != *f)
          failures += " forest-de n=" + std::to_string(n);
      }
      if (decoded != enumerated) failures += " forest-cover n=" + std::to_string(n);
    }
  }
  // marked, n <= 4, r <= 2
  long long marked_n3_r1 = 0;
  for (int n = 1; n <= 4; ++n) {
    for (int rr = 1; rr <= 2; ++rr) {
      std::set<std::string> decoded;
      for_each_sequence(n, n + rr - 1, [&](const Code& v) {
        const MarkedTree mt = decode_marked(v, n, rr);
        if (encode_marked(mt) != v)
          failures += " marked-ed n=" + std::to_string(n) + ",r=" + std::to_string(rr);
        std::string key = tree_key(mt.tree) + "|";
        for (Vertex m : mt.marks) key += std::to_string(m) + ",";
        decoded.insert(key);
      });
      // bijectivity count: all of T_n x [n]^r
      long long expected = 1;
      for (int i = 0; i < n + rr - 1; ++i) expected *= n;
      if (static_cast<long long>(decoded.size()) != expected)
        failures += " marked-count n=" + std::to_string(n) + ",r=" + std::to_string(rr);
      if (n == 3 && rr == 1) marked_n3_r1 = static_cast<long long>(decoded.size());
      // decode(encode) = id over all (tree, marks) pairs
      oracle::for_each_rooted(n, [&](const RootedTree& t) {
        for_each_sequence(n, rr, [&](const Code& marks) {
          const MarkedTree mt{t, marks};
          if (decode_marked(encode_marked(mt), n, rr).tree != t ||
              decode_marked(encode_marked(mt), n, rr).marks != marks)
            failures += " marked-de n=" + std::to_string(n);
        });
      });
    }
  }
  if (marked_n3_r1 != 27) failures += " marked 27(=9*3) count";
  // degree trees with m + L <= 7
  for (const DegreeSequence& d : all_degree_sequences(7)) {
    std::set<std::string> decoded;
    Code v;
    for (int i = 1; i <= d.m(); ++i)
      for (int k = 0; k < d.d[i - 1]; ++k) v.push_back(i);
    std::sort(v.begin(), v.end());
    do {
      const DegreeTree t = decode_degree(v, d);
      if (encode_degree(t) != v) failures += " degree-ed";
      decoded.insert(degree_key(t));
    } while (std::next_permutation(v.begin(), v.end()));
    const BigUint expected = oracle::count_degree_trees(d);
    if (BigUint(decoded.size()) != expected) failures += " degree-count";
    std::set<std::string> enumerated;
    oracle::DegreeTreeCursor cur(d);
    while (auto t = cur.next()) {
      enumerated.insert(degree_key(*t));
      if (decode_degree(encode_degree(*t), d) != *t) failures += " degree-de";
    }
    if (decoded != enumerated) failures += " degree-cover";
  }

  r.pass = failures.empty();
  r.detail = r.pass
                 ? "rooted/unrooted/forest/marked/degree exhaustive, incl 27=9*3"
                 : failures;
  return r;
}

CriterionResult criterion_type_counts() {
  CriterionResult r{3, "type-counts", true, ""};
  for (int n = 1; n <= 7 && r.pass; ++n) {
    std::map<std::string, long long> histogram;
    oracle::for_each_rooted(
        n, [&](const RootedTree& t) { ++histogram[type_key(type_of(t))]; });
    BigUint total(0);
    for (const TypeVector& tv : oracle::enumerate_types(n)) {
      const BigUint formula = oracle::count_type(tv);
      const auto it = histogram.find(type_key(tv));
      const long long observed = it == histogram.end() ? 0 : it->second;
      if (BigUint(static_cast<std::uint64_t>(observed)) != formula) {
        r.pass = false;
        r.detail = "type formula mismatch at n=" + std::to_string(n);
        break;
      }
      total = total + formula;
      histogram.erase(type_key(tv));
    }
    if (r.pass && !histogram.empty()) {
      r.pass = false;
      r.detail = "tree of unlisted type at n=" + std::to_string(n);
    }
    if (r.pass && total != oracle::count_rooted(n)) {
      r.pass = false;
      r.detail = "type counts do not sum to n^(n-1) at n=" + std::to_string(n);
    }
  }
  if (r.pass) r.detail = "count_type matches enumeration for all types, n=1..7";
  return r;
}

CriterionResult criterion_forest_counts() {
  CriterionResult r{4, "forest-counts", true, ""};
  for (int n = 1; n <= 6 && r.pass; ++n) {
    for (const auto& roots : all_subsets(n)) {
      long long streamed = 0;
      oracle::ForestCursor cur(n, roots);
      while (cur.next()) ++streamed;
      if (BigUint(static_cast<std::uint64_t>(streamed)) !=
          oracle::count_forests(n, static_cast<int>(roots.size()))) {
        r.pass = false;
        r.detail = "forest count mismatch at n=" + std::to_string(n) +
                   ", s=" + std::to_string(roots.size());
        break;
      }
    }
  }
  if (r.pass) r.detail = "stream length = s*n^(n-s-1) for all S, n=1..6";
  return r;
}

// shared by criterion 5 and the determinism digest
std::string leaf_depth_mc_digest(int workers) {
  const int n = 100;
  const long long N = 100000;
  const RandomSource base(kBaseSeed + 5, 1);
  const EmpiricalDist emp = empirical_leaf_depth(n, N, base, workers);
  const auto gof = chi_square_gof(emp, pmf_leaf_depth(n));
  std::string digest = "chi2=" + fmt(gof.stat) + " p=" + fmt(gof.p_value);
  for (auto [v, c] : emp.counts)
    digest += " " + std::to_string(v) + ":" + std::to_string(c);
  return digest;
}

CriterionResult criterion_leaf_depth_law() {
  CriterionResult r{5, "leaf-depth-law", true, ""};
  for (int n = 2; n <= 6 && r.pass; ++n) {
    const auto exact = oracle::exact_leaf_depth_distribution(n);
    const Pmf model = pmf_min_repeat(n);
    bool ok = model.is_exact && exact.values.size() == model.values.size();
    for (std::size_t i = 0; ok && i < exact.values.size(); ++i) {
      ok = exact.values[i] + 1 == model.values[i] && exact.probs[i] == model.exact[i];
    }
    if (!ok) {
      r.pass = false;
      r.detail = "exact identity fails at n=" + std::to_string(n);
    }
  }
  if (r.pass) {
    const int n = 100;
    const long long N = 100000;
    const RandomSource base(kBaseSeed + 5, 1);
    const EmpiricalDist emp = empirical_leaf_depth(n, N, base, 1);
    const auto gof = chi_square_gof(emp, pmf_leaf_depth(n));
    if (gof.p_value <= kPThreshold) {
      r.pass = false;
      r.detail = "mc chi-square p=" + fmt(gof.p_value);
    } else {
      r.detail = "exact n=2..6; mc n=100 N=1e5 chi2 p=" + fmt(gof.p_value);
    }
  }
  return r;
}

CriterionResult criterion_vertex_depth_law() {
  CriterionResult r{6, "vertex-depth-law", true, ""};
  for (int n = 2; n <= 6 && r.pass; ++n) {
    const auto exact = oracle::exact_vertex_depth_distribution(n);
    const Pmf model = pmf_uniform_vertex_depth(n);
    bool ok = model.is_exact && exact.values.size() == model.values.size();
    for (std::size_t i = 0; ok && i < exact.values.size(); ++i)
      ok = exact.values[i] == model.values[i] && exact.probs[i] == model.exact[i];
    if (!ok) {
      r.pass = false;
      r.detail = "exact identity fails at n=" + std::to_string(n);
    }
  }
  if (r.pass) r.detail = "oracle vertex-depth law = I-2 law, exact, n=2..6";
  return r;
}

std::string rayleigh_digest(int workers) {
  const RandomSource base(kBaseSeed + 7, 1);
  const double ks = rayleigh_ks(10000, 100000, base, DepthSimulation::IidRepeat,
                                workers);
  return "ks=" + fmt(ks);
}

CriterionResult criterion_rayleigh_limit() {
  CriterionResult r{7, "rayleigh-limit", true, ""};
  const RandomSource base(kBaseSeed + 7, 1);
  const double ks =
      rayleigh_ks(10000, 100000, base, DepthSimulation::IidRepeat, 1);
  r.pass = ks < 0.02;
  r.detail = "n=1e4 N=1e5 ks=" + fmt(ks) + " threshold=0.02";
  return r;
}

std::string coupling_digest() {
  // base type at n=50: 25 leaves, 11 one-child, 9 two-child, 5 four-child
  TypeVector base_type;
  base_type.counts = {25, 11, 9, 0, 5};
  const std::vector<CoveringMove> moves = {{1, 3}, {2, 2}, {1, 1}};
  const long long N = 100000;
  std::string digest;
  long long violations = 0;
  for (std::size_t mi = 0; mi < moves.size(); ++mi) {
    RandomSource rng(kBaseSeed + 8, 10 + mi);
    long long repeat_sum = 0, depth_sum = 0;
    for (long long i = 0; i < N; ++i) {
      const CoupledPair pair = sample_coupled_cover(base_type, moves[mi], rng);
      const int n = pair.tree_lower.n;
      const int rep_lo = std::min(first_repeat_index(pair.seq_lower).value_or(n), n);
      const int rep_hi = std::min(first_repeat_index(pair.seq_upper).value_or(n), n);
      const int d_lo = depth(pair.tree_lower, leaves(pair.tree_lower).front());
      const int d_hi = depth(pair.tree_upper, leaves(pair.tree_upper).front());
      if (rep_lo > rep_hi || d_lo > d_hi) ++violations;
      repeat_sum += rep_lo + rep_hi;
      depth_sum += d_lo + d_hi;
    }
    digest += " move" + std::to_string(mi) + ":rs=" + std::to_string(repeat_sum) +
              ",ds=" + std::to_string(depth_sum);
  }
  digest = "violations=" + std::to_string(violations) + digest;
  return digest;
}

CriterionResult criterion_coupling() {
  CriterionResult r{8, "coupling-monotonicity", true, ""};
  const std::string digest = coupling_digest();
  if (digest.rfind("violations=0", 0) != 0) {
    r.pass = false;
    r.detail = digest.substr(0, digest.find(' '));
    return r;
  }
  // marginal uniformity at n=5 against full enumeration
  TypeVector small;
  small.counts = {3, 0, 2};  // 60 trees
  const CoveringMove move{1, 1};
  const TypeVector target = apply_move(small, move);  // 360 trees
  std::map<std::string, int> lower_index, upper_index;
  oracle::for_each_rooted(5, [&](const RootedTree& t) {
    const TypeVector tv = type_of(t);
    if (tv == small)
      lower_index.emplace(tree_key(t), static_cast<int>(lower_index.size()));
    if (tv == target)
      upper_index.emplace(tree_key(t), static_cast<int>(upper_index.size()));
  });
  std::vector<long long> lower_counts(lower_index.size(), 0);
  std::vector<long long> upper_counts(upper_index.size(), 0);
  const long long N = 200 * static_cast<long long>(upper_index.size());
  RandomSource rng(kBaseSeed + 8, 99);
  for (long long i = 0; i < N; ++i) {
    const CoupledPair pair = sample_coupled_cover(small, move, rng);
    ++lower_counts[lower_index.at(tree_key(pair.tree_lower))];
    ++upper_counts[upper_index.at(tree_key(pair.tree_upper))];
  }
  const auto gof_lower = chi_square_uniform(lower_counts);
  const auto gof_upper = chi_square_uniform(upper_counts);
  if (gof_lower.p_value <= kPThreshold || gof_upper.p_value <= kPThreshold) {
    r.pass = false;
    r.detail = "marginal chi-square p_lower=" + fmt(gof_lower.p_value) +
               " p_upper=" + fmt(gof_upper.p_value);
    return r;
  }
  r.detail = "0 violations in 3x1e5 coupled samples at n=50; marginals p=" +
             fmt(gof_lower.p_value) + "/" + fmt(gof_upper.p_value);
  return r;
}

struct ChainCase {
  int d;
  int m_target;
};

// chain to m_target, checking the sequence-route agreement at every step
std::string growth_chain_digest(const ChainCase& cc, std::uint64_t stream,
                                bool& commutation_ok,
                                std::map<std::string, long long>& shape_counts,
                                long long runs) {
  RandomSource rng(kBaseSeed + 9, stream);
  long long checks = 0;
  for (long long run = 0; run < runs; ++run) {
    DegreeTree t = unique_single_internal_tree(cc.d);
    for (int m = 1; m < cc.m_target; ++m) {
      const auto indices = uniform_index_multiset(cc.d, t.vertex_count(), rng);
      const DegreeTree grown = grow_step(t, multiset_from_indices(t, indices));
      DegreeSequence ext = t.degrees;
      ext.d.push_back(cc.d);
      const DegreeTree via_code =
          decode_modified(insert_repeats(encode_degree(t), t.m() + 1, indices), ext);
      if (!(grown == via_code)) commutation_ok = false;
      ++checks;
      t = grown;
    }
    ++shape_counts[unlabel_internal(t).canon];
  }
  return "checks=" + std::to_string(checks);
}

std::string growth_digest() {
  std::string digest;
  const ChainCase cases[] = {{2, 2}, {2, 3}, {3, 2}};
  for (std::size_t i = 0; i < 3; ++i) {
    bool commutation_ok = true;
    std::map<std::string, long long> shapes;
    // shape count from the oracle fixes N = 200 * #shapes
    std::set<std::string> shape_set;
    DegreeSequence d;
    d.d.assign(cases[i].m_target, cases[i].d);
    oracle::DegreeTreeCursor cur(d);
    while (auto t = cur.next()) shape_set.insert(unlabel_internal(*t).canon);
    const long long runs = 200 * static_cast<long long>(shape_set.size());
    growth_chain_digest(cases[i], 20 + i, commutation_ok, shapes, runs);
    long long total = 0;
    for (auto [s, c] : shapes) total += c;
    digest += " case" + std::to_string(i) + ":shapes=" +
              std::to_string(shapes.size()) + ",total=" + std::to_string(total) +
              ",comm=" + (commutation_ok ? "1" : "0");
    for (auto [s, c] : shapes) digest += "|" + std::to_string(c);
  }
  return digest;
}

CriterionResult criterion_growth_uniformity() {
  CriterionResult r{9, "growth-uniformity", true, ""};
  const ChainCase cases[] = {{2, 2}, {2, 3}, {3, 2}};
  std::string detail;
  for (std::size_t i = 0; i < 3 && r.pass; ++i) {
    DegreeSequence d;
    d.d.assign(cases[i].m_target, cases[i].d);
    std::set<std::string> shape_set;
    std::map<std::string, long long> labeled_per_shape;
    oracle::DegreeTreeCursor cur(d);
    long long labeled = 0;
    while (auto t = cur.next()) {
      shape_set.insert(unlabel_internal(*t).canon);
      ++labeled_per_shape[unlabel_internal(*t).canon];
      ++labeled;
    }
    // shapes = labeled / m! (internal relabeling acts freely)
    long long mfact = 1;
    for (int k = 2; k <= cases[i].m_target; ++k) mfact *= k;
    if (static_cast<long long>(shape_set.size()) * mfact != labeled) {
      r.pass = false;
      r.detail = "shape orbit count mismatch";
      break;
    }
    bool commutation_ok = true;
    std::map<std::string, long long> shapes;
    const long long runs = 200 * static_cast<long long>(shape_set.size());
    growth_chain_digest(cases[i], 20 + i, commutation_ok, shapes, runs);
    if (!commutation_ok) {
      r.pass = false;
      r.detail = "grow_step disagrees with the sequence route";
      break;
    }
    // chain must only produce known shapes
    std::vector<long long> counts;
    for (const std::string& s : shape_set) {
      const auto it = shapes.find(s);
      counts.push_back(it == shapes.end() ? 0 : it->second);
      if (it != shapes.end()) shapes.erase(it);
    }
    if (!shapes.empty()) {
      r.pass = false;
      r.detail = "chain produced an unknown shape";
      break;
    }
    const auto gof = chi_square_uniform(counts);
    if (gof.p_value <= kPThreshold) {
      r.pass = false;
      r.detail = "d=" + std::to_string(cases[i].d) +
                 " m=" + std::to_string(cases[i].m_target) +
                 " chi-square p=" + fmt(gof.p_value);
      break;
    }
    detail += (i ? " " : "") + std::string("d") + std::to_string(cases[i].d) + "m" +
              std::to_string(cases[i].m_target) + ":p=" + fmt(gof.p_value);
  }
  if (r.pass) r.detail = detail + "; step route agreement exact";
  return r;
}

std::string added_vertex_digest(std::map<std::string, std::vector<long long>>& out) {
  RandomSource rng(kBaseSeed + 10, 30);
  const long long runs = 100000;
  for (long long run = 0; run < runs; ++run) {
    DegreeTree t = unique_single_internal_tree(2);
    for (int m = 1; m < 3; ++m) {
      const auto indices = uniform_index_multiset(2, t.vertex_count(), rng);
      t = grow_step(t, multiset_from_indices(t, indices));
    }
    const auto [shape, pos] = shape_with_marked_internal(t, 3);
    auto& slots = out[shape.canon];
    if (slots.empty()) slots.assign(3, 0);
    ++slots[pos];
  }
  std::string digest;
  for (auto& [canon, slots] : out) {
    digest += "|";
    for (long long c : slots) digest += std::to_string(c) + ",";
  }
  return digest;
}

CriterionResult criterion_added_vertex_law() {
  CriterionResult r{10, "added-vertex-law", true, ""};
  std::map<std::string, std::vector<long long>> per_shape;
  added_vertex_digest(per_shape);
  if (per_shape.size() != 15) {
    r.pass = false;
    r.detail = "expected 15 shapes of the 3-internal binary tree, saw " +
               std::to_string(per_shape.size());
    return r;
  }
  double min_p = 1.0;
  for (auto& [canon, slots] : per_shape) {
    const auto gof = chi_square_uniform(slots);
    min_p = std::min(min_p, gof.p_value);
    if (gof.p_value <= kPThreshold) {
      r.pass = false;
      r.detail = "added vertex not uniform on a shape, p=" + fmt(gof.p_value);
      return r;
    }
  }
  r.detail = "15 shapes, new internal uniform over 3 positions, min p=" + fmt(min_p);
  return r;
}

CriterionResult criterion_modified_round_trip() {
  CriterionResult r{11, "modified-roundtrip", true, ""};
  for (const DegreeSequence& d : all_degree_sequences(7)) {
    Code v;
    for (int i = 1; i <= d.m(); ++i)
      for (int k = 0; k < d.d[i - 1]; ++k) v.push_back(i);
    std::sort(v.begin(), v.end());
    std::set<std::string> decoded;
    do {
      const DegreeTree t = decode_modified(v, d);
      if (!validate(t).ok || encode_modified(t) != v) {
        r.pass = false;
        r.detail = "round trip fails for a sequence";
        return r;
      }
      decoded.insert(degree_key(t));
    } while (std::next_permutation(v.begin(), v.end()));
    if (BigUint(decoded.size()) != oracle::count_degree_trees(d)) {
      r.pass = false;
      r.detail = "modified decode is not onto";
      return r;
    }
  }
  // the worked quaternary growth example, exact both ways: decode the
  // 16-entry code, grow by the multiset at discovery indices {3,3,7,8}, and
  // match the 20-entry code and its tree in both directions
  const DegreeTree before = quaternary_example();
  const DegreeTree expected = quaternary_grown_example();
  DegreeSequence d4, d5;
  d4.d = {4, 4, 4, 4};
  d5.d = {4, 4, 4, 4, 4};
  if (!(decode_degree(kQuaternaryCode, d4) == before) ||
      encode_degree(before) != kQuaternaryCode ||
      !(grow_step(before, multiset_from_indices(before, {3, 3, 7, 8})) == expected) ||
      !(decode_modified(kQuaternaryGrownCode, d5) == expected) ||
      encode_modified(expected) != kQuaternaryGrownCode) {
    r.pass = false;
    r.detail = "20-entry worked example mismatch";
    return r;
  }
  r.detail = "all S_d' with m+1+L' <= 7, plus the 20-entry example, exact";
  return r;
}

CriterionResult criterion_determinism() {
  CriterionResult r{12, "determinism", true, ""};
  std::string mismatches;
  if (leaf_depth_mc_digest(1) != leaf_depth_mc_digest(1)) mismatches += " leafdepth-w1";
  if (leaf_depth_mc_digest(2) != leaf_depth_mc_digest(2)) mismatches += " leafdepth-w2";
  if (rayleigh_digest(1) != rayleigh_digest(1)) mismatches += " rayleigh-w1";
  if (rayleigh_digest(2) != rayleigh_digest(2)) mismatches += " rayleigh-w2";
  if (coupling_digest() != coupling_digest()) mismatches += " coupling";
  if (growth_digest() != growth_digest()) mismatches += " growth";
  {
    std::map<std::string, std::vector<long long>> a, b;
    if (added_vertex_digest(a) != added_vertex_digest(b)) mismatches += " added-vertex";
  }
  r.pass = mismatches.empty();
  r.detail = r.pass ? "all randomized runs byte-identical on rerun (workers 1 and 2)"
                    : mismatches;
  return r;
}

}  // namespace

std::string format_line(const CriterionResult& r) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%2d", r.id);
  return std::string(r.pass ? "PASS" : "FAIL") + " " + buf + " " + r.name + "  " +
         r.detail;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"bijections", "counts", "identities",
                                                 "growth", "coupling", "rayleigh"};
  return names;
}

std::vector<CriterionResult> run_suite(const std::string& suite) {
  if (suite == "bijections") return {criterion_cayley_count(), criterion_round_trips()};
  if (suite == "counts") return {criterion_type_counts(), criterion_forest_counts()};
  if (suite == "identities")
    return {criterion_leaf_depth_law(), criterion_vertex_depth_law()};
  if (suite == "growth")
    return {criterion_growth_uniformity(), criterion_added_vertex_law(),
            criterion_modified_round_trip()};
  if (suite == "coupling") return {criterion_coupling()};
  if (suite == "rayleigh") return {criterion_rayleigh_limit()};
  throw std::invalid_argument("unknown suite: " + suite);
}

std::vector<CriterionResult> run_all() {
  return {criterion_cayley_count(),     criterion_round_trips(),
          criterion_type_counts(),      criterion_forest_counts(),
          criterion_leaf_depth_law(),   criterion_vertex_depth_law(),
          criterion_rayleigh_limit(),   criterion_coupling(),
          criterion_growth_uniformity(), criterion_added_vertex_law(),
          criterion_modified_round_trip(), criterion_determinism()};
}

}  // namespace treecode::verify
