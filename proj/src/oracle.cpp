#include "treecode/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace treecode::oracle {

namespace {

// acyclicity of a parent map where roots_mask marks the parentless vertices
bool parent_map_acyclic(int n, const std::vector<Vertex>& parent,
                        const std::vector<bool>& roots_mask) {
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
    if (state[u] == 1) return false;
    for (Vertex w : chain) state[w] = 2;
    state[u] = 2;
  }
  return true;
}

}  // namespace

RootedTreeCursor::RootedTreeCursor(int n, Limits limits, Vertex pin_root)
    : n_(n), pin_root_(pin_root) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  if (n > limits.max_n)
    throw std::invalid_argument("enumeration cap exceeded: n = " + std::to_string(n) +
                                " > " + std::to_string(limits.max_n));
  if (pin_root_ != 0 && (pin_root_ < 1 || pin_root_ > n))
    throw std::invalid_argument("pinned root out of range");
  if (pin_root_ != 0) root_ = pin_root_;
  parent_.assign(n + 1, 1);
  parent_[0] = 0;
  parent_[root_] = 0;
}

bool RootedTreeCursor::advance() {
  // counter over the n-1 non-root slots, then the root
  for (Vertex v = 1; v <= n_; ++v) {
    if (v == root_) continue;
    if (parent_[v] < n_) {
      ++parent_[v];
      return true;
    }
    parent_[v] = 1;
  }
  if (pin_root_ == 0 && root_ < n_) {
    ++root_;
    parent_.assign(n_ + 1, 1);
    parent_[0] = 0;
    parent_[root_] = 0;
    return true;
  }
  return false;
}

std::optional<RootedTree> RootedTreeCursor::next() {
  if (done_) return std::nullopt;
  while (true) {
    if (!fresh_) {
      if (!advance()) {
        done_ = true;
        return std::nullopt;
      }
    }
    fresh_ = false;
    std::vector<bool> roots_mask(n_ + 1, false);
    roots_mask[root_] = true;
    if (parent_map_acyclic(n_, parent_, roots_mask))
      return RootedTree{n_, root_, parent_};
  }
}

ForestCursor::ForestCursor(int n, std::vector<Vertex> roots, Limits limits,
                           Vertex pin_outer_parent)
    : n_(n), roots_(std::move(roots)), pin_outer_parent_(pin_outer_parent) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  if (n > limits.max_n)
    throw std::invalid_argument("enumeration cap exceeded: n = " + std::to_string(n) +
                                " > " + std::to_string(limits.max_n));
  if (roots_.empty()) throw std::invalid_argument("root set must be nonempty");
  std::sort(roots_.begin(), roots_.end());
  is_root_.assign(n + 1, false);
  for (Vertex s : roots_) {
    if (s < 1 || s > n) throw std::invalid_argument("root out of range");
    is_root_[s] = true;
  }
  parent_.assign(n + 1, 1);
  parent_[0] = 0;
  for (Vertex s : roots_) parent_[s] = 0;
  // the largest non-root vertex is the odometer's most significant digit, so
  // pinning it keeps each pinned stream a contiguous block of the sequential
  // order
  for (Vertex v = n; v >= 1; --v)
    if (!is_root_[v]) {
      outer_digit_ = v;
      break;
    }
  if (pin_outer_parent_ != 0) {
    if (outer_digit_ == 0) {
      // S = [n]: only the pin value 1 yields the single edgeless forest
      if (pin_outer_parent_ != 1) done_ = true;
    } else {
      parent_[outer_digit_] = pin_outer_parent_;
    }
  }
}

bool ForestCursor::advance() {
  for (Vertex v = 1; v <= n_; ++v) {
    if (is_root_[v]) continue;
    if (v == outer_digit_ && pin_outer_parent_ != 0) continue;
    if (parent_[v] < n_) {
      ++parent_[v];
      return true;
    }
    parent_[v] = 1;
  }
  return false;
}

std::optional<RootedForest> ForestCursor::next() {
  if (done_) return std::nullopt;
  while (true) {
    if (!fresh_) {
      if (!advance()) {
        done_ = true;
        return std::nullopt;
      }
    }
    fresh_ = false;
    if (parent_map_acyclic(n_, parent_, is_root_))
      return RootedForest{n_, roots_, parent_};
  }
}

DegreeTreeCursor::DegreeTreeCursor(DegreeSequence d, Limits limits, Vertex pin_root)
    : d_(std::move(d)), pin_root_(pin_root) {
  if (!d_.valid()) throw std::invalid_argument("invalid degree sequence");
  if (d_.vertex_count() > limits.max_degree_total)
    throw std::invalid_argument("enumeration cap exceeded: m + L = " +
                                std::to_string(d_.vertex_count()) + " > " +
                                std::to_string(limits.max_degree_total));
  if (pin_root_ != 0 && (pin_root_ < 1 || pin_root_ > d_.m()))
    throw std::invalid_argument("pinned root out of range");
  if (pin_root_ != 0) root_ = pin_root_;
  parent_.assign(d_.vertex_count() + 1, 1);
  parent_[0] = 0;
  parent_[root_] = 0;
}

bool DegreeTreeCursor::advance() {
  const int m = d_.m(), total = d_.vertex_count();
  for (Vertex v = 1; v <= total; ++v) {
    if (v == root_) continue;
    if (parent_[v] < m) {  // parents must be internal
      ++parent_[v];
      return true;
    }
    parent_[v] = 1;
  }
  if (pin_root_ == 0 && root_ < m) {
    ++root_;
    parent_.assign(total + 1, 1);
    parent_[0] = 0;
    parent_[root_] = 0;
    return true;
  }
  return false;
}

std::optional<DegreeTree> DegreeTreeCursor::next() {
  if (done_) return std::nullopt;
  const int m = d_.m(), total = d_.vertex_count();
  while (true) {
    if (!fresh_) {
      if (!advance()) {
        done_ = true;
        return std::nullopt;
      }
    }
    fresh_ = false;
    // child counts must match d exactly
    std::vector<int> cc(m + 1, 0);
    bool ok = true;
    for (Vertex v = 1; v <= total && ok; ++v) {
      if (v == root_) continue;
      ++cc[parent_[v]];
    }
    for (int i = 1; i <= m && ok; ++i) ok = cc[i] == d_.d[i - 1];
    if (!ok) continue;
    std::vector<bool> roots_mask(total + 1, false);
    roots_mask[root_] = true;
    if (!parent_map_acyclic(total, parent_, roots_mask)) continue;
    DegreeTree t;
    t.degrees = d_;
    t.root = root_;
    t.parent = parent_;
    return t;
  }
}

std::vector<RootedTree> enumerate_rooted(int n, Limits limits) {
  std::vector<RootedTree> out;
  RootedTreeCursor cur(n, limits);
  while (auto t = cur.next()) out.push_back(std::move(*t));
  return out;
}

std::vector<RootedForest> enumerate_forests(int n, const std::vector<Vertex>& roots,
                                            Limits limits) {
  std::vector<RootedForest> out;
  ForestCursor cur(n, roots, limits);
  while (auto f = cur.next()) out.push_back(std::move(*f));
  return out;
}

std::vector<DegreeTree> enumerate_degree_trees(const DegreeSequence& d, Limits limits) {
  std::vector<DegreeTree> out;
  DegreeTreeCursor cur(d, limits);
  while (auto t = cur.next()) out.push_back(std::move(*t));
  return out;
}

void for_each_rooted(int n, const std::function<void(const RootedTree&)>& fn,
                     Limits limits) {
  RootedTreeCursor cur(n, limits);
  while (auto t = cur.next()) fn(*t);
}

BigUint count_rooted(int n) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  return BigUint::pow(BigUint(static_cast<std::uint64_t>(n)), n - 1);
}

BigUint count_forests(int n, int s) {
  if (n < 1 || s < 1 || s > n) throw std::invalid_argument("need 1 <= s <= n");
  if (s == n) return BigUint(1);
  return BigUint(static_cast<std::uint64_t>(s)) *
         BigUint::pow(BigUint(static_cast<std::uint64_t>(n)), n - s - 1);
}

BigUint count_type(const TypeVector& tv) {
  if (!tv.valid()) throw std::invalid_argument("invalid type vector");
  const long long n = tv.vertex_count();
  // multinomial(n; n_0, n_1, ...) * (n-1)! / prod (c!)^{n_c}
  BigUint numer = BigUint::factorial(static_cast<unsigned>(n)) *
                  BigUint::factorial(static_cast<unsigned>(n - 1));
  BigUint denom(1);
  for (std::size_t c = 0; c < tv.counts.size(); ++c) {
    const long long nc = tv.counts[c];
    if (nc == 0) continue;
    denom = denom * BigUint::factorial(static_cast<unsigned>(nc));
    denom = denom * BigUint::pow(BigUint::factorial(static_cast<unsigned>(c)),
                                 static_cast<unsigned>(nc));
  }
  return numer / denom;
}

BigUint count_degree_trees(const DegreeSequence& d) {
  if (!d.valid()) throw std::invalid_argument("invalid degree sequence");
  BigUint numer = BigUint::factorial(static_cast<unsigned>(d.code_length()));
  BigUint denom(1);
  for (int di : d.d) denom = denom * BigUint::factorial(static_cast<unsigned>(di));
  return numer / denom;
}

namespace {

void enumerate_types_rec(int n, int max_c, long long vertices_left,
                         long long children_left, TypeVector& acc,
                         std::vector<TypeVector>& out) {
  if (max_c == 0) {
    if (children_left == 0) {
      TypeVector tv = acc;
      if (static_cast<int>(tv.counts.size()) < 1) tv.counts.resize(1, 0);
      tv.counts[0] = vertices_left;
      tv.trim();
      if (tv.valid() && tv.vertex_count() == n) out.push_back(tv);
    }
    return;
  }
  for (long long k = 0; k * max_c <= children_left && k <= vertices_left; ++k) {
    if (static_cast<int>(acc.counts.size()) <= max_c) acc.counts.resize(max_c + 1, 0);
    acc.counts[max_c] = k;
    enumerate_types_rec(n, max_c - 1, vertices_left - k, children_left - k * max_c,
                        acc, out);
    acc.counts[max_c] = 0;
  }
}

}  // namespace

std::vector<TypeVector> enumerate_types(int n) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  std::vector<TypeVector> out;
  TypeVector acc;
  enumerate_types_rec(n, n - 1, n, n - 1, acc, out);
  return out;
}

ExactPmf exact_leaf_depth_distribution(int n, Limits limits) {
  if (n < 2) throw std::invalid_argument("leaf depth law needs n >= 2");
  // accumulate sum over trees of (#leaves at depth d)/(#leaves) as integers
  // over the common denominator lcm(1..n-1)
  long long lcm = 1;
  for (long long k = 2; k <= n - 1; ++k) lcm = std::lcm(lcm, k);
  std::vector<BigUint> weight(n, BigUint(0));  // by depth 1..n-1 (index = depth)
  for_each_rooted(
      n,
      [&](const RootedTree& t) {
        const auto lv = leaves(t);
        const auto d = all_depths(t);
        const long long per_leaf = lcm / static_cast<long long>(lv.size());
        for (Vertex leaf : lv)
          weight[d[leaf - 1]] =
              weight[d[leaf - 1]] + BigUint(static_cast<std::uint64_t>(per_leaf));
      },
      limits);
  const BigUint total = BigUint(static_cast<std::uint64_t>(lcm)) * count_rooted(n);
  ExactPmf pmf;
  for (int depth = 1; depth <= n - 1; ++depth) {
    if (weight[depth].is_zero()) continue;
    pmf.values.push_back(depth);
    pmf.probs.emplace_back(weight[depth], total);
  }
  return pmf;
}

ExactPmf exact_vertex_depth_distribution(int n, Limits limits) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  std::vector<BigUint> weight(n, BigUint(0));
  for_each_rooted(
      n,
      [&](const RootedTree& t) {
        for (int dv : all_depths(t)) weight[dv] = weight[dv] + BigUint(1);
      },
      limits);
  const BigUint total = BigUint(static_cast<std::uint64_t>(n)) * count_rooted(n);
  ExactPmf pmf;
  for (int depth = 0; depth <= n - 1; ++depth) {
    if (weight[depth].is_zero()) continue;
    pmf.values.push_back(depth);
    pmf.probs.emplace_back(weight[depth], total);
  }
  return pmf;
}

}  // namespace treecode::oracle
