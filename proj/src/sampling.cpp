#include "treecode/sampling.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace treecode {

RootedTree sample_uniform_rooted(int n, RandomSource& rng) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  Code v(n - 1);
  for (auto& x : v) x = static_cast<Vertex>(rng.uniform_int(1, n));
  return decode_rooted(v, n);
}

Code sample_constrained_sequence(const TypeVector& type, RandomSource& rng) {
  if (!type.valid()) throw std::invalid_argument("invalid type vector");
  const int n = static_cast<int>(type.vertex_count());
  std::vector<Vertex> perm(n);
  std::iota(perm.begin(), perm.end(), 1);
  rng.shuffle(perm);
  // cut the permutation into blocks of sizes counts[c]; block c's labels
  // occur c times each
  Code multiset;
  multiset.reserve(n - 1);
  std::size_t cursor = 0;
  for (std::size_t c = 0; c < type.counts.size(); ++c) {
    for (long long k = 0; k < type.counts[c]; ++k) {
      const Vertex label = perm[cursor++];
      for (std::size_t rep = 0; rep < c; ++rep) multiset.push_back(label);
    }
  }
  rng.shuffle(multiset);
  return multiset;
}

RootedTree sample_uniform_type(const TypeVector& type, RandomSource& rng) {
  const Code v = sample_constrained_sequence(type, rng);
  return decode_rooted(v, static_cast<int>(type.vertex_count()));
}

RootedForest sample_uniform_forest(int n, const std::vector<Vertex>& roots,
                                   RandomSource& rng) {
  if (roots.empty()) throw std::invalid_argument("root set must be nonempty");
  const int s = static_cast<int>(roots.size());
  Code v;
  if (n - s >= 1) {
    v.resize(n - s);
    v[0] = roots[static_cast<std::size_t>(rng.uniform_below(roots.size()))];
    for (int i = 1; i < n - s; ++i) v[i] = static_cast<Vertex>(rng.uniform_int(1, n));
  }
  return decode_forest(v, n, roots);
}

DegreeTree sample_uniform_degree(const DegreeSequence& d, RandomSource& rng) {
  if (!d.valid()) throw std::invalid_argument("invalid degree sequence");
  Code v;
  v.reserve(d.code_length());
  for (int i = 1; i <= d.m(); ++i)
    for (int k = 0; k < d.d[i - 1]; ++k) v.push_back(i);
  rng.shuffle(v);
  return decode_degree(v, d);
}

bool move_applicable(const TypeVector& type, const CoveringMove& move) {
  if (move.a < 1 || move.b < 1) return false;
  const std::size_t split = static_cast<std::size_t>(move.a + move.b);
  if (type.counts.size() <= split || type.counts[split] < 1) return false;
  return !type.counts.empty() && type.counts[0] >= 1;
}

TypeVector apply_move(const TypeVector& type, const CoveringMove& move) {
  if (!move_applicable(type, move))
    throw std::invalid_argument("covering move not applicable to this type");
  TypeVector out = type;
  const std::size_t hi = std::max(static_cast<std::size_t>(move.a),
                                  static_cast<std::size_t>(move.b));
  if (out.counts.size() <= hi) out.counts.resize(hi + 1, 0);
  out.counts[move.a] += 1;
  out.counts[move.b] += 1;
  out.counts[0] -= 1;
  out.counts[move.a + move.b] -= 1;
  out.trim();
  return out;
}

Code apply_coupled_move(const Code& seq, const CoveringMove& move, RandomSource& rng) {
  const int n = static_cast<int>(seq.size()) + 1;
  std::vector<int> occ(n + 1, 0);
  for (Vertex x : seq) ++occ[x];
  const int split = move.a + move.b;
  std::vector<Vertex> split_labels, absent_labels;
  for (Vertex x = 1; x <= n; ++x) {
    if (occ[x] == split) split_labels.push_back(x);
    if (occ[x] == 0) absent_labels.push_back(x);
  }
  if (split_labels.empty() || absent_labels.empty())
    throw std::invalid_argument("covering move not applicable to this sequence");
  const Vertex X =
      split_labels[static_cast<std::size_t>(rng.uniform_below(split_labels.size()))];
  const Vertex Y =
      absent_labels[static_cast<std::size_t>(rng.uniform_below(absent_labels.size()))];
  std::vector<int> positions;
  for (std::size_t i = 0; i < seq.size(); ++i)
    if (seq[i] == X) positions.push_back(static_cast<int>(i));
  rng.shuffle(positions);  // first a of a uniform shuffle = uniform a-subset
  Code out = seq;
  for (int k = 0; k < move.a; ++k) out[positions[k]] = Y;
  return out;
}

CoupledPair sample_coupled_cover(const TypeVector& type, const CoveringMove& move,
                                 RandomSource& rng) {
  if (!move_applicable(type, move))
    throw std::invalid_argument("covering move not applicable to this type");
  CoupledPair pair;
  pair.seq_lower = sample_constrained_sequence(type, rng);
  pair.seq_upper = apply_coupled_move(pair.seq_lower, move, rng);
  const int n = static_cast<int>(type.vertex_count());
  pair.tree_lower = decode_rooted(pair.seq_lower, n);
  pair.tree_upper = decode_rooted(pair.seq_upper, n);
  return pair;
}

std::vector<RootedTree> sample_coupled_chain(const TypeVector& type,
                                             const std::vector<CoveringMove>& moves,
                                             RandomSource& rng) {
  const int n = static_cast<int>(type.vertex_count());
  std::vector<RootedTree> out;
  Code seq = sample_constrained_sequence(type, rng);
  out.push_back(decode_rooted(seq, n));
  TypeVector cur = type;
  for (const CoveringMove& mv : moves) {
    cur = apply_move(cur, mv);  // validates applicability
    seq = apply_coupled_move(seq, mv, rng);
    out.push_back(decode_rooted(seq, n));
  }
  return out;
}

}  // namespace treecode
