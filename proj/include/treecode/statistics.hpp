#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "treecode/degree_tree.hpp"
#include "treecode/rational.hpp"
#include "treecode/rng.hpp"
#include "treecode/tree.hpp"

namespace treecode {

// Probability mass function on integers. Exact rational probabilities are
// kept alongside doubles while the computation stays in exact range
// (n <= exact_pmf_limit); beyond that only doubles are filled, accumulated
// with compensated summation.
struct Pmf {
  std::vector<long long> values;  // ascending
  std::vector<double> probs;
  std::vector<Rational> exact;  // same length as values iff is_exact
  bool is_exact = false;

  double total() const;
  bool normalized(double tol = 1e-12) const;
};

inline constexpr int exact_pmf_limit = 64;

struct EmpiricalDist {
  std::map<long long, long long> counts;
  long long total = 0;
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;

  void add(long long value) {
    ++counts[value];
    ++total;
  }
};

// Smallest index i >= 2 (1-based) whose entry occurred before it.
std::optional<int> first_repeat_index(const std::vector<int>& seq);

// Law of min(I, n), where I is the first-repeat index of an i.i.d. uniform
// [n] stream: the birthday survival P(min > j) = prod_{t<j} (n-t)/n for
// j < n. Support {2..n} (or {1} for n = 1). Matches the uniform-leaf depth
// law shifted by one.
Pmf pmf_min_repeat(int n);

// Law of I-2: P(I-2 = j) = [prod_{t<=j} (n-t)/n] * (j+1)/n on {0..n-1}.
// Matches the depth of a uniform vertex of a uniform rooted tree.
Pmf pmf_uniform_vertex_depth(int n);

// min-repeat law shifted down by one: the uniform-leaf depth law itself.
Pmf pmf_leaf_depth(int n);

// Depth of the smallest-labeled leaf over N sampled uniform trees (equal in
// law to a uniform leaf by exchangeability). Parallel workers draw from
// substreams of `base`; counts merge deterministically.
EmpiricalDist empirical_leaf_depth(int n, long long N, const RandomSource& base,
                                   int workers = 1);

enum class DepthSimulation {
  IidRepeat,    // simulate I-2 on an i.i.d. uniform stream
  SampledTree,  // depth of a uniform vertex in a sampled tree
};

EmpiricalDist empirical_vertex_depth(int n, long long N, const RandomSource& base,
                                     DepthSimulation mode, int workers = 1);

double rayleigh_cdf(double x);  // 1 - exp(-x^2/2) for x >= 0, else 0

// KS distance between the law of depth/sqrt(n) over N samples and the
// Rayleigh CDF.
double rayleigh_ks(int n, long long N, const RandomSource& base,
                   DepthSimulation mode = DepthSimulation::IidRepeat,
                   int workers = 1);

// Families the height histogram can sample from.
struct FamilySpec {
  enum class Kind { Rooted, Type, Degree, Forest };
  Kind kind = Kind::Rooted;
  int n = 0;
  TypeVector type;
  DegreeSequence degrees;
  std::vector<Vertex> roots;
};

EmpiricalDist height_histogram(const FamilySpec& family, long long N,
                               const RandomSource& base, int workers = 1);

// Pointwise empirical-CDF comparison of two distributions of one statistic.
// dominates_within_margin: F_a(t) >= F_b(t) - epsilon for all t, with
// epsilon the two-sided DKW margin at confidence alpha for both samples.
struct DominanceReport {
  double max_violation = 0.0;  // max over t of max(0, F_b(t) - F_a(t))
  double epsilon = 0.0;
  bool dominates_within_margin = true;
  long long total_a = 0, total_b = 0;
};

DominanceReport dominance_report(const EmpiricalDist& a, const EmpiricalDist& b,
                                 double alpha = 1e-3);

// Goodness-of-fit helpers (shared by tests and the verify suites).
struct ChiSquareResult {
  double stat = 0.0;
  int dof = 0;
  double p_value = 1.0;
  int bins = 0;  // after merging small-expectation bins
};

// Adjacent bins merged until every expected count reaches min_expected.
// Observed values outside the support force p_value = 0.
ChiSquareResult chi_square_gof(const EmpiricalDist& observed, const Pmf& model,
                               double min_expected = 5.0);
ChiSquareResult chi_square_uniform(const std::vector<long long>& counts,
                                   double min_expected = 5.0);

// One-sample KS distance of an integer-valued sample (scaled by `scale`)
// against a continuous CDF.
double ks_distance(const EmpiricalDist& samples, double scale,
                   double (*cdf)(double));

double two_sample_ks(const EmpiricalDist& a, const EmpiricalDist& b);
double two_sample_ks_threshold(long long na, long long nb, double alpha);

// Upper regularized incomplete gamma Q(a, x); chi-square survival is
// Q(dof/2, stat/2).
double gamma_q(double a, double x);

}  // namespace treecode
