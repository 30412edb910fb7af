#include "treecode/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <thread>
#include <unordered_set>

#include "treecode/bijection.hpp"
#include "treecode/sampling.hpp"

namespace treecode {

double Pmf::total() const {
  // compensated summation
  double sum = 0.0, c = 0.0;
  for (double p : probs) {
    const double y = p - c;
    const double t = sum + y;
    c = (t - sum) - y;
    sum = t;
  }
  return sum;
}

bool Pmf::normalized(double tol) const {
  if (is_exact) {
    Rational sum(0);
    for (const Rational& p : exact) sum = sum + p;
    if (sum != Rational(1)) return false;
  }
  return std::abs(total() - 1.0) <= tol;
}

std::optional<int> first_repeat_index(const std::vector<int>& seq) {
  std::unordered_set<int> seen;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    if (!seen.insert(seq[i]).second) return static_cast<int>(i) + 1;
  }
  return std::nullopt;
}

Pmf pmf_min_repeat(int n) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  Pmf pmf;
  if (n == 1) {
    pmf.values = {1};
    pmf.probs = {1.0};
    pmf.exact = {Rational(1)};
    pmf.is_exact = true;
    return pmf;
  }
  pmf.is_exact = n <= exact_pmf_limit;
  if (pmf.is_exact) {
    const Rational rn(static_cast<std::uint64_t>(n));
    Rational survival(1);  // P(min(I,n) > j), starting at j = 1
    for (int j = 2; j <= n; ++j) {
      Rational p;
      if (j < n) {
        // survival(j) = survival(j-1) * (n-j+1)/n
        const Rational next =
            survival * Rational(static_cast<std::uint64_t>(n - j + 1)) / rn;
        p = survival - next;
        survival = next;
      } else {
        p = survival;  // all remaining mass absorbed at n
      }
      pmf.values.push_back(j);
      pmf.exact.push_back(p);
      pmf.probs.push_back(p.to_double());
    }
  } else {
    double survival = 1.0;
    for (int j = 2; j <= n; ++j) {
      double p;
      if (j < n) {
        const double next = survival * static_cast<double>(n - j + 1) / n;
        p = survival - next;
        survival = next;
      } else {
        p = survival;
      }
      pmf.values.push_back(j);
      pmf.probs.push_back(p);
    }
  }
  return pmf;
}

Pmf pmf_uniform_vertex_depth(int n) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  Pmf pmf;
  pmf.is_exact = n <= exact_pmf_limit;
  if (pmf.is_exact) {
    const Rational rn(static_cast<std::uint64_t>(n));
    Rational prefix(1);  // prod_{t<=j} (n-t)/n after the j-th step
    for (int j = 0; j <= n - 1; ++j) {
      prefix = prefix * Rational(static_cast<std::uint64_t>(n - j)) / rn;
      const Rational p = prefix * Rational(static_cast<std::uint64_t>(j + 1)) / rn;
      pmf.values.push_back(j);
      pmf.exact.push_back(p);
      pmf.probs.push_back(p.to_double());
    }
  } else {
    double prefix = 1.0;
    for (int j = 0; j <= n - 1; ++j) {
      prefix *= static_cast<double>(n - j) / n;
      pmf.values.push_back(j);
      pmf.probs.push_back(prefix * (j + 1) / n);
    }
  }
  return pmf;
}

Pmf pmf_leaf_depth(int n) {
  Pmf pmf = pmf_min_repeat(n);
  for (auto& v : pmf.values) v -= 1;
  return pmf;
}

namespace {

// Runs `per_sample` N times across workers (substreams of base), merging
// integer counts in worker order; deterministic for fixed (seed, workers).
template <typename Fn>
EmpiricalDist parallel_histogram(long long N, const RandomSource& base, int workers,
                                 Fn per_sample) {
  if (workers < 1) throw std::invalid_argument("workers must be >= 1");
  std::vector<std::map<long long, long long>> partial(workers);
  auto run = [&](int w) {
    RandomSource rng = base.substream(static_cast<std::uint64_t>(w));
    const long long share = N / workers + (w < N % workers ? 1 : 0);
    auto& mine = partial[w];
    for (long long i = 0; i < share; ++i) ++mine[per_sample(rng)];
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) pool.emplace_back(run, w);
    for (auto& th : pool) th.join();
  }
  EmpiricalDist out;
  out.seed = base.seed();
  out.stream = base.stream();
  for (int w = 0; w < workers; ++w)
    for (auto [value, count] : partial[w]) out.counts[value] += count;
  out.total = N;
  return out;
}

// depth of the smallest-labeled leaf of a sampled uniform tree
long long leaf_depth_sample(int n, RandomSource& rng, Code& scratch) {
  scratch.resize(n - 1);
  for (auto& x : scratch) x = static_cast<Vertex>(rng.uniform_int(1, n));
  const RootedTree t = decode_rooted(scratch, n);
  const auto lv = leaves(t);
  return depth(t, lv.front());
}

// I-2 for an i.i.d. uniform [n] stream, via epoch-stamped visit marks
struct RepeatSimulator {
  std::vector<long long> stamp;
  long long epoch = 0;

  explicit RepeatSimulator(int n) : stamp(n + 1, -1) {}

  long long draw(int n, RandomSource& rng) {
    ++epoch;
    for (int i = 1;; ++i) {
      const int v = static_cast<int>(rng.uniform_int(1, n));
      if (stamp[v] == epoch) return i - 2;  // i is the first-repeat index
      stamp[v] = epoch;
    }
  }
};

}  // namespace

EmpiricalDist empirical_leaf_depth(int n, long long N, const RandomSource& base,
                                   int workers) {
  if (n < 2) throw std::invalid_argument("leaf depth needs n >= 2");
  return parallel_histogram(N, base, workers, [n](RandomSource& rng) {
    thread_local Code scratch;
    return leaf_depth_sample(n, rng, scratch);
  });
}

EmpiricalDist empirical_vertex_depth(int n, long long N, const RandomSource& base,
                                     DepthSimulation mode, int workers) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  if (mode == DepthSimulation::IidRepeat) {
    return parallel_histogram(N, base, workers, [n](RandomSource& rng) {
      thread_local std::unique_ptr<RepeatSimulator> sim;
      if (!sim || static_cast<int>(sim->stamp.size()) != n + 1)
        sim = std::make_unique<RepeatSimulator>(n);
      return sim->draw(n, rng);
    });
  }
  return parallel_histogram(N, base, workers, [n](RandomSource& rng) {
    thread_local Code scratch;
    scratch.resize(n - 1);
    for (auto& x : scratch) x = static_cast<Vertex>(rng.uniform_int(1, n));
    const RootedTree t = decode_rooted(scratch, n);
    const Vertex u = static_cast<Vertex>(rng.uniform_int(1, n));
    return static_cast<long long>(depth(t, u));
  });
}

double rayleigh_cdf(double x) { return x <= 0 ? 0.0 : 1.0 - std::exp(-x * x / 2.0); }

double rayleigh_ks(int n, long long N, const RandomSource& base, DepthSimulation mode,
                   int workers) {
  const EmpiricalDist depths = empirical_vertex_depth(n, N, base, mode, workers);
  return ks_distance(depths, 1.0 / std::sqrt(static_cast<double>(n)), &rayleigh_cdf);
}

EmpiricalDist height_histogram(const FamilySpec& family, long long N,
                               const RandomSource& base, int workers) {
  switch (family.kind) {
    case FamilySpec::Kind::Rooted:
      return parallel_histogram(N, base, workers, [&](RandomSource& rng) {
        return static_cast<long long>(height(sample_uniform_rooted(family.n, rng)));
      });
    case FamilySpec::Kind::Type:
      return parallel_histogram(N, base, workers, [&](RandomSource& rng) {
        return static_cast<long long>(height(sample_uniform_type(family.type, rng)));
      });
    case FamilySpec::Kind::Degree:
      return parallel_histogram(N, base, workers, [&](RandomSource& rng) {
        return static_cast<long long>(
            height(sample_uniform_degree(family.degrees, rng)));
      });
    case FamilySpec::Kind::Forest:
      return parallel_histogram(N, base, workers, [&](RandomSource& rng) {
        return static_cast<long long>(
            height(sample_uniform_forest(family.n, family.roots, rng)));
      });
  }
  throw std::invalid_argument("invalid family");
}

DominanceReport dominance_report(const EmpiricalDist& a, const EmpiricalDist& b,
                                 double alpha) {
  DominanceReport rep;
  rep.total_a = a.total;
  rep.total_b = b.total;
  if (a.total == 0 || b.total == 0)
    throw std::invalid_argument("empty distribution");
  rep.epsilon = std::sqrt(std::log(2.0 / alpha) / (2.0 * a.total)) +
                std::sqrt(std::log(2.0 / alpha) / (2.0 * b.total));
  std::vector<long long> support;
  for (auto [v, c] : a.counts) support.push_back(v);
  for (auto [v, c] : b.counts) support.push_back(v);
  std::sort(support.begin(), support.end());
  support.erase(std::unique(support.begin(), support.end()), support.end());
  double fa = 0.0, fb = 0.0, worst = 0.0;
  auto ita = a.counts.begin();
  auto itb = b.counts.begin();
  for (long long t : support) {
    while (ita != a.counts.end() && ita->first <= t)
      fa += static_cast<double>((ita++)->second) / a.total;
    while (itb != b.counts.end() && itb->first <= t)
      fb += static_cast<double>((itb++)->second) / b.total;
    worst = std::max(worst, fb - fa);
  }
  rep.max_violation = std::max(0.0, worst);
  rep.dominates_within_margin = worst <= rep.epsilon;
  return rep;
}

namespace {

// upper regularized gamma via series / continued fraction
double gamma_q_series(double a, double x) {
  double sum = 1.0 / a, term = sum;
  for (int k = 1; k < 10000; ++k) {
    term *= x / (a + k);
    sum += term;
    if (std::abs(term) < std::abs(sum) * 1e-15) break;
  }
  return 1.0 - sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

double gamma_q_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
  for (int k = 1; k < 10000; ++k) {
    const double an = -k * (k - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::abs(delta - 1.0) < 1e-15) break;
  }
  return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

}  // namespace

double gamma_q(double a, double x) {
  if (x < 0 || a <= 0) throw std::invalid_argument("gamma_q domain");
  if (x == 0) return 1.0;
  return x < a + 1.0 ? gamma_q_series(a, x) : gamma_q_cf(a, x);
}

ChiSquareResult chi_square_gof(const EmpiricalDist& observed, const Pmf& model,
                               double min_expected) {
  // out-of-support observations sink the test outright
  {
    std::unordered_set<long long> support(model.values.begin(), model.values.end());
    for (auto [v, c] : observed.counts) {
      if (c > 0 && !support.count(v)) return {1e300, 1, 0.0, 0};
    }
  }
  const double N = static_cast<double>(observed.total);
  std::vector<double> expected;
  std::vector<double> obs;
  double acc_e = 0.0, acc_o = 0.0;
  for (std::size_t i = 0; i < model.values.size(); ++i) {
    acc_e += model.probs[i] * N;
    const auto it = observed.counts.find(model.values[i]);
    acc_o += it == observed.counts.end() ? 0.0 : static_cast<double>(it->second);
    if (acc_e >= min_expected) {
      expected.push_back(acc_e);
      obs.push_back(acc_o);
      acc_e = acc_o = 0.0;
    }
  }
  if (acc_e > 0 || acc_o > 0) {
    if (expected.empty()) {
      expected.push_back(acc_e);
      obs.push_back(acc_o);
    } else {
      expected.back() += acc_e;
      obs.back() += acc_o;
    }
  }
  ChiSquareResult r;
  r.bins = static_cast<int>(expected.size());
  if (r.bins < 2) return {0.0, 0, 1.0, r.bins};
  for (int i = 0; i < r.bins; ++i) {
    const double d = obs[i] - expected[i];
    r.stat += d * d / expected[i];
  }
  r.dof = r.bins - 1;
  r.p_value = gamma_q(r.dof / 2.0, r.stat / 2.0);
  return r;
}

ChiSquareResult chi_square_uniform(const std::vector<long long>& counts,
                                   double min_expected) {
  EmpiricalDist obs;
  Pmf model;
  long long total = 0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    obs.counts[static_cast<long long>(i)] = counts[i];
    total += counts[i];
    model.values.push_back(static_cast<long long>(i));
    model.probs.push_back(1.0 / static_cast<double>(counts.size()));
  }
  obs.total = total;
  return chi_square_gof(obs, model, min_expected);
}

double ks_distance(const EmpiricalDist& samples, double scale, double (*cdf)(double)) {
  if (samples.total == 0) throw std::invalid_argument("empty sample");
  const double N = static_cast<double>(samples.total);
  double cum = 0.0, d = 0.0;
  for (auto [value, count] : samples.counts) {
    const double f = cdf(static_cast<double>(value) * scale);
    d = std::max(d, f - cum / N);
    cum += static_cast<double>(count);
    d = std::max(d, cum / N - f);
  }
  return d;
}

double two_sample_ks(const EmpiricalDist& a, const EmpiricalDist& b) {
  double fa = 0.0, fb = 0.0, d = 0.0;
  auto ita = a.counts.begin();
  auto itb = b.counts.begin();
  while (ita != a.counts.end() || itb != b.counts.end()) {
    long long t;
    if (ita == a.counts.end())
      t = itb->first;
    else if (itb == b.counts.end())
      t = ita->first;
    else
      t = std::min(ita->first, itb->first);
    while (ita != a.counts.end() && ita->first <= t)
      fa += static_cast<double>((ita++)->second) / a.total;
    while (itb != b.counts.end() && itb->first <= t)
      fb += static_cast<double>((itb++)->second) / b.total;
    d = std::max(d, std::abs(fa - fb));
  }
  return d;
}

double two_sample_ks_threshold(long long na, long long nb, double alpha) {
  const double c = std::sqrt(-std::log(alpha / 2.0) / 2.0);
  return c * std::sqrt(static_cast<double>(na + nb) /
                       (static_cast<double>(na) * static_cast<double>(nb)));
}

}  // namespace treecode
