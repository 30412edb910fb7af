// treecode: line-breaking codes for labeled trees and forests.
// Subcommands: encode, decode, sample, grow, count, enumerate, stats, verify.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "treecode/bijection.hpp"
#include "treecode/growth.hpp"
#include "treecode/io.hpp"
#include "treecode/oracle.hpp"
#include "treecode/sampling.hpp"
#include "treecode/statistics.hpp"
#include "treecode/verify.hpp"

namespace {

using namespace treecode;

// ---- flag parsing helpers ----

std::vector<int> parse_int_list(const std::string& s, char sep = ',') {
  std::vector<int> out;
  std::string cur;
  for (char ch : s + sep) {
    if (ch == sep) {
      if (!cur.empty()) out.push_back(std::stoi(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  return out;
}

// "0:3,2:2" -> counts[0]=3, counts[2]=2
TypeVector parse_type(const std::string& s) {
  TypeVector tv;
  for (const std::string& pair : [&] {
         std::vector<std::string> parts;
         std::string cur;
         for (char ch : s + ',') {
           if (ch == ',') {
             if (!cur.empty()) parts.push_back(cur);
             cur.clear();
           } else {
             cur += ch;
           }
         }
         return parts;
       }()) {
    const auto colon = pair.find(':');
    if (colon == std::string::npos)
      throw std::invalid_argument("--type expects c:count pairs, got " + pair);
    const int c = std::stoi(pair.substr(0, colon));
    const long long count = std::stoll(pair.substr(colon + 1));
    if (c < 0 || count < 0) throw std::invalid_argument("--type entries negative");
    if (static_cast<int>(tv.counts.size()) <= c) tv.counts.resize(c + 1, 0);
    tv.counts[c] += count;
  }
  if (!tv.valid()) throw std::invalid_argument("--type is not a valid tree type");
  return tv;
}

std::uint64_t effective_seed(const CLI::Option* seed_opt, std::uint64_t seed_flag) {
  if (seed_opt->count() > 0) return seed_flag;
  if (const char* env = std::getenv("TREECODE_SEED")) return std::stoull(env);
  return 0;
}

void print_seed_banner(std::uint64_t seed, std::uint64_t stream) {
  std::fprintf(stderr, "{\"seed\":%llu,\"stream\":%llu,\"algorithm\":\"%s\"}\n",
               static_cast<unsigned long long>(seed),
               static_cast<unsigned long long>(stream), RandomSource::algorithm());
}

SequenceContext::Kind parse_context(const std::string& s) {
  if (s == "rooted") return SequenceContext::Kind::Rooted;
  if (s == "unrooted") return SequenceContext::Kind::Unrooted;
  if (s == "marked") return SequenceContext::Kind::Marked;
  if (s == "forest") return SequenceContext::Kind::Forest;
  if (s == "degree") return SequenceContext::Kind::Degree;
  throw std::invalid_argument("unknown context: " + s);
}

// ---- encode ----

struct EncodeArgs {
  std::string context = "rooted";
  std::string format = "json";
  int variant = 1;
};

int run_encode(const EncodeArgs& args) {
  const auto kind = parse_context(args.context);
  std::string line;
  while (std::getline(std::cin, line)) {
    if (line.empty()) continue;
    CodingSequence cs;
    cs.context.kind = kind;
    cs.context.variant = args.variant;
    switch (kind) {
      case SequenceContext::Kind::Rooted: {
        const RootedTree t = io::tree_from_json(line);
        cs.context.n = t.n;
        cs.entries = encode_rooted(t);
        break;
      }
      case SequenceContext::Kind::Unrooted: {
        const RootedTree t = io::tree_from_json(line);
        cs.context.n = t.n;
        cs.entries = args.variant == 2 ? encode_unrooted_v2(t) : encode_unrooted(t);
        break;
      }
      case SequenceContext::Kind::Marked: {
        const MarkedTree mt = io::marked_from_json(line);
        cs.context.n = mt.tree.n;
        cs.context.r = static_cast<int>(mt.marks.size());
        cs.entries = encode_marked(mt);
        break;
      }
      case SequenceContext::Kind::Forest: {
        const RootedForest f = io::forest_from_json(line);
        cs.context.n = f.n;
        cs.context.roots = f.roots;
        cs.entries = encode_forest(f);
        break;
      }
      case SequenceContext::Kind::Degree: {
        const DegreeTree t = io::degree_tree_from_json(line);
        cs.context.degrees = t.degrees;
        cs.entries = encode_degree(t);
        break;
      }
    }
    std::cout << (args.format == "text" ? io::to_text(cs.entries) : io::to_json(cs))
              << "\n";
  }
  return 0;
}

// ---- decode ----

struct DecodeArgs {
  std::string context = "rooted";
  std::string format = "json";
  std::string seq;
  bool seq_given = false;
  int n = 0;
  int r = 1;
  int variant = 1;
  std::string roots;
  std::string degrees;
};

std::string decode_one(const CodingSequence& cs, const std::string& format) {
  cs.require_valid();
  switch (cs.context.kind) {
    case SequenceContext::Kind::Rooted: {
      const RootedTree t = decode_rooted(cs.entries, cs.context.n);
      if (format == "dot") return io::to_dot(t);
      if (format == "edgelist") return io::to_edgelist(t);
      return io::to_json(t) + "\n";
    }
    case SequenceContext::Kind::Unrooted: {
      const RootedTree t = cs.context.variant == 2
                               ? decode_unrooted_v2(cs.entries, cs.context.n)
                               : decode_unrooted(cs.entries, cs.context.n);
      if (format == "dot") return io::to_dot(t);
      if (format == "edgelist") return io::to_edgelist(t);
      return io::to_json(t) + "\n";
    }
    case SequenceContext::Kind::Marked: {
      const MarkedTree mt = decode_marked(cs.entries, cs.context.n, cs.context.r);
      if (format == "dot") return io::to_dot(mt.tree);
      if (format == "edgelist") return io::to_edgelist(mt.tree);
      return io::to_json(mt) + "\n";
    }
    case SequenceContext::Kind::Forest: {
      const RootedForest f = decode_forest(cs.entries, cs.context.n, cs.context.roots);
      if (format == "dot") return io::to_dot(f);
      if (format == "edgelist") return io::to_edgelist(f);
      return io::to_json(f) + "\n";
    }
    case SequenceContext::Kind::Degree: {
      const DegreeTree t = decode_degree(cs.entries, cs.context.degrees);
      if (format == "dot") return io::to_dot(t);
      if (format == "edgelist") return io::to_edgelist(t);
      return io::to_json(t) + "\n";
    }
  }
  throw std::logic_error("unreachable");
}

int run_decode(const DecodeArgs& args) {
  // context from flags; only needed for --seq and bare text lines, since JSON
  // wrappers on stdin carry their own context
  auto flags_context = [&]() {
    SequenceContext ctx;
    ctx.kind = parse_context(args.context);
    ctx.n = args.n;
    ctx.r = args.r;
    ctx.variant = args.variant;
    if (!args.roots.empty()) ctx.roots = parse_int_list(args.roots);
    if (!args.degrees.empty()) ctx.degrees.d = parse_int_list(args.degrees);
    if (ctx.kind == SequenceContext::Kind::Degree && ctx.degrees.d.empty())
      throw std::invalid_argument("--degrees required for degree context");
    if (ctx.kind == SequenceContext::Kind::Forest && ctx.roots.empty())
      throw std::invalid_argument("--roots required for forest context");
    return ctx;
  };

  if (args.seq_given) {
    std::cout << decode_one(CodingSequence{flags_context(), io::code_from_text(args.seq)},
                            args.format);
    return 0;
  }
  std::string line;
  while (std::getline(std::cin, line)) {
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    CodingSequence cs = line.find('{') != std::string::npos
                            ? io::sequence_from_json(line)
                            : CodingSequence{flags_context(), io::code_from_text(line)};
    std::cout << decode_one(cs, args.format);
  }
  return 0;
}

// ---- sample ----

struct SampleArgs {
  std::string family = "rooted";
  int n = 0;
  std::string type;
  std::string roots;
  std::string degrees;
  long long samples = 1;
  std::uint64_t seed = 0;
  std::string format = "json";
};

int run_sample(const SampleArgs& args, std::uint64_t seed) {
  print_seed_banner(seed, 0);
  RandomSource rng(seed, 0);
  auto emit = [&](const auto& obj) {
    if (args.format == "dot")
      std::cout << io::to_dot(obj);
    else if (args.format == "edgelist")
      std::cout << io::to_edgelist(obj);
    else
      std::cout << io::sample_wrapper(seed, 0, io::to_json(obj)) << "\n";
  };
  for (long long i = 0; i < args.samples; ++i) {
    if (args.family == "rooted") {
      emit(sample_uniform_rooted(args.n, rng));
    } else if (args.family == "type") {
      emit(sample_uniform_type(parse_type(args.type), rng));
    } else if (args.family == "forest") {
      emit(sample_uniform_forest(args.n, parse_int_list(args.roots), rng));
    } else if (args.family == "degree") {
      DegreeSequence d;
      d.d = parse_int_list(args.degrees);
      emit(sample_uniform_degree(d, rng));
    } else {
      throw std::invalid_argument("unknown family: " + args.family);
    }
  }
  return 0;
}

// ---- grow ----

struct GrowArgs {
  int d = 2;
  int steps = 1;
  std::string emit = "labeled";
};

int run_grow(const GrowArgs& args, std::uint64_t seed) {
  print_seed_banner(seed, 0);
  RandomSource rng(seed, 0);
  grow_dary_chain(args.d, args.steps, rng, [&](int step, const DegreeTree& t) {
    if (args.emit == "shapes")
      std::cout << "{\"step\":" << step << ",\"shape\":\"" << unlabel_internal(t).canon
                << "\"}\n";
    else
      std::cout << "{\"step\":" << step << ",\"tree\":" << io::to_json(t) << "}\n";
  });
  return 0;
}

// ---- count ----

struct CountArgs {
  std::string family = "rooted";
  int n = 0;
  std::string type;
  std::string roots;
  std::string degrees;
};

int run_count(const CountArgs& args) {
  BigUint count;
  if (args.family == "rooted") {
    count = oracle::count_rooted(args.n);
  } else if (args.family == "forest") {
    const auto roots = parse_int_list(args.roots);
    count = oracle::count_forests(args.n, static_cast<int>(roots.size()));
  } else if (args.family == "type") {
    count = oracle::count_type(parse_type(args.type));
  } else if (args.family == "degree") {
    DegreeSequence d;
    d.d = parse_int_list(args.degrees);
    count = oracle::count_degree_trees(d);
  } else {
    throw std::invalid_argument("unknown family: " + args.family);
  }
  std::cout << count.to_string() << "\n";
  return 0;
}

// ---- enumerate ----

struct EnumerateArgs {
  std::string family = "rooted";
  int n = 0;
  std::string roots;
  std::string degrees;
  int workers = 1;
  bool override_caps = false;
};

oracle::Limits enumerate_limits(const EnumerateArgs& args) {
  oracle::Limits lim;
  if (args.override_caps) {
    std::fprintf(stderr,
                 "warning: enumeration caps overridden; expect long runtimes\n");
    lim.max_n = 64;
    lim.max_degree_total = 64;
  }
  return lim;
}

int run_enumerate(const EnumerateArgs& args) {
  const oracle::Limits lim = enumerate_limits(args);
  const int workers = std::max(1, args.workers);
  if (args.family == "rooted") {
    [[maybe_unused]] oracle::RootedTreeCursor cap_probe(args.n, lim);  // cap errors before threads
    // partition the outer loop (root choice) across workers; emit in order
    std::vector<std::string> buffers(args.n + 1);
    std::vector<std::thread> pool;
    std::atomic<int> next_root{1};
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (int root = next_root.fetch_add(1); root <= args.n;
             root = next_root.fetch_add(1)) {
          oracle::RootedTreeCursor cur(args.n, lim, root);
          std::string& buf = buffers[root];
          while (auto t = cur.next()) buf += io::to_json(*t) + "\n";
        }
      });
    for (auto& th : pool) th.join();
    for (int root = 1; root <= args.n; ++root) std::cout << buffers[root];
    return 0;
  }
  if (args.family == "forest") {
    const auto roots = parse_int_list(args.roots);
    [[maybe_unused]] oracle::ForestCursor cap_probe(args.n, roots, lim);
    std::vector<std::string> buffers(args.n + 1);
    std::vector<std::thread> pool;
    std::atomic<int> next_value{1};
    const bool edgeless = static_cast<int>(roots.size()) == args.n;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (int value = next_value.fetch_add(1); value <= (edgeless ? 1 : args.n);
             value = next_value.fetch_add(1)) {
          oracle::ForestCursor cur(args.n, roots, lim, value);
          std::string& buf = buffers[value];
          while (auto f = cur.next()) buf += io::to_json(*f) + "\n";
        }
      });
    for (auto& th : pool) th.join();
    for (int value = 1; value <= args.n; ++value) std::cout << buffers[value];
    return 0;
  }
  if (args.family == "degree") {
    DegreeSequence d;
    d.d = parse_int_list(args.degrees);
    [[maybe_unused]] oracle::DegreeTreeCursor cap_probe(d, lim);
    std::vector<std::string> buffers(d.m() + 1);
    std::vector<std::thread> pool;
    std::atomic<int> next_root{1};
    for (int w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (int root = next_root.fetch_add(1); root <= d.m();
             root = next_root.fetch_add(1)) {
          oracle::DegreeTreeCursor cur(d, lim, root);
          std::string& buf = buffers[root];
          while (auto t = cur.next()) buf += io::to_json(*t) + "\n";
        }
      });
    for (auto& th : pool) th.join();
    for (int root = 1; root <= d.m(); ++root) std::cout << buffers[root];
    return 0;
  }
  throw std::invalid_argument("unknown family: " + args.family);
}

// ---- stats ----

struct StatsArgs {
  std::string stat = "leafdepth";
  std::string mode = "exact";
  std::string sim = "iid";
  std::string family = "rooted";
  int n = 0;
  std::string type;
  std::string roots;
  std::string degrees;
  std::string move;
  long long samples = 10000;
  int workers = 1;
};

int run_stats(const StatsArgs& args, std::uint64_t seed) {
  if (args.stat == "dominance") {
    print_seed_banner(seed, 0);
    const TypeVector base_type = parse_type(args.type);
    const auto mv = parse_int_list(args.move);
    if (mv.size() != 2) throw std::invalid_argument("--move expects a,b");
    const CoveringMove move{mv[0], mv[1]};
    RandomSource rng(seed, 0);
    EmpiricalDist leaf_lo, leaf_hi, height_lo, height_hi;
    leaf_lo.seed = leaf_hi.seed = height_lo.seed = height_hi.seed = seed;
    for (long long i = 0; i < args.samples; ++i) {
      const CoupledPair pair = sample_coupled_cover(base_type, move, rng);
      leaf_lo.add(depth(pair.tree_lower, leaves(pair.tree_lower).front()));
      leaf_hi.add(depth(pair.tree_upper, leaves(pair.tree_upper).front()));
      height_lo.add(height(pair.tree_lower));
      height_hi.add(height(pair.tree_upper));
    }
    std::cout << "{\"statistic\":\"leafdepth\",\"report\":"
              << io::to_json(dominance_report(leaf_lo, leaf_hi)) << "}\n";
    std::cout << "{\"statistic\":\"height\",\"report\":"
              << io::to_json(dominance_report(height_lo, height_hi)) << "}\n";
    return 0;
  }

  if (args.mode == "exact") {
    if (args.stat == "leafdepth") {
      std::cout << io::to_csv(pmf_leaf_depth(args.n));
      return 0;
    }
    if (args.stat == "vertexdepth") {
      std::cout << io::to_csv(pmf_uniform_vertex_depth(args.n));
      return 0;
    }
    throw std::invalid_argument("exact mode supports leafdepth and vertexdepth");
  }
  if (args.mode != "mc") throw std::invalid_argument("--mode must be exact or mc");

  print_seed_banner(seed, 0);
  const RandomSource base(seed, 0);
  EmpiricalDist dist;
  if (args.stat == "leafdepth") {
    dist = empirical_leaf_depth(args.n, args.samples, base, args.workers);
  } else if (args.stat == "vertexdepth") {
    dist = empirical_vertex_depth(args.n, args.samples, base,
                                  args.sim == "tree" ? DepthSimulation::SampledTree
                                                     : DepthSimulation::IidRepeat,
                                  args.workers);
  } else if (args.stat == "height") {
    FamilySpec fam;
    if (args.family == "rooted") {
      fam.kind = FamilySpec::Kind::Rooted;
      fam.n = args.n;
    } else if (args.family == "type") {
      fam.kind = FamilySpec::Kind::Type;
      fam.type = parse_type(args.type);
    } else if (args.family == "degree") {
      fam.kind = FamilySpec::Kind::Degree;
      fam.degrees.d = parse_int_list(args.degrees);
    } else if (args.family == "forest") {
      fam.kind = FamilySpec::Kind::Forest;
      fam.n = args.n;
      fam.roots = parse_int_list(args.roots);
    } else {
      throw std::invalid_argument("unknown family: " + args.family);
    }
    dist = height_histogram(fam, args.samples, base, args.workers);
  } else {
    throw std::invalid_argument("unknown stat: " + args.stat);
  }
  std::cout << io::to_csv(dist);
  return 0;
}

// ---- verify ----

int run_verify(const std::string& suite) {
  const auto results = suite == "all" ? verify::run_all() : verify::run_suite(suite);
  bool all_pass = true;
  for (const auto& r : results) {
    std::cout << verify::format_line(r) << "\n";
    all_pass = all_pass && r.pass;
  }
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"line-breaking codes for labeled trees: bijections, samplers, "
               "growth chains, exact counts"};
  app.require_subcommand(1);

  EncodeArgs enc;
  auto* enc_cmd = app.add_subcommand("encode", "tree JSON lines -> coding sequences");
  enc_cmd->add_option("--context", enc.context,
                      "rooted|unrooted|marked|forest|degree");
  enc_cmd->add_option("--format", enc.format, "json|text");
  enc_cmd->add_option("--variant", enc.variant, "unrooted variant (1 or 2)");

  DecodeArgs dec;
  auto* dec_cmd = app.add_subcommand("decode", "coding sequences -> trees");
  dec_cmd->add_option("--context", dec.context,
                      "rooted|unrooted|marked|forest|degree");
  dec_cmd->add_option("--format", dec.format, "json|edgelist|dot");
  auto* seq_opt = dec_cmd->add_option("--seq", dec.seq, "space-separated labels");
  dec_cmd->add_option("--n", dec.n, "vertex count");
  dec_cmd->add_option("--r", dec.r, "number of marks");
  dec_cmd->add_option("--variant", dec.variant, "unrooted variant (1 or 2)");
  dec_cmd->add_option("--roots", dec.roots, "comma-separated root set");
  dec_cmd->add_option("--degrees", dec.degrees, "comma-separated child counts");

  SampleArgs smp;
  std::uint64_t seed_flag = 0;
  auto* smp_cmd = app.add_subcommand("sample", "uniform samples from a family");
  smp_cmd->add_option("--family", smp.family, "rooted|type|forest|degree");
  smp_cmd->add_option("--n", smp.n, "vertex count");
  smp_cmd->add_option("--type", smp.type, "c:count pairs, e.g. 0:3,2:2");
  smp_cmd->add_option("--roots", smp.roots, "comma-separated root set");
  smp_cmd->add_option("--degrees", smp.degrees, "comma-separated child counts");
  smp_cmd->add_option("--samples", smp.samples, "number of samples");
  auto* smp_seed = smp_cmd->add_option("--seed", seed_flag, "random seed");
  smp_cmd->add_option("--format", smp.format, "json|edgelist|dot");

  GrowArgs grw;
  auto* grw_cmd = app.add_subcommand("grow", "d-ary growth chain");
  grw_cmd->add_option("--d", grw.d, "child count (>= 2)");
  grw_cmd->add_option("--steps", grw.steps, "number of internal vertices to reach");
  auto* grw_seed = grw_cmd->add_option("--seed", seed_flag, "random seed");
  grw_cmd->add_option("--emit", grw.emit, "labeled|shapes");

  CountArgs cnt;
  auto* cnt_cmd = app.add_subcommand("count", "closed-form family counts");
  cnt_cmd->add_option("--family", cnt.family, "rooted|forest|type|degree");
  cnt_cmd->add_option("--n", cnt.n, "vertex count");
  cnt_cmd->add_option("--type", cnt.type, "c:count pairs");
  cnt_cmd->add_option("--roots", cnt.roots, "comma-separated root set");
  cnt_cmd->add_option("--degrees", cnt.degrees, "comma-separated child counts");

  EnumerateArgs enu;
  auto* enu_cmd = app.add_subcommand("enumerate", "stream every family member");
  enu_cmd->add_option("--family", enu.family, "rooted|forest|degree");
  enu_cmd->add_option("--n", enu.n, "vertex count");
  enu_cmd->add_option("--roots", enu.roots, "comma-separated root set");
  enu_cmd->add_option("--degrees", enu.degrees, "comma-separated child counts");
  enu_cmd->add_option("--workers", enu.workers, "parallel workers");
  enu_cmd->add_flag("--override-caps", enu.override_caps,
                    "lift the small-instance enumeration caps");

  StatsArgs sts;
  auto* sts_cmd = app.add_subcommand("stats", "exact laws and Monte Carlo histograms");
  sts_cmd->add_option("--stat", sts.stat, "leafdepth|vertexdepth|height|dominance");
  sts_cmd->add_option("--mode", sts.mode, "exact|mc");
  sts_cmd->add_option("--sim", sts.sim, "iid|tree (vertexdepth mc simulation)");
  sts_cmd->add_option("--family", sts.family, "rooted|type|degree|forest");
  sts_cmd->add_option("--n", sts.n, "vertex count");
  sts_cmd->add_option("--type", sts.type, "c:count pairs");
  sts_cmd->add_option("--roots", sts.roots, "comma-separated root set");
  sts_cmd->add_option("--degrees", sts.degrees, "comma-separated child counts");
  sts_cmd->add_option("--move", sts.move, "covering move a,b (dominance)");
  sts_cmd->add_option("--samples", sts.samples, "number of samples");
  auto* sts_seed = sts_cmd->add_option("--seed", seed_flag, "random seed");
  sts_cmd->add_option("--workers", sts.workers, "parallel workers");

  std::string suite;
  auto* ver_cmd = app.add_subcommand("verify", "run an acceptance suite");
  ver_cmd->add_option("suite", suite,
                      "bijections|counts|identities|growth|coupling|rayleigh|all")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return e.get_exit_code() == 0 ? app.exit(e) : (app.exit(e), 2);
  }

  try {
    if (enc_cmd->parsed()) return run_encode(enc);
    if (dec_cmd->parsed()) {
      dec.seq_given = seq_opt->count() > 0;
      return run_decode(dec);
    }
    if (smp_cmd->parsed()) return run_sample(smp, effective_seed(smp_seed, seed_flag));
    if (grw_cmd->parsed()) return run_grow(grw, effective_seed(grw_seed, seed_flag));
    if (cnt_cmd->parsed()) return run_count(cnt);
    if (enu_cmd->parsed()) return run_enumerate(enu);
    if (sts_cmd->parsed()) return run_stats(sts, effective_seed(sts_seed, seed_flag));
    if (ver_cmd->parsed()) return run_verify(suite);
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return 1;
  }
  return 0;
}
