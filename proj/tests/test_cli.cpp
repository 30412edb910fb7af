#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>
#include <cstdio>
#include <string>

namespace {

struct CommandResult {
  int exit_code = -1;
  std::string out;
};

// runs the CLI through the shell, capturing stdout
CommandResult run(const std::string& args, const std::string& stdin_data = "") {
  std::string cmd;
  if (stdin_data.empty()) {
    cmd = std::string(TREECODE_CLI_PATH) + " " + args + " 2>/dev/null";
  } else {
    cmd = "printf '%s' '" + stdin_data + "' | " + TREECODE_CLI_PATH + " " + args +
          " 2>/dev/null";
  }
  CommandResult res;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf;
  while (std::size_t got = fread(buf.data(), 1, buf.size(), pipe))
    res.out.append(buf.data(), got);
  const int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

}  // namespace

TEST_CASE("count matches the closed forms") {
  CHECK(run("count --family rooted --n 3").out == "9\n");
  CHECK(run("count --family rooted --n 6").out == "7776\n");
  CHECK(run("count --family forest --n 4 --roots 1,2").out == "8\n");
  CHECK(run("count --family type --type 0:2,2:1").out == "3\n");
  CHECK(run("count --family degree --degrees 2,2").out == "6\n");
  // big integers print in full: 30^29 = 3^29 * 10^29
  CHECK(run("count --family rooted --n 30").out ==
        "6863037736488300000000000000000000000000000\n");
}

TEST_CASE("sample is deterministic for a fixed seed") {
  const auto a = run("sample --family rooted --n 6 --samples 3 --seed 11");
  const auto b = run("sample --family rooted --n 6 --samples 3 --seed 11");
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  const auto c = run("sample --family rooted --n 6 --samples 3 --seed 12");
  CHECK(a.out != c.out);

  const auto single = run("sample --family rooted --n 1 --seed 0");
  CHECK(single.out ==
        "{\"seed\":0,\"stream\":0,\"tree\":{\"n\":1,\"root\":1,\"parent\":[0]}}\n");
}

TEST_CASE("decode emits the quaternary example as dot") {
  const auto res = run(
      "decode --context degree --degrees 4,4,4,4 "
      "--seq '2 2 3 2 4 4 1 1 2 1 3 4 3 4 1 3' --format dot");
  CHECK(res.exit_code == 0);
  CHECK(res.out.find("2 [shape=doublecircle];") != std::string::npos);
  CHECK(res.out.find("discovery order: 2 l1 3 l2 4 l3 1 l4") != std::string::npos);
  CHECK(res.out.find("l13") != std::string::npos);
}

TEST_CASE("decode validation failures exit with code 2") {
  CHECK(run("decode --context rooted --n 3 --seq '4 1'").exit_code == 2);
  CHECK(run("decode --context rooted --n 3 --seq '1'").exit_code == 2);
  CHECK(run("decode --context forest --n 3 --roots 1,2 --seq '3'").exit_code == 2);
  CHECK(run("decode --context degree --seq '1 1'").exit_code == 2);
  CHECK(run("badsub").exit_code == 2);
  CHECK(run("decode --context rooted --no-such-flag 1").exit_code == 2);
}

TEST_CASE("sample | encode | decode reproduces the tree byte for byte") {
  for (const std::string& family :
       {std::string("rooted --n 7"), std::string("forest --n 6 --roots 1,3"),
        std::string("degree --degrees 3,2,1"), std::string("type --type 0:4,2:1,3:1")}) {
    const auto sampled = run("sample --family " + family + " --seed 5");
    REQUIRE(sampled.exit_code == 0);
    // the tree object is the wrapper suffix starting at "{\"n\" or {"degrees"
    const auto pos = sampled.out.find("\"tree\":");
    REQUIRE(pos != std::string::npos);
    std::string tree_json = sampled.out.substr(pos + 7);
    tree_json = tree_json.substr(0, tree_json.size() - 2);  // trailing }\n
    const std::string ctx =
        family.find("degree") != std::string::npos  ? "degree"
        : family.find("forest") != std::string::npos ? "forest"
                                                     : "rooted";
    const auto piped =
        run("encode --context " + ctx + " | " + TREECODE_CLI_PATH + " decode --context " +
                ctx + " --format json",
            tree_json);
    CHECK(piped.exit_code == 0);
    CHECK(piped.out == tree_json + "\n");
  }
}

TEST_CASE("encode emits sequence wrappers that decode reads back") {
  const auto enc = run("encode --context rooted", "{\"n\":3,\"root\":1,\"parent\":[0,1,1]}");
  CHECK(enc.out == "{\"context\":\"rooted\",\"n\":3,\"seq\":[1,1]}\n");
  const auto dec = run("decode", enc.out);
  CHECK(dec.out == "{\"n\":3,\"root\":1,\"parent\":[0,1,1]}\n");
}

TEST_CASE("enumerate matches count and is worker-order stable") {
  const auto seq = run("enumerate --family rooted --n 4");
  CHECK(seq.exit_code == 0);
  int lines = 0;
  for (char ch : seq.out) lines += ch == '\n';
  CHECK(lines == 64);
  const auto par = run("enumerate --family rooted --n 4 --workers 3");
  CHECK(par.out == seq.out);

  const auto forests = run("enumerate --family forest --n 4 --roots 1,2 --workers 2");
  const auto forests_seq = run("enumerate --family forest --n 4 --roots 1,2");
  CHECK(forests.out == forests_seq.out);
  int flines = 0;
  for (char ch : forests.out) flines += ch == '\n';
  CHECK(flines == 8);
}

TEST_CASE("enumerate refuses past the cap without the override flag") {
  CHECK(run("enumerate --family rooted --n 9").exit_code == 2);
}

TEST_CASE("grow emits one tree per step") {
  const auto res = run("grow --d 2 --steps 4 --seed 3 --emit shapes");
  CHECK(res.exit_code == 0);
  int lines = 0;
  for (char ch : res.out) lines += ch == '\n';
  CHECK(lines == 4);
  CHECK(res.out.find("{\"step\":1,\"shape\":\"(l1,l2)\"}") == 0);
  const auto rerun = run("grow --d 2 --steps 4 --seed 3 --emit shapes");
  CHECK(rerun.out == res.out);
}

TEST_CASE("stats exact csv matches the tiny law") {
  const auto res = run("stats --stat leafdepth --mode exact --n 3");
  CHECK(res.exit_code == 0);
  CHECK(res.out.find("value,count,prob\n") == 0);
  CHECK(res.out.find("1,0,0.333") != std::string::npos);
  CHECK(res.out.find("2,0,0.666") != std::string::npos);
  CHECK(run("stats --stat height --mode exact --n 3").exit_code == 2);
}

TEST_CASE("stats mc respects seed and workers determinism") {
  const std::string args =
      "stats --stat height --mode mc --family rooted --n 8 --samples 4000 "
      "--seed 21 --workers 2";
  const auto a = run(args);
  const auto b = run(args);
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("verify runs the fast suites") {
  const auto counts = run("verify counts");
  CHECK(counts.exit_code == 0);
  CHECK(counts.out.find("PASS  3 type-counts") != std::string::npos);
  CHECK(counts.out.find("PASS  4 forest-counts") != std::string::npos);
  CHECK(run("verify nosuchsuite").exit_code == 2);
}

TEST_CASE("TREECODE_SEED provides the default seed") {
  const auto env = run("sample --family rooted --n 5 --samples 2",
                       "");  // no seed flag, env below
  (void)env;
  CommandResult with_env;
  {
    std::string cmd = std::string("TREECODE_SEED=77 ") + TREECODE_CLI_PATH +
                      " sample --family rooted --n 5 --samples 2 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf;
    while (std::size_t got = fread(buf.data(), 1, buf.size(), pipe))
      with_env.out.append(buf.data(), got);
    with_env.exit_code = WEXITSTATUS(pclose(pipe));
  }
  const auto flagged = run("sample --family rooted --n 5 --samples 2 --seed 77");
  CHECK(with_env.out == flagged.out);
}
