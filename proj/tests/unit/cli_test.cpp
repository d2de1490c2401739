#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "sgr/cli.hpp"
#include "sgr/json_io.hpp"
#include "support/testutil.hpp"

namespace {

struct RunResult {
  int code;
  std::string out;
  std::string err;
};

RunResult run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = sgr::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

// Writes content to a temp file and hands back its path; files persist for
// the process lifetime, which is fine for a test binary.
std::string temp_file(const std::string& tag, const std::string& content) {
  static int counter = 0;
  std::string path = "cli_test_" + tag + "_" + std::to_string(counter++);
  std::ofstream(path) << content;
  return path;
}

}  // namespace

TEST_CASE("dsep subcommand verdicts and exit codes") {
  const std::string chain = temp_file("chain", "vars: a b c\na -> b\nb -> c\n");
  const RunResult strong = run({"dsep", chain, "--x", "a", "--y", "c", "--z",
                                "b"});
  CHECK(strong.code == 0);
  CHECK(strong.out == "strong\n");

  const RunResult connected = run({"dsep", chain, "--x", "a", "--y", "c"});
  CHECK(connected.code == 1);
  CHECK(connected.out == "connected\n");

  const std::string collider =
      temp_file("collider", "vars: a b c\na -> b\nc -> b\n");
  const RunResult weak = run({"dsep", collider, "--x", "a", "--y", "c"});
  CHECK(weak.code == 0);
  CHECK(weak.out == "weak\n");

  const RunResult json =
      run({"dsep", chain, "--x", "a", "--y", "c", "--z", "b", "--json"});
  CHECK(json.code == 0);
  CHECK(sgr::Json::parse(json.out).at("verdict") == "strong");
}

TEST_CASE("dsep rejects malformed queries with code 2") {
  const std::string chain = temp_file("chain2", "vars: a b c\na -> b\n");
  const RunResult overlap = run({"dsep", chain, "--x", "a", "--y", "a"});
  CHECK(overlap.code == 2);
  CHECK(overlap.out.empty());
  CHECK(!overlap.err.empty());
  const RunResult unknown = run({"dsep", chain, "--x", "q", "--y", "b"});
  CHECK(unknown.code == 2);
}

TEST_CASE("closure subcommand prints statements or nothing") {
  const std::string empty = temp_file("empty", "vars: a b\n");
  const RunResult nothing = run({"closure", empty});
  CHECK(nothing.code == 0);
  CHECK(nothing.out.empty());

  const std::string seed =
      temp_file("seed", "vars: a b c\na ; b,c |\n");
  const RunResult closed = run({"closure", seed});
  CHECK(closed.code == 0);
  CHECK(closed.out ==
        "a ; b |\na ; b | c\na ; c |\na ; c | b\na ; b,c |\n");
}

TEST_CASE("pmap subcommand reports the counterexample failure") {
  const std::string counter = temp_file(
      "counter", "vars: a b c d\na ; b | c,d\nc ; d | a,b\n");
  const RunResult plain = run({"pmap", counter});
  CHECK(plain.code == 1);
  CHECK(plain.out.find("C7: fail") != std::string::npos);
  CHECK(plain.out.find("witness: alpha=a beta=b gamma=c delta=d") !=
        std::string::npos);
  CHECK(plain.out.find("verdict: not_isomorphic") != std::string::npos);
  CHECK(plain.out.find("dags_examined") == std::string::npos);

  const RunResult full = run({"pmap", counter, "--exhaustive"});
  CHECK(full.code == 1);
  CHECK(full.out.find("dags_examined: 543") != std::string::npos);

  const RunResult json = run({"pmap", counter, "--json"});
  CHECK(json.code == 1);
  const sgr::Json parsed = sgr::Json::parse(json.out);
  CHECK(parsed.at("outcome") == "not_isomorphic");
}

TEST_CASE("pmap exhaustive search can land on a witness") {
  const std::string chainish =
      temp_file("chainish", "vars: a b c\na ; c | b\n");
  const RunResult found = run({"pmap", chainish, "--exhaustive"});
  CHECK(found.code == 0);
  CHECK(found.out.find("verdict: isomorphic_with_witness") !=
        std::string::npos);
  CHECK(found.out.find("map:\n") != std::string::npos);

  const RunResult inconclusive = run({"pmap", chainish});
  CHECK(inconclusive.code == 0);
  CHECK(inconclusive.out.find("verdict: inconclusive") != std::string::npos);
}

TEST_CASE("model and stability subcommands") {
  const std::string chain =
      temp_file("chain3", "vars: a b c\na -> b\nb -> c\n");
  CHECK(run({"model", chain}).out == "a ; c | b\n");
  CHECK(run({"model", chain, "--strong"}).out == "a ; c | b\n");

  const std::string mixed =
      temp_file("mixed", "vars: a b c d\nstable: a ; b | c\nc ; d |\n");
  const RunResult st = run({"stability", mixed});
  CHECK(st.code == 0);
  CHECK(st.out ==
        "stable:\n  a ; b | c\n  a ; b | c,d\nunstable:\n  c ; d |\n");

  const RunResult dom = run({"dominants", mixed});
  CHECK(dom.out == "d_u:\n  c ; d |\nd_s:\n  a ; b | c\n");
}

TEST_CASE("classify reports sides relative to the query orientation") {
  const std::string g = temp_file(
      "classify", "vars: f x y z\nx -> z\nz -> y\nf -> z\n");
  CHECK(run({"classify", g, "--x", "x", "--y", "y", "--z", "z"}).out ==
        "f: x\n");
  // Swapping the named sides flips the reported tokens.
  CHECK(run({"classify", g, "--x", "y", "--y", "x", "--z", "z"}).out ==
        "f: y\n");
  const RunResult overlap =
      run({"classify", g, "--x", "x", "--y", "z", "--z", "z"});
  CHECK(overlap.code == 2);
}

TEST_CASE("classify refuses non-strong queries with exit 1") {
  const std::string collider =
      temp_file("collider2", "vars: a b c\na -> b\nc -> b\n");
  const RunResult weak = run({"classify", collider, "--x", "a", "--y", "c"});
  CHECK(weak.code == 1);
  CHECK(weak.out.empty());
  CHECK(weak.err.find("not strongly separated") != std::string::npos);
}

TEST_CASE("extract subcommand") {
  const std::string chain =
      temp_file("chain4", "vars: a b c\na -> b\nb -> c\n");
  CHECK(run({"extract", chain}).out == "a ; c | b\n");
  const std::string complete = temp_file(
      "complete", "vars: a b c\na -> b\na -> c\nb -> c\n");
  const RunResult none = run({"extract", complete});
  CHECK(none.code == 0);
  CHECK(none.out.empty());
  const RunResult json = run({"extract", complete, "--json"});
  CHECK(sgr::Json::parse(json.out).at("statement").is_null());
}

TEST_CASE("usage and input errors exit with code 2") {
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({}).code == 2);
  CHECK(run({"closure", "no_such_file.ind"}).code == 2);
  const std::string bad = temp_file("bad", "vars: a b\na ; a |\n");
  const RunResult parse_fail = run({"closure", bad});
  CHECK(parse_fail.code == 2);
  CHECK(parse_fail.err.find("line 2") != std::string::npos);
  const std::string cyc = temp_file("cyc", "vars: a b\na -> b\nb -> a\n");
  CHECK(run({"dsep", cyc, "--x", "a", "--y", "b"}).code == 2);
}

TEST_CASE("guard errors point at the override flag") {
  std::string big = "vars: a b c d e f g\na ; b |\n";
  const std::string path = temp_file("big", big);
  const RunResult refused = run({"closure", path});
  CHECK(refused.code == 2);
  CHECK(refused.err.find("--max-vars") != std::string::npos);
  const RunResult allowed = run({"closure", path, "--max-vars", "7"});
  CHECK(allowed.code == 0);
  CHECK(allowed.out == "a ; b |\n");
}

TEST_CASE("help is available and exits cleanly") {
  const RunResult help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("closure") != std::string::npos);
}

TEST_CASE("repeated runs are byte-identical") {
  const std::string counter = temp_file(
      "counter2", "vars: a b c d\na ; b | c,d\nc ; d | a,b\n");
  for (const bool json : {false, true}) {
    std::vector<std::string> args{"pmap", counter, "--exhaustive"};
    if (json) args.emplace_back("--json");
    const RunResult first = run(args);
    const RunResult second = run(args);
    CHECK(first.out == second.out);
    CHECK(first.code == second.code);
  }
}
