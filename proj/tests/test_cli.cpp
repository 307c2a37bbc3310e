#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include <catch2/catch_amalgamated.hpp>

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

// Runs the installed binary with stderr discarded and captures stdout.
RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(RIGHTJUMP_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct TempFile {
  std::string path;
  explicit TempFile(const std::string& stem)
      : path("/tmp/rightjump_cli_" + stem + "_" + std::to_string(getpid())) {}
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

TEST_CASE("cli: distances and witnesses") {
  CHECK(run_cli("distance \"1 2 3 4 5 6 7\" \"1 2 4 5 6 3 7\"").out == "1\n");
  CHECK(run_cli("distance \"1 2 3 4 5 6 7\" \"7 1 2 3 4 5 6\"").out == "6\n");
  CHECK(run_cli("distance \"2 1 3\" \"2 1 3\"").out == "0\n");
  CHECK(run_cli("sort-distance \"3 1 2\"").out == "1\n");
  CHECK(run_cli("sort-distance \"1 2 3 4\"").out == "0\n");

  CHECK(run_cli("jumps \"2 1 3\"").out == "1 2\n");
  const RunResult js = run_cli("jumps \"2 1 3\" --format json");
  CHECK(js.code == 0);
  CHECK(js.out.find("\"sigma\":\"2 1 3\"") != std::string::npos);
  CHECK(js.out.find("\"from\":1") != std::string::npos);
  CHECK(js.out.find("\"to\":2") != std::string::npos);

  CHECK(run_cli("jumps \"1 2 3\"").out.empty());
}

TEST_CASE("cli: basis enumeration matches the golden lists") {
  CHECK(run_cli("basis list --p 0").out == slurp(std::string(GOLDEN_DIR) + "/basis_p0.txt"));
  CHECK(run_cli("basis list --p 1").out == slurp(std::string(GOLDEN_DIR) + "/basis_p1.txt"));
  CHECK(run_cli("basis list --p 2").out == slurp(std::string(GOLDEN_DIR) + "/basis_p2.txt"));

  const RunResult by_n = run_cli("basis list --n 4");
  CHECK(by_n.code == 0);
  CHECK(by_n.out == "2 1 4 3\n4 1 2 3\n4 1 3 2\n4 2 1 3\n4 2 3 1\n4 3 1 2\n4 3 2 1\n");

  const RunResult pjson = run_cli("basis list --p 0 --format json");
  CHECK(pjson.code == 0);
  CHECK(pjson.out == "{\"elements\":[\"2 1\"],\"p\":0}\n");

  CHECK(run_cli("basis list").code == 2);           // selector required
  CHECK(run_cli("basis list --p 1 --n 4").code == 2);  // and exclusive
}

TEST_CASE("cli: basis membership checks") {
  CHECK(run_cli("basis check \"2 1\"").out == "member p=0\n");
  CHECK(run_cli("basis check \"4 1 2 3\"").out == "member p=2\n");
  CHECK(run_cli("basis check \"1 2\"").out == "non-member failed=ii\n");
  CHECK(run_cli("basis check \"1 3 2\"").out == "non-member failed=iii\n");
  CHECK(run_cli("basis check \"2 1\" --format json").out == "{\"is_member\":true,\"p\":0}\n");
  CHECK(run_cli("basis check \"1 2\" --format json").out ==
        "{\"failed_condition\":\"ii\",\"is_member\":false}\n");
}

TEST_CASE("cli: exact counts") {
  CHECK(run_cli("count d --n 7 --p 3").out == "735\n");
  CHECK(run_cli("count d --n 12 --p 11").out == "39916800\n");
  CHECK(run_cli("count b --n 10").out == "744425\n");
  CHECK(run_cli("count b --n 11 --p 5").out == "50\n");
  CHECK(run_cli("count b --n 11 --p 9").out == "3628800\n");
}

TEST_CASE("cli: triangle build and show round-trip") {
  TempFile cache("triangle");
  const RunResult build = run_cli("triangle build --max-n 12 --out " + cache.path);
  REQUIRE(build.code == 0);

  const RunResult show = run_cli("triangle show --n 12 --cache " + cache.path);
  REQUIRE(show.code == 0);
  CHECK(show.out.find("12\t5\t1\n") != std::string::npos);
  CHECK(show.out.find("12\t8\t7272216\n") != std::string::npos);
  CHECK(show.out.find("12\t10\t39916800\n") != std::string::npos);

  const RunResult shown = run_cli("triangle show --n 12 --cache " + cache.path + " --format json");
  CHECK(shown.out.find("\"row_sum\":\"91774375\"") != std::string::npos);
  CHECK(shown.out.find("\"7\":\"244708\"") != std::string::npos);

  // a cache that is too small for the request is refused
  CHECK(run_cli("triangle show --n 13 --cache " + cache.path).code == 1);
}

TEST_CASE("cli: congruence reports") {
  const RunResult j = run_cli("congruence --m 15 --emit-cycle");
  REQUIRE(j.code == 0);
  CHECK(j.out.find("\"m\":15") != std::string::npos);
  CHECK(j.out.find("\"period\":12") != std::string::npos);
  CHECK(j.out.find("\"preperiod\":9") != std::string::npos);
  CHECK(j.out.find("\"verified\":true") != std::string::npos);
  CHECK(j.out.find("\"cycle\":[10,5,10,10,0,10,5,10,5,5,0,5]") != std::string::npos);

  CHECK(run_cli("congruence --m 2 --format text").out ==
        "m 2\npreperiod 1\nperiod 2\nverified true\n");

  // a custom recurrence through --rec: the factorial-style u_n = n u_{n-1}
  TempFile rec("rec");
  {
    std::ofstream f(rec.path);
    f << R"({"order":1,"polys":[[1],[0,1]],"init":[1],"offset":1})";
  }
  const RunResult custom = run_cli("congruence --m 10 --rec " + rec.path + " --emit-cycle");
  REQUIRE(custom.code == 0);
  CHECK(custom.out.find("\"period\":1") != std::string::npos);
  CHECK(custom.out.find("\"cycle\":[0]") != std::string::npos);

  CHECK(run_cli("congruence --m 0").code == 1);
}

TEST_CASE("cli: asymptotics") {
  const RunResult r = run_cli("asymptotics --n 1000");
  REQUIRE(r.code == 0);
  CHECK(r.out.find("\"C\":0.4993") != std::string::npos);
  CHECK(r.out.find("\"exponent\":0.3819") != std::string::npos);
  CHECK(r.out.find("\"ratio\":0.49") != std::string::npos);

  const RunResult t = run_cli("asymptotics --n 1000 --format text");
  CHECK(t.out.find("C 0.499304455703\n") != std::string::npos);
  CHECK(t.out.find("exponent 0.38196601125\n") != std::string::npos);
}

TEST_CASE("cli: distribution output") {
  CHECK(run_cli("dist --n 4").out == "k,probability\n1,0.857142857143\n2,0.142857142857\n");

  TempFile csv("csv");
  const RunResult filed = run_cli("dist --n 4 --out " + csv.path);
  REQUIRE(filed.code == 0);
  CHECK(filed.out.empty());
  CHECK(slurp(csv.path) == "k,probability\n1,0.857142857143\n2,0.142857142857\n");

  TempFile plot("plot");
  REQUIRE(run_cli("dist --n 4 --plot " + plot.path).code == 0);
  CHECK(slurp(plot.path) == "1 0.857142857143\n2 0.142857142857\n");

  const RunResult j = run_cli("dist --n 4 --format json");
  CHECK(j.out.find("\"n\":4") != std::string::npos);
  CHECK(j.out.find("\"1\":0.857142857143") != std::string::npos);
  CHECK(j.out.find("\"total_mass\":1") != std::string::npos);
}

TEST_CASE("cli: exit codes") {
  CHECK(run_cli("distance \"1 2\" \"1 2 3\"").code == 1);    // domain error
  CHECK(run_cli("distance \"1 2\"").code == 2);              // missing positional
  CHECK(run_cli("sort-distance \"1 2 2\"").code == 1);       // malformed permutation
  CHECK(run_cli("count b --n 10 --frobnicate").code == 2);   // unknown flag
  CHECK(run_cli("nonsense").code == 2);                      // unknown subcommand
  CHECK(run_cli("").code == 2);                              // subcommand required
  CHECK(run_cli("basis list --p 9").code == 1);              // enumeration cap
  CHECK(run_cli("--help").code == 0);
  CHECK(run_cli("dist --help").code == 0);
}

TEST_CASE("cli: verification suite, fast profile") {
  const RunResult r = run_cli("verify --fast --format json");
  CHECK(r.code == 0);
  CHECK(r.out.find("\"all_pass\":true") != std::string::npos);

  const RunResult t = run_cli("verify --fast");
  CHECK(t.code == 0);
  CHECK(t.out.find("all checks passed") != std::string::npos);
  CHECK(t.out.find("[FAIL]") == std::string::npos);
}
