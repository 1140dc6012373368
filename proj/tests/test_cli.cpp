#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "ssekit/cli.hpp"
#include "ssekit/matrix_io.hpp"

namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = ssekit::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write(const std::string& name, const std::string& body) {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("ssekit_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  fs::path p = dir / name;
  std::ofstream(p) << body;
  return p.string();
}

void check_single_newline(const std::string& s) {
  REQUIRE_FALSE(s.empty());
  CHECK(s.back() == '\n');
  CHECK((s.size() < 2 || s[s.size() - 2] != '\n'));
}

}  // namespace

TEST_CASE("k0 on a single vertex with three loops") {
  auto r = run({"k0", write("three.txt", "1 1\n3\n")});
  CHECK(r.code == 0);
  CHECK(r.out == "torsion [2]\nfree_rank 0\ndet(I-A) -2\nunit_class [1]\n");
  auto j = run({"k0", write("three.txt", "1 1\n3\n"), "--json"});
  CHECK(j.code == 0);
  auto doc = ssekit::Json::parse(j.out);
  CHECK(doc["det_i_minus_a"] == -2);
  CHECK(doc["torsion"] == ssekit::Json::array({2}));
  CHECK(doc["unit_class"] == ssekit::Json::array({1}));
}

TEST_CASE("factor and verify-chain") {
  auto r = run({"factor", write("ones.txt", "2 2\n1 1\n1 1\n"), "--inner-dim", "1", "--max-entry", "1"});
  CHECK(r.code == 0);
  CHECK(r.out.find("count 1\n") != std::string::npos);
  r = run({"factor", write("swap.txt", "2 2\n0 1\n1 0\n"), "--inner-dim", "1", "--max-entry", "2"});
  CHECK(r.code == 0);
  CHECK(r.out.find("none within budget") != std::string::npos);

  auto id = run({"verify-chain", write("id.json", R"({"matrices":[{"rows":1,"cols":1,"data":[[3]]}],"steps":[]})")});
  CHECK(id.code == 0);
  CHECK(id.out == "valid yes\nsteps 0\ntransfer\n1 1\n1\n");

  auto bad = run({"verify-chain",
                  write("bad.json", R"({"matrices":[{"rows":1,"cols":1,"data":[[3]]},{"rows":1,"cols":1,"data":[[4]]}],)"
                                    R"("steps":[{"C":{"rows":1,"cols":1,"data":[[3]]},"D":{"rows":1,"cols":1,"data":[[1]]}}]})")});
  CHECK(bad.code == 4);
  CHECK(bad.err.rfind("ERROR 4: ", 0) == 0);
}

TEST_CASE("exit codes") {
  std::string three = write("three.txt", "1 1\n3\n");
  CHECK(run({"k0", three, "--bogus"}).code == 2);
  CHECK(run({"k0", three, "--bogus"}).err.rfind("ERROR 2: ", 0) == 0);
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"k0", "/nonexistent/file.txt"}).code == 2);
  CHECK(run({"k0", write("garbage.txt", "hello\n")}).code == 2);
  CHECK(run({"ksse", write("perm.txt", "2 2\n0 1\n1 0\n")}).code == 3);
  CHECK(run({"ksse", write("red.txt", "2 2\n1 1\n0 1\n")}).code == 3);
  CHECK(run({"edge-graph", write("zero.txt", "1 1\n0\n")}).code == 3);
  CHECK(run({"full-units", three, "--depth", "1", "--inner-max", "3", "--entry-max", "3"}).code == 0);
  CHECK(run({"full-units", three, "--depth", "1", "--inner-max", "1", "--entry-max", "3"}).code == 10);
  CHECK(run({"compare", three, write("two.txt", "1 1\n2\n")}).code == 20);
  CHECK(run({"compare", three, write("b.txt", "2 2\n1 2\n1 2\n"), "--depth", "1"}).code == 0);
  CHECK(run({"check-lemmas", "--trials", "0"}).code == 0);
  auto neg = run({"check-lemmas", "--trials", "5", "--corrupt-dhat"});
  CHECK(neg.code == 4);
  CHECK(neg.err.rfind("ERROR 4: ", 0) == 0);
  CHECK(neg.out.find("result fail") != std::string::npos);
}

TEST_CASE("every command ends with one newline and json is one document") {
  std::string a = write("fib.txt", "2 2\n1 1\n1 0\n");
  std::string b = write("b.txt", "2 2\n1 2\n1 2\n");
  std::string chain = write("id.json", R"({"matrices":[{"rows":1,"cols":1,"data":[[3]]}],"steps":[]})");
  std::vector<std::vector<std::string>> commands{
      {"analyze", a},        {"edge-graph", a},         {"factor", b},
      {"verify-chain", chain}, {"k0", b},               {"ksse", b, "--witnesses"},
      {"full-units", b},     {"compare", a, b},         {"check-lemmas", "--trials", "3"}};
  for (auto args : commands) {
    auto text = run(args);
    CAPTURE(args[0]);
    check_single_newline(text.out);
    args.push_back("--json");
    auto j = run(args);
    check_single_newline(j.out);
    ssekit::Json doc;
    CHECK_NOTHROW(doc = ssekit::Json::parse(j.out));
    CHECK(j.code == text.code);
  }
}

TEST_CASE("output is identical across thread counts") {
  std::string b = write("b.txt", "2 2\n1 2\n1 2\n");
  std::vector<std::string> args{"ksse", b, "--depth", "2", "--inner-max", "2", "--entry-max", "2", "--witnesses", "--json"};
  setenv("SSEKIT_THREADS", "1", 1);
  auto one = run(args);
  setenv("SSEKIT_THREADS", "3", 1);
  auto three = run(args);
  unsetenv("SSEKIT_THREADS");
  auto dflt = run(args);
  CHECK(one.out == three.out);
  CHECK(one.out == dflt.out);
}

TEST_CASE("the installed binary forwards arguments") {
  std::string cmd = std::string(SSEKIT_CLI_PATH) + " k0 " + write("three.txt", "1 1\n3\n");
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p);
  std::string out;
  char buf[256];
  while (std::size_t n = fread(buf, 1, sizeof buf, p)) out.append(buf, n);
  CHECK(pclose(p) == 0);
  CHECK(out.find("torsion [2]") == 0);
}
