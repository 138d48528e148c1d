#include <doctest.h>

#include <unistd.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "capdom/cli.hpp"

namespace fs = std::filesystem;
using capdom::cli::run;

namespace {

struct Scratch {
  fs::path dir;
  Scratch() {
    dir = fs::temp_directory_path() / ("capdom_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir);
  }
  ~Scratch() { fs::remove_all(dir); }
  std::string write(const std::string& name, const std::string& text) const {
    const fs::path p = dir / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir / name).string(); }
};

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

const char* kP3 = "p capdom 3 2\nv 1 1 1 1\nv 2 3 10 1\nv 3 1 1 1\ne 1 2\ne 2 3\n";

}  // namespace

TEST_CASE("solve and verify every algorithm") {
  Scratch s;
  const std::string inst = s.write("p3.txt", kP3);
  for (const char* algo : {"greedy-unsplit", "greedy-split", "dp", "baker", "oracle"}) {
    const std::string sol = s.path(std::string(algo) + ".sol");
    const Outcome solved = call({"solve", "--algo", algo, "-o", sol, inst});
    CHECK_MESSAGE(solved.code == 0, algo << ": " << solved.err);
    const Outcome checked = call({"verify", inst, sol});
    CHECK(checked.code == 0);
    CHECK(checked.out.rfind("PASS", 0) == 0);
  }
  const Outcome stdout_sol = call({"solve", "--algo", "oracle", inst});
  CHECK(stdout_sol.out.rfind("s capdom 3 unsplit\n", 0) == 0);
  const Outcome greedy = call({"solve", "--algo", "greedy-unsplit", inst});
  CHECK(greedy.code == 0);
  CHECK(greedy.out.rfind("s capdom 3 unsplit\n", 0) == 0);
}

TEST_CASE("tampered solutions fail verification") {
  Scratch s;
  const std::string inst = s.write("p3.txt", kP3);
  const std::string sol = s.write("bad.sol", "s capdom 3 unsplit\na 1 2 1\na 2 2 1\na 3 2 1\n");
  const Outcome r = call({"verify", "--model", "unsplit", inst, sol});
  CHECK(r.code == capdom::cli::kVerifyFailed);
  CHECK(r.out.rfind("FAIL", 0) == 0);
  CHECK(r.out.find("capacity") != std::string::npos);
}

TEST_CASE("exit codes") {
  Scratch s;
  const std::string inst = s.write("p3.txt", kP3);
  CHECK(call({}).code == capdom::cli::kUsage);
  CHECK(call({"solve", "--algo", "nope", inst}).code == capdom::cli::kUsage);
  CHECK(call({"solve", "--algo", "greedy-unsplit", "--model", "split", inst}).code == capdom::cli::kUsage);
  CHECK(call({"solve", "--algo", "greedy-unweighted", inst}).code == capdom::cli::kUsage);
  CHECK(call({"solve", s.path("missing.txt")}).code == capdom::cli::kUsage);
  const std::string broken = s.write("broken.txt", "p capdom 2 1\nv 1 1 1 1\n");
  const Outcome parse = call({"solve", broken});
  CHECK(parse.code == capdom::cli::kUsage);
  CHECK(parse.err.find("line") != std::string::npos);

  const std::string hopeless = s.write("hopeless.txt", "p capdom 1 0\nv 1 1 0 1\n");
  CHECK(call({"solve", "--algo", "oracle", hopeless}).code == capdom::cli::kInfeasible);

  const std::string hard = s.write("hard.txt", "");
  CHECK(call({"gen", "random", "--n", "12", "--max-d", "9", "--seed", "3", "-o", hard}).code == 0);
  CHECK(call({"solve", "--algo", "oracle", "--model", "split", "--budget", "3", hard}).code ==
        capdom::cli::kBudgetExhausted);
}

TEST_CASE("trace and baker annotations") {
  Scratch s;
  const std::string inst = s.write("p3.txt", kP3);
  const Outcome traced = call({"solve", "--algo", "greedy-split", "--trace", inst});
  CHECK(traced.code == 0);
  CHECK(traced.out.find("\nt 1 ") != std::string::npos);
  const Outcome baker = call({"solve", "--algo", "baker", "--k", "2", inst});
  CHECK(baker.out.find("c levels 3\n") != std::string::npos);
  CHECK(baker.out.find("c shift 1 ") != std::string::npos);
  CHECK(call({"solve", "--algo", "baker", "--k", "1", inst}).code == capdom::cli::kUsage);
}

TEST_CASE("gen and td subcommands") {
  Scratch s;
  const std::string inst = s.path("g.txt");
  CHECK(call({"gen", "random", "--n", "9", "--seed", "4", "-o", inst}).code == 0);
  const std::string first = slurp(inst);
  CHECK(call({"gen", "random", "--n", "9", "--seed", "4", "-o", inst}).code == 0);
  CHECK(slurp(inst) == first);

  const std::string td = s.path("g.td");
  CHECK(call({"td", "compute", inst, "-o", td}).code == 0);
  CHECK(call({"td", "validate", inst, td}).code == 0);
  CHECK(call({"td", "nice", inst, td}).out.find("\ns nice ") != std::string::npos);
  const std::string sol = s.path("g.sol");
  CHECK(call({"solve", "--algo", "dp", "--td", td, "-o", sol, inst}).code == 0);
  CHECK(call({"verify", inst, sol}).code == 0);

  const std::string wrong = s.write("wrong.td", "s td 1 1 9\nb 1 1\n");
  CHECK(call({"td", "validate", inst, wrong}).code == capdom::cli::kVerifyFailed);

  const std::string mcq = s.write("k2.mcq", "p mcq 2 2 1\npart 1 1\npart 2 2\ne 1 2\n");
  const std::string gadget = s.path("k2.txt");
  CHECK(call({"gen", "mcq-reduce", mcq, "-o", gadget}).code == 0);
  CHECK(slurp(gadget).rfind("c gadget k 2 N 2 budget 7\n", 0) == 0);
  CHECK(slurp(gadget + ".roles").rfind("role 1 ", 0) == 0);
}

TEST_CASE("bench ratios stay below H_8") {
  const Outcome r = call({"bench", "--n", "8", "--batch", "50", "--seed", "1", "--model", "unsplit"});
  CHECK(r.code == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  int rows = 0;
  while (std::getline(lines, line)) {
    std::vector<std::string> cols;
    std::stringstream fields(line);
    for (std::string f; std::getline(fields, f, ',');) cols.push_back(f);
    REQUIRE(cols.size() == 11);
    CHECK(std::stod(cols[8]) <= 761.0 / 280.0 + 1e-6);
    CHECK(cols[10] == "1");
    ++rows;
  }
  CHECK(rows == 50);
}

TEST_CASE("bench writes csv") {
  const Outcome r = call({"bench", "--n", "5", "--batch", "4", "--seed", "2"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("index,seed,n,m,algo,cost,reference,reference_kind,ratio,bound,within_bound\n", 0) == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 5);
}
