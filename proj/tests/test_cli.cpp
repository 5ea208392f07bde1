// End-to-end command-line tests: every subcommand is exercised through a
// real child process, covering the documented exit codes and the
// machine-readable output mode.

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "pmc/completion.hpp"
#include "pmc/io.hpp"
#include "pmc/polymatrix.hpp"

#ifndef PMC_CLI_PATH
#error "PMC_CLI_PATH must point at the command-line binary"
#endif

using namespace pmc;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

int counter = 0;

std::string workdir() {
  static std::string dir = [] {
    std::string tmpl = "/tmp/pmc-cli-XXXXXX";
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%s", tmpl.c_str());
    if (!mkdtemp(buf)) throw std::runtime_error("mkdtemp failed");
    return std::string(buf);
  }();
  return dir;
}

RunResult run_cli(const std::string& args) {
  std::string out_path = workdir() + "/out" + std::to_string(counter++);
  std::string cmd = std::string(PMC_CLI_PATH) + " " + args + " > " +
                    out_path + " 2>&1";
  int status = std::system(cmd.c_str());
  RunResult res;
  res.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out_path);
  std::ostringstream ss;
  ss << in.rdbuf();
  res.out = ss.str();
  return res;
}

std::string write_file(const std::string& name, const std::string& text) {
  std::string path = workdir() + "/" + name;
  std::ofstream(path) << text;
  return path;
}

const char* kRotMatrix5 = R"({"field":{"type":"gfp","p":5},"grade":1,
  "rows":2,"cols":2,"entries":[[[0,1],[1]],[[-1],[0,1]]]})";

std::string rot_problem(const std::string& field_json,
                        const std::string& v_json) {
  return std::string(R"({"matrix":{"field":)") + field_json +
         R"(,"grade":1,"rows":2,"cols":2,
            "entries":[[[0,1],[1]],[[-1],[0,1]]]},
            "prescription":{"variant":"inf-sing","z":1,"x":0,
                            "f":[0,0],"d":[],"v":)" +
         v_json + "}}";
}

}  // namespace

TEST_CASE("analyze prints the structure and round-trips as JSON") {
  std::string path =
      write_file("rot5.json", rot_problem(R"({"type":"gfp","p":5})", "[1]"));
  RunResult plain = run_cli("analyze " + path);
  CHECK(plain.code == 0);
  CHECK(plain.out.find("rank") != std::string::npos);
  CHECK(plain.out.find("s^2 + 1") != std::string::npos);

  RunResult js = run_cli("analyze --json " + path);
  CHECK(js.code == 0);
  Eigenstructure e = eigenstructure_from_json(js.out);
  CHECK(e.rank == 2);
  CHECK(e.field == Field::gf(5));
  CHECK(to_string(e.alphas[1]) == "s^2 + 1");
}

TEST_CASE("check distinguishes feasible from infeasible by exit code") {
  std::string feas =
      write_file("feas.json", rot_problem(R"({"type":"rational"})", "[1]"));
  std::string infeas =
      write_file("infeas.json", rot_problem(R"({"type":"rational"})", "[5]"));

  RunResult ok = run_cli("check " + feas);
  CHECK(ok.code == 0);
  CHECK(ok.out.find("feasible") != std::string::npos);

  RunResult no = run_cli("check " + infeas);
  CHECK(no.code == 2);

  RunResult js = run_cli("check --json " + feas);
  CHECK(js.code == 0);
  FeasibilityReport rep = report_from_json(js.out);
  CHECK(rep.feasible);
  CHECK(rep.field_caveat);
  CHECK(rep.constant);
  CHECK(*rep.constant == 1);
  CHECK(to_json(rep) == to_json(report_from_json(to_json(rep))));
}

TEST_CASE("chain succeeds over GF(5) and reports the obstruction on GF(3)") {
  std::string five =
      write_file("chain5.json", rot_problem(R"({"type":"gfp","p":5})", "[1]"));
  std::string three =
      write_file("chain3.json", rot_problem(R"({"type":"gfp","p":3})", "[1]"));

  RunResult ok = run_cli("chain " + five);
  CHECK(ok.code == 0);
  CHECK(ok.out.find("s + 2") != std::string::npos);
  CHECK(ok.out.find("canonical: yes") != std::string::npos);

  RunResult blocked = run_cli("chain " + three);
  CHECK(blocked.code == 3);
  CHECK(blocked.out.find("no monic divisor") != std::string::npos);

  std::string infeas =
      write_file("chain-inf.json", rot_problem(R"({"type":"gfp","p":5})",
                                               "[5]"));
  CHECK(run_cli("chain " + infeas).code == 2);
}

TEST_CASE("oracle confirms the predicate and flags injected bugs") {
  std::string five =
      write_file("oracle5.json", rot_problem(R"({"type":"gfp","p":5})",
                                             "[1]"));
  RunResult ok = run_cli("oracle " + five);
  CHECK(ok.code == 0);
  CHECK(ok.out.find("625") != std::string::npos);
  CHECK(ok.out.find("consistent") != std::string::npos);

  std::string three =
      write_file("oracle3.json", rot_problem(R"({"type":"gfp","p":3})",
                                             "[1]"));
  RunResult caveat = run_cli("oracle " + three);
  CHECK(caveat.code == 0);  // caveat resolved: obstruction and no witness

  RunResult bug = run_cli("oracle --inject-bug " + five);
  CHECK(bug.code == 4);

  RunResult tight = run_cli("oracle --budget 2 " + five);
  CHECK(tight.code == 1);
  CHECK(tight.out.find("coefficient slots") != std::string::npos);

  std::string rat =
      write_file("oracleq.json", rot_problem(R"({"type":"rational"})", "[1]"));
  RunResult q = run_cli("oracle " + rat);
  CHECK(q.code == 1);
  CHECK(q.out.find("finite coefficient field") != std::string::npos);
}

TEST_CASE("oracle JSON names a witness row block") {
  std::string five =
      write_file("oraclej.json", rot_problem(R"({"type":"gfp","p":5})",
                                             "[1]"));
  RunResult js = run_cli("oracle --json " + five);
  CHECK(js.code == 0);
  CHECK(js.out.find("\"verdict\"") != std::string::npos);
  CHECK(js.out.find("\"witness_index\"") != std::string::npos);
  CHECK(js.out.find("\"rows\"") != std::string::npos);
}

TEST_CASE("structure-only problems check without a matrix") {
  std::string path = write_file("abstract.json", R"({
    "eigenstructure":{"field":{"type":"rational"},"grade":1,"rank":2,
      "alphas":[[1],[1,0,1]],"es":[0,0],"cmi":[],"rmi":[]},
    "prescription":{"variant":"inf-sing","z":1,"x":0,
                    "f":[0,0],"d":[],"v":[1]}})");
  RunResult ok = run_cli("check " + path);
  CHECK(ok.code == 0);

  // But the oracle needs concrete entries to enumerate against.
  RunResult no = run_cli("oracle " + path);
  CHECK(no.code == 1);
}

TEST_CASE("malformed input is a plain error") {
  CHECK(run_cli("analyze /nonexistent.json").code == 1);
  std::string bad = write_file("bad.json", "{\"matrix\":");
  CHECK(run_cli("analyze " + bad).code == 1);
  std::string wrong = write_file("wrong.json", std::string("{\"matrix\":") +
                                                   kRotMatrix5 +
                                                   ",\"unknown-key\":1}");
  CHECK(run_cli("analyze " + wrong).code == 1);
  std::string unused = write_file("unused.json", R"({
    "matrix":{"field":{"type":"gfp","p":5},"grade":1,"rows":1,"cols":1,
      "entries":[[[0,1]]]},
    "prescription":{"variant":"cmi","z":1,"x":0,"d":[],"v":[0]}})");
  RunResult res = run_cli("check " + unused);
  CHECK(res.code == 1);
  CHECK(res.out.find("not used by variant") != std::string::npos);
}

TEST_CASE("self test passes end to end") {
  RunResult res = run_cli("selftest --instances 4 --seed 99");
  CHECK(res.code == 0);
  CHECK(res.out.find("selftest: PASS") != std::string::npos);
}
