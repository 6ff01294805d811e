#include "dseq/cli.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace dseq;
using namespace dseq::cli;

namespace {

JobConfig parse(const std::string& text) {
  std::istringstream in(text);
  return JobConfig::parse(in);
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("dseq_test_" + name)).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("config parsing") {
  auto cfg = parse(R"([detect]
epsilon = 1e-8
window = 3
mode = float
threads = 2

[sequence.g]
family = geometric
row_ratio = 1/2
col_ratio = -1/3
rows = 10
cols = 12
projected = true

[sequence.t]
family = table
table = 1, 2; 3+1j

[matrix.s]
kind = stencil
rows = 5
taps = 0:0:1 1:1:-1/2

[job.a]
command = space_membership
args = g L_q 2
csv = out.csv
)");
  CHECK(cfg.detect.epsilon == doctest::Approx(1e-8));
  CHECK(cfg.detect.window == 3);
  CHECK(cfg.mode == Mode::float64);
  CHECK(cfg.threads == 2);
  REQUIRE(cfg.sequences.size() == 2);
  CHECK(cfg.sequences[0].rows == 10);
  CHECK(cfg.sequences[0].cols == 12);
  CHECK(cfg.sequences[0].family.projected);
  CHECK(cfg.sequences[0].family.col_ratio == ExactComplex(Rational(-1, 3)));
  CHECK(cfg.sequences[1].family.table.size() == 2);
  CHECK(cfg.sequences[1].family.table[1][0] == ExactComplex(Rational(3), Rational(1)));
  REQUIRE(cfg.matrices.size() == 1);
  CHECK(cfg.matrices[0].spec.taps.size() == 2);
  REQUIRE(cfg.jobs.size() == 1);
  CHECK(cfg.jobs[0].args == std::vector<std::string>{"g", "L_q", "2"});
  CHECK(cfg.jobs[0].csv == "out.csv");
}

TEST_CASE("config errors") {
  CHECK_THROWS_AS(parse("[job.1]\ncommand = frobnicate\n"), ParseError);
  CHECK_THROWS_AS(parse("[job.1]\ncommand = space_membership\nargs = nowhere C_p\n"), ParseError);
  CHECK_THROWS_AS(parse("[sequence.x]\n[job.1]\ncommand = space_membership\n"), ParseError);
  CHECK_THROWS_AS(parse("[job.1]\ncommand = class_check\nargs = m M_u M_u\n"), ParseError);
  CHECK_THROWS_AS(parse("[widget.1]\nx = 1\n"), ParseError);
  CHECK_THROWS_AS(parse("[sequence.x]\nrows = ten\n"), ParseError);
  CHECK_THROWS_AS(parse("[sequence.x]\nfamily = spiral\n"), InvalidArgument);
  CHECK_THROWS_AS(parse("[matrix.m]\nkind = stencil\ntaps = 0:0\n"), ParseError);
  CHECK_THROWS_AS(parse("[detect]\nmode = quick\n"), InvalidArgument);
  CHECK_THROWS_AS(parse("[detect\n"), ParseError);
}

TEST_CASE("run records and exit codes") {
  auto boos = run(parse("[sequence.b]\nfamily = boos\nrows = 16\n[job.1]\ncommand = space_membership\nargs = b C_p\n"));
  CHECK(boos.exit_code == 0);
  REQUIRE(boos.report.records.size() == 1);
  CHECK(boos.report.records[0]["status"] == "Holds");
  CHECK(boos.report.records[0]["verdict"]["limit"]["value"] == "0+0j");

  auto star = run(parse("[matrix.i]\nkind = identity\n[job.1]\ncommand = class_check\nargs = i M_u C_r\n"));
  CHECK(star.exit_code == 0);
  CHECK(star.report.records[0]["status"] == "Unsupported");
  CHECK(star.report.summary().unsupported == 1);

  auto empty = run(parse(""));
  CHECK(empty.exit_code == 0);
  CHECK(empty.report.records.empty());

  auto fails = run(parse("[sequence.b]\nfamily = boos\nrows = 16\n[job.1]\ncommand = space_membership\nargs = b M_u\n"));
  CHECK(fails.exit_code == 1);

  auto error = run(parse("[sequence.b]\nfamily = boos\nrows = 16\n[job.1]\ncommand = space_membership\nargs = b C_z\n"));
  CHECK(error.exit_code == 2);
  CHECK(error.report.records[0]["status"] == "error");
}

TEST_CASE("records keep declaration order and counts match") {
  std::string text = "[sequence.e]\nfamily = ones\nrows = 8\n[sequence.b]\nfamily = boos\nrows = 8\n";
  const char* jobs[] = {"space_membership\nargs = e C_bp", "space_membership\nargs = b M_u",
                        "space_membership\nargs = b C_p", "norm\nargs = e sup", "cs\nargs = e p",
                        "delta_norm\nargs = b"};
  int i = 0;
  for (auto j : jobs) text += "[job.j" + std::to_string(i++) + "]\ncommand = " + j + "\n";
  auto cfg = parse(text);
  auto one = run(cfg);
  cfg.threads = 3;
  auto three = run(cfg);
  CHECK(one.report.to_jsonl() == three.report.to_jsonl());
  for (std::size_t k = 0; k < one.report.records.size(); ++k) {
    CHECK(one.report.records[k]["job"] == "j" + std::to_string(k));
  }
  auto s = one.report.summary();
  CHECK(s.ok + s.holds + s.fails + s.inconclusive + s.unsupported + s.errors == one.report.records.size());
  CHECK(s.holds == 2);
  CHECK(s.fails == 2);
  CHECK(s.ok == 2);
}

TEST_CASE("overrides") {
  auto cfg = parse("[sequence.r]\nfamily = random_support\n[matrix.t]\nkind = random_triangle\nseed = 4\n");
  Overrides ov;
  ov.size = 12;
  ov.seed = 77;
  ov.epsilon = 1e-6;
  ov.mode = Mode::float64;
  ov.apply(cfg);
  CHECK(cfg.sequences[0].rows == 12);
  CHECK(cfg.sequences[0].family.seed == 77);
  CHECK(cfg.matrices[0].spec.rows == 12);
  CHECK(cfg.matrices[0].spec.seed == 4);
  CHECK(cfg.detect.epsilon == doctest::Approx(1e-6));
  CHECK(cfg.mode == Mode::float64);
}

TEST_CASE("grid export") {
  const std::string out = temp_path("diff.csv");
  auto r = run(parse("[sequence.k]\nfamily = monomial\nrow_power = 1\ncol_power = 1\nrows = 4\n"
                     "[job.d]\ncommand = forward_difference\nargs = k\ncsv = " + out + "\n"));
  CHECK(r.exit_code == 0);
  CHECK(slurp(out) == "1+0j,1+0j,1+0j\n1+0j,1+0j,1+0j\n1+0j,1+0j,1+0j\n");
  std::remove(out.c_str());
}

TEST_CASE("verify suites") {
  auto d = verify("diffops", 16, 7);
  CHECK(d.exit_code == 0);
  CHECK(d.report.summary().holds == d.report.records.size());

  auto m = verify("matrix4d", 12, 3);
  CHECK(m.exit_code == 0);
  bool saw_identity = false;
  for (const auto& r : m.report.records) saw_identity |= r["check"] == "matrix4d.tail_identity";
  CHECK(saw_identity);

  auto a = verify("all", 8, 1);
  auto b = verify("all", 8, 1);
  auto c = verify("all", 8, 1, Mode::exact, 4);
  CHECK(a.exit_code == 0);
  CHECK(a.report.to_jsonl() == b.report.to_jsonl());
  CHECK(a.report.to_jsonl() == c.report.to_jsonl());
  CHECK(a.report.to_jsonl() != verify("all", 8, 2).report.to_jsonl());

  CHECK(verify("all", 8, 1, Mode::float64).exit_code == 0);
  CHECK_THROWS_AS(verify("everything", 8, 1), InvalidArgument);
  CHECK_THROWS_AS(verify("all", 3, 1), InvalidArgument);
}

TEST_CASE("command line entry") {
  const std::string cfg = temp_path("cfg.ini");
  const std::string out = temp_path("report.jsonl");
  {
    std::ofstream f(cfg);
    f << "[sequence.b]\nfamily = boos\nrows = 8\n[job.1]\ncommand = space_membership\nargs = b C_p\n";
  }
  std::string a0 = "dseq", a1 = "--config", a3 = "--out";
  std::string a2 = cfg, a4 = out;
  char* argv[] = {a0.data(), a1.data(), a2.data(), a3.data(), a4.data()};
  CHECK(main_entry(5, argv) == 0);
  std::string report = slurp(out);
  CHECK(report.find("\"status\":\"Holds\"") != std::string::npos);
  CHECK(report.find("\"summary\"") != std::string::npos);

  std::string v0 = "dseq", v1 = "verify", v2 = "duals", v3 = "--size", v4 = "6", v5 = "--out";
  std::string v6 = out;
  char* vargv[] = {v0.data(), v1.data(), v2.data(), v3.data(), v4.data(), v5.data(), v6.data()};
  CHECK(main_entry(7, vargv) == 0);

  std::string b0 = "dseq", b1 = "--mode", b2 = "approximate", b3 = "--config";
  char* bargv[] = {b0.data(), b1.data(), b2.data(), b3.data(), a2.data()};
  CHECK(main_entry(5, bargv) == 2);

  char* nargv[] = {a0.data()};
  CHECK(main_entry(1, nargv) == 2);
  std::remove(cfg.c_str());
  std::remove(out.c_str());
}
