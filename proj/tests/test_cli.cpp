#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fixtures.hpp"

#include "bellctx/json_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>

using namespace bellctx;
using namespace fixtures;
namespace fs = std::filesystem;

namespace {

struct CliResult {
  int exit_code = -1;
  std::string out;
  io::json report;
};

fs::path work_dir() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "bellctx-cli-test";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

CliResult run_cli(const std::string& args, const std::string& env = "") {
  CliResult result;
  const std::string command =
      env + " '" + BELLCTX_CLI_PATH + "' " + args + " 2>" + (work_dir() / "stderr.txt").string();
  FILE* pipe = popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buffer[4096];
  while (std::size_t n = fread(buffer, 1, sizeof buffer, pipe)) result.out.append(buffer, n);
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  if (!result.out.empty() && result.out.front() == '{')
    result.report = io::json::parse(result.out);
  return result;
}

std::string write_fixture(const std::string& name, const io::json& value) {
  const fs::path path = work_dir() / name;
  io::write_file(path, value);
  return path.string();
}

std::string file_contents(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

io::json strip_timing(io::json report) {
  report.erase("timing_ms");
  return report;
}

}  // namespace

TEST_CASE("validate accepts good documents and reports violations in bad ones") {
  const std::string good = write_fixture("pr.json", io::to_json(pr_box()));
  const CliResult ok = run_cli("validate " + good);
  CHECK(ok.exit_code == 0);
  CHECK(ok.report["verdict"] == "valid");

  io::json broken = io::to_json(pr_box());
  broken["table"]["1,1,1,1"] = "3/2";
  const std::string bad = write_fixture("bad.json", broken);
  const CliResult invalid = run_cli("validate " + bad);
  CHECK(invalid.exit_code == 0);  // a verdict, not a process failure
  CHECK(invalid.report["verdict"] == "invalid");

  const CliResult missing = run_cli("validate /nonexistent.json");
  CHECK(missing.exit_code == 1);
}

TEST_CASE("map and unmap compose to the identity, bit-exactly on files") {
  const std::string pr = write_fixture("pr2.json", io::to_json(pr_box()));
  const std::string behaviour = (work_dir() / "behaviour.json").string();
  const CliResult mapped = run_cli("map " + pr + " --output " + behaviour);
  REQUIRE(mapped.exit_code == 0);
  CHECK(mapped.report["index_A"] == io::json::array({2, 2}));

  const std::string back = (work_dir() / "back.json").string();
  const CliResult unmapped = run_cli("unmap " + behaviour + " --output " + back);
  REQUIRE(unmapped.exit_code == 0);
  CHECK(file_contents(back) == file_contents(pr));
}

TEST_CASE("unmap honours --index-A") {
  const std::string pr = write_fixture("pr3.json", io::to_json(pr_box()));
  const std::string behaviour = (work_dir() / "behaviour3.json").string();
  REQUIRE(run_cli("map " + pr + " --output " + behaviour).exit_code == 0);
  const CliResult unmapped = run_cli("unmap " + behaviour + " --index-A 3,2");
  REQUIRE(unmapped.exit_code == 0);
  CHECK(unmapped.report["A"] == io::json::array({3, 2}));
  const CliResult rejected = run_cli("unmap " + behaviour + " --index-A 1,2");
  CHECK(rejected.exit_code == 1);
}

TEST_CASE("check verdicts use exit code zero in both directions") {
  const std::string pr = write_fixture("pr4.json", io::to_json(pr_box()));
  const CliResult ns = run_cli("check ns " + pr);
  CHECK(ns.exit_code == 0);
  CHECK(ns.report["verdict"] == "no-signalling");
  CHECK(ns.report["max_residual"] == "0");

  const CliResult local = run_cli("check local " + pr);
  CHECK(local.exit_code == 0);
  CHECK(local.report["verdict"] == "non-member");

  Rng rng(1);
  const std::string mix =
      write_fixture("mix.json", io::to_json(random_local_mixture(rng, chsh_scenario())));
  const CliResult member = run_cli("check local " + mix);
  CHECK(member.exit_code == 0);
  CHECK(member.report["verdict"] == "member");
}

TEST_CASE("check nc works with a scenario document plus --behaviour") {
  const std::string scenario =
      write_fixture("H.json", io::to_json(five_prep_scenario()));
  io::json bare;
  bare["type"] = "ctx-behaviour";
  bare["table"] = io::to_json(five_prep_contextual())["table"];
  const std::string behaviour = write_fixture("qc.json", bare);
  const CliResult nc = run_cli("check nc " + scenario + " --behaviour " + behaviour);
  CHECK(nc.exit_code == 0);
  CHECK(nc.report["verdict"] == "non-member");

  const CliResult ctxset = run_cli("check ctxset " + scenario + " --behaviour " + behaviour);
  CHECK(ctxset.exit_code == 0);
  CHECK(ctxset.report["verdict"] == "member");
  CHECK(ctxset.report["max_residual"] == "0");
}

TEST_CASE("facets reports the counts and writes the text artifact") {
  const std::string scenario = write_fixture("H2.json", io::to_json(five_prep_scenario()));
  const std::string listing = (work_dir() / "facets.txt").string();
  const CliResult facets = run_cli("facets " + scenario + " --output " + listing);
  REQUIRE(facets.exit_code == 0);
  CHECK(facets.report["facet_count"] == 60);
  CHECK(facets.report["equality_count"] == 4);
  const std::string text = file_contents(listing);
  CHECK(text.find("# facets: 60") != std::string::npos);
}

TEST_CASE("budget violations exit with code 2") {
  const std::string scenario = write_fixture("H3.json", io::to_json(five_prep_scenario()));
  CHECK(run_cli("facets " + scenario + " --budget 3").exit_code == 2);
  // the environment variable drives the same knobs
  CHECK(run_cli("facets " + scenario, "BELLCTX_BUDGET=3").exit_code == 2);
  // an explicit flag overrides the environment
  CHECK(run_cli("facets " + scenario + " --budget 100000", "BELLCTX_BUDGET=3").exit_code == 0);
}

TEST_CASE("certificates written by check verify independently") {
  const std::string pr = write_fixture("pr5.json", io::to_json(pr_box()));
  const std::string cert = (work_dir() / "cert.json").string();
  REQUIRE(run_cli("check local " + pr + " --output " + cert).exit_code == 0);
  const CliResult verified = run_cli("verify-cert " + pr + " " + cert);
  CHECK(verified.exit_code == 0);
  CHECK(verified.report["verdict"] == "verified");

  // tamper with the bound: the verifier must locate the defect
  io::json tampered = io::load_file(cert);
  tampered["bound"] = "999";
  const std::string bad = write_fixture("cert-bad.json", tampered);
  const CliResult rejected = run_cli("verify-cert " + pr + " " + bad);
  CHECK(rejected.exit_code == 0);
  CHECK(rejected.report["verdict"] == "rejected");
  CHECK_FALSE(rejected.report["failures"].empty());
}

TEST_CASE("reduce and embed-bell invert each other through files") {
  const BellScenario s{{3, 2, 2}, {2, 2}};
  const auto planted = make_correlation(s, [](int a, int b, int x, int y) -> Rational {
    if (x == 3) return a == 1 ? (b == 1 ? rat(1, 2) : rat(1, 2)) : rat(0);
    if (x == 1 && a == 3) return rat(0);
    const int aa = std::min(a, 2);
    return ((aa - 1) ^ (b - 1)) == (x - 1) * (y - 1) ? rat(1, 2) : rat(0);
  });
  const std::string input = write_fixture("planted.json", io::to_json(planted));
  const std::string reduction = (work_dir() / "tau.json").string();
  const CliResult reduced = run_cli("reduce " + input + " --output " + reduction);
  REQUIRE(reduced.exit_code == 0);
  CHECK(reduced.report["verdict"] == "reduced");
  const std::string restored = (work_dir() / "restored.json").string();
  const CliResult embedded = run_cli("embed-bell " + reduction + " --output " + restored);
  REQUIRE(embedded.exit_code == 0);
  CHECK(file_contents(restored) == file_contents(input));
}

TEST_CASE("normal-form and embed-preps run through files") {
  io::json eq;
  eq["type"] = "equivalence";
  eq["lhs"] = {{"1|1", "1/2"}, {"2|1", "1/2"}};
  eq["rhs"] = {{"1|1", "1/3"}, {"3|1", "1/3"}, {"4|1", "1/3"}};
  const std::string eq_path = write_fixture("eq.json", eq);
  const CliResult nf = run_cli("normal-form " + eq_path);
  REQUIRE(nf.exit_code == 0);
  CHECK(nf.report["result"]["lhs"]["1|1"] == "1/4");
  CHECK(nf.report["result"]["rhs"]["3|1"] == "1/2");

  const std::string qc = write_fixture("qc-full.json", io::to_json(five_prep_contextual()));
  const CliResult embedded = run_cli("embed-preps " + qc);
  REQUIRE(embedded.exit_code == 0);
  CHECK(embedded.report["label_map"]["6|1"] == "1|1");
  CHECK(embedded.report["label_map"]["7|1"] == "3|1");
}

TEST_CASE("blend writes the mixed correlation") {
  const std::string pr = write_fixture("pr6.json", io::to_json(pr_box()));
  const CliResult blended = run_cli("blend " + pr + " --n 1");
  REQUIRE(blended.exit_code == 0);
  CHECK(blended.report["result"]["table"]["1,1,1,1"] == "1/4");
}

TEST_CASE("reports are deterministic apart from timing") {
  const std::string pr = write_fixture("pr7.json", io::to_json(pr_box()));
  const CliResult first = run_cli("check local " + pr);
  const CliResult second = run_cli("check local " + pr);
  CHECK(strip_timing(first.report) == strip_timing(second.report));
}

TEST_CASE("quantum subcommands compose: assemblage, hjw, snap") {
  // shipped fixture: the Tsirelson realisation
  const std::string realisation = std::string(BELLCTX_DATA_DIR) + "/tsirelson.json";
  const std::string asm_path = (work_dir() / "asm.json").string();
  const CliResult constructed = run_cli("assemblage " + realisation + " --output " + asm_path);
  REQUIRE(constructed.exit_code == 0);
  CHECK(constructed.report["averaging_residual"].get<double>() < 1e-10);

  const CliResult hjw = run_cli("hjw " + asm_path);
  REQUIRE(hjw.exit_code == 0);
  CHECK(hjw.report["state_residual"].get<double>() < 1e-9);
  CHECK(hjw.report["completeness_residual"].get<double>() < 1e-10);

  // Tsirelson values are irrational: at a small denominator bound nothing is
  // within tolerance; at the default bound a nearby rational table may exist
  const CliResult snap = run_cli("snap " + realisation + " --snap-den 1000");
  REQUIRE(snap.exit_code == 0);
  CHECK(snap.report["verdict"] == "not-snapped");
}
