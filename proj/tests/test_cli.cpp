#include <sys/wait.h>
#include <unistd.h>

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <doctest.h>
#include <nlohmann/json.hpp>

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int code = -1;
  std::string out;  // stdout and stderr, interleaved
};

fs::path scratch_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("walkforge-cli-" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

fs::path scratch_file(const std::string& name) { return scratch_dir() / name; }

RunResult run_cli(const std::string& args) {
  static int calls = 0;
  fs::path capture = scratch_file("capture-" + std::to_string(calls++) + ".txt");
  std::string cmd =
      std::string(WALKFORGE_CLI_PATH) + " " + args + " > " + capture.string() + " 2>&1";
  int raw = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  std::ifstream in(capture);
  std::stringstream buffer;
  buffer << in.rdbuf();
  r.out = buffer.str();
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

fs::path write_doc(const std::string& name, const nlohmann::json& j) {
  fs::path p = scratch_file(name);
  std::ofstream out(p);
  out << j.dump(2) << "\n";
  return p;
}

nlohmann::json constant_colouring(std::uint32_t n, std::uint32_t sigma, std::uint32_t value) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::uint32_t a = 0; a < n; ++a)
    rows.push_back(std::vector<std::uint32_t>(n - a - 1, value));
  return nlohmann::json{{"schema", "walkforge/1"},
                        {"kind", "colour-table"},
                        {"n", n},
                        {"sigma", sigma},
                        {"colours", std::move(rows)}};
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("walk and ord answer in plain text") {
  RunResult walk = run_cli("walk --model finite:8 5 2");
  CHECK(walk.code == 0);
  CHECK(walk.out == "5,4,3,2\n");

  RunResult cmp = run_cli("ord compare 'w^2' 'w*5+7'");
  CHECK(cmp.code == 0);
  CHECK(cmp.out == "greater\n");

  CHECK(run_cli("ord compare 3 7").out == "less\n");
  CHECK(run_cli("ord compare w w").out == "equal\n");
  CHECK(run_cli("ord add w 1").out == "w+1\n");
  CHECK(run_cli("ord fs 'w^2' 2").out == "w*2\n");
  CHECK(run_cli("ord classify w").out == "limit\n");
  CHECK(run_cli("ord parse 'w^(w)*2+5'").out == "w^(w)*2+5\n");

  RunResult canonical = run_cli("walk --model 'cnf:w^3' 'w^2' 1");
  CHECK(canonical.code == 0);
  CHECK(canonical.out == "w^2,w,1\n");
}

TEST_CASE("json mode carries the same answers") {
  RunResult cmp = run_cli("ord compare 'w^2' 'w*5+7' --json");
  CHECK(cmp.code == 0);
  nlohmann::json j = nlohmann::json::parse(cmp.out);
  CHECK(j["kind"] == "ordinal-result");
  CHECK(j["relation"] == "greater");

  RunResult walk = run_cli("walk --model finite:8 5 2 --json");
  nlohmann::json w = nlohmann::json::parse(walk.out);
  CHECK(w["kind"] == "walk");
  CHECK(w["k"] == 3);
  CHECK(w["steps"] == nlohmann::json({"5", "4", "3", "2"}));
  CHECK(w["rho"] == nlohmann::json({"5", "4", "3"}));  // proper part: arrival dropped
}

TEST_CASE("usage problems exit with the usage code") {
  CHECK(run_cli("").code == 2);                            // a subcommand is required
  CHECK(run_cli("ord").code == 2);                         // op is required
  CHECK(run_cli("ord frobnicate w").code == 2);            // unknown op
  CHECK(run_cli("ord parse 'w^w'").code == 2);             // exponent needs parentheses
  CHECK(run_cli("ord compare w").code == 2);               // arity
  CHECK(run_cli("walk --model finite:8 5").code == 2);     // missing alpha
  CHECK(run_cli("walk --model finite:x 5 2").code == 2);   // bad domain
  CHECK(run_cli("walk 5 2").code == 2);                    // no provider picked
  CHECK(run_cli("verify").code == 2);                      // verify needs a suite
  CHECK(run_cli("check --colouring nowhere.json --instance nowhere.json").code == 2);
}

TEST_CASE("verification suites report clean runs and surface corruption") {
  fs::path report = scratch_file("walk-lemmas.json");
  RunResult clean = run_cli("verify walk-lemmas --model finite:16 --out " + report.string());
  CHECK(clean.code == 0);
  nlohmann::json doc = nlohmann::json::parse(slurp(report));
  CHECK(doc["kind"] == "walk-lemma-report");
  CHECK(doc["ok"] == true);
  CHECK(doc["pairs"] == 15 * 14 / 2);
  CHECK(doc["config"]["model"] == "finite:16");

  // a table whose row 5 forgets its predecessor strands walks below 5
  nlohmann::json rows;
  for (std::uint64_t a = 1; a < 8; ++a)
    rows[std::to_string(a)] = {a - 1};
  rows["5"] = {1};
  fs::path bad = write_doc("bad-table.json", nlohmann::json{{"schema", "walkforge/1"},
                                                            {"kind", "csequence"},
                                                            {"domain", 8},
                                                            {"e", rows}});
  fs::path bad_report = scratch_file("bad-walk-lemmas.json");
  RunResult broken =
      run_cli("verify walk-lemmas --csequence " + bad.string() + " --out " + bad_report.string());
  CHECK(broken.code == 1);
  nlohmann::json bad_doc = nlohmann::json::parse(slurp(bad_report));
  CHECK(bad_doc["ok"] == false);
  CHECK(bad_doc["violation_count"].get<std::uint64_t>() > 0);
  CHECK(bad_doc["violations"][0]["lemma"] == "walk");

  // the same table fails structural validation with a named clause
  RunResult invalid = run_cli("verify csequence --csequence " + bad.string() + " --json");
  CHECK(invalid.code == 1);
  nlohmann::json vdoc = nlohmann::json::parse(invalid.out);
  CHECK(vdoc["kind"] == "csequence-report");
  CHECK(vdoc["ok"] == false);

  RunResult coherence = run_cli("verify coherence --model 'cnf:w^3' --pairs 40 --alphas 6 --seed 5");
  CHECK(coherence.code == 0);
}

TEST_CASE("claim-e4 sweeps rerun byte for byte") {
  fs::path first = scratch_file("sweep-1.json");
  fs::path second = scratch_file("sweep-2.json");
  std::string flags = "verify claim-e4 --k0 2 --k1 2 --max-len 3 --out ";
  CHECK(run_cli(flags + first.string()).code == 0);
  CHECK(run_cli(flags + second.string()).code == 0);
  std::string a = slurp(first), b = slurp(second);
  CHECK(a == b);
  CHECK_FALSE(a.empty());
  nlohmann::json doc = nlohmann::json::parse(a);
  CHECK(doc["kind"] == "sweep-report");
  CHECK(doc["consistent"] == true);
  CHECK(doc["config"]["mode"] == "exhaustive");
}

TEST_CASE("dfun prints the split and flags conflicts") {
  RunResult flagship = run_cli("dfun --f0 0,0,5,1,0 --f1 0,9,1,2,0 --json");
  CHECK(flagship.code == 0);
  nlohmann::json doc = nlohmann::json::parse(flagship.out);
  CHECK(doc["kind"] == "dfun-result");
  CHECK(doc["d_direct"] == 1);
  CHECK(doc["values"] == nlohmann::json({1}));
  CHECK(doc["consistent"] == true);
  // the first valid split is (0,2,3,4): nu0 = {0,1}, so the window index 1
  // names absolute position 1 and certifies d = 0 + 1
  CHECK(doc["split"]["u"] == nlohmann::json({1}));
  CHECK(doc["split"]["d"] == 1);

  RunResult text = run_cli("dfun --f0 0,0,5,1,0 --f1 0,9,1,2,0");
  CHECK(text.out == "d=1 d_direct=1\n");
}

TEST_CASE("colour subcommands answer pairs and whole tables") {
  nlohmann::json system{{"schema", "walkforge/1"}, {"kind", "colouring-system"},
                        {"kappa0", 2},             {"kappa1", 3},
                        {"kappa2", 3},             {"F0", "mod:2"},
                        {"F1", "mod:3"},           {"F2", "mod:3"}};
  fs::path sys = write_doc("system.json", system);

  RunResult pair = run_cli("colour pair --model finite:8 --system " + sys.string() + " 2 6");
  CHECK(pair.code == 0);
  CHECK(pair.out == "c1=2 c2=2\n");

  fs::path tables = scratch_file("tables.json");
  RunResult table =
      run_cli("colour table --model finite:8 --system " + sys.string() + " --out " + tables.string());
  CHECK(table.code == 0);
  nlohmann::json doc = nlohmann::json::parse(slurp(tables));
  CHECK(doc["kind"] == "colour-tables");
  CHECK(doc["c1"]["n"] == 8);
  CHECK(doc["c2"]["n"] == 8);

  // reruns are byte-identical
  fs::path again = scratch_file("tables-again.json");
  run_cli("colour table --model finite:8 --system " + sys.string() + " --out " + again.string());
  CHECK(slurp(tables) == slurp(again));
}

TEST_CASE("check exits zero exactly when a witness exists") {
  fs::path colouring = write_doc("flat.json", constant_colouring(6, 2, 0));
  nlohmann::json params{{"schema", "walkforge/1"}, {"kind", "partition-params"},
                        {"variant", "Pr1"},        {"lambda", 6},
                        {"mu", 2},                 {"sigma", 2},
                        {"theta", 2}};
  nlohmann::json instance{{"schema", "walkforge/1"},
                          {"kind", "pr-instance"},
                          {"zeta0", {{0}, {1}}},
                          {"zeta1", {{2}, {3}}},
                          {"h", 0},
                          {"params", params}};
  fs::path hit = write_doc("hit.json", instance);
  fs::path verdict = scratch_file("verdict.json");
  RunResult found = run_cli("check --colouring " + colouring.string() + " --instance " +
                            hit.string() + " --out " + verdict.string());
  CHECK(found.code == 0);
  nlohmann::json doc = nlohmann::json::parse(slurp(verdict));
  CHECK(doc["kind"] == "check-report");
  CHECK(doc["verdict"]["witness"] == nlohmann::json({0, 1}));

  instance["h"] = 1;
  fs::path miss = write_doc("miss.json", instance);
  RunResult none = run_cli("check --colouring " + colouring.string() + " --instance " +
                           miss.string() + " --json");
  CHECK(none.code == 1);
  CHECK(nlohmann::json::parse(none.out)["verdict"]["witness"].is_null());

  // the same challenge with parameters in their own file
  fs::path params_file = write_doc("params.json", params);
  nlohmann::json bare = instance;
  bare.erase("params");
  bare["h"] = 0;
  fs::path bare_file = write_doc("bare.json", bare);
  RunResult split = run_cli("check --colouring " + colouring.string() + " --instance " +
                            bare_file.string() + " --params " + params_file.string());
  CHECK(split.code == 0);

  // malformed instances are usage errors, not verdicts
  nlohmann::json clash = instance;
  clash["zeta1"] = {{0}, {3}};
  fs::path clash_file = write_doc("clash.json", clash);
  CHECK(run_cli("check --colouring " + colouring.string() + " --instance " +
                clash_file.string())
            .code == 2);
}

TEST_CASE("search exits one exactly when a counterexample turns up") {
  fs::path colouring = write_doc("flat-search.json", constant_colouring(6, 2, 0));
  nlohmann::json gap{{"schema", "walkforge/1"}, {"kind", "partition-params"},
                     {"variant", "Pr1"},        {"lambda", 6},
                     {"mu", 2},                 {"sigma", 2},
                     {"theta", 2}};
  fs::path gap_params = write_doc("gap-params.json", gap);
  fs::path report = scratch_file("search-report.json");
  RunResult found = run_cli("search --colouring " + colouring.string() + " --params " +
                            gap_params.string() + " --out " + report.string());
  CHECK(found.code == 1);
  nlohmann::json doc = nlohmann::json::parse(slurp(report));
  CHECK(doc["kind"] == "search-report");
  CHECK(doc["counterexample"]["kind"] == "pr-instance");
  CHECK(doc["strategy"] == "exhaustive");

  gap["sigma"] = 1;  // one colour: every constant prescription is realized
  fs::path full_params = write_doc("full-params.json", gap);
  RunResult none = run_cli("search --colouring " + colouring.string() + " --params " +
                           full_params.string() + " --json");
  CHECK(none.code == 0);
  CHECK(nlohmann::json::parse(none.out)["counterexample"].is_null());

  // seeded random search replays byte for byte
  fs::path r1 = scratch_file("random-1.json");
  fs::path r2 = scratch_file("random-2.json");
  std::string random_flags = "search --colouring " + colouring.string() + " --params " +
                             gap_params.string() + " --random --seed 11 --trials 40 --out ";
  CHECK(run_cli(random_flags + r1.string()).code == 1);
  CHECK(run_cli(random_flags + r2.string()).code == 1);
  CHECK(slurp(r1) == slurp(r2));
}

TEST_CASE("derive and promote read and push colourings") {
  fs::path colouring = write_doc("base.json", constant_colouring(6, 2, 0));

  // one subset per point; the sole pair colour 0 reads through entry 0
  nlohmann::json table{{"schema", "walkforge/1"},
                       {"kind", "derivation"},
                       {"chi", 6},
                       {"sigma2", 4},
                       {"theta", 0},
                       {"A", {{0}, {1}, {2}, {3}, {4}, {5}}},
                       {"colours", {{{"a", {0, 1}}, {"d", {{{0}, 3}}}}}}};
  fs::path table_file = write_doc("derivation.json", table);
  fs::path derived = scratch_file("derived.json");
  RunResult derive = run_cli("derive --colouring " + colouring.string() + " --table " +
                             table_file.string() + " --iota 0 --out " + derived.string());
  CHECK(derive.code == 0);
  nlohmann::json ddoc = nlohmann::json::parse(slurp(derived));
  CHECK(ddoc["kind"] == "colour-table");
  CHECK(ddoc["n"] == 6);
  CHECK(ddoc["sigma"] == 4);
  CHECK(ddoc["colours"][0][0] == 3);  // A[0] meets the entry's subset at {0}
  CHECK(ddoc["colours"][1][0] == 0);  // A[1] meets it at {1}: no value listed

  fs::path promoted = scratch_file("promoted.json");
  RunResult promote = run_cli("promote --colouring " + colouring.string() + " --shift --out " +
                              promoted.string());
  CHECK(promote.code == 0);
  nlohmann::json pdoc = nlohmann::json::parse(slurp(promoted));
  CHECK(pdoc["sigma"] == 2 + 6 - 1);

  CHECK(run_cli("promote --colouring " + colouring.string() + " --shift --identity").code == 2);
  CHECK(run_cli("promote --colouring " + colouring.string()).code == 2);
}

}  // TEST_SUITE("cli")
