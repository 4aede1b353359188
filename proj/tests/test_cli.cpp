#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "doctest.h"
#include "fermi/cli.hpp"
#include "fermi/textio.hpp"

using fermi::json;

namespace {

const std::string kData = FERMI_TEST_DATA;

struct Run {
  int code;
  std::string out, err;
};

Run run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = fermi::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

Run run_case(const json& c) {
  bool fixtures = c.value("fixtures", false);
  if (fixtures) setenv("FERMI_PRESET_DIR", (kData + "/fixtures/presets").c_str(), 1);
  Run r = run(c.at("args").get<std::vector<std::string>>());
  if (fixtures) unsetenv("FERMI_PRESET_DIR");
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return "<missing " + path + ">";
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json cases() {
  std::ifstream in(kData + "/golden/cases.json");
  return json::parse(in);
}

// every operation the library exposes; each must sit under exactly one command
const std::vector<std::string> kOps = {
    "poly_add",          "poly_mul",         "q_binomial",      "series_from_poly",   "series_add",
    "series_mul",        "series_invert",    "pochhammer",      "enumerate_ssyt",     "charge",
    "kostka_foulkes",    "kostka_number",    "enumerate_paths", "f_op",               "e_op",
    "is_highest_weight", "local_energy",     "intrinsic_energy", "vacancy",           "lower_bound",
    "enumerate_rc",      "cocharge",         "path_to_rc",      "rc_to_path",         "check_statistic",
    "fermionic_kostka",  "path_kostka",      "restricted_kostka", "verify_identity",  "verify_bailey_pair",
    "bailey_step",       "eval_fermionic",   "eval_bosonic",    "compare_series",     "character",
};

}  // namespace

TEST_CASE("golden outputs and exit codes") {
  // FERMI_UPDATE_GOLDEN=1 rewrites the expected files instead of comparing
  const bool update = std::getenv("FERMI_UPDATE_GOLDEN") != nullptr;
  for (const auto& c : cases()) {
    const std::string name = c.at("name");
    INFO("case ", name);
    Run r = run_case(c);
    const std::string base = kData + "/golden/" + name;
    if (update) {
      std::ofstream(base + ".out", std::ios::binary) << r.out;
      std::ofstream(base + ".err", std::ios::binary) << r.err;
    }
    CHECK(r.code == c.at("exit").get<int>());
    CHECK(r.out == slurp(base + ".out"));
    CHECK(r.err == slurp(base + ".err"));
    if (r.code == 0) CHECK(r.err.empty());
    if (r.code == 2 || r.code == 4 || r.code == 5) CHECK(r.err.rfind("error: ", 0) == 0);
  }
}

TEST_CASE("reruns are byte-identical") {
  for (const auto& c : cases()) {
    INFO("case ", c.at("name").get<std::string>());
    Run a = run_case(c), b = run_case(c);
    CHECK(a.code == b.code);
    CHECK(a.out == b.out);
    CHECK(a.err == b.err);
  }
}

TEST_CASE("every subcommand has a golden case") {
  std::set<std::string> seen;
  for (const auto& c : cases())
    for (const auto& a : c.at("args")) seen.insert(a.get<std::string>());
  for (const auto& cmd : fermi::cli::command_registry()) {
    INFO(cmd.name);
    CHECK(seen.count(cmd.name) == 1);
  }
}

TEST_CASE("command registry covers every operation exactly once") {
  std::map<std::string, int> hits;
  for (const auto& cmd : fermi::cli::command_registry())
    for (const auto& op : cmd.ops) ++hits[op];
  for (const auto& op : kOps) {
    INFO(op);
    CHECK(hits[op] == 1);
  }
  CHECK(hits.size() == kOps.size());
}

TEST_CASE("json envelopes carry the same data as text") {
  Run t = run({"kostka", "--shapes", "1x1,1x1", "--n", "2", "--weight", "1,1", "--side", "both"});
  Run j = run({"--format", "json", "kostka", "--shapes", "1x1,1x1", "--n", "2", "--weight", "1,1", "--side", "both"});
  REQUIRE(t.code == 0);
  REQUIRE(j.code == 0);
  json env = json::parse(j.out);
  for (const char* key : {"command", "input", "result", "timing", "version", "exit_code"}) CHECK(env.contains(key));
  CHECK(env["timing"].is_null());
  CHECK(t.out == "fermionic (normalized): " + env["result"]["normalized"]["text"].get<std::string>() +
                     "\npath: " + env["result"]["path"]["text"].get<std::string>() + "\nequal\n");
  CHECK(env["result"]["path"]["text"] == "1 + q");

  Run rc = run({"--format", "json", "rc-list", "--shapes", "1x1,1x1", "--n", "2", "--weight", "1,1"});
  json objs = json::parse(rc.out)["result"]["rigged_configurations"];
  CHECK(objs.size() == 2);
  for (const auto& o : objs) CHECK(o["partitions"][0][0].contains("vacancy"));
}

TEST_CASE("highest weight path counts equal kostka numbers") {
  struct Inst {
    std::string shapes, weight, mu;
  };
  // weight = lambda, shapes sorted = mu
  for (const auto& [shapes, lambda, mu] : std::vector<Inst>{{"1x1,1x1,1x1", "2,1", "1,1,1"},
                                                           {"1x2,1x1,1x1", "2,1,1", "2,1,1"},
                                                           {"1x2,1x2", "3,1", "2,2"},
                                                           {"1x1,1x1,1x1,1x1", "2,2", "1,1,1,1"}}) {
    INFO(shapes, " ", lambda);
    int n = static_cast<int>(fermi::parse_int_list(mu).size());
    n = std::max(n, static_cast<int>(fermi::parse_int_list(lambda).size()));
    Run p = run({"--format", "json", "paths", "--shapes", shapes, "--n", std::to_string(n), "--weight", lambda,
                 "--highest-weight-only"});
    Run s = run({"--format", "json", "ssyt", "--shape", lambda, "--content", mu});
    REQUIRE(p.code == 0);
    REQUIRE(s.code == 0);
    CHECK(json::parse(p.out)["result"]["count"].get<int>() ==
          std::stoi(json::parse(s.out)["result"]["kostka_number"].get<std::string>()));
  }
}

TEST_CASE("timing is opt-in") {
  Run r = run({"--timing", "qbinom", "3", "1"});
  CHECK(r.code == 0);
  CHECK(r.err.rfind("time: ", 0) == 0);
  Run j = run({"--timing", "--format", "json", "qbinom", "3", "1"});
  CHECK(json::parse(j.out)["timing"].contains("ms"));
}

TEST_CASE("help exits zero") {
  Run r = run({"--help"});
  CHECK(r.code == 0);
  CHECK(r.out.find("kostka") != std::string::npos);
}
