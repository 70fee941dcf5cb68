#include "cli.hpp"

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

const std::string kData = SFT_TEST_DATA;
const std::string kGolden = SFT_TEST_GOLDEN;

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "sftool");
  std::vector<const char *> argv;
  for (const auto &a : args)
    argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = sft::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string data(const std::string &name) { return kData + "/" + name; }

std::string slurp(const std::string &path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct GoldenCase {
  const char *name;
  std::vector<std::string> args;
  int code;
};

const std::string kSixPoly = "t^6-3*t^5+4*t^4-6*t^3+5*t^2-3*t+2";

} // namespace

TEST_CASE("golden outputs") {
  const std::vector<GoldenCase> cases{
      {"nonplussed", {"invariants", "report", data("nonplussed.mat"), "--horizon", "4"}, 0},
      {"classify_6_1", {"classify2x2", "--a", "6", "--b", "1", "--counts"}, 0},
      {"classify_transpose", {"classify2x2", "--a", "256", "--b", "1", "--transpose", "7"}, 1},
      {"nzc_one", {"poly", "nzc", data("one.pmat")}, 1},
      {"sharp_example", {"poly", "sharp", data("asharp.pmat")}, 0},
      {"flow_a", {"poly", "flow", data("flow_a.pmat")}, 0},
      {"flow_b", {"poly", "flow", data("flow_b.pmat")}, 0},
      {"structure_cycle3", {"structure", data("cycle3.mat")}, 0},
      {"niep_check_z", {"niep", "check", "--poly", kSixPoly}, 1},
      {"niep_check_dense",
       {"niep", "check", "--poly", kSixPoly, "--ring", "dense", "--horizon", "32"}, 0},
      {"niep_suleimanova", {"niep", "suleimanova", "5", "-1", "-2"}, 0},
      {"niep_bound", {"niep", "bound", "--rpoly", "1,-1,9/20,-9/20"}, 0},
      {"niep_laffey", {"niep", "laffey", "--roots", "1,1/2,1/2", "--horizon", "10"}, 0},
      {"gyration_shift", {"gyration", "action", data("two.mat"), "--level", "6", "--shift"}, 0},
      {"gyration_orbit",
       {"gyration", "action", data("two.mat"), "--level", "6", "--orbit", "0,0,0,0,0,1"}, 0},
      {"sgc2_two", {"sgc2", "--R", "[[2]]", "--S", "[[1]]"}, 0},
      {"json_two", {"--json", "invariants", "report", data("two.mat"), "--horizon", "3"}, 0},
      {"neighbors_two",
       {"neighbors", data("two.mat"), "--max-inner", "2", "--max-entry", "2"}, 0},
      {"esse_two",
       {"equiv", "esse", data("two.mat"), "[[1,1],[1,1]]", "--R", "[[1,1]]", "--S", "[[1],[1]]"},
       0},
  };
  for (const auto &gc : cases) {
    CAPTURE(gc.name);
    Outcome o = run(gc.args);
    CHECK(o.code == gc.code);
    CHECK(o.out == slurp(kGolden + "/" + gc.name + ".txt"));
  }
}

TEST_CASE("paper examples through the command line") {
  Outcome np = run({"invariants", "report", data("nonplussed.mat")});
  CHECK(np.out.find("det(I-tA) = 1-3*t+2*t^2 = (1-2t)(1-t)") != std::string::npos);
  Outcome cl = run({"classify2x2", "--a", "6", "--b", "1", "--counts"});
  CHECK(cl.out == "SIM classes: 3, SE classes: 2\n");
  Outcome nz = run({"poly", "nzc", data("one.pmat")});
  CHECK(nz.code == 1);
  CHECK(nz.out.find("not NZC") != std::string::npos);
}

TEST_CASE("text and JSON carry the same values") {
  Outcome text = run({"invariants", "report", data("nonplussed.mat"), "--horizon", "5"});
  Outcome js = run({"--json", "invariants", "report", data("nonplussed.mat"), "--horizon", "5"});
  REQUIRE(js.code == 0);
  auto j = nlohmann::json::parse(js.out);
  CHECK(text.out.find("det(I-tA) = " + j["det_I_tA"].get<std::string>()) != std::string::npos);
  CHECK(text.out.find("det(I-A) = " + j["det_I_A"].dump()) != std::string::npos);
  std::string traces;
  for (const auto &t : j["traces"])
    traces += " " + t.dump();
  CHECK(text.out.find("traces 1..5:" + traces) != std::string::npos);

  Outcome ct = run({"classify2x2", "--a", "6", "--b", "1", "--counts"});
  Outcome cj = run({"--json", "classify2x2", "--a", "6", "--b", "1", "--counts"});
  auto c = nlohmann::json::parse(cj.out);
  CHECK(ct.out == "SIM classes: " + c["sim_classes"].dump() + ", SE classes: " +
                      c["se_classes"].dump() + "\n");

  Outcome gt = run({"gyration", "action", data("two.mat"), "--level", "6", "--shift"});
  Outcome gj = run({"--json", "gyration", "action", data("two.mat"), "--level", "6", "--shift"});
  auto g = nlohmann::json::parse(gj.out);
  CHECK(gt.out.find("SGCC_6 = " + g["sgcc"].dump() + " in Z/6") != std::string::npos);
}

TEST_CASE("exit codes") {
  Outcome bad = run({"invariants", "report", data("bad.mat")});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("line 3") != std::string::npos);
  CHECK(bad.err.find("column") != std::string::npos);

  CHECK(run({}).code == 2);
  CHECK(run({"nonsense"}).code == 2);
  CHECK(run({"invariants", "report", data("missing.mat")}).code == 2);
  CHECK(run({"classify2x2", "--a", "2", "--b", "2", "--counts"}).code != 0);

  Outcome budget = run({"neighbors", data("two.mat"), "--max-inner", "3", "--max-entry", "2",
                        "--budget", "5"});
  CHECK(budget.code == 3);

  CHECK(run({"equiv", "esse", data("two.mat"), "[[1,1],[1,2]]", "--R", "[[1,1]]", "--S",
             "[[1],[1]]"})
            .code == 1);
  CHECK(run({"niep", "check", "--roots", "2,1"}).code == 0);
  CHECK(run({"niep", "check", "--roots", "2,1", "--poly", "t-2"}).code == 2);
}

TEST_CASE("chains, move logs and paths") {
  Outcome ch = run({"equiv", "chain", data("chain2.json"), "--compress"});
  CHECK(ch.code == 0);
  CHECK(ch.out.find("lag 2") != std::string::npos);
  CHECK(ch.out.find("R = [[2]], S = [[2]]") != std::string::npos);

  auto log = std::filesystem::temp_directory_path() / "sft_cli_test_log.json";
  Outcome ps = run({"poly", "psse", "--R", "[[1,1]]", "--S", "[[1],[1]]", "--out", log.string()});
  CHECK(ps.code == 0);
  Outcome rp = run({"poly", "replay", log.string()});
  CHECK(rp.code == 0);
  CHECK(rp.out.find("replay ok") != std::string::npos);
  std::filesystem::remove(log);

  Outcome path = run({"sgc2", "--path", data("chain2.json")});
  CHECK(path.code == 0);
  CHECK(path.out.find("sgc2 = 0") != std::string::npos);
}

TEST_CASE("runs are deterministic") {
  std::vector<std::string> args{"neighbors", data("nonplussed.mat"), "--max-inner", "2",
                                "--max-entry", "1"};
  Outcome a = run(args), b = run(args);
  CHECK(a.code == b.code);
  CHECK(a.out == b.out);
  Outcome s1 = run({"--seed", "5", "sgc2", "--triangles", "50"});
  Outcome s2 = run({"--seed", "5", "sgc2", "--triangles", "50"});
  CHECK(s1.code == 0);
  CHECK(s1.out == s2.out);
}
