#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "pvi/polygon.hpp"
#include "pvi_app.hpp"

using namespace pvi;
using namespace pvi::app;
using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

json exotic_config() {
  return {{"family", "exotic-generic"}, {"a", "1"}, {"b", "1"}, {"c", "1"}, {"d", "1"}, {"theta", "1"}};
}

json complicated_config() {
  return {{"family", "complicated-generic"}, {"a", "1"}, {"b", "1"}, {"c", "2"}, {"d", "1"}, {"K", 3}, {"J", 16}};
}

RunConfig with_tasks(json j, std::vector<std::string> tasks) {
  j["tasks"] = tasks;
  return parse_config(j);
}

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("pvi_cli_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

fs::path write_json(const fs::path& dir, const std::string& name, const json& j) {
  const fs::path p = dir / name;
  std::ofstream(p) << j.dump();
  return p;
}

int call(std::vector<std::string> args) {
  args.insert(args.begin(), "pvi");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  return main_entry(static_cast<int>(argv.size()), argv.data());
}

}  // namespace

TEST_CASE("config parsing is lossless and strict") {
  json j = exotic_config();
  j["a"] = "1/2-3/4*i";
  j["theta"] = "2/3";
  j["K"] = 2;
  j["tasks"] = {"verify", "expand", "expand"};
  const RunConfig cfg = parse_config(j);
  CHECK(cfg.params.a == GaussianRational(Rational(1, 2), Rational(-3, 4)));
  CHECK(cfg.family.theta == Rational(2, 3));
  CHECK(cfg.K == 2);
  CHECK(cfg.J == 24);
  CHECK(cfg.max_deg == 12);
  CHECK(cfg.tasks == std::vector<std::string>{"expand", "verify"});
  const RunConfig back = parse_config(config_to_json(cfg));
  CHECK(back.params.a == cfg.params.a);
  CHECK(back.family.theta == cfg.family.theta);
  CHECK(back.tasks == cfg.tasks);

  json ints = exotic_config();
  ints["b"] = -3;
  CHECK(parse_config(ints).params.b == GaussianRational(-3));
}

TEST_CASE("malformed configs are rejected") {
  auto rejects = [](json j) { CHECK_THROWS_AS(parse_config(j), ConfigParseError); };
  json j = exotic_config();
  j["a"] = "1/0";
  rejects(j);
  j = exotic_config();
  j["b"] = "one";
  rejects(j);
  j = exotic_config();
  j["theta"] = "1+i";
  rejects(j);
  j = exotic_config();
  j["K"] = -1;
  rejects(j);
  j = exotic_config();
  j["J"] = 2.5;
  rejects(j);
  j = exotic_config();
  j["tasks"] = {"plot"};
  rejects(j);
  j = exotic_config();
  j["colour"] = "blue";
  rejects(j);
  j = exotic_config();
  j.erase("d");
  rejects(j);
  j = exotic_config();
  j["family"] = "B9";
  rejects(j);
  rejects(json::array());
}

TEST_CASE("constraint-violating configs are rejected before computation") {
  json j = complicated_config();
  j["c"] = "1";
  CHECK_THROWS_AS(parse_config(j), ConstraintViolation);
  j = exotic_config();
  j["family"] = "B6";
  CHECK_THROWS_AS(parse_config(j), ConstraintViolation);
  j = exotic_config();
  j["theta"] = "0";
  CHECK_THROWS_AS(parse_config(j), ConstraintViolation);
}

TEST_CASE("complicated expand report") {
  const RunResult res = run(with_tasks(complicated_config(), {"expand"}));
  CHECK(res.certified);
  CHECK(res.report["schema"] == 1);
  const json& t = res.report["payload"]["tasks"]["expand"];
  CHECK(t["coefficients"].size() == 4);
  CHECK(t["audit"].size() == 4);
  for (const auto& g : t["audit"]) CHECK(g["zero"] == true);
  for (const auto& h : t["heads"]) CHECK(h["law_holds"] == true);
  CHECK(res.report["payload"]["certified"] == true);
}

TEST_CASE("polygon report holds the k=1 rectangle") {
  const RunResult res = run(with_tasks(exotic_config(), {"polygon"}));
  REQUIRE(res.certified);
  const json& local = res.report["payload"]["tasks"]["polygon"]["operator_k1"];
  bool found = false;
  for (const auto& e : local) {
    if (e["point"] != "0") continue;
    found = true;
    NewtonPolygon p;
    for (const auto& v : e["vertices"]) p.vertices.push_back({Rational(v[0].get<long>()), v[1].get<int>()});
    CHECK(same_polygon(p, {{Rational(0), 0}, {Rational(0), 1}, {Rational(8), 1}, {Rational(8), 0}}));
  }
  CHECK(found);
}

TEST_CASE("reports are byte-for-byte deterministic") {
  const RunConfig cfg = with_tasks(exotic_config(), {"expand", "fuchs", "verify"});
  const std::string first = render(run(cfg).report);
  CHECK(first == render(run(cfg).report));
  CHECK(first.find("\"schema\": 1") != std::string::npos);
}

TEST_CASE("fuchs report for the exotic k=1 operator") {
  const RunResult res = run(with_tasks(exotic_config(), {"fuchs"}));
  REQUIRE(res.certified);
  const json& t = res.report["payload"]["tasks"]["fuchs"];
  CHECK(t["degrees"]["P2"] == 10);
  CHECK(t["points"].size() == 6);
  for (const auto& p : t["points"]) CHECK(p["fuchsian"] == true);
  CHECK(t["branching_points"] == json::array({"0", "inf"}));
}

TEST_CASE("task errors surface with context and fail certification") {
  const RunResult res = run(with_tasks(complicated_config(), {"expand", "rationality"}));
  CHECK_FALSE(res.certified);
  const json& tasks = res.report["payload"]["tasks"];
  CHECK(tasks["expand"]["certified"] == true);
  CHECK(tasks["rationality"]["certified"] == false);
  CHECK(tasks["rationality"]["error"]["type"] == "PreconditionFailed");
  bool mentioned = false;
  for (const auto& l : res.summary) mentioned = mentioned || l.rfind("rationality: PreconditionFailed", 0) == 0;
  CHECK(mentioned);
}

TEST_CASE("exit status tracks certification") {
  const fs::path dir = scratch_dir("exit");
  const fs::path good = write_json(dir, "good.json", complicated_config());
  json bad = exotic_config();
  bad["a"] = "1/0";
  const fs::path malformed = write_json(dir, "malformed.json", bad);
  json tight = exotic_config();
  tight["K"] = 1;
  tight["max_deg"] = 1;  // too small for phi_1
  const fs::path uncertified = write_json(dir, "tight.json", tight);

  const fs::path out = dir / "good.report.json";
  CHECK(call({"expand", good.string(), "--out", out.string()}) == 0);
  CHECK(fs::exists(out));
  CHECK(json::parse(std::ifstream(out))["schema"] == 1);
  CHECK(call({"expand", malformed.string(), "--out", (dir / "m.json").string()}) == 2);
  CHECK_FALSE(fs::exists(dir / "m.json"));
  CHECK(call({"rationality", uncertified.string(), "--out", (dir / "t.json").string()}) == 1);
  CHECK(call({"rationality", good.string(), "--out", (dir / "r.json").string()}) == 1);
  CHECK(call({"expand", (dir / "missing.json").string()}) == 2);
  CHECK(call({"expand", good.string(), "--K", "-1"}) == 2);
  CHECK(call({"explode", good.string()}) == 2);
}

TEST_CASE("flags override config values") {
  const fs::path dir = scratch_dir("override");
  const fs::path cfg = write_json(dir, "c.json", complicated_config());
  const fs::path out = dir / "r.json";
  REQUIRE(call({"expand", cfg.string(), "--K", "1", "--J", "8", "--task", "verify", "--out", out.string()}) == 0);
  const json r = json::parse(std::ifstream(out));
  CHECK(r["payload"]["config"]["K"] == 1);
  CHECK(r["payload"]["config"]["J"] == 8);
  CHECK(r["payload"]["config"]["tasks"] == json::array({"expand", "verify"}));
  CHECK(r["payload"]["tasks"]["expand"]["coefficients"].size() == 2);
}

TEST_CASE("batch mode runs every config and aggregates exit status") {
  const fs::path dir = scratch_dir("batch");
  write_json(dir, "a.json", complicated_config());
  json other = complicated_config();
  other["c"] = "3";
  write_json(dir, "b.json", other);
  const fs::path out = dir / "reports";
  CHECK(call({"verify", "--batch", dir.string(), "--out", out.string()}) == 0);
  CHECK(fs::exists(out / "a.report.json"));
  CHECK(fs::exists(out / "b.report.json"));
  const std::string single_path = (out / "single.out").string();
  REQUIRE(call({"verify", (dir / "a.json").string(), "--out", single_path}) == 0);
  std::ifstream x(out / "a.report.json"), y(single_path);
  CHECK(std::string(std::istreambuf_iterator<char>(x), {}) == std::string(std::istreambuf_iterator<char>(y), {}));

  json broken = complicated_config();
  broken["a"] = "1/0";
  write_json(dir, "c.json", broken);
  CHECK(call({"verify", "--batch", dir.string(), "--out", out.string()}) == 2);
}
