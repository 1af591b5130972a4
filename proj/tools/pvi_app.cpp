#include "pvi_app.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

#include "pvi/fuchs.hpp"
#include "pvi/recursion.hpp"

namespace pvi::app {
namespace {

using json = nlohmann::json;
using GR = GaussianRational;
namespace fs = std::filesystem;

constexpr const char* kVersion = "0.1.0";
constexpr long kBudgetLimit = 100000;

template <class E>
bool is(const std::exception& e) {
  return dynamic_cast<const E*>(&e) != nullptr;
}

std::string error_kind(const std::exception& e) {
  // most derived first
  if (is<ConfigParseError>(e)) return "ConfigParseError";
  if (is<ParseError>(e)) return "ParseError";
  if (is<DivisionByZero>(e)) return "DivisionByZero";
  if (is<IncompatibleExtensions>(e)) return "IncompatibleExtensions";
  if (is<UnsupportedExtension>(e)) return "UnsupportedExtension";
  if (is<ZeroSeries>(e)) return "ZeroSeries";
  if (is<UnknownOrder>(e)) return "UnknownOrder";
  if (is<UnknownCoefficient>(e)) return "UnknownCoefficient";
  if (is<InsufficientTerms>(e)) return "InsufficientTerms";
  if (is<NonIntegerGrade>(e)) return "NonIntegerGrade";
  if (is<ConstraintViolation>(e)) return "ConstraintViolation";
  if (is<TruncationResidualNonzero>(e)) return "TruncationResidualNonzero";
  if (is<InsufficientKnownOrder>(e)) return "InsufficientKnownOrder";
  if (is<ResonantHead>(e)) return "ResonantHead";
  if (is<InconsistentTruncation>(e)) return "InconsistentTruncation";
  if (is<PreconditionFailed>(e)) return "PreconditionFailed";
  if (is<NotASingularPoint>(e)) return "NotASingularPoint";
  if (is<NotFuchsian>(e)) return "NotFuchsian";
  if (is<HigherLogUnsupported>(e)) return "HigherLogUnsupported";
  if (is<Error>(e)) return "Error";
  return "std::exception";
}

// ---- config ---------------------------------------------------------------

GR parse_scalar(const json& j, const std::string& key) {
  try {
    if (j.is_number_integer()) return GR(j.get<long>());
    if (j.is_string()) return GR::parse(j.get<std::string>());
  } catch (const ParseError& e) {
    throw ConfigParseError("field '" + key + "': " + e.what());
  }
  throw ConfigParseError("field '" + key + "' must be an exact scalar string or an integer");
}

int parse_budget(const json& j, const std::string& key) {
  if (!j.is_number_integer()) throw ConfigParseError("field '" + key + "' must be an integer");
  const long v = j.get<long>();
  if (v < 0 || v > kBudgetLimit)
    throw ConfigParseError("field '" + key + "' must lie in [0, " + std::to_string(kBudgetLimit) + "]");
  return static_cast<int>(v);
}

// ---- serialization --------------------------------------------------------

json rational_json(const Rational& q) {
  if (q.get_den() == 1 && q.get_num().fits_slong_p()) return q.get_num().get_si();
  return q.get_str();
}

json poly_json(const Poly& p) {
  json out = json::array();
  for (int n = 0; n <= p.degree(); ++n) out.push_back(p.coeff(n).str());
  return out;
}

json rf_json(const RationalFunction& f) {
  return {{"text", f.str("chi")}, {"num", poly_json(f.num())}, {"den", poly_json(f.den())}};
}

json series_json(const Series& s) {
  json c = json::array();
  for (const auto& v : s.stored()) c.push_back(v.str());
  return {{"min_exp", s.min_exp()}, {"precision", s.is_exact() ? json(nullptr) : json(s.precision())}, {"coefficients", c}};
}

json vertices_json(const NewtonPolygon& p) {
  json out = json::array();
  for (const auto& v : p.vertices) out.push_back(json::array({rational_json(v.q1), v.q2}));
  return out;
}

template <class T, class F>
json optional_json(const std::optional<T>& v, F&& f) {
  return v ? json(f(*v)) : json(nullptr);
}

std::string kind_name(SingularPoint::Kind k) {
  switch (k) {
    case SingularPoint::Kind::zero: return "zero";
    case SingularPoint::Kind::finite: return "finite";
    case SingularPoint::Kind::infinity: return "infinity";
  }
  return "?";
}

// ---- tasks ----------------------------------------------------------------

struct TaskOutcome {
  json data = json::object();
  bool certified = false;
  std::string line;
};

class Runner {
 public:
  explicit Runner(const RunConfig& cfg) : cfg_(cfg) {}

  TaskOutcome task(const std::string& name) {
    if (name == "expand") return expand_task();
    if (name == "polygon") return polygon_task();
    if (name == "fuchs") return fuchs_task();
    if (name == "rationality") return rationality_task();
    if (name == "verify") return verify_task();
    throw PreconditionFailed("unknown task '" + name + "'");
  }

 private:
  const ExpansionState& state() {
    if (!state_) state_ = expand(cfg_.family, cfg_.params, cfg_.K, cfg_.J);
    return *state_;
  }

  // Normalized first-order operator with its exact right side.
  const LinearOperator& first_operator() {
    if (!op1_) {
      ExpansionState s = prepare_state(cfg_.family, cfg_.params, 1, cfg_.J);
      s.coefficients.push_back(expand_to(s.phi0, cfg_.J + 8));
      CoefficientEquation eq = build_linear_operator_k(s, 1);
      eq.rhs = compute_rhs_k(s, 1);
      op1_ = normalize_operator(eq, exact_rhs_k(s, {}, 1));
    }
    return *op1_;
  }

  std::vector<Poly> hints() const { return singular_point_hints(cfg_.family, cfg_.params); }

  TaskOutcome expand_task() {
    const ExpansionState& s = state();
    TaskOutcome out;
    json coeffs = json::array();
    for (size_t k = 0; k < s.coefficients.size(); ++k) coeffs.push_back({{"k", k}, {"series", series_json(s.coefficients[k])}});
    json heads = json::array();
    auto str = [](const GR& z) { return z.str(); };
    for (const HeadData& h : s.heads) {
      json law = nullptr;
      if (h.closed_form && h.normalized) law = *h.closed_form == *h.normalized;
      heads.push_back({{"k", h.k},
                       {"h", h.head.h},
                       {"r", optional_json(h.r, [](int r) { return r; })},
                       {"I_at_r", optional_json(h.at_r, str)},
                       {"I_at_k", h.at_k.str()},
                       {"normalized", optional_json(h.normalized, str)},
                       {"closed_form", optional_json(h.closed_form, str)},
                       {"law_holds", law}});
    }
    json audit = json::array();
    std::optional<GradeAudit> bad;
    for (const GradeAudit& g : s.audit) {
      audit.push_back({{"k", g.k},
                       {"zero", g.zero},
                       {"known_to", g.known_to},
                       {"first_nonzero", optional_json(g.first_nonzero, [](int e) { return e; })}});
      if (!g.zero && !bad) bad = g;
    }
    out.data = {{"K", s.K},
                {"J", s.J},
                {"working_precision", s.working_precision},
                {"phi0", rf_json(s.phi0)},
                {"coefficients", coeffs},
                {"heads", heads},
                {"audit", audit}};
    out.certified = s.certified();
    std::ostringstream line;
    line << "expand: " << s.coefficients.size() << " series, K=" << s.K << " J=" << s.J << " W=" << s.working_precision;
    if (out.certified)
      line << ", residual audit zero for grades 0.." << s.K;
    else if (bad)
      line << ", residual audit FAILED at grade " << bad->k
           << (bad->first_nonzero ? " (chi^" + std::to_string(*bad->first_nonzero) + ")" : std::string());
    else
      line << ", residual audit incomplete";
    out.line = line.str();
    return out;
  }

  TaskOutcome polygon_task() {
    TaskOutcome out;
    const Derivation der = derivation_for(cfg_.family);
    const NewtonPolygon eq_poly = build_polygon(support(pvi_diffsum<RationalFunction>(cfg_.params, der)));
    const LinearOperator& op = first_operator();
    json local = json::array();
    std::string zero_shape = "n/a";
    for (const SingularPoint& pt : singular_points(op, hints())) {
      if (pt.kind == SingularPoint::Kind::infinity) continue;
      json entry = {{"point", pt.label()}, {"multiplicity", pt.multiplicity}};
      if (!pt.location) {
        entry["vertices"] = nullptr;
        entry["note"] = "point has no explicit location";
      } else {
        try {
          const NewtonPolygon poly = operator_polygon(op, *pt.location);
          entry["vertices"] = vertices_json(poly);
          if (pt.kind == SingularPoint::Kind::zero) zero_shape = vertices_json(poly).dump();
        } catch (const PreconditionFailed& e) {
          entry["vertices"] = nullptr;
          entry["note"] = e.what();
        }
      }
      local.push_back(entry);
    }
    out.data = {{"equation", {{"vertices", vertices_json(eq_poly)}}}, {"operator_k1", local}};
    out.certified = true;
    out.line = "polygon: equation hull " + vertices_json(eq_poly).dump() + ", k=1 operator at 0 " + zero_shape;
    return out;
  }

  TaskOutcome fuchs_task() {
    TaskOutcome out;
    const LinearOperator& op = first_operator();
    const LocalShapeReport rep = local_shape_report(op, hints());
    json points = json::array();
    size_t non_fuchsian = 0;
    auto an = [](const AlgebraicNumber& z) { return z.str(); };
    for (const SingularPointReport& r : rep.points) {
      json ex = json::array();
      for (const auto& e : r.exponents) ex.push_back(e.str());
      if (!r.fuchsian) ++non_fuchsian;
      points.push_back({{"point", r.point.label()},
                        {"kind", kind_name(r.point.kind)},
                        {"multiplicity", r.point.multiplicity},
                        {"fuchsian", r.fuchsian},
                        {"exponents", ex},
                        {"log", r.log_flag},
                        {"particular_exponent", optional_json(r.particular_exponent, an)},
                        {"particular_log", r.particular_log},
                        {"branching", r.branching}});
    }
    out.data = {{"k", 1},
                {"degrees", {{"P2", op.P2.degree()}, {"P1", op.P1.degree()}, {"P0", op.P0.degree()}}},
                {"P2", to_string(op.P2, "chi")},
                {"P1", to_string(op.P1, "chi")},
                {"P0", to_string(op.P0, "chi")},
                {"rhs", op.rhs ? json(op.rhs->str("chi")) : json(nullptr)},
                {"multiplier", op.multiplier.str("chi")},
                {"points", points},
                {"unresolved", rep.unresolved},
                {"branching_points", rep.branching_points()}};
    out.certified = rep.unresolved.empty();
    std::ostringstream line;
    line << "fuchs: k=1 operator, " << rep.points.size() << " singular points, " << non_fuchsian << " non-Fuchsian";
    if (!rep.unresolved.empty()) line << ", " << rep.unresolved.size() << " unresolved";
    out.line = line.str();
    return out;
  }

  TaskOutcome rationality_task() {
    TaskOutcome out;
    const auto certs = rationality_certificates(state(), cfg_.max_deg);
    json list = json::array();
    size_t passed = 0;
    for (const RationalityCertificate& c : certs) {
      json entry = {{"k", c.k},
                    {"certified", c.certified()},
                    {"series_match", c.series_match},
                    {"operator_identity", c.operator_identity},
                    {"value", optional_json(c.value, rf_json)},
                    {"note", c.note}};
      if (c.value) {
        entry["num_degree"] = c.value->num().degree();
        entry["den_degree"] = c.value->den().degree();
      }
      if (c.certified()) ++passed;
      list.push_back(entry);
    }
    out.data = {{"max_deg", cfg_.max_deg}, {"certificates", list}};
    out.certified = passed == certs.size();
    out.line = "rationality: " + std::to_string(passed) + "/" + std::to_string(certs.size()) + " coefficients certified rational";
    return out;
  }

  TaskOutcome verify_task() {
    TaskOutcome out;
    json checks = json::object();
    bool ok = true;
    try {
      const TruncationReport t = check_truncated_solution(cfg_.family, cfg_.params);
      checks["truncation"] = {{"passed", true}, {"c", rational_json(t.c)}, {"monomials", t.monomials}};
    } catch (const TruncationResidualNonzero& e) {
      checks["truncation"] = {{"passed", false}, {"message", e.what()}};
      ok = false;
    }
    const ExpansionState& s = state();
    checks["residual_audit"] = {{"passed", s.certified()}};
    ok = ok && s.certified();
    bool law = true;
    size_t law_checked = 0;
    for (const HeadData& h : s.heads) {
      if (!h.closed_form || !h.normalized) continue;
      ++law_checked;
      law = law && *h.closed_form == *h.normalized;
    }
    checks["head_law"] = {{"passed", law}, {"checked", law_checked}};
    ok = ok && law;
    // informational: does not enter certification
    const FamilyCheck fc = check_family_closed_form(cfg_.family, cfg_.params);
    out.data = {{"checks", checks},
                {"family_closed_form",
                 {{"matches", fc.matches}, {"sign", fc.sign}, {"closed_form", fc.closed_form}, {"note", fc.note}}}};
    out.certified = ok;
    out.line = std::string("verify: truncation ") + (checks["truncation"]["passed"].get<bool>() ? "ok" : "FAILED") +
               ", audit " + (s.certified() ? "ok" : "FAILED") + ", head law " + (law ? "ok" : "FAILED") + " (" +
               std::to_string(law_checked) + " checked)";
    return out;
  }

  const RunConfig& cfg_;
  std::optional<ExpansionState> state_;
  std::optional<LinearOperator> op1_;
};

// ---- command line ---------------------------------------------------------

struct Overrides {
  std::optional<int> K, J, max_deg;
  std::vector<std::string> tasks;
};

RunConfig prepare(const fs::path& path, const std::string& command, const Overrides& ov) {
  RunConfig cfg = load_config(path);
  if (ov.K) cfg.K = *ov.K;
  if (ov.J) cfg.J = *ov.J;
  if (ov.max_deg) cfg.max_deg = *ov.max_deg;
  std::vector<std::string> tasks = ov.tasks.empty() ? cfg.tasks : ov.tasks;
  tasks.push_back(command);
  cfg.tasks = canonical_tasks(tasks);
  return cfg;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << text;
  if (!f) throw std::runtime_error("write failed for " + path.string());
}

struct Job {
  fs::path config;
  fs::path report;
  int code = 0;
  std::vector<std::string> lines;
};

bool is_config_error(const std::exception& e) { return is<ParseError>(e) || is<ConstraintViolation>(e); }

void run_job(Job& job, const std::string& command, const Overrides& ov) {
  RunConfig cfg;
  try {
    cfg = prepare(job.config, command, ov);
  } catch (const std::exception& e) {
    job.code = is_config_error(e) ? 2 : 1;
    job.lines.push_back(error_kind(e) + ": " + e.what());
    return;
  }
  const auto t0 = std::chrono::steady_clock::now();
  RunResult res = run(cfg);
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  job.lines = res.summary;
  std::ostringstream tail;
  tail.precision(3);
  tail << (res.certified ? "certified" : "NOT certified") << " in " << std::fixed << secs << " s";
  job.lines.push_back(tail.str());
  job.code = res.certified ? 0 : 1;
  try {
    write_file(job.report, render(res.report));
  } catch (const std::exception& e) {
    job.code = 2;
    job.lines.push_back(e.what());
  }
}

}  // namespace

std::vector<std::string> canonical_tasks(const std::vector<std::string>& tasks) {
  for (const auto& t : tasks)
    if (std::find(kTaskOrder.begin(), kTaskOrder.end(), t) == kTaskOrder.end())
      throw ConfigParseError("unknown task '" + t + "'");
  std::vector<std::string> out;
  for (const auto& t : kTaskOrder)
    if (std::find(tasks.begin(), tasks.end(), t) != tasks.end()) out.push_back(t);
  return out;
}

RunConfig parse_config(const json& j) {
  if (!j.is_object()) throw ConfigParseError("config must be a JSON object");
  static const std::set<std::string> known{"family", "a", "b", "c", "d", "theta", "K", "J", "max_deg", "tasks"};
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!known.count(it.key())) throw ConfigParseError("unknown field '" + it.key() + "'");
  RunConfig cfg;
  if (!j.contains("family") || !j["family"].is_string()) throw ConfigParseError("field 'family' must be a string");
  try {
    cfg.family.kind = parse_family_kind(j["family"].get<std::string>());
  } catch (const ParseError& e) {
    throw ConfigParseError(e.what());
  }
  GR* slots[] = {&cfg.params.a, &cfg.params.b, &cfg.params.c, &cfg.params.d};
  const char* names[] = {"a", "b", "c", "d"};
  for (int n = 0; n < 4; ++n) {
    if (!j.contains(names[n])) throw ConfigParseError(std::string("missing field '") + names[n] + "'");
    *slots[n] = parse_scalar(j[names[n]], names[n]);
  }
  if (j.contains("theta")) {
    const GR th = parse_scalar(j["theta"], "theta");
    if (sgn(th.im()) != 0) throw ConfigParseError("field 'theta' must be rational");
    cfg.family.theta = th.re();
  }
  if (j.contains("K")) cfg.K = parse_budget(j["K"], "K");
  if (j.contains("J")) cfg.J = parse_budget(j["J"], "J");
  if (j.contains("max_deg")) cfg.max_deg = parse_budget(j["max_deg"], "max_deg");
  if (j.contains("tasks")) {
    if (!j["tasks"].is_array()) throw ConfigParseError("field 'tasks' must be an array of strings");
    std::vector<std::string> tasks;
    for (const auto& t : j["tasks"]) {
      if (!t.is_string()) throw ConfigParseError("field 'tasks' must be an array of strings");
      tasks.push_back(t.get<std::string>());
    }
    cfg.tasks = canonical_tasks(tasks);
  }
  validate_family(cfg.family, cfg.params);
  return cfg;
}

RunConfig load_config(const fs::path& path) {
  std::ifstream f(path);
  if (!f) throw ConfigParseError("cannot open config " + path.string());
  json j;
  try {
    j = json::parse(f);
  } catch (const json::parse_error& e) {
    throw ConfigParseError(path.string() + ": " + e.what());
  }
  return parse_config(j);
}

json config_to_json(const RunConfig& cfg) {
  json j = {{"family", to_string(cfg.family.kind)},
            {"a", cfg.params.a.str()},
            {"b", cfg.params.b.str()},
            {"c", cfg.params.c.str()},
            {"d", cfg.params.d.str()},
            {"K", cfg.K},
            {"J", cfg.J},
            {"max_deg", cfg.max_deg},
            {"tasks", cfg.tasks}};
  if (is_exotic(cfg.family.kind)) j["theta"] = cfg.family.theta.get_str();
  return j;
}

RunResult run(const RunConfig& cfg) {
  Runner runner(cfg);
  RunResult res;
  res.certified = true;
  json tasks = json::object();
  for (const auto& name : canonical_tasks(cfg.tasks)) {
    TaskOutcome out;
    try {
      out = runner.task(name);
    } catch (const std::exception& e) {
      out.data = {{"error", {{"type", error_kind(e)}, {"message", e.what()}}}};
      out.certified = false;
      out.line = name + ": " + error_kind(e) + ": " + e.what();
    }
    out.data["certified"] = out.certified;
    tasks[name] = std::move(out.data);
    res.certified = res.certified && out.certified;
    res.summary.push_back(out.line);
  }
  res.report = {{"schema", kSchemaVersion},
                {"payload", {{"config", config_to_json(cfg)}, {"tasks", tasks}, {"certified", res.certified}}},
                {"metadata", {{"tool", "pvi"}, {"version", kVersion}}}};
  return res;
}

std::string render(const json& report) { return report.dump(2) + "\n"; }

int main_entry(int argc, char** argv) {
  CLI::App app{"Exact formal expansions of the sixth Painleve equation"};
  app.require_subcommand(1);
  std::string config_path, out_path, batch_dir;
  Overrides ov;
  const std::vector<std::pair<std::string, std::string>> commands{
      {"expand", "coefficients phi_0..phi_K with residual audit"},
      {"polygon", "Newton polygons of the equation and of the k=1 operator"},
      {"fuchs", "singular points and indicial data of the k=1 operator"},
      {"rationality", "rational reconstruction of phi_1..phi_K (exotic)"},
      {"verify", "truncation, residual audit and head-factor checks"}};
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("config", config_path, "run configuration (JSON)");
    sub->add_option("--out", out_path, "report file; with --batch, the report directory");
    sub->add_option("--task", ov.tasks, "extra task to run (repeatable); replaces the config's task list");
    sub->add_option("--K", ov.K, "number of coefficients beyond phi_0")->check(CLI::Range(0L, kBudgetLimit));
    sub->add_option("--J", ov.J, "absolute chi-precision")->check(CLI::Range(0L, kBudgetLimit));
    sub->add_option("--max-deg", ov.max_deg, "degree bound for rational reconstruction")->check(CLI::Range(0L, kBudgetLimit));
    sub->add_option("--batch", batch_dir, "run every *.json config in a directory");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  const std::string command = app.get_subcommands().front()->get_name();
  if (config_path.empty() == batch_dir.empty()) {
    std::cerr << "pvi: give exactly one of <config.json> or --batch <dir>\n";
    return 2;
  }

  if (batch_dir.empty()) {
    RunConfig cfg;
    try {
      cfg = prepare(config_path, command, ov);
    } catch (const std::exception& e) {
      std::cerr << "pvi: " << error_kind(e) << ": " << e.what() << "\n";
      return is_config_error(e) ? 2 : 1;
    }
    const RunResult res = run(cfg);
    std::ostream& human = out_path.empty() ? std::cerr : std::cout;
    for (const auto& l : res.summary) human << l << "\n";
    human << (res.certified ? "certified" : "NOT certified") << "\n";
    if (out_path.empty()) {
      std::cout << render(res.report);
    } else {
      try {
        write_file(out_path, render(res.report));
      } catch (const std::exception& e) {
        std::cerr << "pvi: " << e.what() << "\n";
        return 2;
      }
    }
    return res.certified ? 0 : 1;
  }

  std::error_code ec;
  if (!fs::is_directory(batch_dir, ec)) {
    std::cerr << "pvi: not a directory: " << batch_dir << "\n";
    return 2;
  }
  const fs::path out_dir = out_path.empty() ? fs::path(batch_dir) : fs::path(out_path);
  fs::create_directories(out_dir, ec);
  std::vector<Job> jobs;
  for (const auto& entry : fs::directory_iterator(batch_dir)) {
    const fs::path p = entry.path();
    const std::string name = p.filename().string();
    if (!entry.is_regular_file() || p.extension() != ".json" || name.ends_with(".report.json")) continue;
    jobs.push_back({p, out_dir / (p.stem().string() + ".report.json"), 0, {}});
  }
  std::sort(jobs.begin(), jobs.end(), [](const Job& x, const Job& y) { return x.config < y.config; });
  if (jobs.empty()) {
    std::cerr << "pvi: no configs in " << batch_dir << "\n";
    return 2;
  }
  // parallel across configs; each run stays on one thread
  std::atomic<size_t> next{0};
  const size_t workers = std::min<size_t>(jobs.size(), std::max(1u, std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  for (size_t w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (size_t n; (n = next.fetch_add(1)) < jobs.size();) run_job(jobs[n], command, ov);
    });
  for (auto& t : pool) t.join();
  int code = 0;
  for (const Job& job : jobs) {
    std::cout << job.config.filename().string() << ":\n";
    for (const auto& l : job.lines) std::cout << "  " << l << "\n";
    code = std::max(code, job.code);
  }
  return code;
}

}  // namespace pvi::app
