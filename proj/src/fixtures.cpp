#include "hcon/fixtures.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <future>
#include <sstream>

#include <json.hpp>

#include "hcon/herbrand.hpp"

namespace hcon {

namespace {

using json = nlohmann::json;

FixtureKind kind_from(const std::string& s) {
  if (s == "t-evaluation") return FixtureKind::TEvaluation;
  if (s == "find") return FixtureKind::Find;
  if (s == "force") return FixtureKind::Force;
  if (s == "prove") return FixtureKind::Prove;
  throw std::invalid_argument("unknown fixture kind " + s);
}

std::optional<std::string> opt_string(const json& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) return std::nullopt;
  return j[key].get<std::string>();
}

std::string path_in(const std::string& dir, const std::string& file) {
  return (std::filesystem::path(dir) / file).string();
}

struct Loaded {
  Theory theory;
  SkolemRegistry reg;
  std::vector<SkolemizedFormula> tsk;
  std::optional<Formula> goal;
  TermSet lambda;
  std::map<std::string, std::string> aliases;

  ParseContext context() {
    ParseContext ctx;
    ctx.signature = &theory.signature;
    ctx.aliases = &aliases;
    reg.bind(ctx);
    return ctx;
  }
};

// Skolemizes T (+ negated goal) before reading the term set so that aliases
// resolve to the theory's own symbols.
void load(Loaded& l, const std::string& dir, const Fixture& f) {
  l.theory = load_theory(path_in(dir, f.theory));
  if (f.goal) {
    l.goal = parse_formula(*f.goal, l.theory.signature);
    l.tsk = skolemize_refutation(l.theory, *l.goal, l.reg);
  } else {
    l.tsk = skolemize_theory(l.theory, l.reg);
  }
  if (f.lambda) l.lambda = load_term_set(path_in(dir, *f.lambda), l.theory.signature, l.reg, &l.aliases);
}

std::string oracle_verdict(const FindResult& r) { return r.evaluation ? "SAT" : "UNSAT"; }

bool fits_oracle(const Loaded& l) {
  AtomTable table(l.lambda, l.theory.signature);
  return table.size() <= kBruteForceAtomCap;
}

}  // namespace

std::string to_string(FixtureKind k) {
  switch (k) {
    case FixtureKind::TEvaluation:
      return "t-evaluation";
    case FixtureKind::Find:
      return "find";
    case FixtureKind::Force:
      return "force";
    default:
      return "prove";
  }
}

FixtureManifest load_manifest(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open manifest " + path);
  json j = json::parse(in);
  FixtureManifest m;
  m.directory = std::filesystem::path(path).parent_path().string();
  for (const auto& e : j.at("fixtures")) {
    Fixture f;
    f.name = e.at("name").get<std::string>();
    f.kind = kind_from(e.at("kind").get<std::string>());
    f.theory = e.at("theory").get<std::string>();
    f.goal = opt_string(e, "goal");
    f.lambda = opt_string(e, "lambda");
    f.formula = opt_string(e, "formula");
    if (e.contains("true_atoms")) f.true_atoms = e["true_atoms"].get<std::vector<std::string>>();
    f.expect = e.at("expect").get<std::string>();
    f.note = e.value("note", "");
    m.fixtures.push_back(std::move(f));
  }
  std::sort(m.fixtures.begin(), m.fixtures.end(),
            [](const Fixture& a, const Fixture& b) { return a.name < b.name; });
  for (std::size_t i = 1; i < m.fixtures.size(); ++i)
    if (m.fixtures[i].name == m.fixtures[i - 1].name)
      throw std::runtime_error("duplicate fixture " + m.fixtures[i].name);
  return m;
}

FixtureReport run_fixture(const std::string& dir, const Fixture& f, const Budget& budget) {
  FixtureReport rep;
  rep.name = f.name;
  rep.expect = f.expect;
  auto start = std::chrono::steady_clock::now();
  try {
    Loaded l;
    load(l, dir, f);
    FindOptions fo;
    fo.encode.budget = budget;
    switch (f.kind) {
      case FixtureKind::TEvaluation: {
        auto table = std::make_shared<AtomTable>(l.lambda, l.theory.signature, budget);
        ParseContext ctx = l.context();
        std::vector<Formula> atoms;
        for (const auto& a : f.true_atoms) atoms.push_back(parse_formula(a, ctx));
        Evaluation p = Evaluation::from_true_atoms(table, atoms);
        if (!is_evaluation(p)) {
          rep.verdict = "NOT_EVALUATION";
          rep.detail = evaluation_defect(p);
          break;
        }
        auto bad = violated_instances(p, l.tsk, {budget, false});
        rep.verdict = bad.empty() ? "T_EVALUATION" : "NOT_T_EVALUATION";
        for (const auto& v : bad) rep.detail += (rep.detail.empty() ? "violates " : "; ") + render(v.ground);
        break;
      }
      case FixtureKind::Find: {
        auto r = find_evaluation(l.tsk, l.lambda, l.theory.signature, fo);
        rep.verdict = oracle_verdict(r);
        if (r.evaluation) {
          rep.detail = "true atoms:";
          for (const auto& a : r.evaluation->true_atoms()) rep.detail += " " + a;
        } else {
          rep.detail = "refutation of " + std::to_string(r.proof.size()) + " resolution steps";
        }
        if (fits_oracle(l)) rep.oracle = oracle_verdict(brute_force(l.tsk, l.lambda, l.theory.signature, {}, budget));
        break;
      }
      case FixtureKind::Force: {
        if (!f.formula) throw std::invalid_argument("force fixture needs a formula");
        ParseContext ctx = l.context();
        Formula target = parse_formula(*f.formula, ctx);
        auto r = force_check(l.tsk, l.lambda, l.theory.signature, target, fo);
        rep.verdict = r.forced ? "FORCED" : "NOT_FORCED";
        if (r.counterexample) {
          rep.detail = "counterexample:";
          for (const auto& a : r.counterexample->true_atoms()) rep.detail += " " + a;
        }
        if (fits_oracle(l)) {
          auto b = brute_force(l.tsk, l.lambda, l.theory.signature, {Formula::negation(target)}, budget);
          rep.oracle = b.evaluation ? "NOT_FORCED" : "FORCED";
        }
        break;
      }
      case FixtureKind::Prove: {
        if (!l.goal) throw std::invalid_argument("prove fixture needs a goal");
        ProveOptions po;
        po.encode.budget = budget;
        if (f.lambda) po.seeds.push_back(l.lambda);
        auto r = prove(l.theory, *l.goal, l.reg, po);
        rep.verdict = r.status == ProveStatus::Proved ? "PROVED" : "UNKNOWN";
        rep.detail = r.message;
        if (r.certificate) {
          auto back = parse_certificate(serialize_certificate(*r.certificate));
          auto ck = check_certificate(back);
          rep.detail += "; certificate " + std::string(ck.ok ? "verified" : "rejected: " + ck.message);
          if (!ck.ok) rep.verdict = "BAD_CERTIFICATE";
        }
        break;
      }
    }
  } catch (const BudgetExceeded& e) {
    rep.verdict = "BUDGET";
    rep.detail = e.what();
    rep.budget_exceeded = true;
  } catch (const std::exception& e) {
    rep.verdict = "ERROR";
    rep.detail = e.what();
  }
  rep.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  rep.pass = rep.verdict == rep.expect && (!rep.oracle || *rep.oracle == rep.verdict);
  return rep;
}

FixtureReport run_fixture(const FixtureManifest& m, const std::string& name, const Budget& budget) {
  for (const auto& f : m.fixtures)
    if (f.name == name) return run_fixture(m.directory, f, budget);
  throw std::invalid_argument("no fixture named " + name);
}

FixtureSummary run_all(const FixtureManifest& m, const Budget& budget) {
  std::vector<std::future<FixtureReport>> jobs;
  for (const auto& f : m.fixtures)
    jobs.push_back(std::async(std::launch::async, [&m, &f, budget] { return run_fixture(m.directory, f, budget); }));
  FixtureSummary s;
  for (auto& j : jobs) {
    s.reports.push_back(j.get());
    const auto& r = s.reports.back();
    (r.pass ? s.passed : s.failed)++;
    s.budget_exceeded = s.budget_exceeded || r.budget_exceeded;
  }
  return s;
}

std::string summary_json(const FixtureSummary& s, bool with_timing) {
  json out;
  out["passed"] = s.passed;
  out["failed"] = s.failed;
  out["fixtures"] = json::array();
  for (const auto& r : s.reports) {
    json e{{"name", r.name}, {"verdict", r.verdict}, {"expect", r.expect}, {"pass", r.pass},
           {"detail", r.detail}};
    e["oracle"] = r.oracle ? json(*r.oracle) : json(nullptr);
    if (with_timing) e["millis"] = r.millis;
    out["fixtures"].push_back(e);
  }
  return out.dump(2);
}

std::string summary_text(const FixtureSummary& s, bool with_timing) {
  std::ostringstream out;
  for (const auto& r : s.reports) {
    out << (r.pass ? "PASS " : "FAIL ") << r.name << ": " << r.verdict;
    if (!r.pass) out << " (expected " << r.expect << ")";
    if (r.oracle) out << " [oracle " << *r.oracle << "]";
    if (with_timing) out << " " << static_cast<long long>(r.millis) << " ms";
    out << "\n";
    if (!r.detail.empty()) out << "  " << r.detail << "\n";
  }
  out << s.passed << " passed, " << s.failed << " failed\n";
  return out.str();
}

}  // namespace hcon
