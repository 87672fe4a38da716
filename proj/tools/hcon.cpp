// hcon: command-line front end for the Herbrand toolkit.
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hcon/fixtures.hpp"
#include "hcon/herbrand.hpp"
#include "hcon/report.hpp"
#include "hcon/normalizer.hpp"

#ifndef HCON_FIXTURE_DIR
#define HCON_FIXTURE_DIR "fixtures"
#endif

using namespace hcon;
using json = nlohmann::json;

namespace {

enum Exit { kOk = 0, kMismatch = 1, kBudget = 2 };

struct Common {
  std::size_t budget_atoms = Budget{}.max_atoms;
  std::size_t budget_terms = Budget{}.max_terms;
  std::uint64_t bit_ceiling = Budget{}.bit_ceiling;
  std::uint64_t seed = 1;
  bool json = false;

  Budget budget() const {
    Budget b;
    b.max_atoms = budget_atoms;
    b.max_terms = budget_terms;
    b.bit_ceiling = bit_ceiling;
    return b;
  }
};

struct Inputs {
  std::string theory, lambda, goal, formula;
};

// Theory, optional negated goal, optional term set, all sharing one registry.
struct Session {
  Theory theory;
  SkolemRegistry reg;
  std::vector<SkolemizedFormula> tsk;
  std::optional<Formula> goal;
  TermSet lambda;
  std::map<std::string, std::string> aliases;

  explicit Session(const Inputs& in) {
    if (in.theory.empty()) throw std::invalid_argument("--theory is required");
    theory = load_theory(in.theory);
    if (!in.goal.empty()) {
      goal = parse_formula(in.goal, theory.signature);
      tsk = skolemize_refutation(theory, *goal, reg);
    } else {
      tsk = skolemize_theory(theory, reg);
    }
    if (!in.lambda.empty()) lambda = load_term_set(in.lambda, theory.signature, reg, &aliases);
  }

  ParseContext context() {
    ParseContext ctx;
    ctx.signature = &theory.signature;
    ctx.aliases = &aliases;
    reg.bind(ctx);
    return ctx;
  }

  void require_lambda() const {
    if (lambda.empty()) throw std::invalid_argument("--lambda is required");
  }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const Common& c, const json& j, const std::string& text) {
  if (c.json)
    std::cout << j.dump(2) << "\n";
  else
    std::cout << text;
}

json atoms_json(const Evaluation& p) { return json(p.true_atoms()); }

std::string joined(const std::vector<std::string>& v, const std::string& sep = " ") {
  std::string out;
  for (const auto& s : v) out += (out.empty() ? "" : sep) + s;
  return out;
}

// ---------------------------------------------------------------- commands

int cmd_normalize(const Common& c, const Inputs& in, bool trace) {
  Session s(in);
  std::vector<Formula> targets;
  if (!in.formula.empty()) {
    ParseContext ctx = s.context();
    ctx.any_free_vars = true;
    targets.push_back(parse_formula(in.formula, ctx));
  } else {
    targets = s.theory.axioms;
  }
  json j = json::array();
  std::ostringstream out;
  for (const auto& f : targets) {
    std::vector<NnfStep> steps;
    Formula n = nnf(f, trace ? &steps : nullptr);
    Formula r = rnnf(f);
    json e{{"input", render(f)}, {"nnf", render(n)}, {"rnnf", render(r)}, {"rank", nnf_rank(f)}};
    out << "input " << render(f) << "\nnnf   " << render(n) << "\nrnnf  " << render(r) << "\n";
    if (trace) {
      e["trace"] = json::array();
      for (const auto& st : steps) {
        e["trace"].push_back(render(st.after));
        out << "  -> " << render(st.after) << "\n";
      }
    }
    j.push_back(e);
  }
  emit(c, j, out.str());
  return kOk;
}

int cmd_skolemize(const Common& c, const Inputs& in, bool provenance) {
  Session s(in);
  RenderOptions ro = provenance ? s.reg.provenance_options() : RenderOptions{};
  json j{{"formulas", json::array()}, {"symbols", json::array()}};
  std::ostringstream out;
  for (const auto& sf : s.tsk) {
    j["formulas"].push_back({{"source", render(sf.original)}, {"open", render(sf.open, ro)}});
    out << render(sf.open, ro) << "\n";
  }
  out << "symbols:\n";
  for (const auto& sym : s.reg.symbols()) {
    j["symbols"].push_back({{"name", sym.name}, {"arity", sym.arity}, {"source", *s.reg.provenance(sym.name)}});
    out << "  " << sym.name << "/" << sym.arity << " " << *s.reg.provenance(sym.name) << "\n";
  }
  emit(c, j, out.str());
  return kOk;
}

int cmd_instances(const Common& c, const Inputs& in) {
  Session s(in);
  s.require_lambda();
  auto insts = available_instances(s.tsk, s.lambda, {c.budget(), false});
  json j = json::array();
  std::ostringstream out;
  for (const auto& i : insts) {
    j.push_back({{"source", i.source}, {"instance", render(i.ground)}});
    out << "[" << i.source << "] " << render(i.ground) << "\n";
  }
  out << insts.size() << " instances\n";
  emit(c, j, out.str());
  return kOk;
}

int cmd_find(const Common& c, const Inputs& in, const std::string& mode, const std::string& dimacs) {
  Session s(in);
  s.require_lambda();
  FindOptions fo;
  fo.mode = mode == "brute" ? SearchMode::Brute : SearchMode::Sat;
  fo.encode.budget = c.budget();
  auto r = find_evaluation(s.tsk, s.lambda, s.theory.signature, fo);
  if (!dimacs.empty()) {
    std::ofstream(dimacs) << to_dimacs(encode(*r.table, s.tsk, {}, fo.encode).cnf);
  }
  json j{{"verdict", r.evaluation ? "SAT" : "UNSAT"}, {"atoms", r.table->size()}};
  std::ostringstream out;
  out << (r.evaluation ? "SAT" : "UNSAT") << " (" << r.table->size() << " atoms)\n";
  if (r.evaluation) {
    j["true_atoms"] = atoms_json(*r.evaluation);
    out << joined(r.evaluation->true_atoms(), "\n") << "\n";
  } else if (fo.mode == SearchMode::Sat) {
    j["proof_steps"] = r.proof.size();
    out << "refutation of " << r.proof.size() << " resolution steps\n";
  }
  emit(c, j, out.str());
  return kOk;
}

int cmd_check_eval(const Common& c, const Inputs& in, const std::string& atoms_file) {
  Session s(in);
  s.require_lambda();
  if (atoms_file.empty()) throw std::invalid_argument("--atoms is required");
  ParseContext ctx = s.context();
  std::vector<Formula> atoms;
  std::istringstream lines(read_file(atoms_file));
  for (std::string line; std::getline(lines, line);) {
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    atoms.push_back(parse_formula(line, ctx));
  }
  auto table = std::make_shared<AtomTable>(s.lambda, s.theory.signature, c.budget());
  Evaluation p = Evaluation::from_true_atoms(table, atoms);
  bool eval = is_evaluation(p);
  json j{{"evaluation", eval}};
  std::ostringstream out;
  if (!eval) {
    j["defect"] = evaluation_defect(p);
    out << "not an evaluation: " << evaluation_defect(p) << "\n";
    emit(c, j, out.str());
    return kMismatch;
  }
  auto bad = violated_instances(p, s.tsk, {c.budget(), false});
  j["t_evaluation"] = bad.empty();
  j["violated"] = json::array();
  for (const auto& v : bad) j["violated"].push_back(render(v.ground));
  out << (bad.empty() ? "T-evaluation\n" : "not a T-evaluation\n");
  for (const auto& v : bad) out << "violated: " << render(v.ground) << "\n";
  emit(c, j, out.str());
  return bad.empty() ? kOk : kMismatch;
}

int cmd_force(const Common& c, const Inputs& in) {
  Session s(in);
  s.require_lambda();
  if (in.formula.empty()) throw std::invalid_argument("--formula is required");
  ParseContext ctx = s.context();
  Formula target = parse_formula(in.formula, ctx);
  FindOptions fo;
  fo.encode.budget = c.budget();
  auto r = force_check(s.tsk, s.lambda, s.theory.signature, target, fo);
  json j{{"verdict", r.forced ? "FORCED" : "NOT_FORCED"}};
  std::ostringstream out;
  out << (r.forced ? "FORCED" : "NOT_FORCED") << "\n";
  if (r.counterexample) {
    j["counterexample"] = atoms_json(*r.counterexample);
    out << "counterexample:\n" << joined(r.counterexample->true_atoms(), "\n") << "\n";
  }
  emit(c, j, out.str());
  return kOk;
}

int cmd_prove(const Common& c, const Inputs& in, std::size_t max_level, const std::string& cert,
              bool brute, const std::vector<std::string>& seed_files) {
  if (in.goal.empty()) throw std::invalid_argument("--goal is required");
  Session s(in);
  ProveOptions po;
  po.max_level = max_level;
  po.mode = brute ? SearchMode::Brute : SearchMode::Sat;
  po.encode.budget = c.budget();
  if (!s.lambda.empty()) po.seeds.push_back(s.lambda);
  for (const auto& f : seed_files) po.seeds.push_back(load_term_set(f, s.theory.signature, s.reg));
  auto r = prove(s.theory, *s.goal, s.reg, po);
  bool proved = r.status == ProveStatus::Proved;
  json j{{"status", proved ? "PROVED" : "UNKNOWN"}, {"message", r.message},
         {"candidates", r.candidates_tried}};
  std::ostringstream out;
  out << (proved ? "PROVED" : "UNKNOWN") << ": " << r.message << "\n";
  if (r.certificate) {
    std::string text = serialize_certificate(*r.certificate);
    auto ck = check_certificate(parse_certificate(text));
    j["certificate_check"] = ck.message;
    out << "certificate: " << ck.message << "\n";
    if (!cert.empty()) std::ofstream(cert) << text;
  }
  emit(c, j, out.str());
  return proved ? kOk : kMismatch;
}

int cmd_check_cert(const Common& c, const std::string& file) {
  auto ck = check_certificate(parse_certificate(read_file(file)));
  emit(c, json{{"ok", ck.ok}, {"message", ck.message}}, (ck.ok ? "OK: " : "REJECTED: ") + ck.message + "\n");
  return ck.ok ? kOk : kMismatch;
}

int cmd_universe(const Common& c, const Inputs& in, std::size_t levels, const std::string& origin) {
  Session s(in);
  s.require_lambda();
  CodingScheme coder(s.theory.signature, &s.reg);
  mpz_class k0 = origin.empty() ? admitting_origin(s.reg, coder) : mpz_class(origin);
  UniverseLevel u = make_universe(s.lambda, s.reg, k0);
  json j = json::array();
  std::ostringstream out;
  for (std::size_t n = 0; n <= levels; ++n) {
    if (n > 0) u = grow_universe(u, s.theory.signature, coder, c.budget());
    Code code = coder.code_set(u.terms);
    j.push_back({{"level", n}, {"terms", u.terms.size()}, {"code_bits", code.bitlen}});
    out << "level " << n << ": " << u.terms.size() << " terms, code of " << code.bitlen << " bits\n";
  }
  emit(c, j, out.str());
  return kOk;
}

int cmd_coding_report(const Common& c, const Inputs& in, std::size_t samples, std::size_t corpus) {
  Session s(in);
  CodingScheme coder(s.theory.signature, &s.reg);
  json j;
  std::ostringstream out;
  j["symbols"] = coder.table();
  out << "symbol ids:";
  for (const auto& [name, id] : coder.table()) out << " " << name << "=" << id;
  out << "\n";
  j["axioms"] = json::array();
  for (const auto& a : s.theory.axioms) {
    Code code = coder.code_formula(a);
    j["axioms"].push_back({{"formula", render(a)}, {"bits", code.bitlen}});
    out << code.bitlen << " bits  " << render(a) << "\n";
  }
  if (!s.lambda.empty()) {
    Code lc = coder.code_set(s.lambda);
    Tower w = omega_direct(1, Tower(lc.value, c.bit_ceiling));
    j["lambda"] = {{"terms", s.lambda.size()}, {"bits", lc.bitlen}, {"omega1_exact", w.is_exact()},
                   {"omega1", w.str()}};
    out << "term set: " << s.lambda.size() << " terms, " << lc.bitlen << " bits, omega_1 = " << w.str()
        << (w.is_exact() ? "" : " (surrogate)") << "\n";
    // Seeded spot checks of the evaluation-code bound on random bit patterns.
    auto table = std::make_shared<AtomTable>(s.lambda, s.theory.signature, c.budget());
    std::mt19937_64 rng(c.seed);
    std::size_t max_bits = 0;
    for (std::size_t i = 0; i < samples; ++i) {
      std::vector<bool> bits(table->size());
      for (std::size_t b = 0; b < bits.size(); ++b) bits[b] = rng() & 1;
      max_bits = std::max(max_bits, coder.code_evaluation(Evaluation(table, bits)).bitlen);
    }
    j["evaluation_code_max_bits"] = max_bits;
    out << "largest evaluation code over " << samples << " random assignments: " << max_bits << " bits\n";
  }

  j["contracts"] = json::array();
  for (const auto& r : contract_report(s.theory.signature, &s.reg, corpus, c.seed)) {
    json cj{{"corpus", r.corpus}, {"objects", r.objects}, {"collisions", r.collisions}};
    out << "corpus " << r.corpus << " (" << r.objects << " objects, " << r.collisions << " collisions):";
    for (const auto& ch : r.checks) {
      cj["max_ratio"][ch.name] = ch.max_ratio;
      cj["holds"][ch.name] = ch.holds;
      out << " " << ch.name << " " << ch.max_ratio << (ch.holds ? "" : " VIOLATED");
    }
    out << "\n";
    j["contracts"].push_back(cj);
  }

  std::vector<ExponentFit> fits;
  if (!s.lambda.empty()) {
    std::vector<Evaluation> evs;
    // evaluations on every prefix of the term set
    for (std::size_t n = 1; n <= s.lambda.size(); ++n) {
      TermSet prefix(std::vector<Term>(s.lambda.begin(), s.lambda.begin() + n));
      auto r = find_evaluation(s.tsk, prefix, s.theory.signature);
      if (r.evaluation) evs.push_back(*r.evaluation);
    }
    fits.push_back(evaluation_code_fit(evs, coder));
  }
  fits.push_back(universe_size_fit());
  fits.push_back(universe_code_fit());
  j["fits"] = json::array();
  for (const auto& f : fits) {
    j["fits"].push_back({{"name", f.name}, {"samples", f.samples.size()}, {"ok", f.result.ok},
                         {"exponent", f.result.exponent}, {"message", f.result.message}});
    out << "fit " << f.name << ": " << f.result.message << "\n";
  }

  std::vector<TermSet> sets;
  if (!s.lambda.empty()) sets.push_back(s.lambda);
  j["omega"] = json::array();
  bool omega_ok = true;
  for (const auto& w : omega_checks(sets, coder, c.bit_ceiling)) {
    j["omega"].push_back({{"check", w.what}, {"lhs", w.lhs}, {"rhs", w.rhs}, {"ok", w.ok}});
    omega_ok = omega_ok && w.ok;
    if (!w.ok) out << "omega check failed: " << w.what << ": " << w.lhs << " vs " << w.rhs << "\n";
  }
  out << "omega checks: " << (omega_ok ? "all hold" : "FAILED") << "\n";
  emit(c, j, out.str());
  return kOk;
}

int cmd_fixtures(const Common& c, const std::string& dir, const std::string& name, bool timing) {
  FixtureManifest m = load_manifest(dir + "/manifest.json");
  FixtureSummary s;
  if (!name.empty()) {
    s.reports.push_back(run_fixture(m, name, c.budget()));
    (s.reports[0].pass ? s.passed : s.failed)++;
    s.budget_exceeded = s.reports[0].budget_exceeded;
  } else {
    s = run_all(m, c.budget());
  }
  std::cout << (c.json ? summary_json(s, timing) + "\n" : summary_text(s, timing));
  if (s.budget_exceeded) return kBudget;
  return s.failed ? kMismatch : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Herbrand consistency toolkit"};
  app.require_subcommand(1);
  Common c;
  app.add_option("--budget-atoms", c.budget_atoms, "Maximum atom table size");
  app.add_option("--budget-terms", c.budget_terms, "Maximum term set size");
  app.add_option("--bit-ceiling", c.bit_ceiling, "Largest exact integer, in bits");
  app.add_option("--seed", c.seed, "Random seed");
  app.add_flag("--json", c.json, "JSON output");

  Inputs in;
  auto inputs = [&](CLI::App* sub, bool lambda = true, bool goal = true) {
    sub->add_option("--theory,-t", in.theory, "Theory file")->check(CLI::ExistingFile);
    if (lambda) sub->add_option("--lambda,-l", in.lambda, "Term set file")->check(CLI::ExistingFile);
    if (goal) sub->add_option("--goal,-g", in.goal, "Goal sentence (its negation is added)");
  };

  auto* normalize = app.add_subcommand("normalize", "NNF and RNNF of the axioms or a formula");
  inputs(normalize, false, false);
  normalize->add_option("--formula,-f", in.formula, "Formula instead of the axioms");
  bool trace = false;
  normalize->add_flag("--trace", trace, "Show every rewrite step");

  auto* skolemize = app.add_subcommand("skolemize", "Skolemized open forms and the symbol table");
  inputs(skolemize, false);
  bool provenance = false;
  skolemize->add_flag("--provenance", provenance, "Print Skolem terms as sk{...}");

  auto* instances = app.add_subcommand("instances", "Skolem instances available in a term set");
  inputs(instances);

  auto* find = app.add_subcommand("find-eval", "Search for a T-evaluation on a term set");
  inputs(find);
  std::string mode = "sat", dimacs;
  find->add_option("--mode", mode, "sat or brute")->check(CLI::IsMember({"sat", "brute"}));
  find->add_option("--dimacs", dimacs, "Write the clause set here");

  auto* check = app.add_subcommand("check-eval", "Check a given evaluation");
  inputs(check);
  std::string atoms_file;
  check->add_option("--atoms,-a", atoms_file, "True atoms, one per line")->check(CLI::ExistingFile);

  auto* force = app.add_subcommand("force", "Does every T-evaluation satisfy a ground formula");
  inputs(force);
  force->add_option("--formula,-f", in.formula, "Ground formula");

  auto* provecmd = app.add_subcommand("prove", "Herbrand proof search with a certificate");
  inputs(provecmd);
  std::size_t max_level = 3;
  std::string cert;
  bool brute = false;
  provecmd->add_option("--max-level", max_level, "Universe levels to try");
  provecmd->add_option("--cert", cert, "Write the certificate here");
  provecmd->add_flag("--brute", brute, "Exhaustive search instead of SAT");
  std::vector<std::string> seed_files;
  provecmd->add_option("--seed-lambda", seed_files, "Term set to try before the universe levels (repeatable)")
      ->check(CLI::ExistingFile);

  auto* checkcert = app.add_subcommand("check-cert", "Replay a proof certificate");
  std::string cert_file;
  checkcert->add_option("file", cert_file, "Certificate")->required()->check(CLI::ExistingFile);

  auto* universe = app.add_subcommand("universe", "Sizes of the closure levels of a term set");
  inputs(universe);
  std::size_t levels = 2;
  std::string origin;
  universe->add_option("--levels", levels, "Number of closure steps");
  universe->add_option("--origin", origin, "Level index of the base set");

  auto* coding = app.add_subcommand("coding-report", "Codes of axioms and of a term set");
  inputs(coding);
  std::size_t samples = 100;
  coding->add_option("--samples", samples, "Random evaluations to code");
  std::size_t corpus = 1000;
  coding->add_option("--corpus", corpus, "Random objects per contract corpus");

  auto* fixtures = app.add_subcommand("fixtures", "Fixture corpus");
  auto* run = fixtures->add_subcommand("run", "Run fixtures");
  fixtures->require_subcommand(1);
  std::string fixture_dir = HCON_FIXTURE_DIR, name;
  bool no_timing = false;
  run->add_option("--name", name, "Run one fixture");
  run->add_option("--dir", fixture_dir, "Directory holding manifest.json");
  run->add_flag("--no-timing", no_timing, "Omit timings");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*normalize) return cmd_normalize(c, in, trace);
    if (*skolemize) return cmd_skolemize(c, in, provenance);
    if (*instances) return cmd_instances(c, in);
    if (*find) return cmd_find(c, in, mode, dimacs);
    if (*check) return cmd_check_eval(c, in, atoms_file);
    if (*force) return cmd_force(c, in);
    if (*provecmd) return cmd_prove(c, in, max_level, cert, brute, seed_files);
    if (*checkcert) return cmd_check_cert(c, cert_file);
    if (*universe) return cmd_universe(c, in, levels, origin);
    if (*coding) return cmd_coding_report(c, in, samples, corpus);
    if (*run) return cmd_fixtures(c, fixture_dir, name, !no_timing);
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kMismatch;
  }
  return kOk;
}
