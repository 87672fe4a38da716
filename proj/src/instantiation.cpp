#include "hcon/instantiation.hpp"

#include <algorithm>
#include <fstream>
#include <future>
#include <sstream>
#include <unordered_set>

namespace hcon {

TermSet::TermSet(std::vector<Term> terms, std::string label) : label_(std::move(label)) {
  for (const auto& t : terms)
    if (!t.is_ground()) throw std::invalid_argument("term set member is not ground: " + render(t));
  std::sort(terms.begin(), terms.end());
  terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
  terms_ = std::move(terms);
  reindex();
}

void TermSet::reindex() {
  index_.clear();
  index_.reserve(terms_.size());
  for (std::size_t i = 0; i < terms_.size(); ++i) index_.emplace(terms_[i], i);
}

bool TermSet::insert(const Term& t) {
  if (!t.is_ground()) throw std::invalid_argument("term set member is not ground: " + render(t));
  if (contains(t)) return false;
  terms_.insert(std::lower_bound(terms_.begin(), terms_.end(), t), t);
  reindex();
  return true;
}

void TermSet::insert_all(const TermSet& other) {
  std::vector<Term> merged;
  merged.reserve(terms_.size() + other.size());
  std::set_union(terms_.begin(), terms_.end(), other.terms_.begin(), other.terms_.end(),
                 std::back_inserter(merged));
  terms_ = std::move(merged);
  reindex();
}

std::optional<std::size_t> TermSet::index_of(const Term& t) const {
  auto it = index_.find(t);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool TermSet::subset_of(const TermSet& other) const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [&](const Term& t) { return other.contains(t); });
}

TermSet parse_term_set(std::string_view text, const Signature& sig, SkolemRegistry& reg,
                       std::map<std::string, std::string>* aliases_out) {
  std::map<std::string, std::string> aliases;
  ParseContext ctx;
  ctx.signature = &sig;
  ctx.aliases = &aliases;
  reg.bind(ctx);
  std::vector<Term> terms;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    line = line.substr(first);
    try {
      if (line.rfind("alias ", 0) == 0) {
        auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError("alias needs '='", 0);
        std::string name = line.substr(6, eq - 6);
        name.erase(name.find_last_not_of(" \t") + 1);
        name.erase(0, name.find_first_not_of(" \t"));
        std::string rhs = line.substr(eq + 1);
        rhs.erase(0, rhs.find_first_not_of(" \t"));
        rhs.erase(rhs.find_last_not_of(" \t\r") + 1);
        if (rhs.rfind("sk{", 0) != 0 || rhs.back() != '}')
          throw ParseError("alias must name a Skolem symbol as sk{...}", eq + 1);
        ParseContext inner = ctx;
        inner.any_free_vars = true;
        Formula source = parse_formula(rhs.substr(3, rhs.size() - 4), inner);
        if (source.kind() != FormulaKind::Exists)
          throw ParseError("alias needs an existential formula", eq + 1);
        aliases[name] = reg.intern(source).name;
        continue;
      }
      terms.push_back(parse_term(line, ctx));
    } catch (const ParseError& e) {
      throw ParseError(std::string(e.what()) + " (line " + std::to_string(lineno) + ")", 0);
    }
  }
  if (aliases_out) *aliases_out = aliases;
  return TermSet(std::move(terms));
}

TermSet load_term_set(const std::string& path, const Signature& sig, SkolemRegistry& reg,
                      std::map<std::string, std::string>* aliases) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open term set file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  TermSet set = parse_term_set(ss.str(), sig, reg, aliases);
  set.set_label(path);
  return set;
}

SkolemInstance instantiate(const SkolemizedFormula& sf, const Substitution& subst) {
  Substitution used;
  for (const auto& v : sf.free_vars) {
    auto it = subst.find(v);
    if (it == subst.end()) throw std::invalid_argument("no substitute for variable " + v);
    if (!it->second.is_ground())
      throw std::invalid_argument("substitute for " + v + " is not ground");
    used.emplace(v, it->second);
  }
  return {sf.source_index, used, substitute(sf.open, used)};
}

bool is_available(const Formula& ground, const TermSet& lambda) {
  for (const auto& t : atom_arguments(ground))
    if (!lambda.contains(t)) return false;
  return true;
}

bool is_available(const SkolemInstance& inst, const TermSet& lambda) {
  return is_available(inst.ground, lambda);
}

namespace {

// Depth-first over variables in free-variable order, checking each atom
// argument as soon as its last variable is bound.
std::vector<SkolemInstance> instances_of(const SkolemizedFormula& sf, const TermSet& lambda,
                                         const Budget& budget) {
  std::vector<SkolemInstance> out;
  const std::size_t n = sf.free_vars.size();
  if (lambda.empty()) return out;
  double space = 1;
  for (std::size_t i = 0; i < n; ++i) space *= static_cast<double>(lambda.size());
  if (space > static_cast<double>(budget.max_substitutions))
    throw BudgetExceeded("instance space " + std::to_string(lambda.size()) + "^" +
                         std::to_string(n) + " exceeds the substitution budget");

  std::vector<Term> args;
  {
    std::unordered_set<Term, TermHash> seen;
    for (const auto& t : atom_arguments(sf.open))
      if (seen.insert(t).second) args.push_back(t);
  }
  std::vector<std::vector<Term>> check_at(n + 1);  // check_at[0]: ground arguments
  for (const auto& t : args) {
    std::size_t last = 0;
    for (const auto& v : term_vars(t)) {
      auto pos = std::find(sf.free_vars.begin(), sf.free_vars.end(), v) - sf.free_vars.begin();
      last = std::max<std::size_t>(last, pos + 1);
    }
    check_at[last].push_back(t);
  }
  for (const auto& t : check_at[0])
    if (!lambda.contains(t)) return out;

  Substitution subst;
  std::function<void(std::size_t)> dfs = [&](std::size_t d) {
    if (d == n) {
      out.push_back({sf.source_index, subst, substitute(sf.open, subst)});
      return;
    }
    for (const auto& value : lambda) {
      subst.insert_or_assign(sf.free_vars[d], value);
      bool ok = true;
      for (const auto& t : check_at[d + 1])
        if (!lambda.contains(substitute(t, subst))) {
          ok = false;
          break;
        }
      if (ok) dfs(d + 1);
    }
    subst.erase(sf.free_vars[d]);
  };
  dfs(0);
  return out;
}

}  // namespace

std::vector<SkolemInstance> available_instances(const std::vector<SkolemizedFormula>& tsk,
                                                const TermSet& lambda,
                                                const InstanceOptions& opts) {
  std::vector<std::vector<SkolemInstance>> per(tsk.size());
  if (opts.parallel && tsk.size() > 1) {
    std::vector<std::future<std::vector<SkolemInstance>>> jobs;
    for (const auto& sf : tsk)
      jobs.push_back(std::async(std::launch::async,
                                [&, sf] { return instances_of(sf, lambda, opts.budget); }));
    for (std::size_t i = 0; i < jobs.size(); ++i) per[i] = jobs[i].get();
  } else {
    for (std::size_t i = 0; i < tsk.size(); ++i) per[i] = instances_of(tsk[i], lambda, opts.budget);
  }
  std::vector<SkolemInstance> out;
  std::unordered_set<Formula, FormulaHash> seen;
  for (auto& group : per)
    for (auto& inst : group)
      if (seen.insert(inst.ground).second) out.push_back(std::move(inst));
  return out;
}

}  // namespace hcon
