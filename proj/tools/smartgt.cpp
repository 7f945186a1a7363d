// smartgt: construct, verify, search, simulate and audit query families
// for the smart-element group testing models.

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "smartgt/adaptive.hpp"
#include "smartgt/audit.hpp"
#include "smartgt/constructions.hpp"
#include "smartgt/io.hpp"
#include "smartgt/knowledge.hpp"
#include "smartgt/search.hpp"

namespace {

using namespace smartgt;

constexpr int kExitTrue = 0;
constexpr int kExitFalse = 1;
constexpr int kExitUsage = 2;

ModelSpec parse_model(const std::string& m, int i, int j) {
  if (m == "1") return ModelSpec::model1();
  if (m == "2") return ModelSpec::model2();
  if (m == "3") return ModelSpec::model3();
  if (m == "3p") return ModelSpec::model3prime();
  if (m == "4") return ModelSpec::model4(i, j);
  if (m == "sep") return ModelSpec::separating_only();
  throw CLI::ValidationError("--model", "expected one of 1|2|3|3p|4|sep");
}

Family load_family(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open family file: " + path);
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") {
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(path + ": " + e.what());
    }
    return family_from_json(j);
  }
  return family_from_text(in);
}

void emit_family(const Family& f, const std::string& out, const std::string& format) {
  std::ostringstream buf;
  if (format == "json")
    buf << family_to_json(f).dump() << "\n";
  else
    family_to_text(f, buf);
  if (out.empty()) {
    std::cout << buf.str();
  } else {
    std::ofstream os(out);
    if (!os) throw std::runtime_error("cannot write " + out);
    os << buf.str();
  }
}

int cmd_construct(const std::string& what, int n, int k, int matching, const std::string& family,
                  const std::string& out, const std::string& format) {
  Family f;
  if (what == "binary-sep") {
    f = binary_separating(n);
  } else if (what == "comp-sep") {
    f = sperner_code_family(n);
  } else if (what == "model3p") {
    f = model3prime_family(n);
  } else if (what == "sts") {
    f = steiner_triple_system(n);
  } else if (what == "m4-sts") {
    f = model4_sts_minus_matching(n, matching);
  } else if (what == "pbd34") {
    f = pbd34(n);
  } else if (what == "pbd345") {
    f = pbd345(n);
  } else if (what == "m4-n8") {
    f = model4_n8_family();
  } else if (what == "m4-extend") {
    if (family.empty()) throw CLI::ValidationError("--family", "m4-extend needs a base family");
    f = extend_model4_solution(load_family(family), k);
  } else {
    throw CLI::ValidationError("--what", "unknown construction: " + what);
  }
  emit_family(f, out, format);
  return kExitTrue;
}

int cmd_verify(const std::string& model, int i, int j, const std::string& family,
               const std::string& format) {
  ModelSpec m = parse_model(model, i, j);
  Family f = load_family(family);
  SolveReport rep = check_model(f, m);
  if (format == "json") {
    nlohmann::json out;
    out["model"] = m.name();
    out["solves"] = rep.ok;
    if (!rep.ok) {
      out["reason"] = rep.reason;
      if (rep.defective) out["defective"] = rep.defective;
      if (!rep.coalition.empty()) out["coalition"] = rep.coalition;
    }
    std::cout << out.dump() << "\n";
  } else if (rep.ok) {
    std::cout << "family solves " << m.name() << "\n";
  } else {
    std::cout << "family does not solve " << m.name() << ": " << rep.reason;
    if (!rep.coalition.empty()) {
      std::cout << " (coalition {";
      for (std::size_t t = 0; t < rep.coalition.size(); ++t)
        std::cout << (t ? "," : "") << rep.coalition[t];
      std::cout << "}";
      if (rep.defective) std::cout << ", defective " << rep.defective;
      std::cout << ")";
    }
    std::cout << "\n";
  }
  return rep.ok ? kExitTrue : kExitFalse;
}

int cmd_predicates(const std::string& family, const std::string& format) {
  Family f = load_family(family);
  IndexedDual d = dual(f);
  std::vector<std::pair<std::string, bool>> rows = {
      {"separating", is_separating(f)},
      {"completely_separating", is_completely_separating(f)},
      {"sperner", is_sperner(f)},
      {"sperner_dual", is_sperner(d)},
      {"cancellative", is_cancellative(f)},
      {"intersection_cancellative", is_intersection_cancellative(f)},
      {"intersection_cancellative_dual", is_intersection_cancellative(d)},
      {"intersection_closed", is_intersection_closed(f)},
      {"pbd_3", is_pbd(f, {3})},
      {"pbd_34", is_pbd(f, {3, 4})},
      {"pbd_345", is_pbd(f, {3, 4, 5})},
  };
  if (format == "json") {
    nlohmann::json out;
    for (const auto& [name, val] : rows) out[name] = val;
    std::cout << out.dump() << "\n";
  } else {
    for (const auto& [name, val] : rows)
      std::cout << name << ": " << (val ? "yes" : "no") << "\n";
  }
  return kExitTrue;
}

int cmd_search(const std::string& model, int i, int j, int n, std::optional<int> max_size,
               const std::string& sizes, bool closed, bool prune, std::uint64_t budget,
               const std::string& format) {
  SearchSpec spec;
  spec.model = parse_model(model, i, j);
  spec.n = n;
  spec.max_family_size = max_size;
  if (!sizes.empty()) {
    std::set<int> allowed;
    std::istringstream ss(sizes);
    std::string tok;
    while (std::getline(ss, tok, ',')) allowed.insert(std::stoi(tok));
    spec.allowed_set_sizes = allowed;
  }
  spec.require_intersection_closed = closed;
  spec.canonical_prune = prune;
  spec.budget = budget;
  SearchResult r = exists_solution(spec);
  if (format == "json") {
    std::cout << search_result_to_json(r).dump() << "\n";
  } else {
    switch (r.outcome) {
      case SearchResult::Outcome::Exists:
        std::cout << "exists (explored " << r.explored << " families); witness:\n";
        family_to_text(*r.witness, std::cout);
        break;
      case SearchResult::Outcome::NotExists:
        std::cout << "not-exists (explored " << r.explored << " families)\n";
        break;
      case SearchResult::Outcome::Inconclusive:
        std::cout << "inconclusive (budget hit after " << r.explored << " families)\n";
        break;
    }
  }
  return r.outcome == SearchResult::Outcome::NotExists ? kExitFalse : kExitTrue;
}

std::unique_ptr<Strategy> make_strategy(const std::string& name) {
  if (name == "sep-then-reveal") return std::make_unique<SepThenReveal>();
  if (name == "halving-model3p") return std::make_unique<HalvingModel3Prime>();
  if (name == "singletons-pairs") return std::make_unique<SingletonsPairs>();
  if (name == "singletons-triple") return std::make_unique<SingletonsTriple>();
  if (name.rfind("partition-balanced:", 0) == 0)
    return std::make_unique<PartitionBalanced>(std::stoi(name.substr(19)));
  throw CLI::ValidationError(
      "--strategy",
      "expected sep-then-reveal|halving-model3p|singletons-pairs|singletons-triple|partition-balanced:I");
}

int cmd_simulate(const std::string& strategy, int n, int defective, const std::string& adversary,
                 std::optional<std::pair<int, int>> check4, const std::string& format) {
  auto strat = make_strategy(strategy);
  if (check4) {
    bool ok = check_adaptive_model4(*strat, n, check4->first, check4->second);
    if (format == "json") {
      nlohmann::json out;
      out["strategy"] = strat->name();
      out["n"] = n;
      out["i"] = check4->first;
      out["j"] = check4->second;
      out["adaptive_model4"] = ok;
      std::cout << out.dump() << "\n";
    } else {
      std::cout << strat->name() << " " << (ok ? "solves" : "does not solve") << " adaptive Model4("
                << check4->first << "," << check4->second << ") on n=" << n << "\n";
    }
    return ok ? kExitTrue : kExitFalse;
  }
  std::unique_ptr<Answerer> ans;
  if (!adversary.empty()) {
    if (adversary == "yes")
      ans = std::make_unique<YesUnlessContradiction>(n);
    else if (adversary == "no")
      ans = std::make_unique<NoUnlessContradiction>(n);
    else
      throw CLI::ValidationError("--adversary", "expected yes|no");
  } else {
    if (defective < 1 || defective > n)
      throw CLI::ValidationError("--defective", "need 1 <= D <= n (or --adversary)");
    ans = std::make_unique<FixedDefective>(defective);
  }
  Transcript t = run(*strat, *ans, n);
  if (format == "json") {
    nlohmann::json out = transcript_to_json(t);
    out["strategy"] = strat->name();
    out["committed_defective"] = ans->committed_defective();
    std::cout << out.dump() << "\n";
  } else {
    std::cout << strat->name() << " on n=" << n << ", " << t.steps.size() << " queries:\n";
    for (const auto& s : t.steps) {
      std::cout << "  {";
      bool first = true;
      for (int e : s.query.elements()) {
        std::cout << (first ? "" : ",") << e;
        first = false;
      }
      std::cout << "} -> " << (s.answer == Answer::Yes ? "YES" : "NO") << "\n";
    }
    std::cout << "committed defective: " << ans->committed_defective() << "\n";
  }
  return kExitTrue;
}

int cmd_audit(int n, std::uint64_t samples, std::uint64_t seed, int threads, std::uint64_t budget,
              const std::string& format) {
  AuditReport rep = (n <= 4) ? equivalence_audit(n, budget)
                             : equivalence_audit_sampled(n, samples, seed, threads);
  if (format == "json") {
    nlohmann::json out;
    out["n"] = rep.n;
    out["checked"] = rep.checked;
    out["counterexamples"] = nlohmann::json::array();
    for (const auto& c : rep.counterexamples) {
      nlohmann::json jc;
      jc["equivalence"] = c.equivalence;
      jc["family"] = family_to_json(c.family);
      out["counterexamples"].push_back(jc);
    }
    std::cout << out.dump() << "\n";
  } else {
    std::cout << "audited " << rep.checked << " families on n=" << rep.n << ": "
              << rep.counterexamples.size() << " counterexample(s)\n";
    for (const auto& c : rep.counterexamples)
      std::cout << "  " << c.equivalence << ": " << family_to_json(c.family).dump() << "\n";
  }
  return rep.clean() ? kExitTrue : kExitFalse;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"group testing with smart elements: constructions, model checking, search"};
  app.require_subcommand(1);
  std::string format = "text";
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"text", "json"}));

  std::string what, family, out, model = "1", strategy, adversary, sizes;
  int n = 0, i = 0, j = 0, k = 0, matching = 0, defective = 0, threads = 1;
  std::uint64_t samples = 100000, seed = 0, budget = smartgt::default_budget();
  int max_size_raw = -1;
  bool closed = false, prune = false;
  std::vector<int> check4;

  auto* c = app.add_subcommand("construct", "generate a family");
  c->add_option("--what", what, "construction name")
      ->required()
      ->check(CLI::IsMember({"binary-sep", "comp-sep", "model3p", "sts", "m4-sts", "pbd34",
                             "pbd345", "m4-n8", "m4-extend"}));
  c->add_option("--n", n, "ground set size");
  c->add_option("--k", k, "extension parameter (m4-extend)");
  c->add_option("--matching", matching, "partial matching size (m4-sts)");
  c->add_option("--family", family, "base family file (m4-extend)");
  c->add_option("--out", out, "output file (default stdout)");

  auto* v = app.add_subcommand("verify", "check a family against a model");
  v->add_option("--model", model, "1|2|3|3p|4")->required();
  v->add_option("-i", i, "Model 4 privacy coalition size");
  v->add_option("-j", j, "Model 4 identifying coalition size");
  v->add_option("--family", family, "family file")->required();

  auto* p = app.add_subcommand("predicates", "evaluate the structural predicates");
  p->add_option("--family", family, "family file")->required();

  auto* s = app.add_subcommand("search", "exhaustive existence search");
  s->add_option("--model", model, "1|2|3|3p|4|sep")->required();
  s->add_option("-i", i, "Model 4 i");
  s->add_option("-j", j, "Model 4 j");
  s->add_option("--n", n, "ground set size")->required();
  s->add_option("--max-size", max_size_raw, "cap on family size");
  s->add_option("--sizes", sizes, "comma-separated allowed set sizes");
  s->add_flag("--closed", closed, "restrict to intersection-closed families");
  s->add_flag("--prune", prune, "canonical first-set pruning");
  s->add_option("--budget", budget, "enumeration budget (also SMARTGT_BUDGET)");
  s->add_option("--threads", threads, "worker threads (search is single-threaded; accepted for symmetry)");

  auto* sim = app.add_subcommand("simulate", "run an adaptive strategy");
  sim->add_option("--strategy", strategy, "strategy name")->required();
  sim->add_option("--n", n, "ground set size")->required();
  sim->add_option("--defective", defective, "honest answerer's defective");
  sim->add_option("--adversary", adversary, "yes|no adversarial answerer");
  sim->add_option("--check-model4", check4, "check adaptive Model4(I,J)")->expected(2);

  auto* a = app.add_subcommand("audit", "equivalence audit of the characterization theorems");
  a->add_option("--n", n, "ground set size (<=4 exhaustive, 5..8 sampled)")->required();
  a->add_option("--samples", samples, "sample count for n >= 5");
  a->add_option("--seed", seed, "RNG seed");
  a->add_option("--threads", threads, "worker threads");
  a->add_option("--budget", budget, "enumeration budget (also SMARTGT_BUDGET)");

  try {
    app.parse(argc, argv);
    if (c->parsed())
      return cmd_construct(what, n, k, matching, family, out, format);
    if (v->parsed()) return cmd_verify(model, i, j, family, format);
    if (p->parsed()) return cmd_predicates(family, format);
    if (s->parsed())
      return cmd_search(model, i, j, n,
                        max_size_raw >= 0 ? std::optional<int>(max_size_raw) : std::nullopt, sizes,
                        closed, prune, budget, format);
    if (sim->parsed())
      return cmd_simulate(strategy, n, defective, adversary,
                          check4.size() == 2
                              ? std::optional<std::pair<int, int>>({check4[0], check4[1]})
                              : std::nullopt,
                          format);
    if (a->parsed()) return cmd_audit(n, samples, seed, threads, budget, format);
    return kExitUsage;
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  } catch (const smartgt::ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const smartgt::UnsolvableError& e) {
    std::cerr << "unsolvable: " << e.what() << "\n";
    return kExitFalse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
