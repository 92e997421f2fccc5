#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tcclab/bracket.hpp"
#include "tcclab/report.hpp"

namespace {

using namespace tcclab;

// exit codes: 0 ok, 1 corpus ordering failure, 2 input/parse error,
// 3 domain/constraint error, 4 resource budget
constexpr int kOk = 0;
constexpr int kOrderingFailure = 1;
constexpr int kInputError = 2;
constexpr int kDomainError = 3;
constexpr int kResourceError = 4;

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

std::vector<std::uint32_t> parse_seq_literal(const std::string& text) {
  std::vector<std::uint32_t> out;
  if (text.find(',') != std::string::npos) {
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ','))
      out.push_back(static_cast<std::uint32_t>(std::stoul(tok)));
  } else {
    for (char c : text) {
      if (c < '0' || c > '9')
        throw ValidationError("--seq literal must be digits or comma-separated "
                              "integers");
      out.push_back(static_cast<std::uint32_t>(c - '0'));
    }
  }
  return out;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open file: " + path);
  Json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(path + " is not valid JSON: " + std::string(e.what()));
  }
  return j;
}

Distribution distribution_from(const Json& j, const std::string& what) {
  if (!j.is_array()) throw ValidationError(what + " must be an array");
  return Distribution(j.get<std::vector<double>>());
}

std::vector<std::vector<double>> matrix_from(const Json& j, const std::string& what) {
  if (!j.is_array()) throw ValidationError(what + " must be a matrix");
  return j.get<std::vector<std::vector<double>>>();
}

int cmd_parse(const std::string& file, const std::vector<EncodingScheme>& registry) {
  SoPtr so = parse_bracket_file(file);
  Json payload{{"canonical", print_bracket(so)}, {"term", term_to_json(so)}};
  emit(run_report("parse", {file}, payload, registry));
  return kOk;
}

int cmd_complexity(const std::string& file, const std::string& seq_literal,
                   const std::string& scheme_id, const std::string& log_base,
                   const std::vector<EncodingScheme>& registry) {
  LogBase base = log_base == "alphabet" ? LogBase::Alphabet : LogBase::Two;
  Json payload;
  std::vector<std::string> inputs;
  if (!seq_literal.empty()) {
    auto symbols = parse_seq_literal(seq_literal);
    inputs.push_back("--seq " + seq_literal);
    ComplexityReport rep = normalized_complexity(symbols, base);
    payload = to_json(rep);
  } else {
    SoPtr so = parse_bracket_file(file);
    inputs.push_back(file);
    Candidate cand{file, so, scheme_id, std::nullopt};
    SymbolSequence seq = candidate_sequence(cand, registry);
    ComplexityReport rep = normalized_complexity(seq.symbols, base);
    payload = to_json(rep);
    payload["sequence"] = to_json(seq);
  }
  emit(run_report("complexity", inputs, payload, registry));
  return kOk;
}

int cmd_compare(const std::string& file_a, const std::string& file_b,
                const std::string& scheme_id, double tie_tol,
                const std::vector<EncodingScheme>& registry) {
  Candidate a{file_a, parse_bracket_file(file_a), scheme_id, std::nullopt};
  Candidate b{file_b, parse_bracket_file(file_b), scheme_id, std::nullopt};
  TCCVerdict verdict = compare({a, b}, tie_tol, registry);
  emit(run_report("compare", {file_a, file_b}, to_json(verdict), registry));
  return kOk;
}

int cmd_corpus(const std::string& dir, const std::string& csv_path,
               const std::vector<EncodingScheme>& registry) {
  auto pairs = load_corpus(dir);
  CorpusReport report = evaluate_corpus(pairs, registry);

  // aligned text table, then the JSON report
  std::printf("%-8s %12s %12s %10s\n", "pair", "gram", "ungram", "ordering");
  for (const auto& p : report.pairs)
    std::printf("%-8s %12s %12s %10s\n", p.id.c_str(),
                display2(p.grammatical_value).c_str(),
                display2(p.ungrammatical_value).c_str(),
                p.ordering_correct ? "correct" : "WRONG");
  std::printf("correct: %zu/%zu\n", report.correct, report.pairs.size());

  if (!csv_path.empty()) {
    std::ofstream csv(csv_path);
    if (!csv) throw ValidationError("cannot write CSV: " + csv_path);
    csv << "pair,grammatical_value,ungrammatical_value,ordering_correct\n";
    for (const auto& p : report.pairs)
      csv << p.id << ',' << fmt12(p.grammatical_value) << ','
          << fmt12(p.ungrammatical_value) << ','
          << (p.ordering_correct ? 1 : 0) << '\n';
  }

  emit(run_report("corpus", {dir}, to_json(report), registry));
  return report.all_correct ? kOk : kOrderingFailure;
}

int cmd_derive(const std::string& lexicon_file, int steps,
               const std::string& constraints, const std::string& rr_rule,
               const std::string& dedupe, double mem_budget_mb,
               const std::string& csv_path,
               const std::vector<EncodingScheme>& registry) {
  EnumerationConfig cfg;
  Json lex = load_json_file(lexicon_file);
  const Json& items = lex.is_array() ? lex : lex.at("lexicon");
  for (const auto& item : items) {
    LexicalItem li;
    if (item.is_string()) {
      li.phon = item.get<std::string>();
    } else {
      li.phon = item.value("phon", "");
      if (item.contains("category"))
        li.category = item["category"].get<std::string>();
      for (const auto& f : item.value("features", Json::array())) {
        std::string text = f.get<std::string>();
        if (text.empty()) throw ValidationError("empty feature");
        bool plus = text[0] != '-';
        li.features.set({text[0] == '+' || text[0] == '-' ? text.substr(1) : text,
                         plus ? Polarity::Plus : Polarity::Minus});
      }
    }
    cfg.lexicon.push_back(std::move(li));
  }
  cfg.max_steps = steps;
  std::stringstream ss(constraints);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok == "NoTampering") cfg.no_tampering = true;
    else if (tok == "Extension") cfg.extension = true;
    else if (tok == "ResourceRestriction") cfg.resource_restriction = true;
    else if (!tok.empty())
      throw ValidationError("unknown constraint: " + tok);
  }
  cfg.rr_rule = rr_rule == "growth" ? ResourceCountingRule::AccessibleGrowth
                                    : ResourceCountingRule::NewSets;
  cfg.dedupe = dedupe == "none" ? EnumerationConfig::Dedupe::None
                                : EnumerationConfig::Dedupe::Structural;
  if (mem_budget_mb > 0)
    cfg.memory_budget_bytes =
        static_cast<std::size_t>(mem_budget_mb * 1024.0 * 1024.0);

  try {
    EnumerationResult result = enumerate_derivations(cfg);
    if (!csv_path.empty()) {
      std::ofstream csv(csv_path);
      if (!csv) throw ValidationError("cannot write CSV: " + csv_path);
      csv << "step,sets,workspaces\n";
      for (std::size_t i = 0; i < result.per_step.size(); ++i)
        csv << (i + 1) << ',' << result.per_step[i] << ','
            << result.workspaces_per_step[i] << '\n';
    }
    emit(run_report("derive", {lexicon_file}, to_json(result), registry));
    return kOk;
  } catch (const EnumerationBudgetExceeded& e) {
    Json payload = to_json(e.partial);
    payload["error"] = e.what();
    emit(run_report("derive", {lexicon_file}, payload, registry));
    return kResourceError;
  }
}

int cmd_fep(const std::string& sub, const std::string& model_file,
            const std::vector<EncodingScheme>& registry) {
  Json model = load_json_file(model_file);
  Json payload;
  if (sub == "kl") {
    Distribution q = distribution_from(model.at("q"), "q");
    Distribution p = distribution_from(model.at("p"), "p");
    payload = Json{{"kl_divergence", fmt12(kl_divergence(q, p))}};
  } else if (sub == "vfe") {
    GenerativeModel gm(distribution_from(model.at("prior"), "prior"),
                       matrix_from(model.at("likelihood"), "likelihood"));
    Distribution q = distribution_from(model.at("q"), "q");
    std::size_t o = model.at("observation").get<std::size_t>();
    double f = variational_free_energy(gm, q, o);
    FreeEnergyForms forms = free_energy_decompositions(gm, q, o);
    double max_residual = std::max(
        {std::abs(forms.joint - forms.posterior),
         std::abs(forms.joint - forms.divergence_evidence),
         std::abs(forms.joint - forms.complexity_accuracy), std::abs(forms.joint - f)});
    payload = Json{{"F", fmt12(f)},
                   {"forms",
                    Json{{"joint", fmt12(forms.joint)},
                         {"posterior", fmt12(forms.posterior)},
                         {"divergence_evidence", fmt12(forms.divergence_evidence)},
                         {"complexity_accuracy", fmt12(forms.complexity_accuracy)}}},
                   {"max_residual", fmt12(max_residual)}};
  } else if (sub == "efe") {
    const Json& pj = model.contains("policy") ? model["policy"] : model;
    PolicyModel policy(distribution_from(pj.at("q_states"), "q_states"),
                       matrix_from(pj.at("likelihood"), "likelihood"),
                       distribution_from(pj.at("outcome_prior"), "outcome_prior"));
    ExpectedFreeEnergyReport rep = expected_free_energy(policy);
    payload = Json{{"G", fmt12(rep.G)},
                   {"epistemic", fmt12(rep.epistemic)},
                   {"extrinsic", fmt12(rep.extrinsic)},
                   {"mutual_information", fmt12(rep.mutual_information)},
                   {"eq6_residual",
                    fmt12(std::abs(rep.epistemic - rep.mutual_information))}};
    if (model.contains("horizon")) {
      // G(pi) over a horizon is the sum of per-timestep terms
      int horizon = model["horizon"].get<int>();
      payload["G_policy"] = fmt12(rep.G * horizon);
    }
  } else {
    throw ValidationError("unknown fep subcommand: " + sub);
  }
  emit(run_report("fep " + sub, {model_file}, payload, registry));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tcclab: MERGE workspaces, minimal search, and normalized "
               "Lempel-Ziv complexity judgments"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  std::string file, file_b, seq_literal, scheme_id = "labels+terminals";
  std::string log_base = "two", constraints, rr_rule = "newsets";
  std::string dedupe = "structural", fep_sub, model_file, csv_path;
  double tie_tol = 1e-9, mem_budget_mb = 0;
  int steps = 1;

  auto* parse_cmd = app.add_subcommand("parse", "parse a .sbt file");
  parse_cmd->add_option("file", file)->required();

  auto* cx = app.add_subcommand("complexity", "score a structure or sequence");
  cx->add_option("file", file);
  cx->add_option("--seq", seq_literal, "symbol sequence literal");
  cx->add_option("--scheme", scheme_id);
  cx->add_option("--log-base", log_base)->check(CLI::IsMember({"two", "alphabet"}));

  auto* cmp = app.add_subcommand("compare", "TCC comparison of two structures");
  cmp->add_option("fileA", file)->required();
  cmp->add_option("fileB", file_b)->required();
  cmp->add_option("--scheme", scheme_id);
  cmp->add_option("--tie-tol", tie_tol);

  auto* corpus_cmd = app.add_subcommand("corpus", "run a contrast-pair corpus");
  corpus_cmd->add_option("dir", file)->required();
  corpus_cmd->add_option("--csv", csv_path, "write per-pair values as CSV");

  auto* derive = app.add_subcommand("derive", "enumerate MERGE derivations");
  derive->add_option("--lexicon", file)->required();
  derive->add_option("--steps", steps)->required();
  derive->add_option("--constraints", constraints,
                     "comma list: NoTampering,Extension,ResourceRestriction");
  derive->add_option("--rr-rule", rr_rule)->check(CLI::IsMember({"newsets", "growth"}));
  derive->add_option("--dedupe", dedupe)->check(CLI::IsMember({"structural", "none"}));
  derive->add_option("--mem-budget", mem_budget_mb, "budget in MiB");
  derive->add_option("--csv", csv_path, "write per-step counts as CSV");

  auto* fep_cmd = app.add_subcommand("fep", "discrete free-energy quantities");
  fep_cmd->add_option("sub", fep_sub)->required()->check(
      CLI::IsMember({"kl", "vfe", "efe"}));
  fep_cmd->add_option("--model", model_file)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    auto registry = active_registry();
    if (parse_cmd->parsed()) return cmd_parse(file, registry);
    if (cx->parsed()) {
      if (seq_literal.empty() && file.empty())
        throw ValidationError("complexity: provide a file or --seq");
      return cmd_complexity(file, seq_literal, scheme_id, log_base, registry);
    }
    if (cmp->parsed()) return cmd_compare(file, file_b, scheme_id, tie_tol, registry);
    if (corpus_cmd->parsed()) return cmd_corpus(file, csv_path, registry);
    if (derive->parsed())
      return cmd_derive(file, steps, constraints, rr_rule, dedupe, mem_budget_mb,
                        csv_path, registry);
    if (fep_cmd->parsed()) return cmd_fep(fep_sub, model_file, registry);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const ResourceError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kResourceError;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDomainError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDomainError;
  }
  return kOk;
}
