// feedsum: summarize, impute, evaluate and tune on a feedback corpus.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "feedsum/corpus.hpp"
#include "feedsum/experiment.hpp"
#include "feedsum/ilp.hpp"
#include "feedsum/soft_impute.hpp"
#include "feedsum/text.hpp"

namespace {

using namespace feedsum;

struct CommonArgs {
  std::string corpus;
  std::string stopwords;
  int budget = 30;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--corpus", args.corpus, "Corpus file (JSON Lines)")->required();
  cmd->add_option("--stopwords", args.stopwords, "Stopword list (one word per line)");
}

Workspace open_workspace(const CommonArgs& args) {
  Corpus corpus = load_corpus(args.corpus);
  if (args.stopwords.empty()) return Workspace(std::move(corpus));
  return Workspace(std::move(corpus), StopwordList::load(args.stopwords));
}

std::vector<Method> parse_methods(const std::vector<std::string>& names) {
  std::vector<Method> out;
  for (const auto& n : names) out.push_back(parse_method(n));
  return out;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Extractive summarization of short feedback responses with matrix imputation"};
  app.set_config("--config", "", "TOML/INI file mirroring the command-line flags");
  app.require_subcommand(1);

  // summarize
  CommonArgs sum_args;
  std::string sum_lecture, sum_prompt, sum_method = "ilp-impute";
  double sum_lambda = 1.0;
  auto* summarize = app.add_subcommand("summarize", "Summarize one (lecture, prompt) document");
  add_common(summarize, sum_args);
  summarize->add_option("--lecture", sum_lecture, "Lecture id")->required();
  summarize->add_option("--prompt", sum_prompt, "interesting | confusing | learning")->required();
  summarize->add_option("--method", sum_method, "ilp-impute | ilp-baseline | sumbasic | lexrank")
      ->capture_default_str();
  summarize->add_option("--lambda", sum_lambda, "Trace-norm weight for ilp-impute")
      ->capture_default_str();
  summarize->add_option("--budget", sum_args.budget, "Word budget")->capture_default_str();

  // impute
  CommonArgs imp_args;
  ImputeConfig imp_config;
  std::string matrix_out, trace_out;
  bool no_clip = false;
  auto* impute = app.add_subcommand("impute", "Run soft-impute on the corpus matrix");
  add_common(impute, imp_args);
  impute->add_option("--lambda", imp_config.lambda, "Trace-norm weight")->required();
  impute->add_option("--matrix-out", matrix_out, "Write the imputed matrix here");
  impute->add_option("--trace-out", trace_out, "Write the objective trace (CSV) here");
  impute->add_option("--max-iter", imp_config.max_iterations, "Iteration cap")
      ->capture_default_str();
  impute->add_option("--tol", imp_config.rel_tolerance, "Relative objective tolerance")
      ->capture_default_str();
  impute->add_flag("--no-clip", no_clip, "Keep raw values instead of clamping to [0, 1]");

  // evaluate
  CommonArgs eval_args;
  std::vector<std::string> eval_methods{"ilp-impute", "ilp-baseline", "sumbasic", "lexrank"};
  double eval_lambda = 1.0;
  std::string out_dir;
  auto* evaluate = app.add_subcommand("evaluate", "Summarize all documents and score with ROUGE");
  add_common(evaluate, eval_args);
  evaluate->add_option("--methods", eval_methods, "Methods to run")
      ->delimiter(',')
      ->capture_default_str();
  evaluate->add_option("--budget", eval_args.budget, "Word budget")->capture_default_str();
  evaluate->add_option("--lambda", eval_lambda, "Trace-norm weight for ilp-impute")
      ->capture_default_str();
  evaluate->add_option("--out-dir", out_dir,
                       "Write summaries.txt and associations.tsv into this directory");

  // tune
  CommonArgs tune_args;
  std::string grid = "0:5:0.5";
  int folds = 3;
  std::uint64_t seed = 0;
  std::vector<std::string> tune_methods{"ilp-impute", "ilp-baseline", "sumbasic", "lexrank"};
  auto* tune = app.add_subcommand("tune", "Cross-validated lambda grid search");
  add_common(tune, tune_args);
  tune->add_option("--grid", grid, "start:stop:step or comma list")->capture_default_str();
  tune->add_option("--folds", folds, "Number of lecture folds")->capture_default_str();
  tune->add_option("--seed", seed, "Fold assignment seed")->capture_default_str();
  tune->add_option("--methods", tune_methods, "Methods to score")
      ->delimiter(',')
      ->capture_default_str();
  tune->add_option("--budget", tune_args.budget, "Word budget")->capture_default_str();

  // stats
  CommonArgs stats_args;
  auto* stats = app.add_subcommand("stats", "Corpus statistics");
  add_common(stats, stats_args);

  // associations
  CommonArgs assoc_args;
  double assoc_lambda = 1.0, threshold = kAssociationThreshold;
  std::size_t limit = 0;
  auto* assoc = app.add_subcommand("associations",
                                   "List bigrams imputed into sentences that lack them");
  add_common(assoc, assoc_args);
  assoc->add_option("--lambda", assoc_lambda, "Trace-norm weight")->capture_default_str();
  assoc->add_option("--threshold", threshold, "Minimum imputed value")->capture_default_str();
  assoc->add_option("--limit", limit, "Print at most this many (0 = all)");

  // solve
  std::string problem_path, solver = "exact";
  auto* solve = app.add_subcommand("solve", "Solve a selection problem stored as JSON");
  solve->add_option("--problem", problem_path, "Problem JSON file")->required();
  solve->add_option("--solver", solver, "exact | greedy | brute-force")
      ->check(CLI::IsMember({"exact", "greedy", "brute-force"}))
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*summarize) {
      Workspace ws = open_workspace(sum_args);
      DocumentKey key{sum_lecture, parse_prompt(sum_prompt)};
      Method method = parse_method(sum_method);
      SummarizeOptions opts;
      opts.word_budget = sum_args.budget;
      ImputedMatrix imputed;
      if (method == Method::kIlpImpute) {
        ImputeConfig ic;
        ic.lambda = sum_lambda;
        imputed = impute_corpus(ws, ic);
        opts.imputed = &imputed.values;
      }
      DocumentSummary s = summarize_document(ws, key, method, opts);
      std::cout << "# " << to_string(key) << " [" << to_string(method) << "] "
                << s.summary.total_words << " words\n";
      for (const auto& line : s.lines) std::cout << "- " << line << '\n';
    } else if (*impute) {
      Workspace ws = open_workspace(imp_args);
      imp_config.clip_to_unit = !no_clip;
      ImputedMatrix result = impute_corpus(ws, imp_config);
      std::printf("matrix: %zu concepts x %zu sentences\n", ws.binary().n_concepts(),
                  ws.binary().n_sentences());
      std::printf("iterations: %d (%s)\n", result.iterations_run,
                  result.converged ? "converged" : "iteration cap");
      std::printf("final objective: %.10g\n", result.final_objective);
      std::printf("density: binary %.6f, imputed %.6f\n", density(ws.binary()),
                  density(result.values));
      if (!matrix_out.empty()) {
        auto out = open_output(matrix_out);
        write_matrix(out, result.values);
      }
      if (!trace_out.empty()) {
        auto out = open_output(trace_out);
        write_objective_trace(out, result);
      }
    } else if (*evaluate) {
      Workspace ws = open_workspace(eval_args);
      ExperimentConfig config;
      config.word_budget = eval_args.budget;
      config.methods = parse_methods(eval_methods);
      Report report = run_report(ws, config, eval_lambda);
      std::cout << format_report(report);
      if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        auto summaries = open_output((std::filesystem::path(out_dir) / "summaries.txt").string());
        write_summaries(summaries, report);
        if (report.imputed_density) {
          auto assoc_out =
              open_output((std::filesystem::path(out_dir) / "associations.tsv").string());
          write_associations(assoc_out, ws, report.associations);
        }
      }
    } else if (*tune) {
      Workspace ws = open_workspace(tune_args);
      ExperimentConfig config;
      config.word_budget = tune_args.budget;
      config.lambda_grid = parse_grid(grid);
      config.folds = folds;
      config.seed = seed;
      config.methods = parse_methods(tune_methods);
      std::cout << format_tune(tune_lambda(ws, config));
    } else if (*stats) {
      Workspace ws = open_workspace(stats_args);
      CorpusStats st = corpus_stats(ws.corpus().responses, ws.sentences(), ws.concepts());
      std::printf("responses: %zu\n", st.num_responses);
      std::printf("sentences: %zu\n", st.num_sentences);
      std::printf("concepts: %zu\n", st.num_concepts);
      std::printf("documents: %zu (%zu with references)\n", st.document_words.size(),
                  ws.corpus().references.size());
      std::printf("response length: %.2f +- %.2f words\n", st.mean_response_length,
                  st.stddev_response_length);
      std::printf("pseudo-document length: %.2f words\n", st.mean_document_words);
      std::printf("bigrams with frequency <= 2: %.2f%%\n", 100.0 * st.low_frequency_fraction);
      std::printf("matrix density: %.4f%%\n", 100.0 * st.matrix_density);
    } else if (*assoc) {
      Workspace ws = open_workspace(assoc_args);
      ImputeConfig ic;
      ic.lambda = assoc_lambda;
      ImputedMatrix result = impute_corpus(ws, ic);
      CooccurrenceMatrix view{result.values, ws.binary().observed};
      auto found = associations_above(view, threshold);
      if (limit > 0 && found.size() > limit) found.resize(limit);
      write_associations(std::cout, ws, found);
    } else if (*solve) {
      std::ifstream in(problem_path);
      if (!in) throw std::runtime_error("cannot open " + problem_path);
      SelectionProblem problem = problem_from_json(nlohmann::json::parse(in));
      Summary s = solver == "greedy"        ? solve_greedy(problem)
                  : solver == "brute-force" ? solve_brute_force(problem)
                                            : solve_exact(problem);
      nlohmann::json out = {{"selected", s.selected},
                            {"objective", s.objective_value},
                            {"total_words", s.total_words},
                            {"concept_values", s.concept_values},
                            {"exact", s.exact}};
      std::cout << out.dump(2) << '\n';
    }
  } catch (const std::exception& e) {
    std::cerr << "feedsum: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
