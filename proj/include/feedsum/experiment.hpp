#pragma once

// Experiment orchestration: corpus preparation, per-document summarization
// with each method, fold construction, lambda tuning and report rendering.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "feedsum/baselines.hpp"
#include "feedsum/cooccurrence.hpp"
#include "feedsum/corpus.hpp"
#include "feedsum/ilp.hpp"
#include "feedsum/rouge.hpp"
#include "feedsum/soft_impute.hpp"
#include "feedsum/text.hpp"

namespace feedsum {

enum class Method { kIlpImpute, kIlpBaseline, kSumBasic, kLexRank };

std::string_view to_string(Method method);
Method parse_method(std::string_view name);
std::vector<Method> all_methods();

std::vector<double> default_lambda_grid();
// "start:stop:step" (inclusive) or a comma-separated list.
std::vector<double> parse_grid(std::string_view spec);

struct ExperimentConfig {
  int word_budget = 30;
  std::vector<double> lambda_grid = default_lambda_grid();
  int folds = 3;
  std::vector<Method> methods = all_methods();
  std::uint64_t seed = 0;
  // lambda is overridden per run.
  ImputeConfig impute;
  // word_budget is overridden by the experiment budget.
  BaselineConfig baselines;
};

void validate(const ExperimentConfig& config);

// Sentences, concepts and the binary matrix over the whole corpus, plus the
// sentence ids of every (lecture, prompt) pseudo-document.
class Workspace {
 public:
  explicit Workspace(Corpus corpus, const StopwordList& stopwords = StopwordList::english());

  const Corpus& corpus() const { return corpus_; }
  const StopwordList& stopwords() const { return stopwords_; }
  const std::vector<Sentence>& sentences() const { return sentences_; }
  const ConceptSet& concepts() const { return concepts_; }
  const CooccurrenceMatrix& binary() const { return binary_; }
  const std::map<DocumentKey, std::vector<std::size_t>>& documents() const { return documents_; }

  // Throws std::invalid_argument for an unknown document.
  const std::vector<std::size_t>& document(const DocumentKey& key) const;
  std::vector<Sentence> document_sentences(const DocumentKey& key) const;
  // Lectures that carry at least one reference, sorted.
  std::vector<std::string> annotated_lectures() const;

 private:
  Corpus corpus_;
  StopwordList stopwords_;
  std::vector<Sentence> sentences_;
  ConceptSet concepts_;
  CooccurrenceMatrix binary_;
  std::map<DocumentKey, std::vector<std::size_t>> documents_;
};

// Soft-impute over the full corpus matrix.
ImputedMatrix impute_corpus(const Workspace& ws, const ImputeConfig& config);

// Rows are the document's own concepts (document-level sentence frequency
// as weights), values taken from the imputed matrix at the document's
// sentence columns; continuous z.
SelectionProblem imputed_problem(const Workspace& ws, const DocumentKey& key,
                                 const Eigen::MatrixXd& imputed, int word_budget);

struct DocumentSummary {
  DocumentKey key;
  Method method = Method::kIlpBaseline;
  Summary summary;                     // indices local to the document
  std::vector<std::size_t> sentence_ids;  // global sentence ids
  std::vector<std::string> lines;      // selected sentence texts
  std::vector<std::string> tokens;     // concatenated summary tokens
};

struct SummarizeOptions {
  int word_budget = 30;
  BaselineConfig baselines;
  // Required for Method::kIlpImpute.
  const Eigen::MatrixXd* imputed = nullptr;
};

DocumentSummary summarize_document(const Workspace& ws, const DocumentKey& key, Method method,
                                   const SummarizeOptions& options);

// Lectures partitioned into `folds` near-equal groups; a seeded shuffle
// decides membership. Throws std::invalid_argument if folds exceed lectures.
std::vector<std::vector<std::string>> make_folds(std::vector<std::string> lectures, int folds,
                                                 std::uint64_t seed);

struct MethodScores {
  Method method = Method::kIlpBaseline;
  RougeReport scores;
};

struct FoldResult {
  std::vector<std::string> test_lectures;
  double chosen_lambda = 0.0;
  // Mean ROUGE-1 F over the tuning documents at chosen_lambda.
  double tuning_score = 0.0;
  std::vector<MethodScores> test_scores;
};

struct TuneResult {
  std::vector<FoldResult> folds;
  // Mean over folds of each fold's test-document average.
  std::vector<MethodScores> averaged;
};

// For each fold, picks the grid lambda with the best mean ROUGE-1 F on the
// other folds' documents (ties to the smaller lambda) and scores every
// configured method on the held-out fold.
TuneResult tune_lambda(const Workspace& ws, const ExperimentConfig& config);

struct Report {
  std::vector<MethodScores> rows;
  std::size_t scored_documents = 0;
  std::vector<DocumentSummary> summaries;
  std::optional<double> lambda;
  double binary_density = 0.0;
  std::optional<double> imputed_density;
  std::optional<int> impute_iterations;
  std::vector<Association> associations;
};

inline constexpr double kAssociationThreshold = 0.9;

// Summarizes every document with every method; scores those with references.
Report run_report(const Workspace& ws, const ExperimentConfig& config, double lambda);

// R/P/F percentages with one decimal per ROUGE-1, ROUGE-2, ROUGE-SU4.
std::string format_table(const std::vector<MethodScores>& rows);
std::string format_report(const Report& report);
std::string format_tune(const TuneResult& result);
void write_summaries(std::ostream& out, const Report& report);
void write_associations(std::ostream& out, const Workspace& ws,
                        const std::vector<Association>& associations);

}  // namespace feedsum
