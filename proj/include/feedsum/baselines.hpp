#pragma once

// Comparison summarizers: SumBasic, LexRank and the concept-coverage ILP on
// the unimputed binary matrix. Sentence indices in the returned Summary are
// positions in the input span. Only the ILP baseline fills concept_values
// and objective_value.

#include <span>
#include <stdexcept>
#include <vector>

#include "feedsum/ilp.hpp"
#include "feedsum/text.hpp"

namespace feedsum {

inline constexpr int kLexRankMaxIterations = 10'000;

struct BaselineConfig {
  double lexrank_similarity_threshold = 0.1;
  double lexrank_damping = 0.85;
  double lexrank_epsilon = 1e-6;
  int lexrank_max_iterations = kLexRankMaxIterations;
  int word_budget = 30;
};

void validate(const BaselineConfig& config);

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unigram probabilities over non-stopword tokens; picks the most probable
// word, then the fitting sentence containing it with the highest mean token
// probability, and squares the probabilities of the chosen sentence's words.
// A sentence whose tokens repeat an already chosen sentence is never chosen.
Summary sumbasic(std::span<const Sentence> sentences, int word_budget,
                 const StopwordList& stopwords = StopwordList::english());

// Stationary distribution of the thresholded tf-idf cosine graph (no
// self-loops, damped power iteration). Sums to 1.
std::vector<double> lexrank_centrality(std::span<const Sentence> sentences,
                                       const BaselineConfig& config);

// Adds sentences by descending centrality while they fit the budget.
Summary lexrank(std::span<const Sentence> sentences, const BaselineConfig& config);

// Binary matrix over the given sentences' columns, weights taken from
// `concepts`, solved exactly with binary z.
SelectionProblem baseline_problem(std::span<const Sentence> sentences,
                                  const ConceptSet& concepts, int word_budget);
Summary ilp_baseline(std::span<const Sentence> sentences, const ConceptSet& concepts,
                     int word_budget);

}  // namespace feedsum
