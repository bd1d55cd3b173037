#pragma once

// Concept-coverage sentence selection:
//
//   maximize    sum_i w_i z_i
//   subject to  sum_j A_ij y_j >= z_i,   A_ij y_j <= z_i,
//               sum_j l_j y_j <= L,      y_j in {0,1}
//
// with z_i binary (A binary) or z_i in [0,1] (A in [0,1]). For a fixed
// selection y the best z is closed form, z_i = min(1, sum_j A_ij y_j), which
// reduces the problem to budgeted maximization of a monotone submodular set
// function. The solvers below work on that form and check the linear
// constraints afterwards.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include "json.hpp"

namespace feedsum {

enum class ZMode { kBinary, kContinuous };

std::string_view to_string(ZMode mode);
ZMode parse_z_mode(std::string_view name);

struct SelectionProblem {
  Eigen::MatrixXd matrix;       // N concepts x M sentences, entries in [0, 1]
  std::vector<double> weights;  // N, non-negative
  std::vector<int> lengths;     // M, each >= 1
  int word_budget = 0;
  ZMode z_mode = ZMode::kBinary;

  std::size_t n_concepts() const { return weights.size(); }
  std::size_t n_sentences() const { return lengths.size(); }
};

// Throws std::invalid_argument when dimensions or value domains disagree.
void validate(const SelectionProblem& problem);

struct Summary {
  std::vector<std::size_t> selected;  // ascending sentence indices
  std::vector<double> concept_values;
  double objective_value = 0.0;
  int total_words = 0;
  bool exact = false;
};

struct SelectionValue {
  double objective = 0.0;
  std::vector<double> concept_values;
};

// Throws std::invalid_argument if the selection exceeds the budget or names
// a sentence out of range.
SelectionValue value_of_selection(const SelectionProblem& problem,
                                  std::span<const std::size_t> selected);

// True iff the summary is within budget and its z values satisfy both
// linking constraints for its selection (tolerance 1e-9).
bool is_feasible(const SelectionProblem& problem, const Summary& summary);

// Ordering used by every solver: higher objective (relative tolerance
// kObjectiveTolerance), then fewer words, then lexicographically smaller
// index set.
inline constexpr double kObjectiveTolerance = 1e-9;
bool better_selection(double objective_a, int words_a, std::span<const std::size_t> a,
                      double objective_b, int words_b, std::span<const std::size_t> b);

inline constexpr std::size_t kBruteForceMaxSentences = 20;

// Enumerates all 2^M subsets; M must not exceed kBruteForceMaxSentences.
Summary solve_brute_force(const SelectionProblem& problem);

struct ExactOptions {
  std::uint64_t node_limit = 10'000'000;
};

// Depth-first branch and bound. The bound at a node adds, to the current
// value, a fractional knapsack over the singleton marginal gains of the
// remaining sentences; submodularity makes it admissible. If the node limit
// is hit, returns the incumbent with exact = false.
Summary solve_exact(const SelectionProblem& problem, const ExactOptions& options = {});

// Repeatedly adds the fitting sentence with the best marginal gain per word.
Summary solve_greedy(const SelectionProblem& problem);

nlohmann::json to_json(const SelectionProblem& problem);
SelectionProblem problem_from_json(const nlohmann::json& doc);

}  // namespace feedsum
