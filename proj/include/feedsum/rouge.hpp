#pragma once

// ROUGE-N and ROUGE-SU4 with clipped counts. No stemming, no stopword
// removal; inputs are already-tokenized summaries.

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace feedsum {

using Tokens = std::vector<std::string>;

struct RougeScore {
  double recall = 0.0;
  double precision = 0.0;
  double f1 = 0.0;
};

// F1 from precision and recall; 0 when both are 0.
RougeScore make_score(double recall, double precision);

// Throws std::invalid_argument for n < 1.
RougeScore rouge_n(std::span<const std::string> system,
                   std::span<const std::string> reference, int n);

// Largest position gap of a skip-bigram (b - a <= 4).
inline constexpr int kSu4MaxGap = 4;

// Skip-bigrams (a < b <= a + 4) together with unigrams.
RougeScore rouge_su4(std::span<const std::string> system,
                     std::span<const std::string> reference);

struct RougeReport {
  RougeScore rouge1;
  RougeScore rouge2;
  RougeScore rouge_su4;
};

RougeReport score_pair(std::span<const std::string> system,
                       std::span<const std::string> reference);

// Macro average: each of R, P and F is averaged independently over pairs.
// Throws std::invalid_argument on an empty list.
RougeScore macro_average(std::span<const RougeScore> scores);

// (system, reference) token lists.
RougeReport evaluate_corpus(std::span<const std::pair<Tokens, Tokens>> pairs);

}  // namespace feedsum
