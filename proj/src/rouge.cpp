#include "feedsum/rouge.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace feedsum {

namespace {

using UnitCounts = std::map<std::vector<std::string>, int>;

UnitCounts ngrams(std::span<const std::string> tokens, int n) {
  UnitCounts counts;
  const auto len = static_cast<std::size_t>(n);
  for (std::size_t k = 0; k + len <= tokens.size(); ++k) {
    ++counts[std::vector<std::string>(tokens.begin() + k, tokens.begin() + k + len)];
  }
  return counts;
}

UnitCounts su4_units(std::span<const std::string> tokens) {
  UnitCounts counts = ngrams(tokens, 1);
  for (std::size_t a = 0; a < tokens.size(); ++a) {
    for (std::size_t b = a + 1; b < tokens.size() && b - a <= kSu4MaxGap; ++b) {
      ++counts[{tokens[a], tokens[b]}];
    }
  }
  return counts;
}

int total(const UnitCounts& counts) {
  int sum = 0;
  for (const auto& [unit, c] : counts) sum += c;
  return sum;
}

RougeScore overlap_score(const UnitCounts& system, const UnitCounts& reference) {
  int matched = 0;
  for (const auto& [unit, ref_count] : reference) {
    auto it = system.find(unit);
    if (it != system.end()) matched += std::min(ref_count, it->second);
  }
  const int ref_total = total(reference);
  const int sys_total = total(system);
  double recall = ref_total > 0 ? static_cast<double>(matched) / ref_total : 0.0;
  double precision = sys_total > 0 ? static_cast<double>(matched) / sys_total : 0.0;
  return make_score(recall, precision);
}

}  // namespace

RougeScore make_score(double recall, double precision) {
  RougeScore s{recall, precision, 0.0};
  if (recall + precision > 0.0) s.f1 = 2.0 * precision * recall / (precision + recall);
  return s;
}

RougeScore rouge_n(std::span<const std::string> system,
                   std::span<const std::string> reference, int n) {
  if (n < 1) throw std::invalid_argument("rouge_n: n must be at least 1");
  return overlap_score(ngrams(system, n), ngrams(reference, n));
}

RougeScore rouge_su4(std::span<const std::string> system,
                     std::span<const std::string> reference) {
  return overlap_score(su4_units(system), su4_units(reference));
}

RougeReport score_pair(std::span<const std::string> system,
                       std::span<const std::string> reference) {
  return {rouge_n(system, reference, 1), rouge_n(system, reference, 2),
          rouge_su4(system, reference)};
}

RougeScore macro_average(std::span<const RougeScore> scores) {
  if (scores.empty()) throw std::invalid_argument("cannot average an empty score list");
  RougeScore avg;
  for (const RougeScore& s : scores) {
    avg.recall += s.recall;
    avg.precision += s.precision;
    avg.f1 += s.f1;
  }
  const auto n = static_cast<double>(scores.size());
  avg.recall /= n;
  avg.precision /= n;
  avg.f1 /= n;
  return avg;
}

RougeReport evaluate_corpus(std::span<const std::pair<Tokens, Tokens>> pairs) {
  if (pairs.empty()) throw std::invalid_argument("evaluate_corpus: no summary pairs");
  std::vector<RougeScore> r1, r2, su4;
  for (const auto& [system, reference] : pairs) {
    RougeReport r = score_pair(system, reference);
    r1.push_back(r.rouge1);
    r2.push_back(r.rouge2);
    su4.push_back(r.rouge_su4);
  }
  return {macro_average(r1), macro_average(r2), macro_average(su4)};
}

}  // namespace feedsum
