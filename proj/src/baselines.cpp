#include "feedsum/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <unordered_map>

namespace feedsum {

void validate(const BaselineConfig& config) {
  if (!(config.lexrank_damping > 0.0 && config.lexrank_damping < 1.0)) {
    throw std::invalid_argument("lexrank damping must lie in (0, 1)");
  }
  if (!(config.lexrank_similarity_threshold >= 0.0)) {
    throw std::invalid_argument("lexrank similarity threshold must be non-negative");
  }
  if (!(config.lexrank_epsilon > 0.0)) {
    throw std::invalid_argument("lexrank epsilon must be positive");
  }
  if (config.lexrank_max_iterations < 1) {
    throw std::invalid_argument("lexrank iteration cap must be at least 1");
  }
  if (config.word_budget < 0) throw std::invalid_argument("word budget must be non-negative");
}

namespace {

Summary text_summary(std::span<const Sentence> sentences, std::vector<std::size_t> chosen) {
  std::sort(chosen.begin(), chosen.end());
  Summary s;
  for (std::size_t j : chosen) s.total_words += static_cast<int>(sentences[j].word_count());
  s.selected = std::move(chosen);
  return s;
}

}  // namespace

// ---------------------------------------------------------------------------
// SumBasic

Summary sumbasic(std::span<const Sentence> sentences, int word_budget,
                 const StopwordList& stopwords) {
  if (word_budget < 0) throw std::invalid_argument("word budget must be non-negative");

  std::unordered_map<std::string, double> prob;
  std::vector<std::string> first_seen;
  double content_tokens = 0.0;
  for (const Sentence& s : sentences) {
    for (const auto& t : s.tokens) {
      if (stopwords.contains(t)) continue;
      if (prob.emplace(t, 0.0).second) first_seen.push_back(t);
      prob[t] += 1.0;
      content_tokens += 1.0;
    }
  }
  for (auto& [word, p] : prob) p /= content_tokens;

  auto mean_prob = [&](const Sentence& s) {
    double sum = 0.0;
    int n = 0;
    for (const auto& t : s.tokens) {
      if (auto it = prob.find(t); it != prob.end()) {
        sum += it->second;
        ++n;
      }
    }
    return n > 0 ? sum / n : 0.0;
  };

  std::vector<std::size_t> chosen;
  std::vector<bool> used(sentences.size(), false);
  int remaining = word_budget;

  while (true) {
    std::vector<std::size_t> candidates;
    for (std::size_t j = 0; j < sentences.size(); ++j) {
      if (used[j] || static_cast<int>(sentences[j].word_count()) > remaining) continue;
      bool repeat = std::any_of(chosen.begin(), chosen.end(), [&](std::size_t c) {
        return sentences[c].tokens == sentences[j].tokens;
      });
      if (!repeat) candidates.push_back(j);
    }
    if (candidates.empty()) break;

    // Words by descending probability, first occurrence breaking ties.
    std::vector<std::size_t> word_order(first_seen.size());
    for (std::size_t k = 0; k < word_order.size(); ++k) word_order[k] = k;
    std::stable_sort(word_order.begin(), word_order.end(), [&](std::size_t a, std::size_t b) {
      return prob[first_seen[a]] > prob[first_seen[b]];
    });

    auto best_of = [&](auto&& accept) {
      std::size_t pick = sentences.size();
      double best = -1.0;
      for (std::size_t j : candidates) {
        if (!accept(sentences[j])) continue;
        double score = mean_prob(sentences[j]);
        if (score > best) {
          best = score;
          pick = j;
        }
      }
      return pick;
    };

    std::size_t pick = sentences.size();
    for (std::size_t k : word_order) {
      const std::string& word = first_seen[k];
      pick = best_of([&](const Sentence& s) {
        return std::find(s.tokens.begin(), s.tokens.end(), word) != s.tokens.end();
      });
      if (pick != sentences.size()) break;
    }
    if (pick == sentences.size()) pick = best_of([](const Sentence&) { return true; });

    used[pick] = true;
    chosen.push_back(pick);
    remaining -= static_cast<int>(sentences[pick].word_count());
    std::vector<std::string> words = sentences[pick].tokens;
    std::sort(words.begin(), words.end());
    words.erase(std::unique(words.begin(), words.end()), words.end());
    for (const auto& w : words) {
      if (auto it = prob.find(w); it != prob.end()) it->second *= it->second;
    }
  }
  return text_summary(sentences, std::move(chosen));
}

// ---------------------------------------------------------------------------
// LexRank

std::vector<double> lexrank_centrality(std::span<const Sentence> sentences,
                                       const BaselineConfig& config) {
  validate(config);
  const std::size_t m = sentences.size();
  if (m == 0) return {};

  std::map<std::string, double> df;
  for (const Sentence& s : sentences) {
    std::vector<std::string> uniq = s.tokens;
    std::sort(uniq.begin(), uniq.end());
    uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
    for (const auto& t : uniq) df[t] += 1.0;
  }
  // Smoothed idf keeps terms shared by every sentence at a positive weight.
  auto idf = [&](const std::string& t) {
    return std::log((1.0 + static_cast<double>(m)) / (1.0 + df[t])) + 1.0;
  };

  std::vector<std::map<std::string, double>> vec(m);
  std::vector<double> norm(m, 0.0);
  for (std::size_t j = 0; j < m; ++j) {
    for (const auto& t : sentences[j].tokens) vec[j][t] += 1.0;
    for (auto& [t, w] : vec[j]) {
      w *= idf(t);
      norm[j] += w * w;
    }
    norm[j] = std::sqrt(norm[j]);
  }

  std::vector<std::vector<std::size_t>> neighbours(m);
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) {
      if (norm[a] == 0.0 || norm[b] == 0.0) continue;
      double dot = 0.0;
      for (const auto& [t, w] : vec[a]) {
        if (auto it = vec[b].find(t); it != vec[b].end()) dot += w * it->second;
      }
      double cosine = dot / (norm[a] * norm[b]);
      if (cosine >= config.lexrank_similarity_threshold && cosine > 0.0) {
        neighbours[a].push_back(b);
        neighbours[b].push_back(a);
      }
    }
  }

  const double d = config.lexrank_damping;
  const double uniform = 1.0 / static_cast<double>(m);
  std::vector<double> p(m, uniform), next(m);
  for (int iter = 0; iter < config.lexrank_max_iterations; ++iter) {
    double dangling = 0.0;
    std::fill(next.begin(), next.end(), 0.0);
    for (std::size_t a = 0; a < m; ++a) {
      if (neighbours[a].empty()) {
        dangling += p[a];
        continue;
      }
      double share = p[a] / static_cast<double>(neighbours[a].size());
      for (std::size_t b : neighbours[a]) next[b] += share;
    }
    double diff = 0.0;
    for (std::size_t a = 0; a < m; ++a) {
      next[a] = (1.0 - d) * uniform + d * (next[a] + dangling * uniform);
      diff += std::abs(next[a] - p[a]);
    }
    p.swap(next);
    if (diff < config.lexrank_epsilon) return p;
  }
  throw ConvergenceError("lexrank: power iteration did not converge in " +
                         std::to_string(config.lexrank_max_iterations) + " steps");
}

Summary lexrank(std::span<const Sentence> sentences, const BaselineConfig& config) {
  std::vector<double> centrality = lexrank_centrality(sentences, config);
  std::vector<std::size_t> order(sentences.size());
  for (std::size_t j = 0; j < order.size(); ++j) order[j] = j;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return centrality[a] > centrality[b]; });
  std::vector<std::size_t> chosen;
  int remaining = config.word_budget;
  for (std::size_t j : order) {
    int len = static_cast<int>(sentences[j].word_count());
    if (len <= remaining) {
      chosen.push_back(j);
      remaining -= len;
    }
  }
  return text_summary(sentences, std::move(chosen));
}

// ---------------------------------------------------------------------------
// ILP baseline

SelectionProblem baseline_problem(std::span<const Sentence> sentences,
                                  const ConceptSet& concepts, int word_budget) {
  SelectionProblem p;
  p.matrix = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(concepts.size()),
                                   static_cast<Eigen::Index>(sentences.size()));
  for (std::size_t j = 0; j < sentences.size(); ++j) {
    for (std::size_t i : concepts_in_sentence(sentences[j], concepts)) {
      p.matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = 1.0;
    }
    p.lengths.push_back(static_cast<int>(sentences[j].word_count()));
  }
  for (const Concept& c : concepts.concepts) p.weights.push_back(c.weight);
  p.word_budget = word_budget;
  p.z_mode = ZMode::kBinary;
  return p;
}

Summary ilp_baseline(std::span<const Sentence> sentences, const ConceptSet& concepts,
                     int word_budget) {
  return solve_exact(baseline_problem(sentences, concepts, word_budget));
}

}  // namespace feedsum
