#include "feedsum/ilp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace feedsum {

std::string_view to_string(ZMode mode) {
  return mode == ZMode::kBinary ? "binary" : "continuous";
}

ZMode parse_z_mode(std::string_view name) {
  if (name == "binary") return ZMode::kBinary;
  if (name == "continuous") return ZMode::kContinuous;
  throw std::invalid_argument("unknown z mode '" + std::string(name) + "'");
}

void validate(const SelectionProblem& p) {
  if (static_cast<std::size_t>(p.matrix.rows()) != p.weights.size() ||
      static_cast<std::size_t>(p.matrix.cols()) != p.lengths.size()) {
    throw std::invalid_argument("selection problem: matrix is " +
                                std::to_string(p.matrix.rows()) + "x" +
                                std::to_string(p.matrix.cols()) + " but there are " +
                                std::to_string(p.weights.size()) + " weights and " +
                                std::to_string(p.lengths.size()) + " lengths");
  }
  if (p.word_budget < 0) throw std::invalid_argument("selection problem: negative word budget");
  for (double w : p.weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw std::invalid_argument("selection problem: weights must be finite and non-negative");
    }
  }
  for (int l : p.lengths) {
    if (l < 1) throw std::invalid_argument("selection problem: sentence lengths must be >= 1");
  }
  for (Eigen::Index k = 0; k < p.matrix.size(); ++k) {
    double v = p.matrix.data()[k];
    if (!(v >= 0.0 && v <= 1.0)) {
      throw std::invalid_argument("selection problem: matrix entries must lie in [0, 1]");
    }
    if (p.z_mode == ZMode::kBinary && v != 0.0 && v != 1.0) {
      throw std::invalid_argument("selection problem: binary z mode needs a binary matrix");
    }
  }
}

namespace {

int words_of(const SelectionProblem& p, std::span<const std::size_t> selected) {
  int total = 0;
  for (std::size_t j : selected) total += p.lengths[j];
  return total;
}

// Sentence order inside the sums is ascending, so a given set always yields
// bit-identical values.
SelectionValue evaluate(const SelectionProblem& p, std::span<const std::size_t> sorted) {
  SelectionValue out;
  out.concept_values.assign(p.n_concepts(), 0.0);
  for (std::size_t i = 0; i < p.n_concepts(); ++i) {
    double covered = 0.0;
    for (std::size_t j : sorted) covered += p.matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    double z = std::min(1.0, covered);
    out.concept_values[i] = z;
    out.objective += p.weights[i] * z;
  }
  return out;
}

Summary make_summary(const SelectionProblem& p, std::vector<std::size_t> selected, bool exact) {
  std::sort(selected.begin(), selected.end());
  Summary s;
  SelectionValue v = evaluate(p, selected);
  s.total_words = words_of(p, selected);
  s.selected = std::move(selected);
  s.concept_values = std::move(v.concept_values);
  s.objective_value = v.objective;
  s.exact = exact;
  return s;
}

double tolerance(double a, double b) {
  return kObjectiveTolerance * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

SelectionValue value_of_selection(const SelectionProblem& problem,
                                  std::span<const std::size_t> selected) {
  std::vector<std::size_t> sorted(selected.begin(), selected.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw std::invalid_argument("selection lists a sentence twice");
  }
  for (std::size_t j : sorted) {
    if (j >= problem.n_sentences()) {
      throw std::invalid_argument("selection names sentence " + std::to_string(j) +
                                  " but the problem has " +
                                  std::to_string(problem.n_sentences()));
    }
  }
  int words = words_of(problem, sorted);
  if (words > problem.word_budget) {
    throw std::invalid_argument("selection uses " + std::to_string(words) +
                                " words, over the budget of " +
                                std::to_string(problem.word_budget));
  }
  return evaluate(problem, sorted);
}

bool is_feasible(const SelectionProblem& p, const Summary& s) {
  constexpr double kTol = 1e-9;
  if (s.total_words > p.word_budget) return false;
  for (std::size_t j : s.selected) {
    if (j >= p.n_sentences()) return false;
  }
  if (words_of(p, s.selected) != s.total_words) return false;
  if (s.concept_values.size() != p.n_concepts()) return false;
  double objective = 0.0;
  for (std::size_t i = 0; i < p.n_concepts(); ++i) {
    const double z = s.concept_values[i];
    if (z < -kTol || z > 1.0 + kTol) return false;
    if (p.z_mode == ZMode::kBinary && z != 0.0 && z != 1.0) return false;
    double covered = 0.0;
    for (std::size_t j : s.selected) {
      double a = p.matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      covered += a;
      if (p.z_mode == ZMode::kBinary && a > z + kTol) return false;
    }
    if (covered + kTol < z) return false;
    objective += p.weights[i] * z;
  }
  return std::abs(objective - s.objective_value) <= kTol * std::max(1.0, std::abs(objective));
}

bool better_selection(double objective_a, int words_a, std::span<const std::size_t> a,
                      double objective_b, int words_b, std::span<const std::size_t> b) {
  const double tol = tolerance(objective_a, objective_b);
  if (objective_a > objective_b + tol) return true;
  if (objective_a < objective_b - tol) return false;
  if (words_a != words_b) return words_a < words_b;
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// ---------------------------------------------------------------------------
// Brute force

Summary solve_brute_force(const SelectionProblem& problem) {
  validate(problem);
  const std::size_t m = problem.n_sentences();
  if (m > kBruteForceMaxSentences) {
    throw std::invalid_argument("brute force is limited to " +
                                std::to_string(kBruteForceMaxSentences) + " sentences (got " +
                                std::to_string(m) + "); use solve_exact");
  }
  std::vector<std::size_t> best_set;
  double best_value = 0.0;
  int best_words = 0;
  std::vector<std::size_t> set;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
    set.clear();
    int words = 0;
    for (std::size_t j = 0; j < m; ++j) {
      if (mask >> j & 1U) {
        set.push_back(j);
        words += problem.lengths[j];
      }
    }
    if (words > problem.word_budget) continue;
    double value = evaluate(problem, set).objective;
    if (better_selection(value, words, set, best_value, best_words, best_set)) {
      best_set = set;
      best_value = value;
      best_words = words;
    }
  }
  return make_summary(problem, std::move(best_set), true);
}

// ---------------------------------------------------------------------------
// Greedy

namespace {

double marginal_gain(const SelectionProblem& p, const std::vector<double>& covered,
                     std::size_t j) {
  double gain = 0.0;
  for (std::size_t i = 0; i < p.n_concepts(); ++i) {
    double a = p.matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    if (a == 0.0 || covered[i] >= 1.0) continue;
    gain += p.weights[i] * (std::min(1.0, covered[i] + a) - covered[i]);
  }
  return gain;
}

void add_coverage(const SelectionProblem& p, std::vector<double>& covered, std::size_t j) {
  for (std::size_t i = 0; i < p.n_concepts(); ++i) {
    covered[i] += p.matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
}

double coverage_value(const SelectionProblem& p, const std::vector<double>& covered) {
  double v = 0.0;
  for (std::size_t i = 0; i < p.n_concepts(); ++i) v += p.weights[i] * std::min(1.0, covered[i]);
  return v;
}

}  // namespace

Summary solve_greedy(const SelectionProblem& problem) {
  validate(problem);
  const std::size_t m = problem.n_sentences();
  std::vector<double> covered(problem.n_concepts(), 0.0);
  std::vector<bool> used(m, false);
  std::vector<std::size_t> chosen;
  int remaining = problem.word_budget;
  while (true) {
    std::size_t pick = m;
    double best_ratio = -1.0;
    for (std::size_t j = 0; j < m; ++j) {
      if (used[j] || problem.lengths[j] > remaining) continue;
      double ratio = marginal_gain(problem, covered, j) / problem.lengths[j];
      if (ratio > best_ratio) {
        best_ratio = ratio;
        pick = j;
      }
    }
    if (pick == m) break;
    used[pick] = true;
    chosen.push_back(pick);
    remaining -= problem.lengths[pick];
    add_coverage(problem, covered, pick);
  }
  return make_summary(problem, std::move(chosen), false);
}

// ---------------------------------------------------------------------------
// Branch and bound

namespace {

class BranchAndBound {
 public:
  BranchAndBound(const SelectionProblem& p, const ExactOptions& options)
      : p_(p), options_(options), covered_(p.n_concepts(), 0.0) {}

  Summary run() {
    // Sentences that cannot fit or carry no weight never appear in an
    // optimum under the tie-break (they only add words).
    std::vector<double> empty(p_.n_concepts(), 0.0);
    std::vector<std::pair<double, std::size_t>> ranked;
    for (std::size_t j = 0; j < p_.n_sentences(); ++j) {
      if (p_.lengths[j] > p_.word_budget) continue;
      double gain = marginal_gain(p_, empty, j);
      if (gain <= 0.0) continue;
      ranked.push_back({gain / p_.lengths[j], j});
    }
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    for (const auto& r : ranked) order_.push_back(r.second);

    offer({});
    offer(solve_greedy(p_).selected);

    search(0, 0.0, 0);
    return make_summary(p_, best_set_, !aborted_);
  }

 private:
  void offer(std::vector<std::size_t> set) {
    std::sort(set.begin(), set.end());
    int words = words_of(p_, set);
    if (words > p_.word_budget) return;
    double value = evaluate(p_, set).objective;
    if (!have_best_ ||
        better_selection(value, words, set, best_value_, best_words_, best_set_)) {
      have_best_ = true;
      best_value_ = value;
      best_words_ = words;
      best_set_ = std::move(set);
    }
  }

  double upper_bound(std::size_t pos, double value, int words) {
    const int residual = p_.word_budget - words;
    items_.clear();
    for (std::size_t q = pos; q < order_.size(); ++q) {
      std::size_t j = order_[q];
      if (p_.lengths[j] > residual) continue;
      double gain = marginal_gain(p_, covered_, j);
      if (gain > 0.0) items_.push_back({gain, p_.lengths[j]});
    }
    std::sort(items_.begin(), items_.end(), [](const Item& a, const Item& b) {
      return a.gain * b.length > b.gain * a.length;
    });
    double bound = value;
    int room = residual;
    for (const Item& it : items_) {
      if (room <= 0) break;
      if (it.length <= room) {
        bound += it.gain;
        room -= it.length;
      } else {
        bound += it.gain * static_cast<double>(room) / it.length;
        room = 0;
      }
    }
    return bound;
  }

  void search(std::size_t pos, double value, int words) {
    if (aborted_) return;
    if (++nodes_ > options_.node_limit) {
      aborted_ = true;
      return;
    }
    if (!chosen_.empty() && value >= best_value_ - tolerance(value, best_value_)) {
      offer(chosen_);
    }
    if (pos >= order_.size()) return;

    const double bound = upper_bound(pos, value, words);
    if (bound < best_value_ - tolerance(bound, best_value_)) return;

    const std::size_t j = order_[pos];
    if (words + p_.lengths[j] <= p_.word_budget && marginal_gain(p_, covered_, j) > 0.0) {
      std::vector<double> saved = covered_;
      add_coverage(p_, covered_, j);
      chosen_.push_back(j);
      search(pos + 1, coverage_value(p_, covered_), words + p_.lengths[j]);
      chosen_.pop_back();
      covered_ = std::move(saved);
    }
    search(pos + 1, value, words);
  }

  struct Item {
    double gain;
    int length;
  };

  const SelectionProblem& p_;
  ExactOptions options_;
  std::vector<std::size_t> order_;
  std::vector<double> covered_;
  std::vector<std::size_t> chosen_;
  std::vector<Item> items_;

  bool have_best_ = false;
  double best_value_ = 0.0;
  int best_words_ = 0;
  std::vector<std::size_t> best_set_;

  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
};

}  // namespace

Summary solve_exact(const SelectionProblem& problem, const ExactOptions& options) {
  validate(problem);
  return BranchAndBound(problem, options).run();
}

// ---------------------------------------------------------------------------
// JSON

nlohmann::json to_json(const SelectionProblem& p) {
  nlohmann::json matrix = nlohmann::json::array();
  for (Eigen::Index i = 0; i < p.matrix.rows(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (Eigen::Index j = 0; j < p.matrix.cols(); ++j) row.push_back(p.matrix(i, j));
    matrix.push_back(std::move(row));
  }
  return {{"matrix", std::move(matrix)},
          {"weights", p.weights},
          {"lengths", p.lengths},
          {"budget", p.word_budget},
          {"z_mode", std::string(to_string(p.z_mode))}};
}

SelectionProblem problem_from_json(const nlohmann::json& doc) {
  SelectionProblem p;
  try {
    p.weights = doc.at("weights").get<std::vector<double>>();
    p.lengths = doc.at("lengths").get<std::vector<int>>();
    p.word_budget = doc.at("budget").get<int>();
    p.z_mode = parse_z_mode(doc.at("z_mode").get<std::string>());
    const auto& rows = doc.at("matrix");
    p.matrix.resize(static_cast<Eigen::Index>(rows.size()),
                    static_cast<Eigen::Index>(p.lengths.size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& row = rows.at(i);
      if (row.size() != p.lengths.size()) {
        throw std::invalid_argument("selection problem: matrix row " + std::to_string(i) +
                                    " has " + std::to_string(row.size()) + " entries");
      }
      for (std::size_t j = 0; j < row.size(); ++j) {
        p.matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = row.at(j).get<double>();
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("selection problem JSON: ") + e.what());
  }
  validate(p);
  return p;
}

}  // namespace feedsum
