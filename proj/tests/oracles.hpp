#pragma once

// Reference implementations used only by the tests. Deliberately naive and
// written without the library so they can cross-check it.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "feedsum/ilp.hpp"

namespace oracle {

struct Selection {
  std::vector<std::size_t> selected;
  double objective = 0.0;
  int words = 0;
};

inline double coverage(const feedsum::SelectionProblem& p, const std::vector<std::size_t>& sel) {
  double total = 0.0;
  for (std::size_t i = 0; i < p.weights.size(); ++i) {
    double s = 0.0;
    for (auto j : sel) s += p.matrix(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    total += p.weights[i] * std::min(1.0, s);
  }
  return total;
}

// Full enumeration; ties by fewer words, then lexicographically smaller set.
inline Selection enumerate(const feedsum::SelectionProblem& p) {
  const std::size_t m = p.lengths.size();
  Selection best;
  bool have = false;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    std::vector<std::size_t> sel;
    int words = 0;
    for (std::size_t j = 0; j < m; ++j) {
      if (mask >> j & 1) {
        sel.push_back(j);
        words += p.lengths[j];
      }
    }
    if (words > p.word_budget) continue;
    double obj = coverage(p, sel);
    bool take = !have;
    if (have) {
      double scale = std::max({1.0, std::abs(obj), std::abs(best.objective)});
      if (obj > best.objective + 1e-9 * scale) {
        take = true;
      } else if (obj >= best.objective - 1e-9 * scale) {
        take = words < best.words || (words == best.words && sel < best.selected);
      }
    }
    if (take) {
      best = {sel, obj, words};
      have = true;
    }
  }
  return best;
}

inline feedsum::SelectionProblem random_problem(std::mt19937_64& rng, std::size_t n,
                                                std::size_t m, feedsum::ZMode mode,
                                                double fill = 0.3) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  feedsum::SelectionProblem p;
  p.z_mode = mode;
  p.matrix = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m));
  for (Eigen::Index i = 0; i < p.matrix.rows(); ++i) {
    for (Eigen::Index j = 0; j < p.matrix.cols(); ++j) {
      if (u(rng) < fill) p.matrix(i, j) = mode == feedsum::ZMode::kBinary ? 1.0 : u(rng);
    }
  }
  for (std::size_t i = 0; i < n; ++i) p.weights.push_back(1.0 + static_cast<double>(rng() % 4));
  int total = 0;
  for (std::size_t j = 0; j < m; ++j) {
    p.lengths.push_back(1 + static_cast<int>(rng() % 12));
    total += p.lengths.back();
  }
  p.word_budget = static_cast<int>(rng() % static_cast<std::uint64_t>(total + 1));
  return p;
}

using Counts = std::map<std::vector<std::string>, int>;

inline Counts ngram_counts(const std::vector<std::string>& t, std::size_t n) {
  Counts c;
  for (std::size_t k = 0; k + n <= t.size(); ++k) {
    ++c[std::vector<std::string>(t.begin() + static_cast<long>(k),
                                 t.begin() + static_cast<long>(k + n))];
  }
  return c;
}

inline Counts su4_counts(const std::vector<std::string>& t) {
  Counts c = ngram_counts(t, 1);
  for (std::size_t a = 0; a < t.size(); ++a) {
    for (std::size_t b = a + 1; b < t.size() && b - a <= 4; ++b) ++c[{t[a], t[b], "<skip>"}];
  }
  return c;
}

struct Prf {
  double r = 0.0, p = 0.0, f = 0.0;
};

inline Prf overlap_score(const Counts& sys, const Counts& ref) {
  int hit = 0, ns = 0, nr = 0;
  for (const auto& [g, c] : sys) {
    ns += c;
    auto it = ref.find(g);
    if (it != ref.end()) hit += std::min(c, it->second);
  }
  for (const auto& [g, c] : ref) nr += c;
  Prf out;
  out.r = nr ? static_cast<double>(hit) / nr : 0.0;
  out.p = ns ? static_cast<double>(hit) / ns : 0.0;
  out.f = out.r + out.p > 0 ? 2 * out.r * out.p / (out.r + out.p) : 0.0;
  return out;
}

}  // namespace oracle

#include "feedsum/soft_impute.hpp"

namespace oracle {

inline Eigen::MatrixXd random_matrix(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = g(rng);
  return m;
}

inline Eigen::MatrixXd random_unit_matrix(std::mt19937_64& rng, Eigen::Index rows,
                                          Eigen::Index cols, double fill) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i)
      if (u(rng) < fill) m(i, j) = u(rng) < 0.5 ? 1.0 : u(rng);
  return m;
}

// Sum of singular values via the eigenvalues of the smaller Gram matrix.
// Accurate to roughly sqrt(machine epsilon) for tiny singular values.
inline double nuclear_norm(const Eigen::MatrixXd& b) {
  Eigen::MatrixXd gram = b.rows() < b.cols() ? Eigen::MatrixXd(b * b.transpose())
                                             : Eigen::MatrixXd(b.transpose() * b);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
  double s = 0.0;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k)
    s += std::sqrt(std::max(0.0, es.eigenvalues()(k)));
  return s;
}

inline double prox_value(const Eigen::MatrixXd& x, const Eigen::MatrixXd& b, double t) {
  return 0.5 * (x - b).squaredNorm() + t * nuclear_norm(x);
}

struct RecoveryTrial {
  double imputed_rmse = 0.0;
  double column_mean_rmse = 0.0;
  double zero_rmse = 0.0;
  double lambda = 0.0;
};

inline double rmse_on(const Eigen::MatrixXd& est, const Eigen::MatrixXd& truth,
                      const std::vector<feedsum::Position>& cells) {
  double s = 0.0;
  for (const auto& p : cells) {
    double d = est(static_cast<Eigen::Index>(p.row), static_cast<Eigen::Index>(p.col)) -
               truth(static_cast<Eigen::Index>(p.row), static_cast<Eigen::Index>(p.col));
    s += d * d;
  }
  return std::sqrt(s / static_cast<double>(cells.size()));
}

// Rank-2 20x30 matrix rescaled to [0, 1] with 30% of cells hidden. Lambda is
// chosen on a validation slice of the observed cells, then refit on all of
// them; hidden cells are never consulted before scoring.
inline RecoveryTrial recovery_trial(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const Eigen::Index n = 20, m = 30;
  Eigen::MatrixXd truth = random_matrix(rng, n, 2) * random_matrix(rng, 2, m);
  truth = (truth.array() - truth.minCoeff()) / (truth.maxCoeff() - truth.minCoeff());

  std::uniform_real_distribution<double> u(0.0, 1.0);
  feedsum::ObservedSet observed(n, m), train(n, m);
  std::vector<feedsum::Position> hidden, validation;
  for (Eigen::Index j = 0; j < m; ++j) {
    for (Eigen::Index i = 0; i < n; ++i) {
      feedsum::Position p{static_cast<std::size_t>(i), static_cast<std::size_t>(j)};
      if (u(rng) < 0.3) {
        hidden.push_back(p);
        continue;
      }
      observed.insert(p.row, p.col);
      if (u(rng) < 0.15) {
        validation.push_back(p);
      } else {
        train.insert(p.row, p.col);
      }
    }
  }

  feedsum::ImputeConfig config;
  RecoveryTrial out;
  double best = 1e300;
  for (double lambda : {0.05, 0.1, 0.2, 0.5, 1.0, 2.0}) {
    config.lambda = lambda;
    auto fit = feedsum::soft_impute({feedsum::project(truth, train), train}, config);
    double err = rmse_on(fit.values, truth, validation);
    if (err < best) {
      best = err;
      out.lambda = lambda;
    }
  }
  config.lambda = out.lambda;
  auto fit = feedsum::soft_impute({feedsum::project(truth, observed), observed}, config);
  out.imputed_rmse = rmse_on(fit.values, truth, hidden);

  Eigen::MatrixXd means = Eigen::MatrixXd::Zero(n, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    double s = 0.0;
    int c = 0;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (observed.contains(static_cast<std::size_t>(i), static_cast<std::size_t>(j))) {
        s += truth(i, j);
        ++c;
      }
    }
    means.col(j).setConstant(c ? s / c : 0.0);
  }
  out.column_mean_rmse = rmse_on(means, truth, hidden);
  out.zero_rmse = rmse_on(Eigen::MatrixXd::Zero(n, m), truth, hidden);
  return out;
}

}  // namespace oracle

namespace oracle {

// M <= 14, N <= 30, weights 1..5, lengths 3..12, budget 10..30.
inline feedsum::SelectionProblem solver_instance(std::mt19937_64& rng, feedsum::ZMode mode) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto n = static_cast<Eigen::Index>(1 + rng() % 30);
  const auto m = static_cast<Eigen::Index>(1 + rng() % 14);
  const double fill = 0.1 + 0.3 * u(rng);
  feedsum::SelectionProblem p;
  p.z_mode = mode;
  p.matrix = Eigen::MatrixXd::Zero(n, m);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < m; ++j)
      if (u(rng) < fill) p.matrix(i, j) = mode == feedsum::ZMode::kBinary ? 1.0 : u(rng);
  for (Eigen::Index i = 0; i < n; ++i) p.weights.push_back(static_cast<double>(1 + rng() % 5));
  for (Eigen::Index j = 0; j < m; ++j) p.lengths.push_back(3 + static_cast<int>(rng() % 10));
  p.word_budget = 10 + static_cast<int>(rng() % 21);
  return p;
}

}  // namespace oracle
