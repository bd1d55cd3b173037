#pragma once

// Trace-norm regularized matrix completion (soft-impute) by proximal
// gradient descent:
//
//   minimize  1/2 || P_omega(A) - P_omega(B) ||_F^2 + lambda * ||B||_*
//
// Each iteration takes a gradient step on the squared loss and applies
// singular-value soft-thresholding as the proximal map of the trace norm.
// The loss gradient is 1-Lipschitz, so a fixed step of 1 gives monotone
// descent.

#include <cstddef>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "feedsum/cooccurrence.hpp"

namespace feedsum {

// Lipschitz constant of the gradient of the squared loss on P_omega.
inline constexpr double kLipschitzConstant = 1.0;

struct ImputeConfig {
  double lambda = 0.0;
  double step_size = 1.0 / kLipschitzConstant;
  int max_iterations = 500;
  double rel_tolerance = 1e-6;
  // Clamp the final iterate into [0, 1]; the iteration itself is unclamped.
  bool clip_to_unit = true;
};

void validate(const ImputeConfig& config);

struct SvdResult {
  Eigen::MatrixXd u;                 // N x r, orthonormal columns
  Eigen::VectorXd singular_values;   // descending, non-negative
  Eigen::MatrixXd v;                 // M x r, orthonormal columns

  Eigen::MatrixXd reconstruct() const;
};

class SvdError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thin SVD with r = min(N, M). Signs are fixed so that the largest-magnitude
// entry of each left singular vector is positive (first such entry on ties).
SvdResult svd(const Eigen::MatrixXd& matrix);

double trace_norm(const Eigen::MatrixXd& matrix);

// B on omega, zero elsewhere.
Eigen::MatrixXd project(const Eigen::MatrixXd& matrix, const ObservedSet& omega);

double objective(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                 const ObservedSet& omega, double lambda);

// U diag((sigma_i - t)_+) V^T. Throws std::invalid_argument for t < 0.
Eigen::MatrixXd soft_threshold(const SvdResult& svd, double t);

struct ProxStep {
  Eigen::MatrixXd next;
  double trace_norm = 0.0;  // of `next`
};

// One update B <- prox_{lambda*rho}(B + rho * (P(A) - P(B))).
ProxStep impute_step(const Eigen::MatrixXd& a, const ObservedSet& omega,
                     const Eigen::MatrixXd& b, double lambda, double step_size);

struct ImputedMatrix {
  Eigen::MatrixXd values;
  int iterations_run = 0;
  // Objective of the last unclipped iterate.
  double final_objective = 0.0;
  // trace[0] is the objective at B = 0, trace[k] after iteration k.
  std::vector<double> objective_trace;
  bool converged = false;
};

// Starts from B = 0 and stops when the relative objective change drops below
// rel_tolerance or after max_iterations.
ImputedMatrix soft_impute(const CooccurrenceMatrix& a, const ImputeConfig& config);

// "iteration,objective" CSV with a header row.
void write_objective_trace(std::ostream& out, const ImputedMatrix& result);

}  // namespace feedsum
