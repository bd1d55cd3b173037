#include "feedsum/soft_impute.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include <Eigen/SVD>

namespace feedsum {

void validate(const ImputeConfig& config) {
  if (!(config.lambda >= 0.0) || !std::isfinite(config.lambda)) {
    throw std::invalid_argument("lambda must be a finite non-negative number");
  }
  if (!(config.step_size > 0.0) || !std::isfinite(config.step_size)) {
    throw std::invalid_argument("step size must be positive");
  }
  if (config.max_iterations < 1) {
    throw std::invalid_argument("max_iterations must be at least 1");
  }
  if (!(config.rel_tolerance > 0.0)) {
    throw std::invalid_argument("rel_tolerance must be positive");
  }
}

Eigen::MatrixXd SvdResult::reconstruct() const {
  return u * singular_values.asDiagonal() * v.transpose();
}

SvdResult svd(const Eigen::MatrixXd& matrix) {
  if (!matrix.allFinite()) throw std::invalid_argument("svd: matrix has non-finite entries");

  SvdResult out;
  if (matrix.size() == 0) {
    out.u.resize(matrix.rows(), 0);
    out.v.resize(matrix.cols(), 0);
    return out;
  }

  Eigen::BDCSVD<Eigen::MatrixXd> solver(matrix, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (solver.info() != Eigen::Success) {
    throw SvdError("svd: decomposition of " + std::to_string(matrix.rows()) + "x" +
                   std::to_string(matrix.cols()) + " matrix did not converge (max |a_ij| = " +
                   std::to_string(matrix.cwiseAbs().maxCoeff()) + ")");
  }
  out.u = solver.matrixU();
  out.singular_values = solver.singularValues();
  out.v = solver.matrixV();

  for (Eigen::Index k = 0; k < out.u.cols(); ++k) {
    Eigen::Index arg = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < out.u.rows(); ++i) {
      double mag = std::abs(out.u(i, k));
      if (mag > best) {
        best = mag;
        arg = i;
      }
    }
    if (out.u(arg, k) < 0.0) {
      out.u.col(k) *= -1.0;
      out.v.col(k) *= -1.0;
    }
  }
  return out;
}

double trace_norm(const Eigen::MatrixXd& matrix) {
  if (matrix.size() == 0) return 0.0;
  Eigen::BDCSVD<Eigen::MatrixXd> solver(matrix);
  if (solver.info() != Eigen::Success) throw SvdError("trace_norm: svd did not converge");
  return solver.singularValues().sum();
}

Eigen::MatrixXd project(const Eigen::MatrixXd& matrix, const ObservedSet& omega) {
  if (matrix.rows() != omega.rows() || matrix.cols() != omega.cols()) {
    throw std::out_of_range("projection: observed positions exceed the matrix bounds");
  }
  return omega.mask().select(matrix, 0.0);
}

namespace {

double masked_loss(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                   const ObservedSet& omega) {
  return 0.5 * omega.mask().select(a - b, 0.0).squaredNorm();
}

}  // namespace

double objective(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b,
                 const ObservedSet& omega, double lambda) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != omega.rows() ||
      a.cols() != omega.cols()) {
    throw std::invalid_argument("objective: shape mismatch");
  }
  double penalty = lambda == 0.0 ? 0.0 : lambda * trace_norm(b);
  return masked_loss(a, b, omega) + penalty;
}

Eigen::MatrixXd soft_threshold(const SvdResult& svd, double t) {
  if (!(t >= 0.0)) throw std::invalid_argument("soft_threshold: t must be non-negative");
  Eigen::Index keep = 0;
  while (keep < svd.singular_values.size() && svd.singular_values(keep) > t) ++keep;
  if (keep == 0) return Eigen::MatrixXd::Zero(svd.u.rows(), svd.v.rows());
  Eigen::VectorXd shrunk = svd.singular_values.head(keep).array() - t;
  return svd.u.leftCols(keep) * shrunk.asDiagonal() * svd.v.leftCols(keep).transpose();
}

ProxStep impute_step(const Eigen::MatrixXd& a, const ObservedSet& omega,
                     const Eigen::MatrixXd& b, double lambda, double step_size) {
  Eigen::MatrixXd moved = b + step_size * omega.mask().select(a - b, 0.0);
  SvdResult dec = svd(moved);
  const double t = lambda * step_size;
  ProxStep step;
  step.next = soft_threshold(dec, t);
  step.trace_norm = (dec.singular_values.array() - t).max(0.0).sum();
  return step;
}

ImputedMatrix soft_impute(const CooccurrenceMatrix& a, const ImputeConfig& config) {
  validate(config);
  validate(a);
  if (a.observed.empty()) throw std::invalid_argument("soft_impute: observed set is empty");

  const Eigen::MatrixXd& target = a.values;
  ImputedMatrix out;
  Eigen::MatrixXd current = Eigen::MatrixXd::Zero(target.rows(), target.cols());
  double previous = masked_loss(target, current, a.observed);
  out.objective_trace.push_back(previous);

  for (int k = 1; k <= config.max_iterations; ++k) {
    ProxStep step = impute_step(target, a.observed, current, config.lambda, config.step_size);
    double value = masked_loss(target, step.next, a.observed) + config.lambda * step.trace_norm;
    if (!std::isfinite(value)) {
      throw std::runtime_error("soft_impute: objective became non-finite at iteration " +
                               std::to_string(k));
    }
    current = std::move(step.next);
    out.objective_trace.push_back(value);
    out.iterations_run = k;
    double change = std::abs(value - previous) / std::max(previous, 1e-12);
    previous = value;
    if (change < config.rel_tolerance) {
      out.converged = true;
      break;
    }
  }

  out.final_objective = previous;
  out.values = config.clip_to_unit ? Eigen::MatrixXd(current.cwiseMax(0.0).cwiseMin(1.0))
                                   : current;
  return out;
}

void write_objective_trace(std::ostream& out, const ImputedMatrix& result) {
  out << "iteration,objective\n";
  char buf[64];
  for (std::size_t k = 0; k < result.objective_trace.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%zu,%.17g\n", k, result.objective_trace[k]);
    out << buf;
  }
}

}  // namespace feedsum
