#include "feedsum/cooccurrence.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>

namespace feedsum {

ObservedSet::ObservedSet(Eigen::Index rows, Eigen::Index cols)
    : mask_(Mask::Constant(rows, cols, false)) {}

ObservedSet::ObservedSet(Eigen::Index rows, Eigen::Index cols,
                         std::span<const Position> positions)
    : ObservedSet(rows, cols) {
  for (const Position& p : positions) insert(p.row, p.col);
}

ObservedSet ObservedSet::all(Eigen::Index rows, Eigen::Index cols) {
  ObservedSet s;
  s.mask_ = Mask::Constant(rows, cols, true);
  return s;
}

ObservedSet ObservedSet::nonzeros(const Eigen::MatrixXd& values) {
  ObservedSet s;
  s.mask_ = values.array() != 0.0;
  return s;
}

bool ObservedSet::contains(std::size_t row, std::size_t col) const {
  if (row >= static_cast<std::size_t>(rows()) || col >= static_cast<std::size_t>(cols())) {
    return false;
  }
  return mask_(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
}

void ObservedSet::insert(std::size_t row, std::size_t col) {
  if (row >= static_cast<std::size_t>(rows()) || col >= static_cast<std::size_t>(cols())) {
    throw std::out_of_range("position (" + std::to_string(row) + ", " +
                            std::to_string(col) + ") outside " +
                            std::to_string(rows()) + "x" + std::to_string(cols()));
  }
  mask_(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = true;
}

std::vector<Position> ObservedSet::positions() const {
  std::vector<Position> out;
  out.reserve(size());
  for (Eigen::Index j = 0; j < cols(); ++j) {
    for (Eigen::Index i = 0; i < rows(); ++i) {
      if (mask_(i, j)) out.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j)});
    }
  }
  return out;
}

void validate(const CooccurrenceMatrix& m) {
  if (m.values.rows() != m.observed.rows() || m.values.cols() != m.observed.cols()) {
    throw std::invalid_argument("observed set shape does not match the matrix");
  }
  if (!m.values.allFinite() ||
      (m.values.size() > 0 && (m.values.minCoeff() < 0.0 || m.values.maxCoeff() > 1.0))) {
    throw std::invalid_argument("co-occurrence values must lie in [0, 1]");
  }
}

CooccurrenceMatrix build_matrix(
    std::size_t n_concepts,
    std::span<const std::vector<std::size_t>> sentence_concepts) {
  if (n_concepts == 0 || sentence_concepts.empty()) {
    throw std::invalid_argument("co-occurrence matrix needs at least one concept and one sentence");
  }
  const auto n = static_cast<Eigen::Index>(n_concepts);
  const auto m = static_cast<Eigen::Index>(sentence_concepts.size());
  CooccurrenceMatrix out{Eigen::MatrixXd::Zero(n, m), ObservedSet(n, m)};
  for (Eigen::Index j = 0; j < m; ++j) {
    for (std::size_t i : sentence_concepts[static_cast<std::size_t>(j)]) {
      if (i >= n_concepts) {
        throw std::out_of_range("sentence " + std::to_string(j) +
                                " references unknown concept " + std::to_string(i));
      }
      out.values(static_cast<Eigen::Index>(i), j) = 1.0;
      out.observed.insert(i, static_cast<std::size_t>(j));
    }
  }
  return out;
}

CooccurrenceMatrix build_matrix(std::span<const Sentence> sentences,
                                const ConceptSet& concepts) {
  std::vector<std::vector<std::size_t>> occurrences;
  occurrences.reserve(sentences.size());
  for (std::size_t j = 0; j < sentences.size(); ++j) {
    if (sentences[j].sentence_id != j) {
      throw std::invalid_argument("sentence ids must be contiguous from 0");
    }
    occurrences.push_back(concepts_in_sentence(sentences[j], concepts));
  }
  for (std::size_t i = 0; i < concepts.size(); ++i) {
    if (concepts.concepts[i].concept_id != i) {
      throw std::invalid_argument("concept ids must be contiguous from 0");
    }
  }
  return build_matrix(concepts.size(), occurrences);
}

double density(const Eigen::MatrixXd& values) {
  if (values.size() == 0) return 0.0;
  return static_cast<double>((values.array() != 0.0).count()) /
         static_cast<double>(values.size());
}

std::vector<Association> associations_above(const CooccurrenceMatrix& matrix,
                                            double threshold) {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw std::invalid_argument("association threshold must lie in [0, 1]");
  }
  validate(matrix);
  std::vector<Association> out;
  for (Eigen::Index j = 0; j < matrix.values.cols(); ++j) {
    for (Eigen::Index i = 0; i < matrix.values.rows(); ++i) {
      if (matrix.observed.mask()(i, j)) continue;
      double v = matrix.values(i, j);
      if (v >= threshold) {
        out.push_back({static_cast<std::size_t>(j), static_cast<std::size_t>(i), v});
      }
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const Association& a, const Association& b) {
    return a.value > b.value;
  });
  return out;
}

Eigen::MatrixXd select_columns(const Eigen::MatrixXd& values,
                               std::span<const std::size_t> columns) {
  Eigen::MatrixXd out(values.rows(), static_cast<Eigen::Index>(columns.size()));
  for (std::size_t k = 0; k < columns.size(); ++k) {
    if (columns[k] >= static_cast<std::size_t>(values.cols())) {
      throw std::out_of_range("column " + std::to_string(columns[k]) + " out of range");
    }
    out.col(static_cast<Eigen::Index>(k)) = values.col(static_cast<Eigen::Index>(columns[k]));
  }
  return out;
}

void write_matrix(std::ostream& out, const Eigen::MatrixXd& values) {
  out << values.rows() << ' ' << values.cols() << '\n';
  char buf[32];
  for (Eigen::Index i = 0; i < values.rows(); ++i) {
    for (Eigen::Index j = 0; j < values.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.6g", values(i, j));
      if (j) out << ' ';
      out << buf;
    }
    out << '\n';
  }
}

Eigen::MatrixXd read_matrix(std::istream& in) {
  long rows = -1, cols = -1;
  if (!(in >> rows >> cols) || rows < 0 || cols < 0) {
    throw std::runtime_error("matrix dump: bad \"N M\" header");
  }
  Eigen::MatrixXd values(rows, cols);
  for (long i = 0; i < rows; ++i) {
    for (long j = 0; j < cols; ++j) {
      if (!(in >> values(i, j))) {
        throw std::runtime_error("matrix dump: missing value at row " + std::to_string(i) +
                                 ", column " + std::to_string(j));
      }
    }
  }
  return values;
}

}  // namespace feedsum
