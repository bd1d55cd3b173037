#pragma once

// Concept-by-sentence co-occurrence matrix and its observed-position set.

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "feedsum/text.hpp"

namespace feedsum {

struct Position {
  std::size_t row = 0;  // concept
  std::size_t col = 0;  // sentence

  friend bool operator==(const Position&, const Position&) = default;
};

// Set of observed (i, j) positions, stored as a dense mask.
class ObservedSet {
 public:
  using Mask = Eigen::Array<bool, Eigen::Dynamic, Eigen::Dynamic>;

  ObservedSet() = default;
  ObservedSet(Eigen::Index rows, Eigen::Index cols);
  // Throws std::out_of_range for positions outside rows x cols.
  ObservedSet(Eigen::Index rows, Eigen::Index cols,
              std::span<const Position> positions);

  static ObservedSet all(Eigen::Index rows, Eigen::Index cols);
  static ObservedSet nonzeros(const Eigen::MatrixXd& values);

  Eigen::Index rows() const { return mask_.rows(); }
  Eigen::Index cols() const { return mask_.cols(); }
  std::size_t size() const { return static_cast<std::size_t>(mask_.count()); }
  bool empty() const { return size() == 0; }
  bool contains(std::size_t row, std::size_t col) const;
  void insert(std::size_t row, std::size_t col);
  const Mask& mask() const { return mask_; }
  // Column-major order.
  std::vector<Position> positions() const;

 private:
  Mask mask_;
};

struct CooccurrenceMatrix {
  Eigen::MatrixXd values;  // N x M, entries in [0, 1]
  ObservedSet observed;

  std::size_t n_concepts() const { return static_cast<std::size_t>(values.rows()); }
  std::size_t n_sentences() const { return static_cast<std::size_t>(values.cols()); }
};

// Checks shape agreement and the [0, 1] range; throws std::invalid_argument.
void validate(const CooccurrenceMatrix& matrix);

// A_ij = 1 iff concept i occurs as an adjacent pair in sentence j; the
// observed set is the nonzero entries. Sentence ids must be 0..M-1 in order
// and concept ids 0..N-1.
CooccurrenceMatrix build_matrix(std::span<const Sentence> sentences,
                                const ConceptSet& concepts);

// Same, from per-sentence concept id lists; throws std::out_of_range when a
// sentence lists an id >= n_concepts.
CooccurrenceMatrix build_matrix(
    std::size_t n_concepts,
    std::span<const std::vector<std::size_t>> sentence_concepts);

double density(const Eigen::MatrixXd& values);
inline double density(const CooccurrenceMatrix& m) { return density(m.values); }

struct Association {
  std::size_t sentence = 0;
  std::size_t concept_index = 0;
  double value = 0.0;
};

// Unobserved cells with value >= threshold, sorted by descending value then
// (sentence, concept). Threshold must lie in [0, 1].
std::vector<Association> associations_above(const CooccurrenceMatrix& matrix,
                                            double threshold);

// Column subset, in the given order.
Eigen::MatrixXd select_columns(const Eigen::MatrixXd& values,
                               std::span<const std::size_t> columns);

// Text dump: "N M" header, then N rows of M values with 6 significant digits.
void write_matrix(std::ostream& out, const Eigen::MatrixXd& values);
Eigen::MatrixXd read_matrix(std::istream& in);

}  // namespace feedsum
