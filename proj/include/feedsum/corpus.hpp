#pragma once

// Corpus ingestion from JSON Lines. Each non-blank line is one record:
//
//   {"lecture": "L1", "prompt": "interesting", "student": "S1", "text": "..."}
//   {"lecture": "L1", "prompt": "interesting", "reference": ["...", "..."]}
//
// "student" may be null or absent.

#include <compare>
#include <istream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "feedsum/text.hpp"

namespace feedsum {

struct DocumentKey {
  std::string lecture;
  Prompt prompt = Prompt::kInteresting;

  friend auto operator<=>(const DocumentKey&, const DocumentKey&) = default;
};

std::string to_string(const DocumentKey& key);

struct Corpus {
  // Ordered by (lecture, prompt), input order within a document.
  std::vector<ResponseUnit> responses;
  // Reference summary bullets per document.
  std::map<DocumentKey, std::vector<std::string>> references;
};

class CorpusError : public std::runtime_error {
 public:
  CorpusError(std::size_t line, const std::string& message);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

Corpus parse_corpus(std::istream& in);
Corpus load_corpus(const std::string& path);

// Bullets joined as separate sentences and tokenized.
std::vector<std::string> reference_tokens(const std::vector<std::string>& bullets);

}  // namespace feedsum
