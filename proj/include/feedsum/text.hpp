#pragma once

// Tokenization, sentence splitting and bigram-concept extraction.

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace feedsum {

enum class Prompt { kInteresting, kConfusing, kLearning };

std::string_view to_string(Prompt prompt);
// Throws std::invalid_argument for anything but the three prompt names.
Prompt parse_prompt(std::string_view name);

struct ResponseUnit {
  std::string lecture_id;
  Prompt prompt = Prompt::kInteresting;
  std::optional<std::string> student_id;
  std::string raw_text;
};

struct Sentence {
  std::size_t sentence_id = 0;
  // Index of the originating response in the ingested response list.
  std::size_t response_index = 0;
  std::vector<std::string> tokens;
  // Trimmed source text of the sentence, for display.
  std::string text;

  std::size_t word_count() const { return tokens.size(); }
};

using Bigram = std::pair<std::string, std::string>;

struct Concept {
  std::size_t concept_id = 0;
  Bigram bigram;
  // Number of distinct sentences containing the bigram.
  double weight = 0.0;
};

class StopwordList {
 public:
  StopwordList() = default;
  // Entries must be lowercase; throws std::invalid_argument otherwise or if
  // the list is empty.
  explicit StopwordList(std::set<std::string> words);

  // One word per line, '#' comments, blank lines ignored.
  static StopwordList parse(std::string_view text);
  static StopwordList load(const std::string& path);
  // The list shipped in data/stopwords_en.txt.
  static const StopwordList& english();

  bool contains(std::string_view word) const;
  bool empty() const { return words_.empty(); }
  std::size_t size() const { return words_.size(); }
  const std::set<std::string, std::less<>>& words() const { return words_; }

 private:
  std::set<std::string, std::less<>> words_;
};

std::string_view default_stopword_text();

// Lowercases, splits on whitespace and strips punctuation. Hyphens and
// apostrophes survive only between two word characters.
std::vector<std::string> tokenize(std::string_view text);

// Splits on . ! ? and newlines (a '.' between digits is not a break).
// Sentences without tokens are dropped. Ids start at first_sentence_id.
std::vector<Sentence> split_sentences(const ResponseUnit& unit,
                                      std::size_t response_index = 0,
                                      std::size_t first_sentence_id = 0);

// Sentences of all responses with contiguous ids in response order.
std::vector<Sentence> segment_responses(std::span<const ResponseUnit> responses);

struct BigramHash {
  std::size_t operator()(const Bigram& b) const noexcept;
};

// Concepts plus a bigram lookup; ids are positions in `concepts`.
struct ConceptSet {
  std::vector<Concept> concepts;
  std::unordered_map<Bigram, std::size_t, BigramHash> index;

  std::size_t size() const { return concepts.size(); }
  std::optional<std::size_t> find(const Bigram& bigram) const;
};

ConceptSet make_concept_set(std::vector<Concept> concepts);

// Every distinct adjacent token pair that is not made of two stopwords, in
// first-occurrence order, weighted by sentence frequency.
ConceptSet extract_concepts(std::span<const Sentence> sentences,
                            const StopwordList& stopwords);

// Distinct concept ids whose bigram occurs in the sentence, ascending.
std::vector<std::size_t> concepts_in_sentence(const Sentence& sentence,
                                              const ConceptSet& concepts);

struct CorpusStats {
  std::size_t num_responses = 0;
  std::size_t num_sentences = 0;
  std::size_t num_concepts = 0;
  double mean_response_length = 0.0;
  double stddev_response_length = 0.0;
  // Total words per (lecture, prompt) pseudo-document.
  std::map<std::pair<std::string, Prompt>, std::size_t> document_words;
  double mean_document_words = 0.0;
  // Fraction of concepts whose corpus occurrence count is at most two.
  double low_frequency_fraction = 0.0;
  // Nonzero fraction of the binary concept-sentence matrix.
  double matrix_density = 0.0;
};

CorpusStats corpus_stats(std::span<const ResponseUnit> responses,
                         std::span<const Sentence> sentences,
                         const ConceptSet& concepts);

}  // namespace feedsum
