#include "feedsum/text.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace feedsum {

std::string_view to_string(Prompt prompt) {
  switch (prompt) {
    case Prompt::kInteresting:
      return "interesting";
    case Prompt::kConfusing:
      return "confusing";
    case Prompt::kLearning:
      return "learning";
  }
  return "interesting";
}

Prompt parse_prompt(std::string_view name) {
  if (name == "interesting") return Prompt::kInteresting;
  if (name == "confusing") return Prompt::kConfusing;
  if (name == "learning") return Prompt::kLearning;
  throw std::invalid_argument("unknown prompt '" + std::string(name) +
                              "' (expected interesting, confusing or learning)");
}

// ---------------------------------------------------------------------------
// Stopwords

StopwordList::StopwordList(std::set<std::string> words) {
  if (words.empty()) throw std::invalid_argument("stopword list is empty");
  for (const auto& w : words) {
    for (unsigned char c : w) {
      if (std::isupper(c)) {
        throw std::invalid_argument("stopword '" + w + "' is not lowercase");
      }
    }
  }
  words_.insert(words.begin(), words.end());
}

StopwordList StopwordList::parse(std::string_view text) {
  std::set<std::string> words;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    auto last = line.find_last_not_of(" \t\r");
    words.insert(line.substr(first, last - first + 1));
  }
  return StopwordList(std::move(words));
}

StopwordList StopwordList::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open stopword file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

const StopwordList& StopwordList::english() {
  static const StopwordList list = parse(default_stopword_text());
  return list;
}

bool StopwordList::contains(std::string_view word) const {
  return words_.find(word) != words_.end();
}

// ---------------------------------------------------------------------------
// Tokenizer

namespace {

enum class CharClass { kWord, kApostrophe, kHyphen, kPunct, kSpace };

struct Unit {
  std::string text;
  CharClass cls;
};

// Decodes one UTF-8 sequence starting at pos; malformed bytes are taken one
// at a time.
std::size_t utf8_length(unsigned char lead) {
  if (lead < 0x80) return 1;
  if ((lead >> 5) == 0x6) return 2;
  if ((lead >> 4) == 0xE) return 3;
  if ((lead >> 3) == 0x1E) return 4;
  return 1;
}

CharClass classify(std::string_view cp) {
  if (cp.size() == 1) {
    unsigned char c = cp[0];
    if (std::isspace(c)) return CharClass::kSpace;
    if (std::isalnum(c)) return CharClass::kWord;
    if (c == '\'') return CharClass::kApostrophe;
    if (c == '-') return CharClass::kHyphen;
    if (c < 0x80) return CharClass::kPunct;
    return CharClass::kPunct;  // stray continuation byte
  }
  // Common non-ASCII punctuation and spaces.
  static const std::unordered_set<std::string_view> kPunct = {
      "\u2013", "\u2014", "\u2026", "\u201c", "\u201d",
      "\u00ab", "\u00bb", "\u2022", "\u00b7", "\u2018"};
  if (cp == "\u2019") return CharClass::kApostrophe;
  if (cp == "\u2010" || cp == "\u2011") return CharClass::kHyphen;
  if (cp == "\u00a0" || cp == "\u2009" || cp == "\u200b") return CharClass::kSpace;
  if (kPunct.count(cp)) return CharClass::kPunct;
  return CharClass::kWord;
}

std::vector<Unit> decode(std::string_view text) {
  std::vector<Unit> units;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t len = std::min(utf8_length(text[pos]), text.size() - pos);
    std::string_view cp = text.substr(pos, len);
    units.push_back({std::string(cp), classify(cp)});
    pos += len;
  }
  return units;
}

void flush_chunk(const std::vector<Unit>& units, std::size_t begin,
                 std::size_t end, std::vector<std::string>& out) {
  std::string token;
  for (std::size_t k = begin; k < end; ++k) {
    const Unit& u = units[k];
    switch (u.cls) {
      case CharClass::kWord:
        if (u.text.size() == 1) {
          token.push_back(static_cast<char>(
              std::tolower(static_cast<unsigned char>(u.text[0]))));
        } else {
          token += u.text;
        }
        break;
      case CharClass::kApostrophe:
      case CharClass::kHyphen: {
        bool inner = k > begin && k + 1 < end &&
                     units[k - 1].cls == CharClass::kWord &&
                     units[k + 1].cls == CharClass::kWord;
        if (inner) token.push_back(u.cls == CharClass::kApostrophe ? '\'' : '-');
        break;
      }
      default:
        break;
    }
  }
  if (!token.empty()) out.push_back(std::move(token));
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  const auto units = decode(text);
  std::size_t start = 0;
  for (std::size_t k = 0; k <= units.size(); ++k) {
    if (k == units.size() || units[k].cls == CharClass::kSpace) {
      if (k > start) flush_chunk(units, start, k, tokens);
      start = k + 1;
    }
  }
  return tokens;
}

// ---------------------------------------------------------------------------
// Sentences

std::vector<Sentence> split_sentences(const ResponseUnit& unit,
                                      std::size_t response_index,
                                      std::size_t first_sentence_id) {
  std::vector<Sentence> out;
  const std::string& text = unit.raw_text;
  auto emit = [&](std::size_t begin, std::size_t end) {
    std::string_view piece = std::string_view(text).substr(begin, end - begin);
    auto tokens = tokenize(piece);
    if (tokens.empty()) return;
    Sentence s;
    auto first = piece.find_first_not_of(" \t\r\n");
    auto last = piece.find_last_not_of(" \t\r\n");
    s.text = std::string(piece.substr(first, last - first + 1));
    if (end < text.size() && (text[end] == '.' || text[end] == '!' || text[end] == '?')) {
      s.text.push_back(text[end]);
    }
    s.sentence_id = first_sentence_id + out.size();
    s.response_index = response_index;
    s.tokens = std::move(tokens);
    out.push_back(std::move(s));
  };

  auto is_digit = [&](std::size_t k) {
    return k < text.size() && std::isdigit(static_cast<unsigned char>(text[k]));
  };

  std::size_t begin = 0;
  for (std::size_t k = 0; k < text.size(); ++k) {
    char c = text[k];
    std::size_t width = 1;
    bool brk = c == '!' || c == '?' || c == '\n' || c == '\r';
    if (c == '.') brk = !(k > 0 && is_digit(k - 1) && is_digit(k + 1));
    if (text.compare(k, 3, "\u2026") == 0) {
      brk = true;
      width = 3;
    }
    if (brk) {
      emit(begin, k);
      begin = k + width;
      k += width - 1;
    }
  }
  emit(begin, text.size());
  return out;
}

std::vector<Sentence> segment_responses(std::span<const ResponseUnit> responses) {
  std::vector<Sentence> all;
  for (std::size_t r = 0; r < responses.size(); ++r) {
    auto part = split_sentences(responses[r], r, all.size());
    for (auto& s : part) all.push_back(std::move(s));
  }
  return all;
}

// ---------------------------------------------------------------------------
// Concepts

std::size_t BigramHash::operator()(const Bigram& b) const noexcept {
  std::size_t h1 = std::hash<std::string>{}(b.first);
  std::size_t h2 = std::hash<std::string>{}(b.second);
  return h1 ^ (h2 + 0x9e3779b97f4a7c15ULL + (h1 << 6) + (h1 >> 2));
}

std::optional<std::size_t> ConceptSet::find(const Bigram& bigram) const {
  auto it = index.find(bigram);
  if (it == index.end()) return std::nullopt;
  return it->second;
}

ConceptSet make_concept_set(std::vector<Concept> concepts) {
  ConceptSet set;
  set.concepts = std::move(concepts);
  for (std::size_t i = 0; i < set.concepts.size(); ++i) {
    if (set.concepts[i].concept_id != i) {
      throw std::invalid_argument("concept ids must be contiguous from 0");
    }
    if (!set.index.emplace(set.concepts[i].bigram, i).second) {
      throw std::invalid_argument("duplicate concept bigram (" +
                                  set.concepts[i].bigram.first + ", " +
                                  set.concepts[i].bigram.second + ")");
    }
  }
  return set;
}

ConceptSet extract_concepts(std::span<const Sentence> sentences,
                            const StopwordList& stopwords) {
  if (stopwords.empty()) throw std::invalid_argument("stopword list is empty");

  ConceptSet set;
  for (const Sentence& s : sentences) {
    std::unordered_set<std::size_t> seen;
    for (std::size_t k = 0; k + 1 < s.tokens.size(); ++k) {
      const std::string& a = s.tokens[k];
      const std::string& b = s.tokens[k + 1];
      if (stopwords.contains(a) && stopwords.contains(b)) continue;
      Bigram bigram{a, b};
      auto [it, inserted] = set.index.emplace(bigram, set.concepts.size());
      if (inserted) {
        set.concepts.push_back({set.concepts.size(), std::move(bigram), 0.0});
      }
      if (seen.insert(it->second).second) set.concepts[it->second].weight += 1.0;
    }
  }
  return set;
}

std::vector<std::size_t> concepts_in_sentence(const Sentence& sentence,
                                              const ConceptSet& concepts) {
  std::vector<std::size_t> ids;
  for (std::size_t k = 0; k + 1 < sentence.tokens.size(); ++k) {
    if (auto id = concepts.find({sentence.tokens[k], sentence.tokens[k + 1]})) {
      ids.push_back(*id);
    }
  }
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  return ids;
}

CorpusStats corpus_stats(std::span<const ResponseUnit> responses,
                         std::span<const Sentence> sentences,
                         const ConceptSet& concepts) {
  if (responses.empty() || sentences.empty()) {
    throw std::invalid_argument("corpus statistics need a non-empty corpus");
  }
  CorpusStats st;
  st.num_responses = responses.size();
  st.num_sentences = sentences.size();
  st.num_concepts = concepts.size();

  std::vector<std::size_t> lengths(responses.size(), 0);
  for (const Sentence& s : sentences) {
    if (s.response_index >= responses.size()) {
      throw std::invalid_argument("sentence refers to an unknown response");
    }
    lengths[s.response_index] += s.word_count();
  }
  double sum = 0.0;
  for (std::size_t r = 0; r < responses.size(); ++r) {
    sum += static_cast<double>(lengths[r]);
    st.document_words[{responses[r].lecture_id, responses[r].prompt}] += lengths[r];
  }
  st.mean_response_length = sum / static_cast<double>(responses.size());
  double var = 0.0;
  for (auto len : lengths) {
    double d = static_cast<double>(len) - st.mean_response_length;
    var += d * d;
  }
  st.stddev_response_length = std::sqrt(var / static_cast<double>(responses.size()));

  double doc_total = 0.0;
  for (const auto& [key, words] : st.document_words) doc_total += static_cast<double>(words);
  st.mean_document_words = doc_total / static_cast<double>(st.document_words.size());

  if (!concepts.concepts.empty()) {
    std::vector<std::size_t> occurrences(concepts.size(), 0);
    double nonzero = 0.0;
    for (const Sentence& s : sentences) {
      for (std::size_t k = 0; k + 1 < s.tokens.size(); ++k) {
        if (auto id = concepts.find({s.tokens[k], s.tokens[k + 1]})) ++occurrences[*id];
      }
      nonzero += static_cast<double>(concepts_in_sentence(s, concepts).size());
    }
    std::size_t low = std::count_if(occurrences.begin(), occurrences.end(),
                                    [](std::size_t c) { return c <= 2; });
    st.low_frequency_fraction =
        static_cast<double>(low) / static_cast<double>(concepts.size());
    st.matrix_density = nonzero / (static_cast<double>(concepts.size()) *
                                   static_cast<double>(sentences.size()));
  }
  return st;
}

}  // namespace feedsum
