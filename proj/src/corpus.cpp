#include "feedsum/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <tuple>

#include "json.hpp"

namespace feedsum {

std::string to_string(const DocumentKey& key) {
  return key.lecture + "/" + std::string(to_string(key.prompt));
}

CorpusError::CorpusError(std::size_t line, const std::string& message)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message : message),
      line_(line) {}

namespace {

bool blank(const std::string& s) {
  return s.find_first_not_of(" \t\r\n") == std::string::npos;
}

std::string required_string(const nlohmann::json& rec, const char* field, std::size_t line) {
  auto it = rec.find(field);
  if (it == rec.end() || !it->is_string()) {
    throw CorpusError(line, std::string("missing or non-string \"") + field + "\"");
  }
  return it->get<std::string>();
}

}  // namespace

Corpus parse_corpus(std::istream& in) {
  Corpus corpus;
  std::string raw;
  std::size_t line = 0;
  std::set<DocumentKey> with_responses;
  std::map<DocumentKey, std::size_t> reference_line;

  while (std::getline(in, raw)) {
    ++line;
    if (blank(raw)) continue;
    nlohmann::json rec;
    try {
      rec = nlohmann::json::parse(raw);
    } catch (const nlohmann::json::parse_error& e) {
      throw CorpusError(line, std::string("malformed JSON: ") + e.what());
    }
    if (!rec.is_object()) throw CorpusError(line, "record is not a JSON object");

    DocumentKey key;
    key.lecture = required_string(rec, "lecture", line);
    if (key.lecture.empty()) throw CorpusError(line, "empty lecture id");
    try {
      key.prompt = parse_prompt(required_string(rec, "prompt", line));
    } catch (const std::invalid_argument& e) {
      throw CorpusError(line, e.what());
    }

    const bool has_text = rec.contains("text");
    const bool has_reference = rec.contains("reference");
    if (has_text == has_reference) {
      throw CorpusError(line, "record needs exactly one of \"text\" or \"reference\"");
    }

    if (has_text) {
      ResponseUnit unit;
      unit.lecture_id = key.lecture;
      unit.prompt = key.prompt;
      unit.raw_text = required_string(rec, "text", line);
      if (blank(unit.raw_text)) throw CorpusError(line, "empty response text");
      if (auto it = rec.find("student"); it != rec.end() && !it->is_null()) {
        if (!it->is_string()) throw CorpusError(line, "\"student\" must be a string or null");
        unit.student_id = it->get<std::string>();
      }
      corpus.responses.push_back(std::move(unit));
      with_responses.insert(key);
    } else {
      const auto& ref = rec.at("reference");
      if (!ref.is_array() || ref.empty()) {
        throw CorpusError(line, "\"reference\" must be a non-empty list of strings");
      }
      std::vector<std::string> bullets;
      for (const auto& b : ref) {
        if (!b.is_string()) throw CorpusError(line, "reference bullets must be strings");
        bullets.push_back(b.get<std::string>());
      }
      if (!corpus.references.emplace(key, std::move(bullets)).second) {
        throw CorpusError(line, "duplicate reference for " + to_string(key));
      }
      reference_line[key] = line;
    }
  }

  for (const auto& [key, ref_line] : reference_line) {
    if (!with_responses.count(key)) {
      throw CorpusError(ref_line, "reference for " + to_string(key) + " has no responses");
    }
  }

  std::stable_sort(corpus.responses.begin(), corpus.responses.end(),
                   [](const ResponseUnit& a, const ResponseUnit& b) {
                     return std::tie(a.lecture_id, a.prompt) < std::tie(b.lecture_id, b.prompt);
                   });
  return corpus;
}

Corpus load_corpus(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CorpusError(0, "cannot open corpus file " + path);
  return parse_corpus(in);
}

std::vector<std::string> reference_tokens(const std::vector<std::string>& bullets) {
  std::vector<std::string> tokens;
  for (const auto& b : bullets) {
    auto t = tokenize(b);
    tokens.insert(tokens.end(), t.begin(), t.end());
  }
  return tokens;
}

}  // namespace feedsum
