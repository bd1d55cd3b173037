#include "feedsum/experiment.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace feedsum {

std::string_view to_string(Method method) {
  switch (method) {
    case Method::kIlpImpute:
      return "ilp-impute";
    case Method::kIlpBaseline:
      return "ilp-baseline";
    case Method::kSumBasic:
      return "sumbasic";
    case Method::kLexRank:
      return "lexrank";
  }
  return "ilp-baseline";
}

Method parse_method(std::string_view name) {
  for (Method m : all_methods()) {
    if (to_string(m) == name) return m;
  }
  throw std::invalid_argument("unknown method '" + std::string(name) +
                              "' (expected ilp-impute, ilp-baseline, sumbasic or lexrank)");
}

std::vector<Method> all_methods() {
  return {Method::kIlpImpute, Method::kIlpBaseline, Method::kSumBasic, Method::kLexRank};
}

std::vector<double> default_lambda_grid() { return parse_grid("0:5:0.5"); }

std::vector<double> parse_grid(std::string_view spec) {
  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || s.empty() || !std::isfinite(v)) {
      throw std::invalid_argument("bad number '" + s + "' in grid '" + std::string(spec) + "'");
    }
    return v;
  };

  std::vector<double> grid;
  if (spec.find(':') != std::string_view::npos) {
    std::vector<std::string> parts;
    std::stringstream ss{std::string(spec)};
    std::string part;
    while (std::getline(ss, part, ':')) parts.push_back(part);
    if (parts.size() != 3) throw std::invalid_argument("grid must be start:stop:step");
    double start = number(parts[0]), stop = number(parts[1]), step = number(parts[2]);
    if (!(step > 0.0) || stop < start) {
      throw std::invalid_argument("grid needs step > 0 and stop >= start");
    }
    for (long k = 0;; ++k) {
      double v = start + static_cast<double>(k) * step;
      if (v > stop + 1e-9 * std::max(1.0, std::abs(stop))) break;
      grid.push_back(v);
    }
  } else {
    std::stringstream ss{std::string(spec)};
    std::string part;
    while (std::getline(ss, part, ',')) grid.push_back(number(part));
  }
  if (grid.empty()) throw std::invalid_argument("empty lambda grid");
  for (double v : grid) {
    if (v < 0.0) throw std::invalid_argument("lambda grid values must be non-negative");
  }
  return grid;
}

void validate(const ExperimentConfig& config) {
  if (config.word_budget <= 0) throw std::invalid_argument("word budget must be positive");
  if (config.lambda_grid.empty()) throw std::invalid_argument("lambda grid is empty");
  for (double v : config.lambda_grid) {
    if (!(v >= 0.0)) throw std::invalid_argument("lambda grid values must be non-negative");
  }
  if (config.folds < 1) throw std::invalid_argument("folds must be at least 1");
  if (config.methods.empty()) throw std::invalid_argument("no methods selected");
}

// ---------------------------------------------------------------------------
// Workspace

Workspace::Workspace(Corpus corpus, const StopwordList& stopwords)
    : corpus_(std::move(corpus)), stopwords_(stopwords) {
  if (corpus_.responses.empty()) throw std::invalid_argument("corpus has no responses");
  sentences_ = segment_responses(corpus_.responses);
  if (sentences_.empty()) throw std::invalid_argument("corpus has no tokenizable sentences");
  concepts_ = extract_concepts(sentences_, stopwords_);
  binary_ = build_matrix(sentences_, concepts_);
  for (const Sentence& s : sentences_) {
    const ResponseUnit& r = corpus_.responses[s.response_index];
    documents_[{r.lecture_id, r.prompt}].push_back(s.sentence_id);
  }
}

const std::vector<std::size_t>& Workspace::document(const DocumentKey& key) const {
  auto it = documents_.find(key);
  if (it == documents_.end()) {
    throw std::invalid_argument("no sentences for document " + to_string(key));
  }
  return it->second;
}

std::vector<Sentence> Workspace::document_sentences(const DocumentKey& key) const {
  std::vector<Sentence> out;
  for (std::size_t id : document(key)) out.push_back(sentences_[id]);
  return out;
}

std::vector<std::string> Workspace::annotated_lectures() const {
  std::set<std::string> lectures;
  for (const auto& [key, bullets] : corpus_.references) lectures.insert(key.lecture);
  return {lectures.begin(), lectures.end()};
}

ImputedMatrix impute_corpus(const Workspace& ws, const ImputeConfig& config) {
  return soft_impute(ws.binary(), config);
}

SelectionProblem imputed_problem(const Workspace& ws, const DocumentKey& key,
                                 const Eigen::MatrixXd& imputed, int word_budget) {
  if (imputed.rows() != ws.binary().values.rows() ||
      imputed.cols() != ws.binary().values.cols()) {
    throw std::invalid_argument("imputed matrix shape does not match the corpus matrix");
  }
  const auto& ids = ws.document(key);
  std::vector<Sentence> sentences = ws.document_sentences(key);
  ConceptSet local = extract_concepts(sentences, ws.stopwords());

  SelectionProblem p;
  p.matrix.resize(static_cast<Eigen::Index>(local.size()), static_cast<Eigen::Index>(ids.size()));
  for (const Concept& c : local.concepts) {
    auto global = ws.concepts().find(c.bigram);
    if (!global) throw std::logic_error("document concept missing from corpus concepts");
    for (std::size_t j = 0; j < ids.size(); ++j) {
      double v = imputed(static_cast<Eigen::Index>(*global), static_cast<Eigen::Index>(ids[j]));
      p.matrix(static_cast<Eigen::Index>(c.concept_id), static_cast<Eigen::Index>(j)) =
          std::clamp(v, 0.0, 1.0);
    }
    p.weights.push_back(c.weight);
  }
  for (const Sentence& s : sentences) p.lengths.push_back(static_cast<int>(s.word_count()));
  p.word_budget = word_budget;
  p.z_mode = ZMode::kContinuous;
  return p;
}

DocumentSummary summarize_document(const Workspace& ws, const DocumentKey& key, Method method,
                                   const SummarizeOptions& options) {
  std::vector<Sentence> sentences = ws.document_sentences(key);
  DocumentSummary out;
  out.key = key;
  out.method = method;
  switch (method) {
    case Method::kIlpImpute:
      if (options.imputed == nullptr) {
        throw std::invalid_argument("ilp-impute needs an imputed matrix");
      }
      out.summary = solve_exact(imputed_problem(ws, key, *options.imputed, options.word_budget));
      break;
    case Method::kIlpBaseline:
      out.summary = ilp_baseline(sentences, extract_concepts(sentences, ws.stopwords()),
                                 options.word_budget);
      break;
    case Method::kSumBasic:
      out.summary = sumbasic(sentences, options.word_budget, ws.stopwords());
      break;
    case Method::kLexRank: {
      BaselineConfig cfg = options.baselines;
      cfg.word_budget = options.word_budget;
      out.summary = lexrank(sentences, cfg);
      break;
    }
  }
  for (std::size_t j : out.summary.selected) {
    out.sentence_ids.push_back(sentences[j].sentence_id);
    out.lines.push_back(sentences[j].text);
    out.tokens.insert(out.tokens.end(), sentences[j].tokens.begin(), sentences[j].tokens.end());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Folds and tuning

std::vector<std::vector<std::string>> make_folds(std::vector<std::string> lectures, int folds,
                                                 std::uint64_t seed) {
  std::sort(lectures.begin(), lectures.end());
  lectures.erase(std::unique(lectures.begin(), lectures.end()), lectures.end());
  if (folds < 1) throw std::invalid_argument("folds must be at least 1");
  if (lectures.size() < static_cast<std::size_t>(folds)) {
    throw std::invalid_argument("cannot split " + std::to_string(lectures.size()) +
                                " lectures into " + std::to_string(folds) + " folds");
  }
  // Fisher-Yates on the raw engine output so the assignment does not depend
  // on the standard library's distribution implementations.
  std::mt19937_64 rng(seed);
  for (std::size_t i = lectures.size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(lectures[i - 1], lectures[j]);
  }
  std::vector<std::vector<std::string>> out(static_cast<std::size_t>(folds));
  for (std::size_t k = 0; k < lectures.size(); ++k) {
    out[k % out.size()].push_back(lectures[k]);
  }
  for (auto& f : out) std::sort(f.begin(), f.end());
  return out;
}

namespace {

RougeReport average_reports(const std::vector<RougeReport>& reports) {
  std::vector<RougeScore> r1, r2, su4;
  for (const auto& r : reports) {
    r1.push_back(r.rouge1);
    r2.push_back(r.rouge2);
    su4.push_back(r.rouge_su4);
  }
  return {macro_average(r1), macro_average(r2), macro_average(su4)};
}

std::vector<DocumentKey> referenced_documents(const Workspace& ws) {
  std::vector<DocumentKey> docs;
  for (const auto& [key, bullets] : ws.corpus().references) docs.push_back(key);
  return docs;
}

}  // namespace

TuneResult tune_lambda(const Workspace& ws, const ExperimentConfig& config) {
  validate(config);
  if (config.folds < 2) throw std::invalid_argument("tuning needs at least two folds");

  const std::vector<std::string> lectures = ws.annotated_lectures();
  std::vector<std::string> missing;
  for (const auto& [key, ids] : ws.documents()) {
    if (std::binary_search(lectures.begin(), lectures.end(), key.lecture) &&
        !ws.corpus().references.count(key)) {
      missing.push_back(to_string(key));
    }
  }
  if (!missing.empty()) {
    std::string list;
    for (const auto& m : missing) list += (list.empty() ? "" : ", ") + m;
    throw std::invalid_argument("annotated lectures lack references for: " + list);
  }
  if (lectures.empty()) throw std::invalid_argument("corpus has no reference summaries");

  const auto folds = make_folds(lectures, config.folds, config.seed);
  const std::vector<DocumentKey> docs = referenced_documents(ws);
  std::map<DocumentKey, std::vector<std::string>> refs;
  for (const auto& key : docs) refs[key] = reference_tokens(ws.corpus().references.at(key));

  SummarizeOptions opts;
  opts.word_budget = config.word_budget;
  opts.baselines = config.baselines;

  // scores[method][grid index or 0][doc index]
  const bool tunes = std::find(config.methods.begin(), config.methods.end(),
                               Method::kIlpImpute) != config.methods.end();
  std::vector<std::vector<RougeReport>> impute_scores;
  if (tunes) {
    for (double lambda : config.lambda_grid) {
      ImputeConfig ic = config.impute;
      ic.lambda = lambda;
      ImputedMatrix b = impute_corpus(ws, ic);
      opts.imputed = &b.values;
      std::vector<RougeReport> per_doc;
      for (const auto& key : docs) {
        auto s = summarize_document(ws, key, Method::kIlpImpute, opts);
        per_doc.push_back(score_pair(s.tokens, refs[key]));
      }
      opts.imputed = nullptr;
      impute_scores.push_back(std::move(per_doc));
    }
  }
  std::map<Method, std::vector<RougeReport>> fixed_scores;
  for (Method m : config.methods) {
    if (m == Method::kIlpImpute) continue;
    for (const auto& key : docs) {
      auto s = summarize_document(ws, key, m, opts);
      fixed_scores[m].push_back(score_pair(s.tokens, refs[key]));
    }
  }

  TuneResult result;
  std::map<Method, std::vector<RougeReport>> fold_means;
  for (const auto& fold : folds) {
    std::vector<std::size_t> tune_docs, test_docs;
    for (std::size_t d = 0; d < docs.size(); ++d) {
      bool held_out = std::binary_search(fold.begin(), fold.end(), docs[d].lecture);
      (held_out ? test_docs : tune_docs).push_back(d);
    }
    FoldResult fr;
    fr.test_lectures = fold;

    auto subset = [](const std::vector<RougeReport>& all, const std::vector<std::size_t>& idx) {
      std::vector<RougeReport> out;
      for (std::size_t d : idx) out.push_back(all[d]);
      return out;
    };

    std::size_t chosen = 0;
    if (tunes) {
      double best = -1.0;
      for (std::size_t g = 0; g < config.lambda_grid.size(); ++g) {
        double score = average_reports(subset(impute_scores[g], tune_docs)).rouge1.f1;
        double lambda = config.lambda_grid[g];
        bool better = score > best + 1e-12 ||
                      (std::abs(score - best) <= 1e-12 && lambda < config.lambda_grid[chosen]);
        if (better) {
          best = score;
          chosen = g;
        }
      }
      fr.chosen_lambda = config.lambda_grid[chosen];
      fr.tuning_score = best;
    }

    for (Method m : config.methods) {
      const auto& all = m == Method::kIlpImpute ? impute_scores[chosen] : fixed_scores[m];
      RougeReport mean = average_reports(subset(all, test_docs));
      fr.test_scores.push_back({m, mean});
      fold_means[m].push_back(mean);
    }
    result.folds.push_back(std::move(fr));
  }
  for (Method m : config.methods) result.averaged.push_back({m, average_reports(fold_means[m])});
  return result;
}

// ---------------------------------------------------------------------------
// Reports

Report run_report(const Workspace& ws, const ExperimentConfig& config, double lambda) {
  validate(config);
  Report report;
  report.binary_density = density(ws.binary());

  std::optional<ImputedMatrix> imputed;
  if (std::find(config.methods.begin(), config.methods.end(), Method::kIlpImpute) !=
      config.methods.end()) {
    ImputeConfig ic = config.impute;
    ic.lambda = lambda;
    imputed = impute_corpus(ws, ic);
    report.lambda = lambda;
    report.imputed_density = density(imputed->values);
    report.impute_iterations = imputed->iterations_run;
    CooccurrenceMatrix view{imputed->values.cwiseMax(0.0).cwiseMin(1.0), ws.binary().observed};
    report.associations = associations_above(view, kAssociationThreshold);
  }

  SummarizeOptions opts;
  opts.word_budget = config.word_budget;
  opts.baselines = config.baselines;
  if (imputed) opts.imputed = &imputed->values;

  std::map<Method, std::vector<std::pair<Tokens, Tokens>>> pairs;
  for (const auto& [key, ids] : ws.documents()) {
    auto ref = ws.corpus().references.find(key);
    for (Method m : config.methods) {
      DocumentSummary s = summarize_document(ws, key, m, opts);
      if (ref != ws.corpus().references.end()) {
        pairs[m].emplace_back(s.tokens, reference_tokens(ref->second));
      }
      report.summaries.push_back(std::move(s));
    }
  }
  report.scored_documents = ws.corpus().references.size();
  if (report.scored_documents > 0) {
    for (Method m : config.methods) report.rows.push_back({m, evaluate_corpus(pairs[m])});
  }
  return report;
}

std::string format_table(const std::vector<MethodScores>& rows) {
  std::string out;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-14s %-20s  %-20s  %-20s\n", "", "      ROUGE-1", "      ROUGE-2",
                "     ROUGE-SU4");
  out += buf;
  std::snprintf(buf, sizeof buf, "%-14s", "System");
  out += buf;
  for (int k = 0; k < 3; ++k) out += "  R(%)   P(%)   F(%) ";
  out += "\n";
  for (const auto& row : rows) {
    std::snprintf(buf, sizeof buf, "%-14s", std::string(to_string(row.method)).c_str());
    out += buf;
    for (const RougeScore* s : {&row.scores.rouge1, &row.scores.rouge2, &row.scores.rouge_su4}) {
      std::snprintf(buf, sizeof buf, " %6.1f %6.1f %6.1f", 100.0 * s->recall,
                    100.0 * s->precision, 100.0 * s->f1);
      out += buf;
    }
    out += "\n";
  }
  return out;
}

std::string format_report(const Report& report) {
  std::string out;
  char buf[256];
  if (report.rows.empty()) {
    out += "no reference summaries; nothing scored\n";
  } else {
    out += format_table(report.rows);
  }
  std::snprintf(buf, sizeof buf, "documents scored: %zu\n", report.scored_documents);
  out += buf;
  std::snprintf(buf, sizeof buf, "matrix density (binary): %.6f\n", report.binary_density);
  out += buf;
  if (report.imputed_density) {
    std::snprintf(buf, sizeof buf, "matrix density (imputed, lambda=%g): %.6f after %d iterations\n",
                  *report.lambda, *report.imputed_density, *report.impute_iterations);
    out += buf;
    std::snprintf(buf, sizeof buf, "imputed associations >= %.1f: %zu\n", kAssociationThreshold,
                  report.associations.size());
    out += buf;
  }
  return out;
}

std::string format_tune(const TuneResult& result) {
  std::string out;
  char buf[256];
  for (std::size_t f = 0; f < result.folds.size(); ++f) {
    const FoldResult& fr = result.folds[f];
    std::string lectures;
    for (const auto& l : fr.test_lectures) lectures += (lectures.empty() ? "" : ",") + l;
    std::snprintf(buf, sizeof buf, "fold %zu: test lectures [%s] lambda=%g tuning ROUGE-1 F=%.1f\n",
                  f + 1, lectures.c_str(), fr.chosen_lambda, 100.0 * fr.tuning_score);
    out += buf;
  }
  out += format_table(result.averaged);
  return out;
}

void write_summaries(std::ostream& out, const Report& report) {
  for (const auto& s : report.summaries) {
    out << "## " << to_string(s.key) << " [" << to_string(s.method) << "] "
        << s.summary.total_words << " words\n";
    for (const auto& line : s.lines) out << "- " << line << '\n';
  }
}

void write_associations(std::ostream& out, const Workspace& ws,
                        const std::vector<Association>& associations) {
  char buf[32];
  out << "sentence\tbigram\tvalue\n";
  for (const auto& a : associations) {
    const auto& bigram = ws.concepts().concepts.at(a.concept_index).bigram;
    std::snprintf(buf, sizeof buf, "%.4f", a.value);
    out << ws.sentences().at(a.sentence).text << '\t' << bigram.first << ' ' << bigram.second
        << '\t' << buf << '\n';
  }
}

}  // namespace feedsum
