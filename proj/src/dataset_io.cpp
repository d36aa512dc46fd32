#include "faleval/dataset_io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cstdio>
#include <fstream>

#include "json.hpp"

namespace faleval {

using nlohmann::json;
using nlohmann::ordered_json;

LoadError::LoadError(const std::string& path, std::size_t line,
                     const std::string& what)
    : std::runtime_error(line == 0
                             ? path + ": " + what
                             : path + " line " + std::to_string(line) + ": " +
                                   what) {}

namespace {

bool is_blank(const std::string& line) {
  return line.find_first_not_of(" \t\r") == std::string::npos;
}

// Runs `fn` once per non-blank line, converting any failure into a LoadError
// that names the file and line.
template <typename Fn>
void for_each_record(const std::string& path, Fn fn) {
  std::ifstream in(path);
  if (!in) throw LoadError(path, 0, "cannot open file");
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (is_blank(line)) continue;
    try {
      fn(json::parse(line), line_no);
    } catch (const LoadError&) {
      throw;
    } catch (const std::exception& e) {
      throw LoadError(path, line_no, e.what());
    }
  }
}

std::size_t read_index(const json& j, const char* key) {
  const std::int64_t v = j.at(key).get<std::int64_t>();
  if (v < 0)
    throw std::runtime_error(std::string(key) + " must be non-negative");
  return static_cast<std::size_t>(v);
}

SpanRef read_span(const json& j) {
  return {read_index(j, "start"), read_index(j, "end")};
}

std::string resolve_label(const Taxonomy& taxonomy, const std::string& raw) {
  auto idx = taxonomy.resolve(raw);
  if (!idx)
    throw std::runtime_error("label '" + raw +
                             "' does not resolve to any inventory label");
  return taxonomy.name(*idx);
}

ordered_json span_json(const SpanRef& s) {
  ordered_json j;
  j["start"] = s.start;
  j["end"] = s.end;
  return j;
}

}  // namespace

std::vector<CorpusDocument> load_dataset(const std::string& path,
                                         const Taxonomy& taxonomy) {
  std::vector<CorpusDocument> corpus;
  for_each_record(path, [&](const json& j, std::size_t) {
    CorpusDocument cd;
    cd.doc.doc_id = j.at("doc_id").get<std::string>();
    if (cd.doc.doc_id.empty()) throw std::runtime_error("doc_id is empty");
    for (const auto& s : j.at("sentences"))
      cd.doc.sentences.push_back(s.get<std::string>());
    if (j.contains("source")) cd.doc.source = j.at("source").get<std::string>();
    if (j.contains("gold")) {
      for (const auto& e : j.at("gold")) {
        GoldEntry g;
        g.span = read_span(e);
        for (const auto& l : e.at("labels")) {
          const std::string raw = l.get<std::string>();
          if (normalize_for_match(raw) == kNoFallacyToken) {
            g.optional_no_fallacy = true;
            continue;
          }
          std::string canon = resolve_label(taxonomy, raw);
          if (!gold_admits(g, canon)) g.labels.push_back(std::move(canon));
        }
        cd.gold.entries.push_back(std::move(g));
      }
    }
    corpus.push_back(std::move(cd));
  });

  std::sort(corpus.begin(), corpus.end(),
            [](const CorpusDocument& a, const CorpusDocument& b) {
              return a.doc.doc_id < b.doc.doc_id;
            });
  for (std::size_t i = 1; i < corpus.size(); ++i)
    if (corpus[i - 1].doc.doc_id == corpus[i].doc.doc_id)
      throw LoadError(path, 0,
                      "doc_id '" + corpus[i].doc.doc_id + "' appears twice");
  return corpus;
}

void write_dataset(std::ostream& out,
                   const std::vector<CorpusDocument>& corpus) {
  for (const auto& cd : corpus) {
    ordered_json j;
    j["doc_id"] = cd.doc.doc_id;
    j["sentences"] = cd.doc.sentences;
    if (!cd.doc.source.empty()) j["source"] = cd.doc.source;
    ordered_json gold = ordered_json::array();
    for (const auto& e : cd.gold.entries) {
      ordered_json entry = span_json(e.span);
      ordered_json labels = e.labels;
      if (e.optional_no_fallacy) labels.push_back(kNoFallacyToken);
      entry["labels"] = std::move(labels);
      gold.push_back(std::move(entry));
    }
    j["gold"] = std::move(gold);
    out << j.dump() << "\n";
  }
}

void write_dataset(const std::string& path,
                   const std::vector<CorpusDocument>& corpus) {
  std::ofstream out(path);
  if (!out) throw LoadError(path, 0, "cannot open file for writing");
  write_dataset(out, corpus);
}

PredictionMap load_predictions(const std::string& path,
                               const std::vector<CorpusDocument>& corpus,
                               const Taxonomy& taxonomy) {
  std::map<std::string, std::size_t> sentence_counts;
  for (const auto& cd : corpus)
    sentence_counts[cd.doc.doc_id] = cd.doc.sentence_count();

  PredictionMap out;
  for_each_record(path, [&](const json& j, std::size_t) {
    const std::string doc_id = j.at("doc_id").get<std::string>();
    auto it = sentence_counts.find(doc_id);
    if (it == sentence_counts.end())
      throw std::runtime_error("document '" + doc_id +
                               "' is not in the dataset");
    if (out.count(doc_id))
      throw std::runtime_error("document '" + doc_id + "' appears twice");
    Prediction p;
    for (const auto& e : j.at("predictions")) {
      PredEntry entry;
      entry.span = read_span(e);
      entry.label = resolve_label(taxonomy, e.at("label").get<std::string>());
      if (entry.span.start >= entry.span.end)
        throw std::runtime_error("span [" + std::to_string(entry.span.start) +
                                 ", " + std::to_string(entry.span.end) +
                                 ") is empty");
      if (entry.span.end > it->second)
        throw std::runtime_error(
            "span [" + std::to_string(entry.span.start) + ", " +
            std::to_string(entry.span.end) + ") exceeds the " +
            std::to_string(it->second) + " sentences of '" + doc_id + "'");
      p.entries.push_back(std::move(entry));
    }
    out.emplace(doc_id, std::move(p));
  });
  return out;
}

void write_predictions(std::ostream& out, const PredictionMap& predictions) {
  for (const auto& [doc_id, pred] : predictions) {
    ordered_json j;
    j["doc_id"] = doc_id;
    ordered_json entries = ordered_json::array();
    for (const auto& e : pred.entries) {
      ordered_json entry = span_json(e.span);
      entry["label"] = e.label;
      entries.push_back(std::move(entry));
    }
    j["predictions"] = std::move(entries);
    out << j.dump() << "\n";
  }
}

void write_predictions(const std::string& path,
                       const PredictionMap& predictions) {
  std::ofstream out(path);
  if (!out) throw LoadError(path, 0, "cannot open file for writing");
  write_predictions(out, predictions);
}

ModelOutputMap load_model_outputs(const std::string& path,
                                  const std::vector<CorpusDocument>& corpus) {
  std::map<std::string, std::size_t> sentence_counts;
  for (const auto& cd : corpus)
    sentence_counts[cd.doc.doc_id] = cd.doc.sentence_count();

  ModelOutputMap out;
  for_each_record(path, [&](const json& j, std::size_t) {
    const std::string doc_id = j.at("doc_id").get<std::string>();
    auto it = sentence_counts.find(doc_id);
    if (it == sentence_counts.end())
      throw std::runtime_error("document '" + doc_id +
                               "' is not in the dataset");
    ModelOutputRow row;
    row.sentence_index = read_index(j, "sentence_index");
    if (row.sentence_index >= it->second)
      throw std::runtime_error(
          "sentence_index " + std::to_string(row.sentence_index) +
          " exceeds the " + std::to_string(it->second) + " sentences of '" +
          doc_id + "'");
    row.raw_output = j.at("raw_output").get<std::string>();
    out[doc_id].push_back(std::move(row));
  });
  for (auto& [doc_id, rows] : out)
    std::stable_sort(rows.begin(), rows.end(),
                     [](const ModelOutputRow& a, const ModelOutputRow& b) {
                       return a.sentence_index < b.sentence_index;
                     });
  return out;
}

void write_model_outputs(std::ostream& out, const ModelOutputMap& outputs) {
  for (const auto& [doc_id, rows] : outputs) {
    for (const auto& row : rows) {
      ordered_json j;
      j["doc_id"] = doc_id;
      j["sentence_index"] = row.sentence_index;
      j["raw_output"] = row.raw_output;
      out << j.dump() << "\n";
    }
  }
}

void write_model_outputs(const std::string& path,
                         const ModelOutputMap& outputs) {
  std::ofstream out(path);
  if (!out) throw LoadError(path, 0, "cannot open file for writing");
  write_model_outputs(out, outputs);
}

std::vector<std::pair<std::size_t, std::size_t>> split_sentences(
    const std::string& text) {
  const auto is_space = [](unsigned char c) { return std::isspace(c) != 0; };
  const auto is_term = [](char c) { return c == '.' || c == '!' || c == '?'; };

  std::vector<std::pair<std::size_t, std::size_t>> out;
  const std::size_t n = text.size();
  std::size_t i = 0;
  while (i < n) {
    while (i < n && is_space(static_cast<unsigned char>(text[i]))) ++i;
    if (i >= n) break;
    std::size_t j = i;
    while (j < n) {
      if (text[j] == '\n') break;
      if (is_term(text[j])) {
        while (j < n && is_term(text[j])) ++j;  // consume the terminator run
        break;
      }
      ++j;
    }
    std::size_t end = j;
    while (end > i && is_space(static_cast<unsigned char>(text[end - 1])))
      --end;
    if (end > i) out.emplace_back(i, end);
    i = j;
  }
  return out;
}

std::vector<CorpusDocument> import_char_annotations(const std::string& path,
                                                    const Taxonomy& taxonomy,
                                                    ImportStats* stats) {
  ImportStats local;
  ImportStats& st = stats ? *stats : local;
  st = ImportStats{};

  std::vector<CorpusDocument> corpus;
  for_each_record(path, [&](const json& j, std::size_t) {
    const std::string text = j.at("text").get<std::string>();
    const auto ranges = split_sentences(text);

    CorpusDocument cd;
    char buf[32];
    std::snprintf(buf, sizeof buf, "imported-%06zu", corpus.size());
    cd.doc.doc_id = buf;
    for (const auto& [a, b] : ranges)
      cd.doc.sentences.push_back(text.substr(a, b - a));

    // Rows sharing the exactly equal char span form one alternative set;
    // the map keeps entries in (start, end) order.
    struct Group {
      std::vector<std::string> labels;
      bool optional = false;
    };
    std::map<std::pair<std::size_t, std::size_t>, Group> groups;
    for (const auto& row : j.at("labels")) {
      if (!row.is_array() || row.size() != 3)
        throw std::runtime_error("label rows must be [start, end, label]");
      const std::int64_t a = row[0].get<std::int64_t>();
      const std::int64_t b = row[1].get<std::int64_t>();
      if (a < 0 || b < 0)
        throw std::runtime_error("char offsets must be non-negative");
      Group& g = groups[{static_cast<std::size_t>(a),
                         static_cast<std::size_t>(b)}];
      const std::string raw = row[2].get<std::string>();
      if (normalize_for_match(raw) == kNoFallacyToken ||
          normalize_for_match(raw) == "no fallacy") {
        g.optional = true;
        continue;
      }
      std::string canon = resolve_label(taxonomy, raw);
      if (!std::count(g.labels.begin(), g.labels.end(), canon))
        g.labels.push_back(std::move(canon));
    }

    for (const auto& [span, group] : groups) {
      if (group.labels.empty()) {
        ++st.dropped_bare_no_fallacy;
        continue;
      }
      std::size_t first = ranges.size(), last = 0;
      for (std::size_t s = 0; s < ranges.size(); ++s) {
        const std::size_t lo = std::max(span.first, ranges[s].first);
        const std::size_t hi = std::min(span.second, ranges[s].second);
        if (hi <= lo) continue;
        first = std::min(first, s);
        last = s;
      }
      if (first == ranges.size()) continue;  // covers no sentence text
      cd.gold.entries.push_back({{first, last + 1}, group.labels,
                                 group.optional});
      ++st.entries;
    }

    ++st.documents;
    corpus.push_back(std::move(cd));
  });

  std::sort(corpus.begin(), corpus.end(),
            [](const CorpusDocument& a, const CorpusDocument& b) {
              return a.doc.doc_id < b.doc.doc_id;
            });
  return corpus;
}

}  // namespace faleval
