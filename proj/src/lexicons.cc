// Copyright 2026 The Argsup Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "argsup/lexicons.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include <spdlog/spdlog.h>

#include "argsup/corpus.h"
#include "argsup/error.h"

namespace argsup {
namespace {

std::vector<std::string> Split(std::string_view line, char sep) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    fields.emplace_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return fields;
}

std::vector<std::string> SplitWhitespace(std::string_view line) {
  std::vector<std::string> fields;
  std::istringstream in{std::string(line)};
  std::string field;
  while (in >> field) fields.push_back(field);
  return fields;
}

std::string Trim(std::string_view text) {
  const auto not_space = [](unsigned char c) { return !std::isspace(c); };
  auto begin = std::find_if(text.begin(), text.end(), not_space);
  auto end = std::find_if(text.rbegin(), text.rend(), not_space).base();
  return begin < end ? std::string(begin, end) : std::string();
}

bool ParseDouble(std::string_view text, double& out) {
  const std::string trimmed = Trim(text);
  if (trimmed.empty()) return false;
  const char* first = trimmed.data();
  const char* last = first + trimmed.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

// Reads a line-oriented resource file, skipping blank lines (and '#'
// comments when allowed). Calls handler(line, line_number) for the rest.
template <typename Handler>
std::size_t ReadLines(const std::filesystem::path& path, bool allow_comments, Handler handler) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open resource file '" + path.string() + "'");
  std::string line;
  std::size_t line_number = 0;
  std::size_t content_lines = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::string trimmed = Trim(line);
    if (trimmed.empty()) continue;
    if (allow_comments && trimmed.front() == '#') continue;
    ++content_lines;
    handler(line, line_number);
  }
  if (content_lines == 0) throw ValidationError("resource file '" + path.string() + "' is empty");
  return content_lines;
}

[[noreturn]] void FailLine(const std::filesystem::path& path, std::size_t line,
                           const std::string& what) {
  throw ValidationError(path.string() + ":" + std::to_string(line) + ": " + what);
}

}  // namespace

bool PolarityLexicon::Add(std::string_view word, Polarity polarity) {
  auto [it, inserted] = entries_.emplace(ToLower(word), polarity);
  return inserted || it->second == polarity;
}

std::optional<Polarity> PolarityLexicon::Lookup(std::string_view word) const {
  auto it = entries_.find(ToLower(word));
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

const std::vector<std::string>& DefaultCategoryUniverse() {
  static const std::vector<std::string> kUniverse = {
      "Strong", "Weak",  "Virtue", "Vice",   "Ovrst", "Undrst", "Academ",
      "Doctrin", "Econ@", "Relig",  "Causal", "Ought", "Perceiv"};
  return kUniverse;
}

CategoryLexicon::CategoryLexicon(std::vector<std::string> universe)
    : universe_(std::move(universe)) {}

void CategoryLexicon::Add(std::string_view word, const std::string& category) {
  if (std::find(universe_.begin(), universe_.end(), category) == universe_.end()) {
    throw ValidationError("category '" + category + "' is not in the declared universe");
  }
  entries_[ToLower(word)].insert(category);
}

const std::set<std::string>& CategoryLexicon::Lookup(std::string_view word) const {
  static const std::set<std::string> kEmpty;
  auto it = entries_.find(ToLower(word));
  return it == entries_.end() ? kEmpty : it->second;
}

void NormsLexicon::Add(std::string_view word, const NormScores& scores) {
  const auto check = [&](const std::optional<double>& value, ScoreRange range, const char* name) {
    if (value && (*value < range.min || *value > range.max)) {
      throw ValidationError(std::string(name) + " score " + std::to_string(*value) + " for '" +
                            std::string(word) + "' outside [" + std::to_string(range.min) + ", " +
                            std::to_string(range.max) + "]");
    }
  };
  check(scores.concreteness, kConcretenessRange, "concreteness");
  check(scores.valence, kAffectRange, "valence");
  check(scores.arousal, kAffectRange, "arousal");
  check(scores.dominance, kAffectRange, "dominance");
  entries_.insert_or_assign(ToLower(word), scores);
}

const NormScores* NormsLexicon::Lookup(std::string_view word) const {
  auto it = entries_.find(ToLower(word));
  return it == entries_.end() ? nullptr : &it->second;
}

void ConnectiveLexicon::Add(Connective connective) {
  if (connective.phrase.empty()) throw ValidationError("connective phrase is empty");
  for (std::string& w : connective.phrase) w = ToLower(w);
  for (const Connective& existing : entries_) {
    if (existing.phrase == connective.phrase && existing.level1 == connective.level1 &&
        existing.level2 == connective.level2) {
      throw ValidationError("duplicate connective entry '" + connective.level1 + "/" +
                            connective.level2 + "'");
    }
  }
  first_by_phrase_.emplace(connective.phrase, entries_.size());
  max_length_ = std::max(max_length_, connective.phrase.size());
  entries_.push_back(std::move(connective));
}

std::optional<std::size_t> ConnectiveLexicon::Find(std::span<const std::string> phrase) const {
  auto it = first_by_phrase_.find(std::vector<std::string>(phrase.begin(), phrase.end()));
  if (it == first_by_phrase_.end()) return std::nullopt;
  return it->second;
}

std::vector<ConnectiveMatch> MatchConnectives(std::span<const std::string> tokens,
                                              const ConnectiveLexicon& lexicon) {
  std::vector<std::string> lower;
  lower.reserve(tokens.size());
  for (const std::string& t : tokens) lower.push_back(ToLower(t));

  std::vector<ConnectiveMatch> matches;
  std::size_t start = 0;
  while (start < lower.size()) {
    const std::size_t longest = std::min(lexicon.max_phrase_length(), lower.size() - start);
    bool matched = false;
    for (std::size_t len = longest; len >= 1; --len) {
      auto entry = lexicon.Find(std::span<const std::string>(lower).subspan(start, len));
      if (!entry) continue;
      const Connective& c = lexicon.entries()[*entry];
      matches.push_back({start, start + len, c.level1, c.level2});
      start += len;
      matched = true;
      break;
    }
    if (!matched) ++start;
  }
  return matches;
}

void EmbeddingTable::Add(std::string_view word, std::vector<double> vector) {
  if (vector.size() != dimension_) {
    throw ValidationError("embedding for '" + std::string(word) + "' has dimension " +
                          std::to_string(vector.size()) + ", expected " +
                          std::to_string(dimension_));
  }
  vectors_.emplace(ToLower(word), std::move(vector));
}

const std::vector<double>* EmbeddingTable::Lookup(std::string_view word) const {
  auto it = vectors_.find(ToLower(word));
  return it == vectors_.end() ? nullptr : &it->second;
}

void WordList::Add(std::string_view word) { words_.insert(ToLower(word)); }

bool WordList::Contains(std::string_view word) const {
  return words_.count(ToLower(word)) > 0;
}

PolarityLexicon LoadPolarityLexicon(const std::filesystem::path& path) {
  PolarityLexicon lexicon;
  ReadLines(path, true, [&](const std::string& line, std::size_t n) {
    // A third column (subjectivity strength) is tolerated and dropped.
    const auto fields = Split(line, '\t');
    if (fields.size() < 2 || fields.size() > 3) FailLine(path, n, "expected word<TAB>polarity");
    const std::string word = Trim(fields[0]);
    const std::string tag = ToLower(Trim(fields[1]));
    if (word.empty()) FailLine(path, n, "empty word");
    Polarity polarity;
    if (tag == "positive") {
      polarity = Polarity::kPositive;
    } else if (tag == "negative") {
      polarity = Polarity::kNegative;
    } else if (tag == "neutral") {
      polarity = Polarity::kNeutral;
    } else {
      FailLine(path, n, "unknown polarity '" + fields[1] + "'");
    }
    if (!lexicon.Add(word, polarity)) {
      spdlog::warn("{}:{}: conflicting polarity for '{}', keeping the first", path.string(), n,
                   word);
    }
  });
  return lexicon;
}

CategoryLexicon LoadCategoryLexicon(const std::filesystem::path& path) {
  CategoryLexicon lexicon;
  std::size_t skipped = 0;
  ReadLines(path, true, [&](const std::string& line, std::size_t n) {
    const auto fields = Split(line, '\t');
    if (fields.size() != 2) FailLine(path, n, "expected word<TAB>Category");
    const std::string word = Trim(fields[0]);
    const std::string category = Trim(fields[1]);
    if (word.empty() || category.empty()) FailLine(path, n, "empty word or category");
    const auto& universe = lexicon.universe();
    if (std::find(universe.begin(), universe.end(), category) == universe.end()) {
      ++skipped;
      return;
    }
    lexicon.Add(word, category);
  });
  if (skipped > 0) {
    spdlog::warn("{}: skipped {} entries outside the category universe", path.string(), skipped);
  }
  return lexicon;
}

NormsLexicon LoadNormsLexicon(const std::filesystem::path& path) {
  NormsLexicon lexicon;
  bool header_seen = false;
  ReadLines(path, false, [&](const std::string& line, std::size_t n) {
    auto fields = Split(line, ',');
    for (std::string& f : fields) f = Trim(f);
    if (!header_seen) {
      const std::vector<std::string> expected = {"word", "concreteness", "valence", "arousal",
                                                 "dominance"};
      std::vector<std::string> lowered;
      for (const std::string& f : fields) lowered.push_back(ToLower(f));
      if (lowered != expected) {
        FailLine(path, n, "expected header word,concreteness,valence,arousal,dominance");
      }
      header_seen = true;
      return;
    }
    if (fields.size() != 5) FailLine(path, n, "expected 5 comma-separated fields");
    if (fields[0].empty()) FailLine(path, n, "empty word");
    NormScores scores;
    std::optional<double>* slots[] = {&scores.concreteness, &scores.valence, &scores.arousal,
                                      &scores.dominance};
    for (std::size_t i = 0; i < 4; ++i) {
      if (fields[i + 1].empty()) continue;
      double value = 0.0;
      if (!ParseDouble(fields[i + 1], value)) {
        FailLine(path, n, "unparseable score '" + fields[i + 1] + "'");
      }
      *slots[i] = value;
    }
    try {
      lexicon.Add(fields[0], scores);
    } catch (const ValidationError& e) {
      FailLine(path, n, e.what());
    }
  });
  if (lexicon.size() == 0) throw ValidationError("norms file '" + path.string() + "' has no entries");
  return lexicon;
}

ConnectiveLexicon LoadConnectiveLexicon(const std::filesystem::path& path) {
  ConnectiveLexicon lexicon;
  ReadLines(path, true, [&](const std::string& line, std::size_t n) {
    const auto fields = Split(line, '\t');
    if (fields.size() != 3) FailLine(path, n, "expected phrase<TAB>Level1<TAB>Level2");
    Connective c{SplitWhitespace(fields[0]), Trim(fields[1]), Trim(fields[2])};
    if (c.level1.empty() || c.level2.empty()) FailLine(path, n, "empty sense");
    try {
      lexicon.Add(std::move(c));
    } catch (const ValidationError& e) {
      FailLine(path, n, e.what());
    }
  });
  return lexicon;
}

EmbeddingTable LoadEmbeddingTable(const std::filesystem::path& path) {
  std::optional<EmbeddingTable> table;
  std::optional<std::size_t> header_dim;
  bool first = true;
  ReadLines(path, false, [&](const std::string& line, std::size_t n) {
    const auto fields = SplitWhitespace(line);
    if (first) {
      first = false;
      std::size_t count = 0;
      std::size_t dim = 0;
      const auto is_uint = [](const std::string& s, std::size_t& out) {
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
        return ec == std::errc() && ptr == s.data() + s.size();
      };
      if (fields.size() == 2 && is_uint(fields[0], count) && is_uint(fields[1], dim)) {
        if (dim == 0) FailLine(path, n, "embedding dimension must be positive");
        header_dim = dim;
        return;
      }
    }
    if (fields.size() < 2) FailLine(path, n, "expected word followed by vector components");
    std::vector<double> vector(fields.size() - 1);
    for (std::size_t i = 1; i < fields.size(); ++i) {
      if (!ParseDouble(fields[i], vector[i - 1])) {
        FailLine(path, n, "unparseable component '" + fields[i] + "'");
      }
    }
    if (!table) {
      if (header_dim && *header_dim != vector.size()) {
        FailLine(path, n, "dimension mismatch: header declares " + std::to_string(*header_dim) +
                              ", row has " + std::to_string(vector.size()));
      }
      table.emplace(vector.size());
    }
    if (vector.size() != table->dimension()) {
      FailLine(path, n, "dimension mismatch: expected " + std::to_string(table->dimension()) +
                            ", got " + std::to_string(vector.size()));
    }
    table->Add(fields[0], std::move(vector));
  });
  if (!table) throw ValidationError("embedding file '" + path.string() + "' has no vectors");
  return std::move(*table);
}

WordList LoadWordList(const std::filesystem::path& path) {
  WordList list;
  ReadLines(path, true, [&](const std::string& line, std::size_t n) {
    const std::string word = Trim(line);
    if (word.find_first_of(" \t") != std::string::npos) FailLine(path, n, "expected one word");
    list.Add(word);
  });
  return list;
}

ResourceBundle LoadResourceBundle(const ResourcePaths& paths) {
  ResourceBundle bundle;
  const auto load = [](const std::filesystem::path& path, const char* name, auto loader,
                       auto& slot) {
    if (path.empty()) {
      spdlog::warn("resource '{}' not configured; dependent features are disabled", name);
      return;
    }
    slot.emplace(loader(path));
    spdlog::info("loaded {} ({} entries) from {}", name, slot->size(), path.string());
  };
  load(paths.polarity, "polarity", LoadPolarityLexicon, bundle.polarity);
  load(paths.categories, "categories", LoadCategoryLexicon, bundle.categories);
  load(paths.norms, "norms", LoadNormsLexicon, bundle.norms);
  load(paths.connectives, "connectives", LoadConnectiveLexicon, bundle.connectives);
  load(paths.embeddings, "embeddings", LoadEmbeddingTable, bundle.embeddings);
  load(paths.hedges, "hedges", LoadWordList, bundle.hedges);
  return bundle;
}

std::string ResourceBundle::Summary() const {
  std::ostringstream out;
  const auto line = [&out](const char* name, const auto& slot) {
    out << name << '\t';
    if (slot) {
      out << slot->size();
    } else {
      out << "absent";
    }
    out << '\n';
  };
  line("polarity", polarity);
  line("categories", categories);
  line("norms", norms);
  line("connectives", connectives);
  line("embeddings", embeddings);
  line("hedges", hedges);
  return out.str();
}

}  // namespace argsup
