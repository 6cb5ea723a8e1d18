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

#ifndef ARGSUP_LEXICONS_H_
#define ARGSUP_LEXICONS_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace argsup {

enum class Polarity { kPositive, kNegative, kNeutral };

// Word -> polarity. Keys are stored lowercase; lookups lowercase their input.
class PolarityLexicon {
 public:
  // Returns false (and keeps the existing entry) when the word is already
  // present with another polarity.
  bool Add(std::string_view word, Polarity polarity);
  std::optional<Polarity> Lookup(std::string_view word) const;
  std::size_t size() const { return entries_.size(); }

 private:
  std::unordered_map<std::string, Polarity> entries_;
};

// The General Inquirer categories used for sentiment features.
const std::vector<std::string>& DefaultCategoryUniverse();

class CategoryLexicon {
 public:
  explicit CategoryLexicon(std::vector<std::string> universe = DefaultCategoryUniverse());

  // Throws ValidationError when the category is outside the universe.
  void Add(std::string_view word, const std::string& category);
  // Empty set when the word has no entry.
  const std::set<std::string>& Lookup(std::string_view word) const;
  const std::vector<std::string>& universe() const { return universe_; }
  std::size_t size() const { return entries_.size(); }

 private:
  std::vector<std::string> universe_;
  std::unordered_map<std::string, std::set<std::string>> entries_;
};

struct NormScores {
  std::optional<double> concreteness;
  std::optional<double> valence;
  std::optional<double> arousal;
  std::optional<double> dominance;
};

struct ScoreRange {
  double min;
  double max;
};

class NormsLexicon {
 public:
  static constexpr ScoreRange kConcretenessRange{1.0, 5.0};
  static constexpr ScoreRange kAffectRange{1.0, 9.0};

  // Throws ValidationError when a present score lies outside its range.
  void Add(std::string_view word, const NormScores& scores);
  const NormScores* Lookup(std::string_view word) const;
  std::size_t size() const { return entries_.size(); }

 private:
  std::unordered_map<std::string, NormScores> entries_;
};

struct Connective {
  std::vector<std::string> phrase;
  std::string level1;
  std::string level2;
};

struct ConnectiveMatch {
  std::size_t begin = 0;
  std::size_t end = 0;  // exclusive
  std::string level1;
  std::string level2;

  bool operator==(const ConnectiveMatch&) const = default;
};

class ConnectiveLexicon {
 public:
  // Throws ValidationError on an empty phrase or a duplicate (phrase, sense).
  void Add(Connective connective);
  const std::vector<Connective>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  std::size_t max_phrase_length() const { return max_length_; }
  // Index of the first entry with exactly this (lowercase) phrase.
  std::optional<std::size_t> Find(std::span<const std::string> phrase) const;

 private:
  std::vector<Connective> entries_;
  std::map<std::vector<std::string>, std::size_t> first_by_phrase_;
  std::size_t max_length_ = 0;
};

// Greedy left-to-right longest match. A phrase listed with several senses
// reports the first sense in lexicon order.
std::vector<ConnectiveMatch> MatchConnectives(std::span<const std::string> tokens,
                                              const ConnectiveLexicon& lexicon);

class EmbeddingTable {
 public:
  explicit EmbeddingTable(std::size_t dimension = 0) : dimension_(dimension) {}

  // Throws ValidationError when the vector length differs from dimension().
  // The first vector added for a lowercase key wins.
  void Add(std::string_view word, std::vector<double> vector);
  const std::vector<double>* Lookup(std::string_view word) const;
  std::size_t dimension() const { return dimension_; }
  std::size_t size() const { return vectors_.size(); }

 private:
  std::size_t dimension_;
  std::unordered_map<std::string, std::vector<double>> vectors_;
};

class WordList {
 public:
  void Add(std::string_view word);
  bool Contains(std::string_view word) const;
  std::size_t size() const { return words_.size(); }

 private:
  std::unordered_set<std::string> words_;
};

// Paths of the lexical resources; an empty path marks the resource absent.
struct ResourcePaths {
  std::filesystem::path polarity;
  std::filesystem::path categories;
  std::filesystem::path norms;
  std::filesystem::path connectives;
  std::filesystem::path embeddings;
  std::filesystem::path hedges;
};

// Every member is either loaded or absent (nullopt). Feature families that
// need an absent resource are skipped.
struct ResourceBundle {
  std::optional<PolarityLexicon> polarity;
  std::optional<CategoryLexicon> categories;
  std::optional<NormsLexicon> norms;
  std::optional<ConnectiveLexicon> connectives;
  std::optional<EmbeddingTable> embeddings;
  std::optional<WordList> hedges;

  // One "name<TAB>entries|absent" line per resource.
  std::string Summary() const;
};

PolarityLexicon LoadPolarityLexicon(const std::filesystem::path& path);
CategoryLexicon LoadCategoryLexicon(const std::filesystem::path& path);
NormsLexicon LoadNormsLexicon(const std::filesystem::path& path);
ConnectiveLexicon LoadConnectiveLexicon(const std::filesystem::path& path);
EmbeddingTable LoadEmbeddingTable(const std::filesystem::path& path);
WordList LoadWordList(const std::filesystem::path& path);

ResourceBundle LoadResourceBundle(const ResourcePaths& paths);

}  // namespace argsup

#endif  // ARGSUP_LEXICONS_H_
