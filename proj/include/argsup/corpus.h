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

#ifndef ARGSUP_CORPUS_H_
#define ARGSUP_CORPUS_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace argsup {

// Supporting-argument types. The enumerator order is the canonical order used
// for tie-breaking everywhere.
enum class ArgumentType : std::uint8_t { kStudy = 0, kFactual, kOpinion, kReasoning };

inline constexpr std::size_t kNumArgumentTypes = 4;
inline constexpr std::array<ArgumentType, kNumArgumentTypes> kAllArgumentTypes = {
    ArgumentType::kStudy, ArgumentType::kFactual, ArgumentType::kOpinion,
    ArgumentType::kReasoning};

std::string_view ToString(ArgumentType type);
// Throws ValidationError on anything but the four lowercase tags.
ArgumentType ParseArgumentType(std::string_view text);
constexpr std::size_t Index(ArgumentType type) { return static_cast<std::size_t>(type); }

// The seven MUC named-entity types; "O" marks a token outside any entity.
inline constexpr std::array<std::string_view, 7> kNamedEntityTags = {
    "PERSON", "LOCATION", "ORGANIZATION", "DATE", "TIME", "MONEY", "PERCENT"};

struct Token {
  std::string text;
  std::string pos;
  std::string ne = "O";
  std::string dep;

  bool operator==(const Token&) const = default;
};

struct AnnotatedSentence {
  std::size_t index = 0;
  std::string text;
  std::vector<Token> tokens;
  int relevance = 0;
  std::optional<ArgumentType> gold_type;
  std::optional<ArgumentType> predicted_type;

  bool operator==(const AnnotatedSentence&) const = default;
};

struct Claim {
  std::string debate_id;
  std::string claim_id;
  std::string topic_text;
  std::string claim_text;
  std::vector<Token> claim_tokens;

  bool operator==(const Claim&) const = default;
};

struct QueryGroup {
  Claim claim;
  std::string article_id;
  std::vector<AnnotatedSentence> sentences;

  int NumRelevant() const;
  bool operator==(const QueryGroup&) const = default;
};

struct Corpus {
  std::vector<QueryGroup> groups;

  std::size_t NumSentences() const;
  bool operator==(const Corpus&) const = default;
};

struct LoadOptions {
  // Strict mode rejects unknown keys; lenient mode ignores them with a warning.
  bool strict = true;
};

// Reads a JSON Lines corpus. Every record is validated; violations raise
// ValidationError naming the record (1-based line) and the offending field.
Corpus LoadCorpus(const std::filesystem::path& path, const LoadOptions& options = {});
Corpus ParseCorpus(std::istream& in, const LoadOptions& options = {},
                   std::string_view source_name = "<stream>");

// Writes the corpus in the same JSON Lines format LoadCorpus reads.
// predicted_type is not part of the ingestion format and is not written.
void WriteCorpus(const Corpus& corpus, std::ostream& out);
void SaveCorpus(const Corpus& corpus, const std::filesystem::path& path);

// Checks every data-model invariant; throws ValidationError on the first
// violation.
void ValidateCorpus(const Corpus& corpus);

struct TypeCount {
  ArgumentType type;
  std::size_t count = 0;
  double percent = 0.0;  // of all gold-typed supporting arguments
};

struct StatsReport {
  std::size_t num_groups = 0;
  std::size_t num_claims = 0;
  std::size_t num_articles = 0;
  std::size_t num_sentences = 0;
  std::size_t num_supporting = 0;
  double supporting_percent = 0.0;  // of all sentences
  std::size_t num_typed = 0;
  std::array<TypeCount, kNumArgumentTypes> per_type{};

  std::string Format() const;
};

StatsReport ComputeCorpusStats(const Corpus& corpus);

struct Fold {
  Corpus train;
  Corpus test;
  std::vector<std::string> test_debates;
};

// Partitions groups by debate_id into k folds. Debates are shuffled with the
// seed and dealt round-robin, so fold sizes differ by at most one debate.
std::vector<Fold> SplitFolds(const Corpus& corpus, int k, std::uint64_t seed);

// Lowercased token texts of a token sequence.
std::vector<std::string> LowercaseWords(const std::vector<Token>& tokens);
std::string ToLower(std::string_view text);

}  // namespace argsup

#endif  // ARGSUP_CORPUS_H_
