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

#include "argsup/corpus.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include <spdlog/spdlog.h>

#include "argsup/error.h"
#include "json.hpp"

namespace argsup {
namespace {

using nlohmann::json;

constexpr std::array<std::string_view, kNumArgumentTypes> kTypeNames = {
    "study", "factual", "opinion", "reasoning"};

class RecordContext {
 public:
  RecordContext(std::string_view source, std::size_t record, std::size_t line)
      : prefix_(std::string(source) + ": record " + std::to_string(record) + " (line " +
                std::to_string(line) + ")") {}

  [[noreturn]] void Fail(const std::string& what) const {
    throw ValidationError(prefix_ + ": " + what);
  }

  const std::string& prefix() const { return prefix_; }

 private:
  std::string prefix_;
};

void CheckKeys(const json& object, std::initializer_list<std::string_view> allowed,
               const std::string& where, const RecordContext& ctx, const LoadOptions& options) {
  for (const auto& [key, value] : object.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) != allowed.end()) continue;
    if (options.strict) ctx.Fail("unknown key '" + key + "' in " + where);
    spdlog::warn("{}: ignoring unknown key '{}' in {}", ctx.prefix(), key, where);
  }
}

const json& Require(const json& object, const char* key, const std::string& where,
                    const RecordContext& ctx) {
  auto it = object.find(key);
  if (it == object.end()) ctx.Fail("missing field '" + std::string(key) + "' in " + where);
  return *it;
}

std::string RequireString(const json& object, const char* key, const std::string& where,
                          const RecordContext& ctx) {
  const json& value = Require(object, key, where, ctx);
  if (!value.is_string()) ctx.Fail("field '" + std::string(key) + "' in " + where + " must be a string");
  return value.get<std::string>();
}

Token ParseToken(const json& value, const std::string& where, const RecordContext& ctx,
                 const LoadOptions& options) {
  if (!value.is_object()) ctx.Fail(where + " must be an object");
  CheckKeys(value, {"text", "pos", "ne", "dep"}, where, ctx, options);
  Token token;
  token.text = RequireString(value, "text", where, ctx);
  token.pos = RequireString(value, "pos", where, ctx);
  token.ne = RequireString(value, "ne", where, ctx);
  token.dep = RequireString(value, "dep", where, ctx);
  return token;
}

std::vector<Token> ParseTokens(const json& value, const std::string& where,
                               const RecordContext& ctx, const LoadOptions& options) {
  if (!value.is_array()) ctx.Fail(where + " must be an array");
  std::vector<Token> tokens;
  tokens.reserve(value.size());
  for (std::size_t i = 0; i < value.size(); ++i) {
    tokens.push_back(ParseToken(value[i], where + "[" + std::to_string(i) + "]", ctx, options));
  }
  return tokens;
}

bool IsKnownNeTag(std::string_view tag) {
  return tag == "O" ||
         std::find(kNamedEntityTags.begin(), kNamedEntityTags.end(), tag) != kNamedEntityTags.end();
}

void CheckTokens(const std::vector<Token>& tokens, const std::string& where,
                 const RecordContext& ctx) {
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (tokens[i].text.empty()) ctx.Fail(where + "[" + std::to_string(i) + "]: empty token text");
    if (!IsKnownNeTag(tokens[i].ne)) {
      ctx.Fail(where + "[" + std::to_string(i) + "]: unknown named-entity tag '" + tokens[i].ne +
               "'");
    }
  }
}

// Checks the invariants of one group; shared by parsing and ValidateCorpus.
void CheckGroup(const QueryGroup& group, const RecordContext& ctx) {
  if (group.claim.claim_id.empty()) ctx.Fail("empty claim_id");
  if (group.claim.claim_tokens.empty()) ctx.Fail("claim_tokens is empty");
  CheckTokens(group.claim.claim_tokens, "claim_tokens", ctx);
  if (group.sentences.empty()) ctx.Fail("record has no sentences");
  for (std::size_t i = 0; i < group.sentences.size(); ++i) {
    const AnnotatedSentence& s = group.sentences[i];
    const std::string where = "sentences[" + std::to_string(i) + "]";
    if (s.index != i) {
      ctx.Fail("index gap: " + where + " has index " + std::to_string(s.index) + ", expected " +
               std::to_string(i));
    }
    if (s.tokens.empty()) ctx.Fail(where + " has no tokens");
    CheckTokens(s.tokens, where + ".tokens", ctx);
    if (s.relevance != 0 && s.relevance != 1) ctx.Fail(where + ": relevance must be 0 or 1");
    if (s.gold_type && s.relevance != 1) {
      ctx.Fail(where + " (index " + std::to_string(s.index) + ") has gold_type '" +
               std::string(ToString(*s.gold_type)) + "' but relevance 0");
    }
  }
}

QueryGroup ParseRecord(const json& record, const RecordContext& ctx, const LoadOptions& options) {
  if (!record.is_object()) ctx.Fail("record must be a JSON object");
  CheckKeys(record,
            {"debate_id", "claim_id", "topic_text", "claim_text", "claim_tokens", "article_id",
             "sentences"},
            "record", ctx, options);
  QueryGroup group;
  group.claim.debate_id = RequireString(record, "debate_id", "record", ctx);
  group.claim.claim_id = RequireString(record, "claim_id", "record", ctx);
  group.claim.topic_text = RequireString(record, "topic_text", "record", ctx);
  group.claim.claim_text = RequireString(record, "claim_text", "record", ctx);
  group.claim.claim_tokens =
      ParseTokens(Require(record, "claim_tokens", "record", ctx), "claim_tokens", ctx, options);
  group.article_id = RequireString(record, "article_id", "record", ctx);

  const json& sentences = Require(record, "sentences", "record", ctx);
  if (!sentences.is_array()) ctx.Fail("field 'sentences' must be an array");
  for (std::size_t i = 0; i < sentences.size(); ++i) {
    const json& s = sentences[i];
    const std::string where = "sentences[" + std::to_string(i) + "]";
    if (!s.is_object()) ctx.Fail(where + " must be an object");
    CheckKeys(s, {"index", "text", "tokens", "relevance", "gold_type"}, where, ctx, options);
    AnnotatedSentence sentence;
    const json& index = Require(s, "index", where, ctx);
    if (!index.is_number_integer() || index.get<long long>() < 0) {
      ctx.Fail(where + ": index must be a non-negative integer");
    }
    sentence.index = index.get<std::size_t>();
    sentence.text = RequireString(s, "text", where, ctx);
    sentence.tokens = ParseTokens(Require(s, "tokens", where, ctx), where + ".tokens", ctx, options);
    const json& relevance = Require(s, "relevance", where, ctx);
    if (!relevance.is_number_integer()) ctx.Fail(where + ": relevance must be 0 or 1");
    sentence.relevance = relevance.get<int>();
    auto gold = s.find("gold_type");
    if (gold != s.end() && !gold->is_null()) {
      if (!gold->is_string()) ctx.Fail(where + ": gold_type must be a string or null");
      try {
        sentence.gold_type = ParseArgumentType(gold->get<std::string>());
      } catch (const ValidationError& e) {
        ctx.Fail(where + ": " + e.what());
      }
    }
    group.sentences.push_back(std::move(sentence));
  }
  CheckGroup(group, ctx);
  return group;
}

json TokensToJson(const std::vector<Token>& tokens) {
  json out = json::array();
  for (const Token& t : tokens) {
    out.push_back({{"text", t.text}, {"pos", t.pos}, {"ne", t.ne}, {"dep", t.dep}});
  }
  return out;
}

// Cross-record invariants: unique (claim, article) pairs and one consistent
// claim per claim_id.
class CrossRecordChecker {
 public:
  void Add(const QueryGroup& group, const RecordContext& ctx) {
    if (!pairs_.emplace(group.claim.claim_id, group.article_id).second) {
      ctx.Fail("duplicate (claim_id, article_id) pair ('" + group.claim.claim_id + "', '" +
               group.article_id + "')");
    }
    auto [it, inserted] = claims_.emplace(group.claim.claim_id, &group.claim);
    if (!inserted && (it->second->debate_id != group.claim.debate_id ||
                      it->second->claim_text != group.claim.claim_text)) {
      ctx.Fail("claim_id '" + group.claim.claim_id +
               "' reused with a different debate_id or claim_text");
    }
  }

 private:
  std::set<std::pair<std::string, std::string>> pairs_;
  std::map<std::string, const Claim*> claims_;
};

}  // namespace

std::string_view ToString(ArgumentType type) { return kTypeNames[Index(type)]; }

ArgumentType ParseArgumentType(std::string_view text) {
  for (ArgumentType type : kAllArgumentTypes) {
    if (ToString(type) == text) return type;
  }
  throw ValidationError("unknown argument type '" + std::string(text) + "'");
}

int QueryGroup::NumRelevant() const {
  return static_cast<int>(std::count_if(sentences.begin(), sentences.end(),
                                        [](const AnnotatedSentence& s) { return s.relevance == 1; }));
}

std::size_t Corpus::NumSentences() const {
  std::size_t n = 0;
  for (const QueryGroup& g : groups) n += g.sentences.size();
  return n;
}

Corpus ParseCorpus(std::istream& in, const LoadOptions& options, std::string_view source_name) {
  Corpus corpus;
  std::string line;
  std::size_t line_number = 0;
  std::size_t record_number = 0;
  std::vector<std::size_t> record_lines;
  while (std::getline(in, line)) {
    ++line_number;
    if (std::all_of(line.begin(), line.end(), [](unsigned char c) { return std::isspace(c); })) {
      continue;
    }
    ++record_number;
    RecordContext ctx(source_name, record_number, line_number);
    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error& e) {
      ctx.Fail(std::string("malformed JSON: ") + e.what());
    }
    corpus.groups.push_back(ParseRecord(record, ctx, options));
    record_lines.push_back(line_number);
  }
  CrossRecordChecker checker;
  for (std::size_t i = 0; i < corpus.groups.size(); ++i) {
    checker.Add(corpus.groups[i], RecordContext(source_name, i + 1, record_lines[i]));
  }
  return corpus;
}

Corpus LoadCorpus(const std::filesystem::path& path, const LoadOptions& options) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open corpus file '" + path.string() + "'");
  return ParseCorpus(in, options, path.string());
}

void ValidateCorpus(const Corpus& corpus) {
  CrossRecordChecker checker;
  for (std::size_t i = 0; i < corpus.groups.size(); ++i) {
    RecordContext ctx("corpus", i + 1, i + 1);
    CheckGroup(corpus.groups[i], ctx);
    checker.Add(corpus.groups[i], ctx);
  }
}

void WriteCorpus(const Corpus& corpus, std::ostream& out) {
  for (const QueryGroup& group : corpus.groups) {
    json sentences = json::array();
    for (const AnnotatedSentence& s : group.sentences) {
      json gold = s.gold_type ? json(std::string(ToString(*s.gold_type))) : json(nullptr);
      sentences.push_back({{"index", s.index},
                           {"text", s.text},
                           {"tokens", TokensToJson(s.tokens)},
                           {"relevance", s.relevance},
                           {"gold_type", gold}});
    }
    json record = {{"debate_id", group.claim.debate_id},
                   {"claim_id", group.claim.claim_id},
                   {"topic_text", group.claim.topic_text},
                   {"claim_text", group.claim.claim_text},
                   {"claim_tokens", TokensToJson(group.claim.claim_tokens)},
                   {"article_id", group.article_id},
                   {"sentences", std::move(sentences)}};
    out << record.dump() << '\n';
  }
}

void SaveCorpus(const Corpus& corpus, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write corpus file '" + path.string() + "'");
  WriteCorpus(corpus, out);
}

StatsReport ComputeCorpusStats(const Corpus& corpus) {
  StatsReport report;
  std::set<std::string> claims;
  std::set<std::string> articles;
  for (ArgumentType type : kAllArgumentTypes) report.per_type[Index(type)].type = type;
  for (const QueryGroup& group : corpus.groups) {
    ++report.num_groups;
    claims.insert(group.claim.claim_id);
    articles.insert(group.article_id);
    for (const AnnotatedSentence& s : group.sentences) {
      ++report.num_sentences;
      if (s.relevance != 1) continue;
      ++report.num_supporting;
      if (s.gold_type) {
        ++report.num_typed;
        ++report.per_type[Index(*s.gold_type)].count;
      }
    }
  }
  report.num_claims = claims.size();
  report.num_articles = articles.size();
  if (report.num_sentences > 0) {
    report.supporting_percent = 100.0 * static_cast<double>(report.num_supporting) /
                                static_cast<double>(report.num_sentences);
  }
  if (report.num_typed > 0) {
    for (TypeCount& tc : report.per_type) {
      tc.percent = 100.0 * static_cast<double>(tc.count) / static_cast<double>(report.num_typed);
    }
  }
  return report;
}

std::string StatsReport::Format() const {
  std::ostringstream out;
  out << std::fixed << std::setprecision(2);
  out << "groups\t" << num_groups << '\n'
      << "claims\t" << num_claims << '\n'
      << "articles\t" << num_articles << '\n'
      << "sentences\t" << num_sentences << '\n'
      << "supporting\t" << num_supporting << " (" << supporting_percent << "%)\n"
      << "typed_supporting\t" << num_typed << '\n';
  for (const TypeCount& tc : per_type) {
    out << "type:" << ToString(tc.type) << '\t' << tc.count << " (" << tc.percent << "%)\n";
  }
  return out.str();
}

std::vector<Fold> SplitFolds(const Corpus& corpus, int k, std::uint64_t seed) {
  if (k < 1) throw InvalidArgument("number of folds must be positive");
  std::vector<std::string> debates;
  {
    std::set<std::string> seen;
    for (const QueryGroup& g : corpus.groups) {
      if (seen.insert(g.claim.debate_id).second) debates.push_back(g.claim.debate_id);
    }
  }
  if (debates.size() < static_cast<std::size_t>(k)) {
    throw InvalidArgument("cannot split " + std::to_string(debates.size()) + " debates into " +
                          std::to_string(k) + " folds");
  }
  // Sort first so the result depends only on the set of debates and the seed.
  std::sort(debates.begin(), debates.end());
  std::mt19937_64 rng(seed);
  std::shuffle(debates.begin(), debates.end(), rng);

  std::map<std::string, int> fold_of;
  std::vector<Fold> folds(static_cast<std::size_t>(k));
  for (std::size_t i = 0; i < debates.size(); ++i) {
    const int fold = static_cast<int>(i % static_cast<std::size_t>(k));
    fold_of[debates[i]] = fold;
    folds[static_cast<std::size_t>(fold)].test_debates.push_back(debates[i]);
  }
  for (const QueryGroup& g : corpus.groups) {
    const int owner = fold_of.at(g.claim.debate_id);
    for (int f = 0; f < k; ++f) {
      Corpus& target = f == owner ? folds[static_cast<std::size_t>(f)].test
                                  : folds[static_cast<std::size_t>(f)].train;
      target.groups.push_back(g);
    }
  }
  for (Fold& fold : folds) std::sort(fold.test_debates.begin(), fold.test_debates.end());
  return folds;
}

std::string ToLower(std::string_view text) {
  std::string out(text);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

std::vector<std::string> LowercaseWords(const std::vector<Token>& tokens) {
  std::vector<std::string> words;
  words.reserve(tokens.size());
  for (const Token& t : tokens) words.push_back(ToLower(t.text));
  return words;
}

}  // namespace argsup
