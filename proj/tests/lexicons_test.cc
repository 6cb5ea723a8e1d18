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

#include <random>
#include <string>
#include <vector>

#include "doctest.h"

#include "argsup/error.h"
#include "argsup/lexicons.h"
#include "test_util.h"

namespace argsup {
namespace {

using testing::ScratchDir;
using testing::WriteText;

std::string LoadError(auto loader, const std::filesystem::path& path) {
  try {
    loader(path);
  } catch (const ValidationError& e) {
    return e.what();
  }
  return "";
}

TEST_CASE("polarity lexicon loading") {
  const auto dir = ScratchDir("lex_polarity");
  const auto path = WriteText(dir / "p.tsv",
                              "# comment\nGood\tpositive\nbad\tnegative\tstrong\n\nmeh\tneutral\n"
                              "good\tnegative\n");
  const PolarityLexicon lexicon = LoadPolarityLexicon(path);
  CHECK(lexicon.size() == 3);
  CHECK(lexicon.Lookup("GOOD") == Polarity::kPositive);
  CHECK(lexicon.Lookup("bad") == Polarity::kNegative);
  CHECK(lexicon.Lookup("meh") == Polarity::kNeutral);
  CHECK_FALSE(lexicon.Lookup("other").has_value());

  const auto bad = WriteText(dir / "bad.tsv", "good\tpositive\nfine\tgreat\n");
  CHECK(LoadError(LoadPolarityLexicon, bad).find("bad.tsv:2") != std::string::npos);
}

TEST_CASE("category lexicon keeps only the declared universe") {
  const auto dir = ScratchDir("lex_categories");
  const auto path =
      WriteText(dir / "c.tsv", "study\tAcadem\nstudy\tCausal\nmoney\tEcon@\nfoo\tNotACategory\n");
  const CategoryLexicon lexicon = LoadCategoryLexicon(path);
  CHECK(lexicon.size() == 2);
  CHECK(lexicon.Lookup("Study") == std::set<std::string>{"Academ", "Causal"});
  CHECK(lexicon.Lookup("foo").empty());
  CategoryLexicon direct;
  CHECK_THROWS_AS(direct.Add("x", "Bogus"), ValidationError);
  CHECK(DefaultCategoryUniverse().size() == 13);
}

TEST_CASE("norms lexicon loading and range checks") {
  const auto dir = ScratchDir("lex_norms");
  const auto path = WriteText(dir / "n.csv",
                              "word,concreteness,valence,arousal,dominance\n"
                              "apple,4.9,6.2,3.1,5.0\nidea,1.5,,,\n");
  const NormsLexicon lexicon = LoadNormsLexicon(path);
  CHECK(lexicon.size() == 2);
  const NormScores* idea = lexicon.Lookup("IDEA");
  REQUIRE(idea != nullptr);
  CHECK(*idea->concreteness == doctest::Approx(1.5));
  CHECK_FALSE(idea->valence.has_value());

  const auto out_of_range = WriteText(dir / "r.csv",
                                      "word,concreteness,valence,arousal,dominance\n"
                                      "x,6.0,5,5,5\n");
  CHECK(LoadError(LoadNormsLexicon, out_of_range).find("r.csv:2") != std::string::npos);
  const auto no_header = WriteText(dir / "h.csv", "x,1,1,1,1\n");
  CHECK_FALSE(LoadError(LoadNormsLexicon, no_header).empty());
}

TEST_CASE("embedding dimension mismatch reports the line") {
  const auto dir = ScratchDir("lex_embeddings");
  std::string text;
  for (int row = 0; row < 3; ++row) {
    text += "w" + std::to_string(row);
    for (int i = 0; i < 50; ++i) text += " 0.1";
    text += "\n";
  }
  text += "short";
  for (int i = 0; i < 49; ++i) text += " 0.1";
  text += "\n";
  const auto path = WriteText(dir / "e.txt", text);
  const std::string error = LoadError(LoadEmbeddingTable, path);
  CHECK(error.find("e.txt:4") != std::string::npos);
  CHECK(error.find("dimension mismatch") != std::string::npos);
}

TEST_CASE("embedding table with and without header") {
  const auto dir = ScratchDir("lex_embeddings_ok");
  const EmbeddingTable with_header =
      LoadEmbeddingTable(WriteText(dir / "a.txt", "2 3\ncat 1 0 0\nDog 0 1 0\ncat 9 9 9\n"));
  CHECK(with_header.dimension() == 3);
  CHECK(with_header.size() == 2);
  CHECK((*with_header.Lookup("CAT"))[0] == 1.0);
  const EmbeddingTable plain = LoadEmbeddingTable(WriteText(dir / "b.txt", "cat 1 2\n"));
  CHECK(plain.dimension() == 2);
  CHECK(plain.Lookup("dog") == nullptr);
  CHECK_FALSE(LoadError(LoadEmbeddingTable, WriteText(dir / "c.txt", "2 3\ncat 1 2\n")).empty());
  CHECK_FALSE(LoadError(LoadEmbeddingTable, WriteText(dir / "d.txt", "cat 1 x\n")).empty());
}

TEST_CASE("empty resource files are rejected") {
  const auto dir = ScratchDir("lex_empty");
  const auto empty = WriteText(dir / "empty.txt", "\n# only a comment\n\n");
  CHECK(LoadError(LoadPolarityLexicon, empty).find("empty") != std::string::npos);
  CHECK(LoadError(LoadWordList, empty).find("empty") != std::string::npos);
  CHECK(LoadError(LoadConnectiveLexicon, empty).find("empty") != std::string::npos);
  CHECK_FALSE(LoadError(LoadPolarityLexicon, dir / "missing.tsv").empty());
}

TEST_CASE("absent resources stay absent in the bundle") {
  const auto dir = ScratchDir("lex_bundle");
  ResourcePaths paths;
  paths.polarity = WriteText(dir / "p.tsv", "good\tpositive\n");
  const ResourceBundle bundle = LoadResourceBundle(paths);
  CHECK(bundle.polarity.has_value());
  CHECK_FALSE(bundle.hedges.has_value());
  CHECK_FALSE(bundle.embeddings.has_value());
  const std::string summary = bundle.Summary();
  CHECK(summary.find("hedges\tabsent") != std::string::npos);
  CHECK(summary.find("polarity\t1") != std::string::npos);
}

TEST_CASE("connective file loading") {
  const auto dir = ScratchDir("lex_connectives");
  const ConnectiveLexicon lexicon = LoadConnectiveLexicon(
      WriteText(dir / "c.tsv",
                "As a result\tContingency\tCause\nsince\tTemporal\tAsynchronous\n"
                "since\tContingency\tCause\n"));
  CHECK(lexicon.size() == 3);
  CHECK(lexicon.max_phrase_length() == 3);
  const std::vector<std::string> since = {"since"};
  CHECK(lexicon.Find(since) == std::size_t{1});
  const auto duplicate =
      WriteText(dir / "d.tsv", "but\tComparison\tContrast\nbut\tComparison\tContrast\n");
  CHECK(LoadError(LoadConnectiveLexicon, duplicate).find("d.tsv:2") != std::string::npos);
}

ConnectiveLexicon MakeLexicon(const std::vector<Connective>& entries) {
  ConnectiveLexicon lexicon;
  for (const Connective& c : entries) lexicon.Add(c);
  return lexicon;
}

// Independent matcher: at each offset scan every lexicon entry, keep the
// longest that fits (earliest entry on length ties), then jump past it.
std::vector<ConnectiveMatch> BruteForceMatches(const std::vector<std::string>& tokens,
                                               const std::vector<Connective>& entries) {
  std::vector<ConnectiveMatch> out;
  std::size_t i = 0;
  while (i < tokens.size()) {
    const Connective* best = nullptr;
    for (const Connective& c : entries) {
      if (i + c.phrase.size() > tokens.size()) continue;
      bool fits = true;
      for (std::size_t k = 0; k < c.phrase.size(); ++k) fits &= tokens[i + k] == c.phrase[k];
      if (fits && (best == nullptr || c.phrase.size() > best->phrase.size())) best = &c;
    }
    if (best == nullptr) {
      ++i;
      continue;
    }
    out.push_back({i, i + best->phrase.size(), best->level1, best->level2});
    i += best->phrase.size();
  }
  return out;
}

TEST_CASE("longest match wins over a prefix connective") {
  const std::vector<Connective> entries = {{{"as", "a", "result"}, "Contingency", "Cause"},
                                           {{"as"}, "Comparison", "Similarity"}};
  const std::vector<std::string> tokens = {"as", "a", "result", ",", "he", "left"};
  const auto matches = MatchConnectives(tokens, MakeLexicon(entries));
  REQUIRE(matches.size() == 1);
  CHECK(matches[0] == ConnectiveMatch{0, 3, "Contingency", "Cause"});
  CHECK(matches == BruteForceMatches(tokens, entries));
}

TEST_CASE("repeated connective matches twice") {
  const std::vector<Connective> entries = {{{"but"}, "Comparison", "Contrast"}};
  const std::vector<std::string> tokens = {"but", "but"};
  const auto matches = MatchConnectives(tokens, MakeLexicon(entries));
  REQUIRE(matches.size() == 2);
  CHECK(matches[0].begin == 0);
  CHECK(matches[0].end == 1);
  CHECK(matches[1].begin == 1);
  CHECK(matches[1].end == 2);
}

TEST_CASE("matching is case-insensitive and reports the first sense") {
  const std::vector<Connective> entries = {{{"since"}, "Temporal", "Asynchronous"},
                                           {{"since"}, "Contingency", "Cause"}};
  const std::vector<std::string> tokens = {"Since", "then"};
  const auto matches = MatchConnectives(tokens, MakeLexicon(entries));
  REQUIRE(matches.size() == 1);
  CHECK(matches[0].level1 == "Temporal");
}

TEST_CASE("property: matcher agrees with brute force on random token streams") {
  const std::vector<std::string> alphabet = {"a", "b", "c", "d"};
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Connective> entries;
    std::set<std::vector<std::string>> used;
    const int n_entries = 1 + static_cast<int>(rng() % 5);
    for (int e = 0; e < n_entries; ++e) {
      std::vector<std::string> phrase(1 + rng() % 3);
      for (std::string& w : phrase) w = alphabet[rng() % alphabet.size()];
      if (!used.insert(phrase).second) continue;
      entries.push_back({phrase, "L" + std::to_string(e), "S" + std::to_string(e)});
    }
    std::vector<std::string> tokens(rng() % 12);
    for (std::string& t : tokens) t = alphabet[rng() % alphabet.size()];
    const auto matches = MatchConnectives(tokens, MakeLexicon(entries));
    CHECK(matches == BruteForceMatches(tokens, entries));
    for (std::size_t m = 1; m < matches.size(); ++m) CHECK(matches[m - 1].end <= matches[m].begin);
  }
}

TEST_CASE("word list") {
  const auto dir = ScratchDir("lex_words");
  const WordList list = LoadWordList(WriteText(dir / "h.txt", "May\nsuggest\n"));
  CHECK(list.size() == 2);
  CHECK(list.Contains("may"));
  CHECK(list.Contains("SUGGEST"));
  CHECK_FALSE(list.Contains("must"));
  CHECK_FALSE(LoadError(LoadWordList, WriteText(dir / "bad.txt", "two words\n")).empty());
}

}  // namespace
}  // namespace argsup
