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

#ifndef ARGSUP_FEATURES_H_
#define ARGSUP_FEATURES_H_

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "argsup/corpus.h"
#include "argsup/lexicons.h"

namespace argsup {

// Sparse feature map. Zero values are never stored; an absent name reads as 0.
// Names are namespaced: bas: sen: dis: sty: pos: ngr: sim: clm: cmp:<type>:
class FeatureVector {
 public:
  using Map = std::map<std::string, double, std::less<>>;

  void Set(const std::string& name, double value);
  void Add(const std::string& name, double delta);
  double Get(std::string_view name) const;
  bool Contains(std::string_view name) const { return values_.find(name) != values_.end(); }

  // Inserts every entry of `other`. Throws std::logic_error when a name is
  // already present: extractor namespaces are disjoint, so a collision is a
  // programming error.
  void Merge(const FeatureVector& other);

  // Multiplies every entry whose name starts with `prefix`.
  void ScalePrefix(std::string_view prefix, double factor);

  const Map& entries() const { return values_; }
  Map::const_iterator begin() const { return values_.begin(); }
  Map::const_iterator end() const { return values_.end(); }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

  bool operator==(const FeatureVector&) const = default;

 private:
  Map values_;
};

struct FeatureFamilies {
  bool basic = true;       // bas:
  bool sentiment = true;   // sen:
  bool discourse = true;   // dis:
  bool style = true;       // sty:
  bool position = true;    // pos:
  bool ngrams = true;      // ngr:
  bool similarity = true;  // sim:
};

struct FeatureConfig {
  FeatureFamilies families;
  std::size_t ngram_vocab_size = 10000;
  std::size_t ngram_min_df = 2;
  int bleu_max_order = 4;
  bool bleu_smoothing = true;
  // ROUGE-L F1 instead of recall.
  bool rouge_f_measure = false;
  // Divide count features by the token count.
  bool length_normalize = false;

  // Throws InvalidArgument when bleu_max_order is outside [1, 4].
  void Validate() const;
};

// Unigram/bigram keys ("1:<w>", "2:<w1>_<w2>") kept for ngram features.
class NgramVocabulary {
 public:
  NgramVocabulary() = default;
  explicit NgramVocabulary(std::vector<std::string> keys);

  bool Contains(std::string_view key) const { return keys_.count(std::string(key)) > 0; }
  std::size_t size() const { return ordered_.size(); }
  // Sorted keys.
  const std::vector<std::string>& keys() const { return ordered_; }

 private:
  std::vector<std::string> ordered_;
  std::unordered_set<std::string> keys_;
};

// Ngram keys of a word sequence, in sequence order (unigrams then bigrams).
std::vector<std::string> NgramKeys(std::span<const std::string> words);

// Top `max_size` ngrams by corpus frequency among those with document
// frequency >= min_df; each sentence is one document. Frequency ties are
// broken by key order.
NgramVocabulary BuildNgramVocabulary(const Corpus& corpus, std::size_t max_size,
                                     std::size_t min_df);

class IdfTable {
 public:
  IdfTable() = default;
  IdfTable(std::unordered_map<std::string, double> idf, std::size_t num_documents);

  // Table value, or the value of a word with document frequency 0.
  double Idf(std::string_view word) const;
  double absent_idf() const { return absent_idf_; }
  std::size_t num_documents() const { return num_documents_; }
  const std::unordered_map<std::string, double>& values() const { return idf_; }

 private:
  std::unordered_map<std::string, double> idf_;
  std::size_t num_documents_ = 0;
  double absent_idf_ = 1.0;
};

// idf(w) = ln((1 + N) / (1 + df(w))) + 1 with every candidate sentence a
// document. Throws InvalidArgument on a corpus without sentences.
IdfTable BuildIdfTable(const Corpus& corpus);

// Basic, sentiment, discourse, style, position and ngram features of one
// sentence. Families whose resource is absent from the bundle are skipped.
FeatureVector ExtractSentenceFeatures(const AnnotatedSentence& sentence, std::size_t n_sentences,
                                      const ResourceBundle& bundle, const NgramVocabulary& vocab,
                                      const FeatureConfig& config);

// Sentence-style features of the claim tokens under the clm: prefix
// (no position or ngram families).
FeatureVector ExtractClaimFeatures(const Claim& claim, const ResourceBundle& bundle,
                                   const FeatureConfig& config);

// Longest common subsequence length over exact word matches.
std::size_t LongestCommonSubsequence(std::span<const std::string> a, std::span<const std::string> b);

// ROUGE-L recall LCS/|reference|, or F1 when `f_measure` is set.
double RougeL(std::span<const std::string> reference, std::span<const std::string> candidate,
              bool f_measure = false);

double Bleu(std::span<const std::string> reference, std::span<const std::string> candidate,
            int max_n, bool smoothing = true);

double TfidfCosine(std::span<const std::string> a, std::span<const std::string> b,
                   const IdfTable& idf);

double EmbeddingCosine(std::span<const std::string> a, std::span<const std::string> b,
                       const EmbeddingTable& embeddings);

// sim:tfidf, sim:w2v (when embeddings are present), sim:rouge_l, sim:bleu;
// the claim is the reference for both overlap metrics.
FeatureVector ExtractSimilarityFeatures(const Claim& claim, const AnnotatedSentence& sentence,
                                        const IdfTable& idf, const EmbeddingTable* embeddings,
                                        const FeatureConfig& config);

// Maps every entry (name, v) to (cmp:<type>:name, v). Throws InvalidArgument
// when `base` already holds composite entries.
FeatureVector ComposeWithType(const FeatureVector& base, ArgumentType type);

enum class FeatureSet {
  kNgrams,
  kSen,
  kSimi,
  kCompSenSimi,
  kSenNgrSimi,
  kFull,
  kFullClaimComp,
};

std::string_view ToString(FeatureSet set);
// Throws InvalidArgument on an unknown name.
FeatureSet ParseFeatureSet(std::string_view name);
std::vector<FeatureSet> AllFeatureSets();
bool UsesComposites(FeatureSet set);

// Everything feature extraction needs besides the instance itself. Built once
// per training fold and shared read-only.
struct FeatureContext {
  const ResourceBundle* bundle = nullptr;
  const NgramVocabulary* vocab = nullptr;
  const IdfTable* idf = nullptr;
  const FeatureConfig* config = nullptr;
};

// The per-family vectors a feature set is assembled from. Computing them once
// per sentence lets several feature sets share the extraction work.
struct InstanceParts {
  FeatureVector sentence;    // bas: sen: dis: sty: pos:
  FeatureVector ngrams;      // ngr:
  FeatureVector similarity;  // sim:
  FeatureVector claim;       // clm:
};

InstanceParts ExtractInstanceParts(const QueryGroup& group, std::size_t position,
                                   const FeatureContext& context);

FeatureVector AssembleFromParts(const InstanceParts& parts, std::optional<ArgumentType> type,
                                FeatureSet set);

// Feature vector of group.sentences[position] under a named feature set.
// `type` is required by the composite sets.
FeatureVector AssembleInstance(const QueryGroup& group, std::size_t position,
                               std::optional<ArgumentType> type, const FeatureContext& context,
                               FeatureSet set);

// Features the argument-type classifier sees: every sentence family except
// position.
FeatureVector ExtractTypeFeatures(const QueryGroup& group, std::size_t position,
                                  const FeatureContext& context);

// Exchange format: `qid:<claim_id> rel:<0|1> name:value ...`, names sorted,
// values with up to 6 significant digits.
struct LabeledInstance {
  std::string qid;
  int relevance = 0;
  FeatureVector features;
};

std::string FormatInstance(const LabeledInstance& instance);
// Throws ValidationError on a malformed line.
LabeledInstance ParseInstance(std::string_view line);

}  // namespace argsup

#endif  // ARGSUP_FEATURES_H_
