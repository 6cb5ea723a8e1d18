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

#include "argsup/features.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "argsup/error.h"

namespace argsup {
namespace {

constexpr std::string_view kComposite = "cmp:";

// Feature names may not contain whitespace (the exchange format is
// whitespace-separated).
std::string SanitizeWord(std::string_view word) {
  std::string out(word);
  for (char& c : out) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r') c = '_';
  }
  return out;
}

std::string CoarsePos(std::string_view tag) {
  std::string upper(tag);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  const auto starts = [&upper](std::string_view prefix) { return upper.rfind(prefix, 0) == 0; };
  if (upper == "VERB" || upper == "AUX" || starts("VB")) return "verb";
  if (upper == "NOUN" || upper == "PROPN" || starts("NN")) return "noun";
  if (upper == "ADJ" || starts("JJ")) return "adj";
  if (upper == "ADV" || starts("RB")) return "adv";
  return {};
}

// Count namespaces rescaled by the length-normalize switch.
constexpr std::string_view kCountPrefixes[] = {"bas:pos:", "bas:dep:", "bas:ne:", "sen:pol:",
                                               "sen:gi:",  "sen:hedge", "dis:conn:", "ngr:"};

void NormalizeCounts(FeatureVector& fv, std::size_t n_tokens, std::string_view prefix = "") {
  const double factor = 1.0 / static_cast<double>(n_tokens);
  for (std::string_view p : kCountPrefixes) fv.ScalePrefix(std::string(prefix) + std::string(p), factor);
}

// bas:, sen:, dis: and sty: features of a token sequence, each name prefixed
// with `prefix`.
FeatureVector ExtractTextFeatures(const std::vector<Token>& tokens, const ResourceBundle& bundle,
                                  const FeatureConfig& config, const std::string& prefix) {
  FeatureVector fv;
  const std::vector<std::string> words = LowercaseWords(tokens);
  const FeatureFamilies& fam = config.families;

  if (fam.basic) {
    fv.Set(prefix + "bas:len", static_cast<double>(tokens.size()));
    for (const Token& t : tokens) {
      const std::string coarse = CoarsePos(t.pos);
      if (!coarse.empty()) fv.Add(prefix + "bas:pos:" + coarse, 1.0);
      if (!t.dep.empty()) fv.Add(prefix + "bas:dep:" + SanitizeWord(t.dep), 1.0);
      if (t.ne != "O" && !t.ne.empty()) fv.Add(prefix + "bas:ne:" + t.ne, 1.0);
    }
  }

  if (fam.sentiment) {
    if (bundle.polarity) {
      for (const std::string& w : words) {
        auto polarity = bundle.polarity->Lookup(w);
        if (!polarity) continue;
        switch (*polarity) {
          case Polarity::kPositive: fv.Add(prefix + "sen:pol:pos", 1.0); break;
          case Polarity::kNegative: fv.Add(prefix + "sen:pol:neg", 1.0); break;
          case Polarity::kNeutral: fv.Add(prefix + "sen:pol:neu", 1.0); break;
        }
      }
    }
    if (bundle.categories) {
      for (const std::string& w : words) {
        for (const std::string& category : bundle.categories->Lookup(w)) {
          fv.Add(prefix + "sen:gi:" + category, 1.0);
        }
      }
    }
    if (bundle.hedges) {
      for (const std::string& w : words) {
        if (bundle.hedges->Contains(w)) fv.Add(prefix + "sen:hedge", 1.0);
      }
    }
  }

  if (fam.discourse && bundle.connectives) {
    for (const ConnectiveMatch& m : MatchConnectives(words, *bundle.connectives)) {
      fv.Add(prefix + "dis:conn:" + m.level1, 1.0);
      fv.Add(prefix + "dis:conn:" + m.level1 + ":" + m.level2, 1.0);
      fv.Add(prefix + "dis:conn:total", 1.0);
    }
  }

  if (fam.style && bundle.norms) {
    double sums[4] = {0, 0, 0, 0};
    int counts[4] = {0, 0, 0, 0};
    int covered = 0;
    for (const std::string& w : words) {
      const NormScores* scores = bundle.norms->Lookup(w);
      if (scores == nullptr) continue;
      ++covered;
      const std::optional<double>* slots[] = {&scores->concreteness, &scores->valence,
                                              &scores->arousal, &scores->dominance};
      for (int i = 0; i < 4; ++i) {
        if (*slots[i]) {
          sums[i] += **slots[i];
          ++counts[i];
        }
      }
    }
    static constexpr const char* kNames[] = {"sty:conc:mean", "sty:val:mean", "sty:aro:mean",
                                             "sty:dom:mean"};
    for (int i = 0; i < 4; ++i) {
      if (counts[i] > 0) fv.Set(prefix + kNames[i], sums[i] / counts[i]);
    }
    fv.Set(prefix + "sty:cov", covered);
  }

  if (config.length_normalize && !tokens.empty()) NormalizeCounts(fv, tokens.size(), prefix);
  return fv;
}

FeatureVector ExtractNgramFeatures(const std::vector<std::string>& words,
                                   const NgramVocabulary& vocab, const FeatureConfig& config) {
  FeatureVector fv;
  for (const std::string& key : NgramKeys(words)) {
    if (vocab.Contains(key)) fv.Add("ngr:" + key, 1.0);
  }
  if (config.length_normalize && !words.empty()) NormalizeCounts(fv, words.size());
  return fv;
}

FeatureVector ExtractPositionFeatures(std::size_t index, std::size_t n_sentences) {
  FeatureVector fv;
  fv.Set("pos:abs", static_cast<double>(index));
  fv.Set("pos:rel", static_cast<double>(index) /
                        static_cast<double>(std::max<std::size_t>(1, n_sentences - 1)));
  return fv;
}

std::unordered_map<std::string, double> TermFrequencies(std::span<const std::string> words) {
  std::unordered_map<std::string, double> tf;
  for (const std::string& w : words) tf[w] += 1.0;
  return tf;
}

std::map<std::vector<std::string>, int> NgramCounts(std::span<const std::string> words,
                                                    std::size_t n) {
  std::map<std::vector<std::string>, int> counts;
  if (words.size() < n) return counts;
  for (std::size_t i = 0; i + n <= words.size(); ++i) {
    ++counts[std::vector<std::string>(words.begin() + static_cast<std::ptrdiff_t>(i),
                                      words.begin() + static_cast<std::ptrdiff_t>(i + n))];
  }
  return counts;
}

void RequireBase(const FeatureContext& context) {
  if (!context.bundle || !context.vocab || !context.idf || !context.config) {
    throw InvalidArgument("feature context is incomplete");
  }
}

}  // namespace

void FeatureVector::Set(const std::string& name, double value) {
  if (value == 0.0) {
    values_.erase(name);
  } else {
    values_.insert_or_assign(name, value);
  }
}

void FeatureVector::Add(const std::string& name, double delta) {
  auto it = values_.find(name);
  if (it == values_.end()) {
    if (delta != 0.0) values_.emplace(name, delta);
    return;
  }
  it->second += delta;
  if (it->second == 0.0) values_.erase(it);
}

double FeatureVector::Get(std::string_view name) const {
  auto it = values_.find(name);
  return it == values_.end() ? 0.0 : it->second;
}

void FeatureVector::Merge(const FeatureVector& other) {
  for (const auto& [name, value] : other.values_) {
    if (!values_.emplace(name, value).second) {
      throw std::logic_error("feature name collision on merge: " + name);
    }
  }
}

void FeatureVector::ScalePrefix(std::string_view prefix, double factor) {
  for (auto it = values_.lower_bound(prefix); it != values_.end(); ++it) {
    if (it->first.compare(0, prefix.size(), prefix) != 0) break;
    it->second *= factor;
  }
}

void FeatureConfig::Validate() const {
  if (bleu_max_order < 1 || bleu_max_order > 4) {
    throw InvalidArgument("BLEU max order must be in [1, 4], got " +
                          std::to_string(bleu_max_order));
  }
}

NgramVocabulary::NgramVocabulary(std::vector<std::string> keys) : ordered_(std::move(keys)) {
  std::sort(ordered_.begin(), ordered_.end());
  ordered_.erase(std::unique(ordered_.begin(), ordered_.end()), ordered_.end());
  keys_.insert(ordered_.begin(), ordered_.end());
}

std::vector<std::string> NgramKeys(std::span<const std::string> words) {
  std::vector<std::string> keys;
  keys.reserve(words.size() * 2);
  for (const std::string& w : words) keys.push_back("1:" + SanitizeWord(w));
  for (std::size_t i = 0; i + 1 < words.size(); ++i) {
    keys.push_back("2:" + SanitizeWord(words[i]) + "_" + SanitizeWord(words[i + 1]));
  }
  return keys;
}

NgramVocabulary BuildNgramVocabulary(const Corpus& corpus, std::size_t max_size,
                                     std::size_t min_df) {
  std::unordered_map<std::string, std::pair<std::size_t, std::size_t>> stats;  // (freq, df)
  for (const QueryGroup& g : corpus.groups) {
    for (const AnnotatedSentence& s : g.sentences) {
      std::vector<std::string> keys = NgramKeys(LowercaseWords(s.tokens));
      for (const std::string& k : keys) ++stats[k].first;
      std::sort(keys.begin(), keys.end());
      keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
      for (const std::string& k : keys) ++stats[k].second;
    }
  }
  std::vector<std::pair<std::string, std::size_t>> candidates;
  for (const auto& [key, st] : stats) {
    if (st.second >= min_df) candidates.emplace_back(key, st.first);
  }
  std::sort(candidates.begin(), candidates.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  if (candidates.size() > max_size) candidates.resize(max_size);
  std::vector<std::string> keys;
  keys.reserve(candidates.size());
  for (auto& c : candidates) keys.push_back(std::move(c.first));
  return NgramVocabulary(std::move(keys));
}

IdfTable::IdfTable(std::unordered_map<std::string, double> idf, std::size_t num_documents)
    : idf_(std::move(idf)),
      num_documents_(num_documents),
      absent_idf_(std::log(static_cast<double>(1 + num_documents)) + 1.0) {}

double IdfTable::Idf(std::string_view word) const {
  auto it = idf_.find(std::string(word));
  return it == idf_.end() ? absent_idf_ : it->second;
}

IdfTable BuildIdfTable(const Corpus& corpus) {
  std::unordered_map<std::string, std::size_t> df;
  std::size_t num_documents = 0;
  for (const QueryGroup& g : corpus.groups) {
    for (const AnnotatedSentence& s : g.sentences) {
      ++num_documents;
      std::vector<std::string> words = LowercaseWords(s.tokens);
      std::sort(words.begin(), words.end());
      words.erase(std::unique(words.begin(), words.end()), words.end());
      for (const std::string& w : words) ++df[w];
    }
  }
  if (num_documents == 0) throw InvalidArgument("cannot build an IDF table from an empty corpus");
  std::unordered_map<std::string, double> idf;
  idf.reserve(df.size());
  const double n = static_cast<double>(num_documents);
  for (const auto& [word, count] : df) {
    idf.emplace(word, std::log((1.0 + n) / (1.0 + static_cast<double>(count))) + 1.0);
  }
  return IdfTable(std::move(idf), num_documents);
}

FeatureVector ExtractSentenceFeatures(const AnnotatedSentence& sentence, std::size_t n_sentences,
                                      const ResourceBundle& bundle, const NgramVocabulary& vocab,
                                      const FeatureConfig& config) {
  if (n_sentences < 1) throw InvalidArgument("article must have at least one sentence");
  if (sentence.index >= n_sentences) {
    throw InvalidArgument("sentence index " + std::to_string(sentence.index) +
                          " outside an article of " + std::to_string(n_sentences) + " sentences");
  }
  FeatureVector fv = ExtractTextFeatures(sentence.tokens, bundle, config, "");
  if (config.families.position) fv.Merge(ExtractPositionFeatures(sentence.index, n_sentences));
  if (config.families.ngrams) fv.Merge(ExtractNgramFeatures(LowercaseWords(sentence.tokens), vocab, config));
  return fv;
}

FeatureVector ExtractClaimFeatures(const Claim& claim, const ResourceBundle& bundle,
                                   const FeatureConfig& config) {
  return ExtractTextFeatures(claim.claim_tokens, bundle, config, "clm:");
}

std::size_t LongestCommonSubsequence(std::span<const std::string> a,
                                     std::span<const std::string> b) {
  std::vector<std::size_t> prev(b.size() + 1, 0);
  std::vector<std::size_t> curr(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      curr[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], curr[j - 1]);
    }
    std::swap(prev, curr);
  }
  return prev[b.size()];
}

double RougeL(std::span<const std::string> reference, std::span<const std::string> candidate,
              bool f_measure) {
  if (reference.empty()) throw InvalidArgument("ROUGE-L reference is empty");
  if (candidate.empty()) return 0.0;
  const double lcs = static_cast<double>(LongestCommonSubsequence(reference, candidate));
  const double recall = lcs / static_cast<double>(reference.size());
  if (!f_measure) return recall;
  const double precision = lcs / static_cast<double>(candidate.size());
  return lcs == 0.0 ? 0.0 : 2.0 * precision * recall / (precision + recall);
}

double Bleu(std::span<const std::string> reference, std::span<const std::string> candidate,
            int max_n, bool smoothing) {
  if (max_n < 1 || max_n > 4) throw InvalidArgument("BLEU max order must be in [1, 4]");
  if (reference.empty() || candidate.empty()) throw InvalidArgument("BLEU input is empty");
  double log_sum = 0.0;
  for (int n = 1; n <= max_n; ++n) {
    const auto cand = NgramCounts(candidate, static_cast<std::size_t>(n));
    const auto ref = NgramCounts(reference, static_cast<std::size_t>(n));
    double matched = 0.0;
    double total = 0.0;
    for (const auto& [gram, count] : cand) {
      total += count;
      auto it = ref.find(gram);
      if (it != ref.end()) matched += std::min(count, it->second);
    }
    if (n >= 2 && smoothing) {
      matched += 1.0;
      total += 1.0;
    }
    if (matched == 0.0 || total == 0.0) return 0.0;
    log_sum += std::log(matched / total);
  }
  const double r = static_cast<double>(reference.size());
  const double c = static_cast<double>(candidate.size());
  const double brevity = c < r ? std::exp(1.0 - r / c) : 1.0;
  return brevity * std::exp(log_sum / max_n);
}

double TfidfCosine(std::span<const std::string> a, std::span<const std::string> b,
                   const IdfTable& idf) {
  if (a.empty() || b.empty()) throw InvalidArgument("TF-IDF cosine input is empty");
  const auto tf_a = TermFrequencies(a);
  const auto tf_b = TermFrequencies(b);
  double dot = 0.0;
  double norm_a = 0.0;
  double norm_b = 0.0;
  // Iterate in sorted order so the floating-point sums do not depend on hash
  // table layout.
  std::map<std::string_view, double> weights_a;
  for (const auto& [w, f] : tf_a) weights_a.emplace(w, f * idf.Idf(w));
  std::map<std::string_view, double> weights_b;
  for (const auto& [w, f] : tf_b) weights_b.emplace(w, f * idf.Idf(w));
  for (const auto& [w, x] : weights_a) {
    norm_a += x * x;
    auto it = weights_b.find(w);
    if (it != weights_b.end()) dot += x * it->second;
  }
  for (const auto& [w, y] : weights_b) norm_b += y * y;
  if (norm_a == 0.0 || norm_b == 0.0) return 0.0;
  return std::clamp(dot / (std::sqrt(norm_a) * std::sqrt(norm_b)), 0.0, 1.0);
}

double EmbeddingCosine(std::span<const std::string> a, std::span<const std::string> b,
                       const EmbeddingTable& embeddings) {
  const auto mean = [&embeddings](std::span<const std::string> words) {
    std::vector<double> sum(embeddings.dimension(), 0.0);
    std::size_t found = 0;
    for (const std::string& w : words) {
      const std::vector<double>* v = embeddings.Lookup(w);
      if (v == nullptr) continue;
      ++found;
      for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += (*v)[i];
    }
    if (found > 0) {
      for (double& x : sum) x /= static_cast<double>(found);
    }
    return std::make_pair(sum, found);
  };
  const auto [ma, na] = mean(a);
  const auto [mb, nb] = mean(b);
  if (na == 0 || nb == 0) return 0.0;
  double dot = 0.0;
  double norm_a = 0.0;
  double norm_b = 0.0;
  for (std::size_t i = 0; i < ma.size(); ++i) {
    dot += ma[i] * mb[i];
    norm_a += ma[i] * ma[i];
    norm_b += mb[i] * mb[i];
  }
  if (norm_a == 0.0 || norm_b == 0.0) return 0.0;
  return std::clamp(dot / (std::sqrt(norm_a) * std::sqrt(norm_b)), -1.0, 1.0);
}

FeatureVector ExtractSimilarityFeatures(const Claim& claim, const AnnotatedSentence& sentence,
                                        const IdfTable& idf, const EmbeddingTable* embeddings,
                                        const FeatureConfig& config) {
  const std::vector<std::string> claim_words = LowercaseWords(claim.claim_tokens);
  const std::vector<std::string> sentence_words = LowercaseWords(sentence.tokens);
  FeatureVector fv;
  fv.Set("sim:tfidf", TfidfCosine(claim_words, sentence_words, idf));
  if (embeddings != nullptr) fv.Set("sim:w2v", EmbeddingCosine(claim_words, sentence_words, *embeddings));
  fv.Set("sim:rouge_l", RougeL(claim_words, sentence_words, config.rouge_f_measure));
  fv.Set("sim:bleu", Bleu(claim_words, sentence_words, config.bleu_max_order, config.bleu_smoothing));
  return fv;
}

FeatureVector ComposeWithType(const FeatureVector& base, ArgumentType type) {
  const std::string prefix = std::string(kComposite) + std::string(ToString(type)) + ":";
  FeatureVector out;
  for (const auto& [name, value] : base) {
    if (name.compare(0, kComposite.size(), kComposite) == 0) {
      throw InvalidArgument("feature '" + name + "' is already composed");
    }
    out.Set(prefix + name, value);
  }
  return out;
}

namespace {

constexpr std::pair<FeatureSet, std::string_view> kFeatureSetNames[] = {
    {FeatureSet::kNgrams, "ngrams"},
    {FeatureSet::kSen, "sen"},
    {FeatureSet::kSimi, "simi"},
    {FeatureSet::kCompSenSimi, "comp-sen-simi"},
    {FeatureSet::kSenNgrSimi, "sen+ngr+simi"},
    {FeatureSet::kFull, "full"},
    {FeatureSet::kFullClaimComp, "full+claimcomp"},
};

}  // namespace

std::string_view ToString(FeatureSet set) {
  for (const auto& [value, name] : kFeatureSetNames) {
    if (value == set) return name;
  }
  return "?";
}

FeatureSet ParseFeatureSet(std::string_view name) {
  for (const auto& [value, text] : kFeatureSetNames) {
    if (text == name) return value;
  }
  throw InvalidArgument("unknown feature set '" + std::string(name) + "'");
}

std::vector<FeatureSet> AllFeatureSets() {
  std::vector<FeatureSet> sets;
  for (const auto& entry : kFeatureSetNames) sets.push_back(entry.first);
  return sets;
}

bool UsesComposites(FeatureSet set) {
  return set == FeatureSet::kCompSenSimi || set == FeatureSet::kFull ||
         set == FeatureSet::kFullClaimComp;
}

InstanceParts ExtractInstanceParts(const QueryGroup& group, std::size_t position,
                                   const FeatureContext& context) {
  RequireBase(context);
  const AnnotatedSentence& sentence = group.sentences.at(position);
  const FeatureConfig& config = *context.config;
  InstanceParts parts;
  FeatureConfig sentence_only = config;
  sentence_only.families.ngrams = false;
  parts.sentence = ExtractSentenceFeatures(sentence, group.sentences.size(), *context.bundle,
                                           *context.vocab, sentence_only);
  if (config.families.ngrams) {
    parts.ngrams = ExtractNgramFeatures(LowercaseWords(sentence.tokens), *context.vocab, config);
  }
  if (config.families.similarity) {
    const EmbeddingTable* emb = context.bundle->embeddings ? &*context.bundle->embeddings : nullptr;
    parts.similarity = ExtractSimilarityFeatures(group.claim, sentence, *context.idf, emb, config);
  }
  parts.claim = ExtractClaimFeatures(group.claim, *context.bundle, config);
  return parts;
}

FeatureVector AssembleFromParts(const InstanceParts& parts, std::optional<ArgumentType> type,
                                FeatureSet set) {
  if (UsesComposites(set) && !type) {
    throw InvalidArgument("feature set '" + std::string(ToString(set)) +
                          "' needs an argument type for composition");
  }
  FeatureVector fv;
  const auto add_comp_sen_simi = [&] {
    fv.Merge(ComposeWithType(parts.sentence, *type));
    fv.Merge(ComposeWithType(parts.similarity, *type));
  };
  switch (set) {
    case FeatureSet::kNgrams:
      fv.Merge(parts.ngrams);
      break;
    case FeatureSet::kSen:
      fv.Merge(parts.sentence);
      break;
    case FeatureSet::kSimi:
      fv.Merge(parts.similarity);
      break;
    case FeatureSet::kCompSenSimi:
      add_comp_sen_simi();
      break;
    case FeatureSet::kSenNgrSimi:
      fv.Merge(parts.sentence);
      fv.Merge(parts.ngrams);
      fv.Merge(parts.similarity);
      break;
    case FeatureSet::kFull:
    case FeatureSet::kFullClaimComp:
      fv.Merge(parts.sentence);
      fv.Merge(parts.ngrams);
      fv.Merge(parts.similarity);
      add_comp_sen_simi();
      if (set == FeatureSet::kFullClaimComp) fv.Merge(ComposeWithType(parts.claim, *type));
      break;
  }
  return fv;
}

FeatureVector AssembleInstance(const QueryGroup& group, std::size_t position,
                               std::optional<ArgumentType> type, const FeatureContext& context,
                               FeatureSet set) {
  return AssembleFromParts(ExtractInstanceParts(group, position, context), type, set);
}

FeatureVector ExtractTypeFeatures(const QueryGroup& group, std::size_t position,
                                  const FeatureContext& context) {
  RequireBase(context);
  FeatureConfig config = *context.config;
  config.families.position = false;
  const AnnotatedSentence& sentence = group.sentences.at(position);
  return ExtractSentenceFeatures(sentence, group.sentences.size(), *context.bundle, *context.vocab,
                                 config);
}

std::string FormatInstance(const LabeledInstance& instance) {
  std::string line = "qid:" + instance.qid + " rel:" + std::to_string(instance.relevance);
  char buffer[64];
  for (const auto& [name, value] : instance.features) {
    std::snprintf(buffer, sizeof(buffer), "%.6g", value);
    line += ' ';
    line += name;
    line += ':';
    line += buffer;
  }
  return line;
}

LabeledInstance ParseInstance(std::string_view line) {
  LabeledInstance instance;
  std::size_t pos = 0;
  std::size_t field = 0;
  while (pos < line.size()) {
    while (pos < line.size() && line[pos] == ' ') ++pos;
    if (pos >= line.size()) break;
    std::size_t end = line.find(' ', pos);
    if (end == std::string_view::npos) end = line.size();
    const std::string_view token = line.substr(pos, end - pos);
    pos = end;
    const std::size_t colon = token.rfind(':');
    if (colon == std::string_view::npos || colon == 0 || colon + 1 == token.size()) {
      throw ValidationError("malformed feature entry '" + std::string(token) + "'");
    }
    const std::string_view name = token.substr(0, colon);
    const std::string_view value = token.substr(colon + 1);
    if (field == 0) {
      if (token.substr(0, 4) != "qid:") throw ValidationError("instance line must start with qid:");
      instance.qid = std::string(token.substr(4));
    } else if (field == 1) {
      if (name != "rel" || (value != "0" && value != "1")) {
        throw ValidationError("second field must be rel:0 or rel:1");
      }
      instance.relevance = value == "1" ? 1 : 0;
    } else {
      double v = 0.0;
      auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
      if (ec != std::errc() || ptr != value.data() + value.size()) {
        throw ValidationError("malformed feature value in '" + std::string(token) + "'");
      }
      if (instance.features.Contains(name)) {
        throw ValidationError("duplicate feature '" + std::string(name) + "'");
      }
      instance.features.Set(std::string(name), v);
    }
    ++field;
  }
  if (field < 2) throw ValidationError("instance line needs qid: and rel: fields");
  return instance;
}

}  // namespace argsup
