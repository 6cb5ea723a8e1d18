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

#include "argsup/synthetic.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <vector>

#include "argsup/error.h"

namespace argsup {
namespace {

// Draws are built from raw engine output so the stream is identical on every
// standard library.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double Uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool Bernoulli(double p) { return Uniform() < p; }
  // Uniform integer in [lo, hi].
  int Int(int lo, int hi) {
    return lo + static_cast<int>(engine_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  template <typename T>
  const T& Pick(const std::vector<T>& v) {
    return v[engine_() % v.size()];
  }
  double Gaussian() {
    const double u1 = std::max(Uniform(), 1e-300);
    const double u2 = Uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }
  template <typename T>
  void Shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[engine_() % i]);
  }
  std::size_t Categorical(const std::array<double, kNumArgumentTypes>& weights) {
    double total = 0.0;
    for (double w : weights) total += w;
    double u = Uniform() * total;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (u < weights[i]) return i;
      u -= weights[i];
    }
    return weights.size() - 1;
  }

 private:
  std::mt19937_64 engine_;
};

// Pronounceable three-syllable pseudo-words. The multiplier is coprime with
// the 70^3 word space, so distinct indices give distinct words.
std::string PseudoWord(std::size_t index) {
  static constexpr char kConsonants[] = "bdfgklmnprstvz";
  static constexpr char kVowels[] = "aeiou";
  std::string word;
  std::size_t n = (index * 301761 + 12345) % 343000;
  for (int s = 0; s < 3; ++s) {
    const std::size_t syllable = n % 70;
    n /= 70;
    word += kConsonants[syllable / 5];
    word += kVowels[syllable % 5];
  }
  return word;
}

struct Word {
  std::string text;
  std::string pos;
  std::string dep;
};

const std::array<std::vector<std::string>, kNumArgumentTypes>& TypeCues() {
  static const std::array<std::vector<std::string>, kNumArgumentTypes> kCues = {{
      {"study", "survey", "researchers", "percent", "findings", "data", "analysis", "sample",
       "published", "journal", "experiment", "statistics", "measured", "participants",
       "university", "trial", "cohort", "respondents", "estimate", "rate", "observed",
       "scientists", "report", "evidence"},
      {"law", "passed", "government", "announced", "million", "established", "official",
       "records", "census", "reported", "enacted", "budget", "agency", "court", "ruled",
       "ministry", "signed", "approved", "founded", "population", "treaty", "legislation",
       "council", "billion"},
      {"said", "believes", "argued", "claimed", "stated", "thinks", "criticized", "insisted",
       "feels", "urged", "warned", "opposed", "wrote", "commented", "told", "according",
       "view", "opinion", "praised", "condemned", "suggested", "spokesman", "critic",
       "columnist"},
      {"because", "therefore", "rationale", "premise", "logic", "inference", "result",
       "implies", "means", "leads", "follows", "reason", "cause", "effect", "consequence",
       "hence", "otherwise", "unless", "assume", "conclude", "given", "whereas", "entails",
       "accordingly"},
  }};
  return kCues;
}

const std::vector<std::string>& FunctionWords() {
  static const std::vector<std::string> kWords = {"the", "a",   "of",  "to",   "in",  "and",
                                                  "that", "is", "for", "on",   "with", "as",
                                                  "by",  "it",  "be",  "from", "at",  "but",
                                                  "also", "however", "while",
                                                  "if",  "since", "thus"};
  return kWords;
}

const std::vector<std::string>& HedgeWords() {
  static const std::vector<std::string> kWords = {"may",     "might",    "could", "possibly",
                                                  "perhaps", "likely",   "suggest", "appears",
                                                  "seems",   "probably", "unclear", "roughly"};
  return kWords;
}

const std::vector<std::string>& PersonNames() {
  static const std::vector<std::string> kNames = {"Smith", "Garcia", "Chen",  "Okafor", "Novak",
                                                  "Silva", "Kumar",  "Jones", "Larsen", "Haddad"};
  return kNames;
}


std::string FunctionTag(const std::string& word) {
  if (word == "the" || word == "a") return "DT";
  if (word == "and" || word == "but") return "CC";
  if (word == "is" || word == "be") return "VBZ";
  if (word == "it") return "PRP";
  if (word == "also" || word == "however") return "RB";
  return "IN";
}

std::string Fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

class Generator {
 public:
  explicit Generator(const SyntheticSpec& spec) : spec_(spec), rng_(spec.seed) { BuildVocabulary(); }

  SyntheticData Run() {
    SyntheticData data;
    for (int d = 0; d < spec_.num_debates; ++d) {
      for (int c = 0; c < spec_.claims_per_debate; ++c) {
        data.corpus.groups.push_back(MakeGroup(d, c));
      }
    }
    data.resources = MakeResources();
    return data;
  }

 private:
  static constexpr int kTopicWordsPerDebate = 10;
  static constexpr int kClaimWords = 5;
  static constexpr int kEmbeddingDim = 16;

  void BuildVocabulary() {
    std::size_t next = 0;
    const auto take = [&next](int n, const char* pos, std::vector<Word>& out) {
      for (int i = 0; i < n; ++i) out.push_back({PseudoWord(next++), pos, ""});
    };
    take(150, "NN", filler_);
    take(80, "VB", filler_);
    take(60, "JJ", filler_);
    take(20, "RB", filler_);
    take(spec_.num_debates * kTopicWordsPerDebate, "NN", topic_);
  }

  std::string DepFor(const std::string& pos) {
    if (pos.rfind("NN", 0) == 0) return rng_.Bernoulli(0.5) ? "nsubj" : "dobj";
    if (pos.rfind("VB", 0) == 0) return rng_.Bernoulli(0.7) ? "root" : "xcomp";
    if (pos == "JJ") return "amod";
    if (pos == "RB") return "advmod";
    if (pos == "DT") return "det";
    if (pos == "CC") return "cc";
    if (pos == "CD") return "nummod";
    return "prep";
  }

  const Word& TopicWord(int debate, int k) const {
    return topic_[static_cast<std::size_t>(debate * kTopicWordsPerDebate + k)];
  }

  Token MakeToken(const std::string& text, const std::string& pos, const std::string& ne = "O") {
    return {text, pos, ne, DepFor(pos)};
  }

  QueryGroup MakeGroup(int debate, int claim_no) {
    QueryGroup group;
    Claim& claim = group.claim;
    claim.debate_id = "d" + std::to_string(debate);
    claim.claim_id = claim.debate_id + "c" + std::to_string(claim_no);
    claim.topic_text = "debate about " + TopicWord(debate, 0).text;
    // The claim's content words: a window of the debate's topic words.
    std::vector<int> claim_topics;
    for (int k = 0; k < kClaimWords; ++k) {
      claim_topics.push_back((claim_no * kClaimWords + k) % kTopicWordsPerDebate);
    }
    std::vector<Token> ct = {MakeToken("the", "DT")};
    for (int k : claim_topics) {
      ct.push_back(MakeToken(TopicWord(debate, k).text, "NN"));
      if (ct.size() == 3) ct.push_back(MakeToken("should", "MD"));
    }
    claim.claim_tokens = ct;
    claim.claim_text = JoinTokens(ct);
    group.article_id = "a" + std::to_string(debate) + "_" + std::to_string(claim_no);

    const int n = spec_.sentences_per_article;
    const int n_rel = std::min(n, rng_.Int(spec_.min_relevant, spec_.max_relevant));
    std::vector<int> relevance(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n_rel; ++i) relevance[static_cast<std::size_t>(i)] = 1;
    rng_.Shuffle(relevance);

    for (int i = 0; i < n; ++i) {
      const std::size_t type = rng_.Categorical(spec_.type_weights);
      AnnotatedSentence s;
      s.index = static_cast<std::size_t>(i);
      s.relevance = relevance[static_cast<std::size_t>(i)];
      s.tokens = MakeSentence(debate, claim_topics, type, s.relevance == 1);
      s.text = JoinTokens(s.tokens);
      if (s.relevance == 1 && rng_.Bernoulli(spec_.gold_type_fraction)) {
        s.gold_type = kAllArgumentTypes[type];
      }
      group.sentences.push_back(std::move(s));
    }
    return group;
  }

  std::vector<Token> MakeSentence(int debate, const std::vector<int>& claim_topics,
                                  std::size_t type, bool relevant) {
    const bool overlap_type =
        type == Index(ArgumentType::kStudy) || type == Index(ArgumentType::kOpinion);
    int overlap;
    int length;
    if (!spec_.type_conditional || overlap_type) {
      overlap = relevant ? rng_.Int(1, 3) : rng_.Int(0, 2);
      length = rng_.Int(10, 18);
    } else {
      overlap = relevant ? rng_.Int(0, 2) : rng_.Int(1, 3);
      length = relevant ? rng_.Int(13, 21) : rng_.Int(10, 18);
    }

    std::vector<Token> tokens;
    const auto& cues = TypeCues();
    const int own_cues = rng_.Int(2, 3);
    for (int k = 0; k < own_cues; ++k) {
      const std::string& w = rng_.Pick(cues[type]);
      tokens.push_back(MakeToken(w, "NN"));
    }
    if (rng_.Bernoulli(0.3)) {
      const std::size_t other = (type + static_cast<std::size_t>(rng_.Int(1, 3))) % kNumArgumentTypes;
      const std::string& w = rng_.Pick(cues[other]);
      tokens.push_back(MakeToken(w, "NN"));
    }
    // Named entities: a weak type cue plus background noise.
    static constexpr std::array<const char*, kNumArgumentTypes> kTypeEntity = {"PERCENT", "DATE",
                                                                                "PERSON", ""};
    const auto add_entity = [&](const std::string& tag) {
      if (tag == "PERCENT") tokens.push_back(MakeToken(std::to_string(rng_.Int(2, 95)) + "%", "CD", tag));
      if (tag == "DATE") tokens.push_back(MakeToken(std::to_string(rng_.Int(1950, 2016)), "CD", tag));
      if (tag == "PERSON") tokens.push_back(MakeToken(rng_.Pick(PersonNames()), "NNP", tag));
      if (tag == "LOCATION") tokens.push_back(MakeToken("Geneva", "NNP", tag));
    };
    if (type != Index(ArgumentType::kReasoning) && rng_.Bernoulli(0.3)) add_entity(kTypeEntity[type]);
    if (rng_.Bernoulli(0.25)) {
      static const std::vector<std::string> kNoise = {"PERCENT", "DATE", "PERSON", "LOCATION"};
      add_entity(rng_.Pick(kNoise));
    }
    if (rng_.Bernoulli(type == Index(ArgumentType::kOpinion) ? 0.25 : 0.12)) {
      tokens.push_back(MakeToken(rng_.Pick(HedgeWords()), "MD"));
    }

    // Claim words, then other words of the same debate.
    std::vector<int> pool = claim_topics;
    rng_.Shuffle(pool);
    for (int k = 0; k < overlap && k < static_cast<int>(pool.size()); ++k) {
      tokens.push_back(MakeToken(TopicWord(debate, pool[static_cast<std::size_t>(k)]).text, "NN"));
    }
    const int off_topic = rng_.Int(0, 2);
    for (int k = 0; k < off_topic; ++k) {
      int t = rng_.Int(0, kTopicWordsPerDebate - 1);
      if (std::find(claim_topics.begin(), claim_topics.end(), t) != claim_topics.end()) continue;
      tokens.push_back(MakeToken(TopicWord(debate, t).text, "NN"));
    }
    while (static_cast<int>(tokens.size()) < length) {
      if (rng_.Bernoulli(0.4)) {
        const std::string& w = rng_.Pick(FunctionWords());
        tokens.push_back(MakeToken(w, FunctionTag(w)));
      } else {
        const Word& w = rng_.Pick(filler_);
        tokens.push_back(MakeToken(w.text, w.pos));
      }
    }
    rng_.Shuffle(tokens);
    tokens.push_back(MakeToken(".", "."));
    return tokens;
  }

  static std::string JoinTokens(const std::vector<Token>& tokens) {
    std::string out;
    for (const Token& t : tokens) {
      if (!out.empty() && t.text != ".") out += ' ';
      out += t.text;
    }
    return out;
  }

  SyntheticResources MakeResources() {
    SyntheticResources r;
    const auto& cues = TypeCues();
    std::vector<std::string> all_words;
    for (const Word& w : filler_) all_words.push_back(w.text);
    for (const Word& w : topic_) all_words.push_back(w.text);
    for (const auto& pool : cues) all_words.insert(all_words.end(), pool.begin(), pool.end());
    for (const std::string& w : FunctionWords()) all_words.push_back(w);
    for (const std::string& w : HedgeWords()) all_words.push_back(w);

    std::ostringstream pol;
    pol << "# word\tpolarity\n";
    static const std::vector<std::string> kPolarities = {"positive", "negative", "neutral"};
    for (const Word& w : filler_) {
      if (rng_.Bernoulli(0.4)) pol << w.text << '\t' << rng_.Pick(kPolarities) << '\n';
    }
    for (const std::string& w : cues[Index(ArgumentType::kOpinion)]) {
      pol << w << '\t' << (rng_.Bernoulli(0.5) ? "negative" : "positive") << '\n';
    }
    r.polarity = pol.str();

    std::ostringstream cat;
    const std::vector<std::string>& universe = DefaultCategoryUniverse();
    for (const Word& w : filler_) {
      if (rng_.Bernoulli(0.25)) cat << w.text << '\t' << rng_.Pick(universe) << '\n';
    }
    static constexpr std::array<const char*, kNumArgumentTypes> kCueCategory = {"Academ", "Econ@",
                                                                                 "Ought", "Causal"};
    for (std::size_t t = 0; t < kNumArgumentTypes; ++t) {
      for (const std::string& w : cues[t]) {
        if (rng_.Bernoulli(0.3)) cat << w << '\t' << kCueCategory[t] << '\n';
      }
    }
    r.categories = cat.str();

    std::ostringstream norms;
    norms << "word,concreteness,valence,arousal,dominance\n";
    for (const std::string& w : all_words) {
      if (!rng_.Bernoulli(0.7)) continue;
      norms << w << ',' << Fmt(1.0 + 4.0 * rng_.Uniform()) << ',' << Fmt(1.0 + 8.0 * rng_.Uniform())
            << ',' << Fmt(1.0 + 8.0 * rng_.Uniform()) << ',';
      if (rng_.Bernoulli(0.9)) norms << Fmt(1.0 + 8.0 * rng_.Uniform());
      norms << '\n';
    }
    r.norms = norms.str();

    r.connectives =
        "because\tContingency\tCause\n"
        "therefore\tContingency\tCause\n"
        "thus\tContingency\tCause\n"
        "consequently\tContingency\tCause\n"
        "hence\tContingency\tCause\n"
        "since\tContingency\tCause\n"
        "since\tTemporal\tAsynchronous\n"
        "as a result\tContingency\tCause\n"
        "if\tContingency\tCondition\n"
        "however\tComparison\tContrast\n"
        "but\tComparison\tContrast\n"
        "while\tTemporal\tSynchronous\n"
        "also\tExpansion\tConjunction\n"
        "and\tExpansion\tConjunction\n"
        "for example\tExpansion\tInstantiation\n";

    // Topic words of a debate cluster around a shared centroid.
    std::ostringstream emb;
    std::vector<std::string> rows;
    const auto vec_line = [&](const std::string& word, const std::vector<double>& v) {
      std::string line = word;
      for (double x : v) line += " " + Fmt(x);
      rows.push_back(line);
    };
    for (int d = 0; d < spec_.num_debates; ++d) {
      std::vector<double> centroid(kEmbeddingDim);
      for (double& x : centroid) x = rng_.Gaussian();
      for (int k = 0; k < kTopicWordsPerDebate; ++k) {
        std::vector<double> v(kEmbeddingDim);
        for (int i = 0; i < kEmbeddingDim; ++i) {
          v[static_cast<std::size_t>(i)] = centroid[static_cast<std::size_t>(i)] + 0.5 * rng_.Gaussian();
        }
        vec_line(TopicWord(d, k).text, v);
      }
    }
    for (const Word& w : filler_) {
      std::vector<double> v(kEmbeddingDim);
      for (double& x : v) x = rng_.Gaussian();
      vec_line(w.text, v);
    }
    for (const auto& pool : cues) {
      for (const std::string& w : pool) {
        std::vector<double> v(kEmbeddingDim);
        for (double& x : v) x = rng_.Gaussian();
        vec_line(w, v);
      }
    }
    emb << rows.size() << ' ' << kEmbeddingDim << '\n';
    for (const std::string& line : rows) emb << line << '\n';
    r.embeddings = emb.str();

    std::ostringstream hedges;
    for (const std::string& w : HedgeWords()) hedges << w << '\n';
    r.hedges = hedges.str();
    return r;
  }

  SyntheticSpec spec_;
  Rng rng_;
  std::vector<Word> filler_;
  std::vector<Word> topic_;
};

}  // namespace

ResourcePaths SyntheticResources::Write(const std::filesystem::path& dir) const {
  std::filesystem::create_directories(dir);
  ResourcePaths paths;
  const auto write = [&dir](const char* name, const std::string& content) {
    const std::filesystem::path path = dir / name;
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    out << content;
    return path;
  };
  paths.polarity = write("polarity.tsv", polarity);
  paths.categories = write("categories.tsv", categories);
  paths.norms = write("norms.csv", norms);
  paths.connectives = write("connectives.tsv", connectives);
  paths.embeddings = write("embeddings.txt", embeddings);
  paths.hedges = write("hedges.txt", hedges);
  return paths;
}

SyntheticData GenerateSynthetic(const SyntheticSpec& spec) {
  if (spec.num_debates < 1 || spec.claims_per_debate < 1 || spec.sentences_per_article < 1) {
    throw InvalidArgument("synthetic corpus sizes must be positive");
  }
  if (spec.min_relevant < 0 || spec.max_relevant < spec.min_relevant) {
    throw InvalidArgument("synthetic relevant range is inconsistent");
  }
  if (spec.gold_type_fraction < 0.0 || spec.gold_type_fraction > 1.0) {
    throw InvalidArgument("gold type fraction must lie in [0, 1]");
  }
  double total = 0.0;
  for (double w : spec.type_weights) {
    if (w < 0.0) throw InvalidArgument("type weights must be non-negative");
    total += w;
  }
  if (!(total > 0.0)) throw InvalidArgument("type weights must not all be zero");
  return Generator(spec).Run();
}

}  // namespace argsup
