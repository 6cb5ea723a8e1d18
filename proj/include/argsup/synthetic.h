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

#ifndef ARGSUP_SYNTHETIC_H_
#define ARGSUP_SYNTHETIC_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>

#include "argsup/corpus.h"
#include "argsup/lexicons.h"

namespace argsup {

// Seeded generator of annotated corpora with known structure, used by tests,
// the acceptance suite and the `synth` command.
//
// Every sentence has a latent argument type that shows through a noisy mix of
// cue words, named entities, hedges and connectives, so a classifier pooling
// many weak cues recovers it while no single feature does. Relevance depends
// on claim overlap and length:
//   - type_conditional = false: relevant sentences of every type share more
//     words with the claim.
//   - type_conditional = true: study and opinion sentences are relevant when
//     they overlap the claim; factual and reasoning sentences are relevant
//     when they are long and overlap little, and their irrelevant members are
//     high-overlap decoys.
struct SyntheticSpec {
  int num_debates = 50;
  int claims_per_debate = 2;
  int sentences_per_article = 20;
  int min_relevant = 2;
  int max_relevant = 3;
  bool type_conditional = true;
  // Share of relevant sentences that carry a gold type.
  double gold_type_fraction = 1.0;
  // Sampling weights of the latent type, canonical order.
  std::array<double, kNumArgumentTypes> type_weights = {1.0, 1.0, 1.0, 1.0};
  std::uint64_t seed = 0;
};

// Lexical resources matching the generated vocabulary, as file contents in
// the formats the loaders read.
struct SyntheticResources {
  std::string polarity;
  std::string categories;
  std::string norms;
  std::string connectives;
  std::string embeddings;
  std::string hedges;

  // Writes the six files into `dir` (created if needed) and returns their
  // paths.
  ResourcePaths Write(const std::filesystem::path& dir) const;
};

struct SyntheticData {
  Corpus corpus;
  SyntheticResources resources;
};

// Throws InvalidArgument on non-positive sizes or an inconsistent relevant
// range.
SyntheticData GenerateSynthetic(const SyntheticSpec& spec);

}  // namespace argsup

#endif  // ARGSUP_SYNTHETIC_H_
