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

#include "argsup/cli.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string_view>

#include "CLI11.hpp"

#include "argsup/corpus.h"
#include "argsup/error.h"
#include "argsup/features.h"
#include "argsup/harness.h"
#include "argsup/lexicons.h"
#include "argsup/synthetic.h"

namespace argsup {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr std::string_view kTypeContextFormat = "argsup-typecontext/1";
constexpr const char* kResourceNames[] = {"polarity",    "categories", "norms",
                                          "connectives", "embeddings", "hedges"};

// Flags shared by the subcommands. Each one is applied over the config file
// only when given on the command line.
struct Flags {
  std::string config_path;
  std::string corpus;
  std::string out_dir;
  std::uint64_t seed = 0;
  int jobs = 1;
  std::string feature_sets;
  std::string policy;
  std::size_t ndcg_at = 0;
  int folds = 5;
  int trees = 0;
  bool lenient = false;
  std::string resources[6];

  // Subcommand-specific.
  std::string model;
  std::string claim;
  std::string article;
  int debates = 50;
  int claims_per_debate = 2;
  int sentences = 20;
  bool no_type_conditional = false;

  // The parsed subcommand.
  const CLI::App* active = nullptr;

  bool Given(std::string_view name) const {
    const CLI::Option* opt = active->get_option_no_throw("--" + std::string(name));
    return opt != nullptr && opt->count() > 0;
  }
};

void AddCommonOptions(CLI::App& app, Flags& f, bool experiment) {
  app.add_option("--config", f.config_path, "JSON config file");
  app.add_option("--corpus", f.corpus, "corpus JSON Lines file");
  app.add_option("--out", f.out_dir, "output directory");
  app.add_option("--seed", f.seed, "random seed");
  app.add_flag("--lenient", f.lenient, "ignore unknown corpus keys");
  for (int i = 0; i < 6; ++i) {
    app.add_option(std::string("--") + kResourceNames[i], f.resources[i], "resource file");
  }
  if (!experiment) return;
  app.add_option("--jobs", f.jobs, "worker threads")->check(CLI::PositiveNumber);
  app.add_option("--feature-set", f.feature_sets, "feature set(s), comma separated");
  app.add_option("--policy", f.policy, "type policy: predicted|gold");
  app.add_option("--ndcg-at", f.ndcg_at, "NDCG cutoff")->check(CLI::PositiveNumber);
  app.add_option("--folds", f.folds, "cross-validation folds");
  app.add_option("--trees", f.trees, "number of ranker trees");
}

std::vector<std::string> SplitCommas(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

json Defaults() {
  ExperimentConfig experiment;
  json j = ToJson(experiment);
  j.erase("seed");
  j["corpus"] = "";
  j["output_dir"] = "argsup-out";
  j["strict"] = true;
  json resources = json::object();
  for (const char* name : kResourceNames) resources[name] = "";
  j["resources"] = resources;
  json sets = json::array();
  for (FeatureSet s : AllFeatureSets()) sets.push_back(std::string(ToString(s)));
  j["feature_sets"] = sets;
  return j;
}

json ReadJsonFile(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read config file '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ValidationError("config file '" + path.string() + "': " + e.what());
  }
}

// Precedence: command-line flag > config file > built-in default.
json ResolveConfig(const Flags& f) {
  json resolved = Defaults();
  if (f.Given("config")) {
    const json file = ReadJsonFile(f.config_path);
    if (!file.is_object()) throw InvalidArgument("config file must hold a JSON object");
    for (const auto& [key, value] : file.items()) {
      if (!resolved.contains(key) && key != "seed") {
        throw InvalidArgument("config file: unknown key '" + key + "'");
      }
    }
    resolved.merge_patch(file);
  }
  json flags = json::object();
  if (f.Given("corpus")) flags["corpus"] = f.corpus;
  if (f.Given("out")) flags["output_dir"] = f.out_dir;
  if (f.Given("seed")) flags["seed"] = f.seed;
  if (f.Given("lenient")) flags["strict"] = !f.lenient;
  for (int i = 0; i < 6; ++i) {
    if (f.Given(kResourceNames[i])) flags["resources"][kResourceNames[i]] = f.resources[i];
  }
  if (f.Given("jobs")) flags["jobs"] = f.jobs;
  if (f.Given("feature-set")) flags["feature_sets"] = SplitCommas(f.feature_sets);
  if (f.Given("policy")) flags["policy"] = f.policy;
  if (f.Given("ndcg-at")) flags["ndcg_at"] = f.ndcg_at;
  if (f.Given("folds")) flags["folds"] = f.folds;
  if (f.Given("trees")) flags["ranker"]["num_trees"] = f.trees;
  resolved.merge_patch(flags);
  // One seed drives every seeded component.
  if (resolved.contains("seed")) {
    resolved["ranker"]["seed"] = resolved["seed"];
    resolved["typeclf"]["seed"] = resolved["seed"];
  }
  return resolved;
}

// The typed view of a resolved config.
struct RunConfig {
  json resolved;
  std::string hash;
  fs::path corpus;
  fs::path out_dir;
  ResourcePaths resources;
  bool strict = true;
  std::vector<FeatureSet> feature_sets;
  ExperimentConfig experiment;
  bool has_seed = false;
};

RunConfig Interpret(const json& resolved) {
  RunConfig rc;
  rc.resolved = resolved;
  rc.hash = ConfigHash(resolved);
  rc.corpus = resolved.at("corpus").get<std::string>();
  rc.out_dir = resolved.at("output_dir").get<std::string>();
  rc.strict = resolved.at("strict").get<bool>();
  const json& res = resolved.at("resources");
  const auto path_of = [&res](const char* name) -> fs::path {
    if (!res.contains(name) || res.at(name).is_null()) return {};
    return res.at(name).get<std::string>();
  };
  rc.resources.polarity = path_of("polarity");
  rc.resources.categories = path_of("categories");
  rc.resources.norms = path_of("norms");
  rc.resources.connectives = path_of("connectives");
  rc.resources.embeddings = path_of("embeddings");
  rc.resources.hedges = path_of("hedges");
  for (const json& name : resolved.at("feature_sets")) {
    rc.feature_sets.push_back(ParseFeatureSet(name.get<std::string>()));
  }
  if (rc.feature_sets.empty()) throw InvalidArgument("no feature set selected");
  json experiment;
  for (const char* key : {"features", "typeclf", "ranker", "policy", "folds", "seed", "ndcg_at", "jobs"}) {
    if (resolved.contains(key)) experiment[key] = resolved.at(key);
  }
  rc.experiment = ExperimentConfigFromJson(experiment);
  rc.has_seed = resolved.contains("seed");
  return rc;
}

void RequireSeed(const RunConfig& rc) {
  if (!rc.has_seed) throw InvalidArgument("a seed is required (--seed or \"seed\" in the config)");
}

void RequireCorpus(const RunConfig& rc) {
  if (rc.corpus.empty()) throw InvalidArgument("no corpus given (--corpus or \"corpus\")");
  if (!fs::exists(rc.corpus)) throw ValidationError("corpus file '" + rc.corpus.string() + "' not found");
}

void WriteFile(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  out << content;
}

std::string WithHash(const RunConfig& rc, const std::string& body) {
  return "# config_hash: " + rc.hash + "\n" + body;
}

// Echoes the resolved config into the output directory and starts the
// command log.
void EchoConfig(const RunConfig& rc, const std::string& command) {
  json echo = {{"command", command}, {"config_hash", rc.hash}, {"config", rc.resolved}};
  WriteFile(rc.out_dir / "config.json", echo.dump(2) + "\n");
  WriteFile(rc.out_dir / "logs" / (command + ".log"),
            "command: " + command + "\nconfig_hash: " + rc.hash + "\nconfig: " + rc.resolved.dump() +
                "\n");
}

void AppendLog(const RunConfig& rc, const std::string& command, const std::string& text) {
  std::ofstream out(rc.out_dir / "logs" / (command + ".log"), std::ios::app);
  out << text;
}

Corpus LoadInputCorpus(const RunConfig& rc) {
  RequireCorpus(rc);
  return LoadCorpus(rc.corpus, LoadOptions{rc.strict});
}

ResourceBundle LoadResources(const RunConfig& rc) {
  const fs::path* paths[] = {&rc.resources.polarity,    &rc.resources.categories,
                             &rc.resources.norms,       &rc.resources.connectives,
                             &rc.resources.embeddings,  &rc.resources.hedges};
  for (const fs::path* p : paths) {
    if (!p->empty() && !fs::exists(*p)) {
      throw ValidationError("resource file '" + p->string() + "' not found");
    }
  }
  return LoadResourceBundle(rc.resources);
}

std::string Fixed(double value, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, value);
  return buf;
}

int CmdValidate(const RunConfig& rc, std::ostream& out) {
  EchoConfig(rc, "validate");
  const Corpus corpus = LoadInputCorpus(rc);
  ValidateCorpus(corpus);
  std::size_t relevant = 0;
  for (const QueryGroup& g : corpus.groups) relevant += static_cast<std::size_t>(g.NumRelevant());
  const std::string line = "valid: " + std::to_string(corpus.groups.size()) + " groups, " +
                           std::to_string(corpus.NumSentences()) + " sentences, " +
                           std::to_string(relevant) + " supporting\n";
  out << line;
  AppendLog(rc, "validate", line);
  return kExitOk;
}

int CmdStats(const RunConfig& rc, std::ostream& out) {
  EchoConfig(rc, "stats");
  const std::string report = ComputeCorpusStats(LoadInputCorpus(rc)).Format();
  WriteFile(rc.out_dir / "reports" / "stats.txt", WithHash(rc, report));
  out << report;
  return kExitOk;
}

int CmdTrainType(const RunConfig& rc, std::ostream& out) {
  RequireSeed(rc);
  EchoConfig(rc, "train-type");
  const Corpus corpus = LoadInputCorpus(rc);
  const ResourceBundle bundle = LoadResources(rc);
  const TrainedContext context = TrainContext(corpus, bundle, rc.experiment);
  if (!context.type_model) throw ValidationError("corpus holds fewer than two gold types");
  const json record = {{"format", kTypeContextFormat},
                       {"config_hash", rc.hash},
                       {"features", ToJson(rc.experiment.features)},
                       {"context", ToJson(context)}};
  const fs::path path = rc.out_dir / "models" / "type_model.json";
  WriteFile(path, record.dump() + "\n");
  out << "type classifier trained on " << CollectTypedInstances(corpus, context.View(bundle, rc.experiment.features)).size()
      << " sentences: " << path.string() << '\n';
  return kExitOk;
}

int CmdPredictType(const RunConfig& rc, const Flags& f, std::ostream& out) {
  EchoConfig(rc, "predict-type");
  const fs::path model_path = f.model.empty() ? rc.out_dir / "models" / "type_model.json" : fs::path(f.model);
  const json record = ReadJsonFile(model_path);
  if (record.value("format", "") != kTypeContextFormat) {
    throw ValidationError("'" + model_path.string() + "' is not a type model");
  }
  ExperimentConfig config = rc.experiment;
  config.features = FeatureConfigFromJson(record.at("features"));
  const TrainedContext context = TrainedContextFromJson(record.at("context"));
  const Corpus corpus = LoadInputCorpus(rc);
  const ResourceBundle bundle = LoadResources(rc);
  const Corpus typed = AnnotateTypes(corpus, context, bundle, config);
  std::ostringstream tsv;
  tsv << "claim_id\tarticle_id\tindex\trelevance\tgold\tpredicted\n";
  std::vector<ArgumentType> gold;
  std::vector<ArgumentType> predicted;
  for (const QueryGroup& g : typed.groups) {
    for (const AnnotatedSentence& s : g.sentences) {
      tsv << g.claim.claim_id << '\t' << g.article_id << '\t' << s.index << '\t' << s.relevance
          << '\t' << (s.gold_type ? ToString(*s.gold_type) : "-") << '\t'
          << ToString(*s.predicted_type) << '\n';
      if (s.relevance == 1 && s.gold_type) {
        gold.push_back(*s.gold_type);
        predicted.push_back(*s.predicted_type);
      }
    }
  }
  WriteFile(rc.out_dir / "reports" / "predicted_types.tsv", WithHash(rc, tsv.str()));
  out << "typed " << typed.NumSentences() << " sentences\n";
  if (!gold.empty()) {
    const ClassificationMetrics m = ComputeClassificationMetrics(gold, predicted);
    out << "gold-typed supporting sentences: " << gold.size() << " accuracy " << Fixed(m.accuracy, 3)
        << " macro_f1 " << Fixed(m.macro_f1, 3) << '\n';
  }
  return kExitOk;
}

int CmdEvalType(const RunConfig& rc, std::ostream& out) {
  RequireSeed(rc);
  EchoConfig(rc, "eval-type");
  const TypeProtocolResult result =
      RunTypeProtocol(LoadInputCorpus(rc), LoadResources(rc), rc.experiment);
  const std::string table = result.FormatTable();
  WriteFile(rc.out_dir / "reports" / "type_protocol.txt", WithHash(rc, table));
  out << table;
  return kExitOk;
}

int CmdTrainRank(const RunConfig& rc, std::ostream& out) {
  RequireSeed(rc);
  if (rc.feature_sets.size() != 1) {
    throw InvalidArgument("train-rank takes exactly one --feature-set");
  }
  EchoConfig(rc, "train-rank");
  const FeatureSet set = rc.feature_sets.front();
  const Corpus corpus = LoadInputCorpus(rc);
  const ResourceBundle bundle = LoadResources(rc);
  const RankingPipeline pipeline = TrainRankingPipeline(corpus, bundle, set, rc.experiment);
  json record = json::parse(pipeline.ToJson());
  record["config_hash"] = rc.hash;
  const fs::path path = rc.out_dir / "models" / "ranker.json";
  WriteFile(path, record.dump() + "\n");

  // Training instances in the exchange format.
  Corpus typed = corpus;
  if (pipeline.context.type_model) typed = AnnotateTypes(corpus, pipeline.context, bundle, rc.experiment);
  const auto parts = ExtractCorpusParts(typed, pipeline.context.View(bundle, rc.experiment.features));
  std::ostringstream features;
  for (const RankGroup& g : BuildRankGroups(typed, parts, set)) {
    const std::string qid = g.qid.substr(0, g.qid.find('/'));
    for (std::size_t i = 0; i < g.features.size(); ++i) {
      features << FormatInstance({qid, g.labels[i], g.features[i]}) << '\n';
    }
  }
  WriteFile(rc.out_dir / "features" / (std::string(ToString(set)) + ".txt"),
            WithHash(rc, features.str()));
  out << "ranker trained (" << ToString(set) << ", " << pipeline.ranker.trees().size()
      << " trees): " << path.string() << '\n';
  return kExitOk;
}

int CmdRank(const RunConfig& rc, const Flags& f, std::ostream& out) {
  EchoConfig(rc, "rank");
  const fs::path model_path = f.model.empty() ? rc.out_dir / "models" / "ranker.json" : fs::path(f.model);
  if (!fs::exists(model_path)) throw ValidationError("model file '" + model_path.string() + "' not found");
  const RankingPipeline pipeline = RankingPipeline::Load(model_path);
  const Corpus corpus = LoadInputCorpus(rc);
  const ResourceBundle bundle = LoadResources(rc);
  std::vector<const QueryGroup*> groups;
  for (const QueryGroup& g : corpus.groups) {
    if (g.claim.claim_id == f.claim && (f.article.empty() || g.article_id == f.article)) {
      groups.push_back(&g);
    }
  }
  if (groups.empty()) {
    throw ValidationError(f.article.empty()
                              ? "unknown claim '" + f.claim + "'"
                              : "unknown claim/article pair '" + f.claim + "' / '" + f.article + "'");
  }
  std::ostringstream report;
  report << "article_id\trank\tindex\tscore\ttype\ttext\n";
  for (const QueryGroup* g : groups) {
    std::size_t rank = 1;
    for (const RankedSentence& r : RankWithPipeline(pipeline, *g, bundle)) {
      report << g->article_id << '\t' << rank++ << '\t' << r.index << '\t' << Fixed(r.score, 6)
             << '\t' << (r.type ? ToString(*r.type) : "-") << '\t' << r.text << '\n';
    }
  }
  WriteFile(rc.out_dir / "reports" / ("rank_" + f.claim + ".tsv"), WithHash(rc, report.str()));
  out << report.str();
  return kExitOk;
}

int CmdCv(const RunConfig& rc, std::ostream& out) {
  RequireSeed(rc);
  EchoConfig(rc, "cv");
  const CrossValidationReport report =
      CrossValidate(LoadInputCorpus(rc), LoadResources(rc), rc.feature_sets, rc.experiment);
  const std::string table = report.FormatTable();
  WriteFile(rc.out_dir / "reports" / "cv_table.txt", WithHash(rc, table));
  WriteFile(rc.out_dir / "reports" / "cv_records.tsv", WithHash(rc, report.FormatRecords()));
  std::ostringstream folds;
  for (std::size_t f = 0; f < report.fold_debates.size(); ++f) {
    folds << "fold " << f << ':';
    for (const std::string& d : report.fold_debates[f]) folds << ' ' << d;
    folds << '\n';
  }
  WriteFile(rc.out_dir / "reports" / "cv_folds.txt", WithHash(rc, folds.str()));
  AppendLog(rc, "cv", table);
  out << table;
  return kExitOk;
}

int CmdAnalyze(const RunConfig& rc, std::ostream& out) {
  RequireSeed(rc);
  EchoConfig(rc, "analyze");
  const SignificanceReport report =
      AnalyzeFeatureSignificance(LoadInputCorpus(rc), LoadResources(rc), rc.experiment);
  const std::string table = report.FormatTable();
  WriteFile(rc.out_dir / "reports" / "significance.txt", WithHash(rc, table));
  WriteFile(rc.out_dir / "reports" / "significance.tsv", WithHash(rc, report.FormatTsv()));
  out << table;
  return kExitOk;
}

int CmdSynth(const RunConfig& rc, const Flags& f, std::ostream& out) {
  RequireSeed(rc);
  if (rc.corpus.empty()) throw InvalidArgument("synth needs --corpus for the generated corpus path");
  EchoConfig(rc, "synth");
  SyntheticSpec spec;
  spec.num_debates = f.debates;
  spec.claims_per_debate = f.claims_per_debate;
  spec.sentences_per_article = f.sentences;
  spec.type_conditional = !f.no_type_conditional;
  spec.seed = rc.experiment.seed;
  const SyntheticData data = GenerateSynthetic(spec);
  if (rc.corpus.has_parent_path()) fs::create_directories(rc.corpus.parent_path());
  SaveCorpus(data.corpus, rc.corpus);
  data.resources.Write(rc.out_dir / "resources");
  out << "wrote " << data.corpus.groups.size() << " groups to " << rc.corpus.string() << '\n'
      << "resources in " << (rc.out_dir / "resources").string() << '\n';
  return kExitOk;
}

}  // namespace

std::string ConfigHash(const json& config) {
  json copy = config;
  if (copy.is_object()) {
    copy.erase("jobs");
    copy.erase("output_dir");
  }
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char c : copy.dump()) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

int RunCommand(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Supporting-argument ranking toolkit", "argsup"};
  app.require_subcommand(1);
  Flags flags;
  std::map<std::string, CLI::App*> commands;
  const auto add = [&](const char* name, const char* help, bool experiment) {
    CLI::App* sub = app.add_subcommand(name, help);
    AddCommonOptions(*sub, flags, experiment);
    commands[name] = sub;
    return sub;
  };
  add("validate", "schema-check a corpus", false);
  add("stats", "corpus statistics", false);
  add("train-type", "train the argument-type classifier", true);
  add("predict-type", "predict argument types", true)
      ->add_option("--model", flags.model, "type model file");
  add("eval-type", "type prediction protocol (50/25/25 split)", true);
  add("train-rank", "train a ranking pipeline", true);
  CLI::App* rank = add("rank", "rank one claim's article sentences", true);
  rank->add_option("--model", flags.model, "ranking pipeline file");
  rank->add_option("--claim", flags.claim, "claim id")->required();
  rank->add_option("--article", flags.article, "article id (all articles when absent)");
  add("cv", "cross-validated ranking evaluation", true);
  add("analyze", "feature significance analysis", true);
  CLI::App* synth = add("synth", "generate a synthetic corpus and resources", true);
  synth->add_option("--debates", flags.debates, "number of debates")->check(CLI::PositiveNumber);
  synth->add_option("--claims-per-debate", flags.claims_per_debate, "claims per debate")
      ->check(CLI::PositiveNumber);
  synth->add_option("--sentences", flags.sentences, "sentences per article")
      ->check(CLI::PositiveNumber);
  synth->add_flag("--no-type-conditional", flags.no_type_conditional,
                  "relevance signal independent of type");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "argsup: " << e.what() << '\n';
    for (const auto& [name, sub] : commands) {
      if (sub->parsed()) {
        err << sub->help();
        return kExitUsage;
      }
    }
    err << app.help();
    return kExitUsage;
  }

  std::string command;
  for (const auto& [name, sub] : commands) {
    if (sub->parsed()) {
      command = name;
      flags.active = sub;
    }
  }
  try {
    const RunConfig rc = Interpret(ResolveConfig(flags));
    if (command == "validate") return CmdValidate(rc, out);
    if (command == "stats") return CmdStats(rc, out);
    if (command == "train-type") return CmdTrainType(rc, out);
    if (command == "predict-type") return CmdPredictType(rc, flags, out);
    if (command == "eval-type") return CmdEvalType(rc, out);
    if (command == "train-rank") return CmdTrainRank(rc, out);
    if (command == "rank") return CmdRank(rc, flags, out);
    if (command == "cv") return CmdCv(rc, out);
    if (command == "analyze") return CmdAnalyze(rc, out);
    if (command == "synth") return CmdSynth(rc, flags, out);
    err << "argsup: unknown command\n";
    return kExitUsage;
  } catch (const InvalidArgument& e) {
    err << "argsup " << command << ": " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "argsup " << command << ": " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace argsup
