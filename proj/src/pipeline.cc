// Copyright 2026 The kouzen Authors
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

#include "kouzen/pipeline.h"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <map>

#include "httplib.h"
#include "kouzen/digest.h"
#include "kouzen/error.h"
#include "kouzen/rng.h"
#include "kouzen/syntree.h"
#include "kouzen/text.h"
#include "kouzen/translit.h"

namespace kouzen {

namespace {

namespace fs = std::filesystem;

void CheckCount(size_t got, size_t expected, const std::string& name) {
  if (got != expected) {
    throw ProtocolError("translator " + name + " returned " +
                        std::to_string(got) + " lines for " +
                        std::to_string(expected) + " inputs");
  }
}

class IdentityTranslator : public Translator {
 public:
  std::vector<Sentence> Translate(const std::vector<Sentence>& batch,
                                  const std::string&,
                                  const std::string&) override {
    return batch;
  }
  std::string Name() const override { return "identity"; }
};

class RuleEngineTranslator : public Translator {
 public:
  RuleEngineTranslator(std::string name, const std::string& translit_path,
                       const std::string& syntax_path)
      : name_(std::move(name)) {
    if (!translit_path.empty()) {
      translit_ = LoadRuleFile(translit_path);
    }
    if (!syntax_path.empty()) {
      syntax_ = LoadSyntaxRules(syntax_path);
      has_syntax_ = true;
    }
  }

  std::vector<Sentence> Translate(const std::vector<Sentence>& batch,
                                  const std::string&,
                                  const std::string&) override {
    std::vector<Sentence> out;
    out.reserve(batch.size());
    for (const Sentence& in : batch) {
      Sentence s = in;
      if (has_syntax_) {
        ParseTree tree = ParseBracketed(in.text);
        s.tokens = TreeYield(ApplyTreeRules(syntax_, tree));
        s.text = JoinTokens(s.tokens);
      }
      if (translit_) {
        s = TransliterateSentence(*translit_, s);
      }
      out.push_back(std::move(s));
    }
    return out;
  }

  std::string Name() const override { return name_; }

 private:
  std::string name_;
  std::optional<RewriteRuleSet> translit_;
  SyntaxRuleSet syntax_;
  bool has_syntax_ = false;
};

class CommandTranslator : public Translator {
 public:
  CommandTranslator(std::string name, std::string command)
      : name_(std::move(name)), command_(std::move(command)) {}

  std::vector<Sentence> Translate(const std::vector<Sentence>& batch,
                                  const std::string&,
                                  const std::string&) override {
    if (batch.empty()) return {};
    static int counter = 0;
    const fs::path dir = fs::temp_directory_path();
    const std::string tag = "kouzen_xl_" + std::to_string(::getpid()) + "_" +
                            std::to_string(counter++);
    const fs::path in_path = dir / (tag + ".in");
    const fs::path out_path = dir / (tag + ".out");

    std::string in_text;
    for (const Sentence& s : batch) {
      in_text += s.text;
      in_text += '\n';
    }
    WriteFile(in_path.string(), in_text);
    const std::string shell = command_ + " < '" + in_path.string() + "' > '" +
                              out_path.string() + "'";
    const int rc = std::system(shell.c_str());
    std::vector<std::string> lines;
    if (rc == 0 && fs::exists(out_path)) {
      lines = SplitLines(ReadFile(out_path.string()));
    }
    fs::remove(in_path);
    fs::remove(out_path);
    if (rc != 0) {
      throw ProtocolError("translator " + name_ + " command failed (exit " +
                          std::to_string(rc) + ")");
    }
    CheckCount(lines.size(), batch.size(), name_);
    std::vector<Sentence> out;
    out.reserve(lines.size());
    for (const std::string& line : lines) out.push_back(Normalize(line));
    return out;
  }

  std::string Name() const override { return name_; }

 private:
  std::string name_;
  std::string command_;
};

class HttpTranslator : public Translator {
 public:
  HttpTranslator(std::string name, const std::string& url)
      : name_(std::move(name)) {
    std::string rest = url;
    const std::string scheme = "http://";
    if (rest.rfind(scheme, 0) != 0) {
      throw DataError("translator " + name_ + ": only http:// urls supported");
    }
    rest = rest.substr(scheme.size());
    const size_t slash = rest.find('/');
    host_port_ = scheme + (slash == std::string::npos ? rest : rest.substr(0, slash));
    path_ = slash == std::string::npos ? "/" : rest.substr(slash);
  }

  std::vector<Sentence> Translate(const std::vector<Sentence>& batch,
                                  const std::string& from,
                                  const std::string& to) override {
    if (batch.empty()) return {};
    httplib::Client client(host_port_);
    client.set_read_timeout(60, 0);
    nlohmann::json request;
    request["from"] = from;
    request["to"] = to;
    nlohmann::json lines = nlohmann::json::array();
    for (const Sentence& s : batch) lines.push_back(s.text);
    request["lines"] = std::move(lines);
    auto res = client.Post(path_, request.dump(), "application/json");
    if (!res || res->status != 200) {
      throw ProtocolError("translator " + name_ + ": http request failed" +
                          (res ? " with status " + std::to_string(res->status)
                               : ""));
    }
    nlohmann::json reply = nlohmann::json::parse(res->body, nullptr, false);
    if (reply.is_discarded() || !reply.contains("lines") ||
        !reply["lines"].is_array()) {
      throw ProtocolError("translator " + name_ + ": malformed reply");
    }
    CheckCount(reply["lines"].size(), batch.size(), name_);
    std::vector<Sentence> out;
    out.reserve(batch.size());
    for (const auto& line : reply["lines"]) {
      out.push_back(Normalize(line.get<std::string>()));
    }
    return out;
  }

  std::string Name() const override { return name_; }

 private:
  std::string name_;
  std::string host_port_;
  std::string path_;
};

std::vector<Sentence> TranslateAll(Translator& translator,
                                   const std::vector<Sentence>& input,
                                   const std::string& from,
                                   const std::string& to) {
  // Batched to keep subprocess/http payloads bounded.
  constexpr size_t kBatch = 2048;
  std::vector<Sentence> out;
  out.reserve(input.size());
  for (size_t begin = 0; begin < input.size(); begin += kBatch) {
    const size_t end = std::min(input.size(), begin + kBatch);
    std::vector<Sentence> chunk(input.begin() + begin, input.begin() + end);
    std::vector<Sentence> translated = translator.Translate(chunk, from, to);
    CheckCount(translated.size(), chunk.size(), translator.Name());
    for (Sentence& s : translated) out.push_back(std::move(s));
  }
  return out;
}

}  // namespace

std::unique_ptr<Translator> MakeIdentityTranslator() {
  return std::make_unique<IdentityTranslator>();
}

std::unique_ptr<Translator> MakeRuleEngineTranslator(
    const std::string& name, const std::string& translit_rules_path,
    const std::string& syntax_rules_path) {
  return std::make_unique<RuleEngineTranslator>(name, translit_rules_path,
                                                syntax_rules_path);
}

std::unique_ptr<Translator> MakeCommandTranslator(const std::string& name,
                                                  const std::string& command) {
  return std::make_unique<CommandTranslator>(name, command);
}

std::unique_ptr<Translator> MakeHttpTranslator(const std::string& name,
                                               const std::string& url) {
  return std::make_unique<HttpTranslator>(name, url);
}

std::unique_ptr<Translator> MakeTranslator(const TranslatorSpec& spec) {
  if (spec.kind == "identity") return MakeIdentityTranslator();
  if (spec.kind == "rules") {
    return MakeRuleEngineTranslator(spec.name, spec.translit_rules,
                                    spec.syntax_rules);
  }
  if (spec.kind == "command") {
    return MakeCommandTranslator(spec.name, spec.command);
  }
  if (spec.kind == "http") return MakeHttpTranslator(spec.name, spec.url);
  throw DataError("unknown translator kind " + spec.kind);
}

SynthBitext BuildSynthMono(const MonoCorpus& mono, Translator& translator,
                           const std::string& lrl_lang,
                           const std::string& source_name) {
  SynthBitext out;
  out.corpus.source_lang = lrl_lang;
  out.corpus.target_lang = mono.lang;
  out.corpus.provenance = Provenance::kSynthMono;
  out.lineage.source_corpus = source_name;
  out.lineage.translators.push_back(translator.Name());
  std::vector<Sentence> translated =
      TranslateAll(translator, mono.sentences, mono.lang, lrl_lang);
  out.corpus.pairs.reserve(mono.size());
  for (size_t i = 0; i < mono.size(); ++i) {
    out.corpus.pairs.emplace_back(std::move(translated[i]), mono.sentences[i]);
  }
  return out;
}

SynthBitext BuildSynthMix1(const ParallelCorpus& hrl_tgt,
                           Translator& translator, const std::string& lrl_lang,
                           const std::string& source_name) {
  SynthBitext out;
  out.corpus.source_lang = lrl_lang;
  out.corpus.target_lang = hrl_tgt.target_lang;
  out.corpus.provenance = Provenance::kSynthMix1;
  out.lineage.source_corpus = source_name;
  out.lineage.translators.push_back(translator.Name());
  std::vector<Sentence> hrl_side;
  hrl_side.reserve(hrl_tgt.size());
  for (const auto& [src, tgt] : hrl_tgt.pairs) hrl_side.push_back(src);
  std::vector<Sentence> translated =
      TranslateAll(translator, hrl_side, hrl_tgt.source_lang, lrl_lang);
  out.corpus.pairs.reserve(hrl_tgt.size());
  for (size_t i = 0; i < hrl_tgt.size(); ++i) {
    out.corpus.pairs.emplace_back(std::move(translated[i]),
                                  hrl_tgt.pairs[i].second);
  }
  return out;
}

SynthBitext BuildSynthMix2(const MonoCorpus& mono, Translator& tgt_to_hrl,
                           const std::string& hrl_lang, Translator& hrl_to_lrl,
                           const std::string& lrl_lang,
                           const std::string& source_name) {
  SynthBitext out;
  out.corpus.source_lang = lrl_lang;
  out.corpus.target_lang = mono.lang;
  out.corpus.provenance = Provenance::kSynthMix2;
  out.lineage.source_corpus = source_name;
  out.lineage.translators.push_back(tgt_to_hrl.Name());
  out.lineage.translators.push_back(hrl_to_lrl.Name());
  std::vector<Sentence> pivot =
      TranslateAll(tgt_to_hrl, mono.sentences, mono.lang, hrl_lang);
  std::vector<Sentence> translated =
      TranslateAll(hrl_to_lrl, pivot, hrl_lang, lrl_lang);
  out.corpus.pairs.reserve(mono.size());
  for (size_t i = 0; i < mono.size(); ++i) {
    out.corpus.pairs.emplace_back(std::move(translated[i]), mono.sentences[i]);
  }
  return out;
}

namespace {

ParallelCorpus SliceForStage(const ParallelCorpus& corpus, uint64_t n,
                             uint64_t seed, const std::string& stage) {
  try {
    return SampleSlice(corpus, static_cast<size_t>(n), seed);
  } catch (const CapacityError& e) {
    throw CapacityError("stage " + stage + ": " + e.what());
  }
}

void Append(ParallelCorpus* into, const ParallelCorpus& part) {
  into->pairs.insert(into->pairs.end(), part.pairs.begin(), part.pairs.end());
}

nlohmann::json LineageJson(const Lineage& lineage) {
  return {{"source_corpus", lineage.source_corpus},
          {"translators", lineage.translators}};
}

}  // namespace

std::vector<Dataset> BuildSchedule(const ParallelCorpus& authentic,
                                   const SynthBitext& synth_mono,
                                   const SynthBitext& synth_mix1,
                                   const SynthBitext& synth_mix2,
                                   const std::vector<uint64_t>& starts,
                                   const std::vector<uint64_t>& increments,
                                   uint64_t seed) {
  std::vector<Dataset> datasets;
  const uint64_t max_inc = increments.empty() ? 0 : increments.back();
  for (uint64_t start : starts) {
    // Stage sizes are absolute per synthetic track and nested, so each
    // stage is a strict superset of the one before it.
    struct StageSpec {
      std::string name;
      uint64_t mono, mix1, mix2;
    };
    std::vector<StageSpec> stages;
    const std::string base = "a" + std::to_string(start);
    stages.push_back({base, 0, 0, 0});
    for (uint64_t inc : increments) {
      stages.push_back({base + "_mono" + std::to_string(inc), inc, 0, 0});
    }
    for (uint64_t inc : increments) {
      stages.push_back(
          {base + "_mix1_" + std::to_string(inc), max_inc, inc, 0});
    }
    for (uint64_t inc : increments) {
      stages.push_back(
          {base + "_mix2_" + std::to_string(inc), max_inc, max_inc, inc});
    }

    const ParallelCorpus auth_slice =
        SliceForStage(authentic, start, seed, base);
    int stage_index = 0;
    for (const StageSpec& spec : stages) {
      Dataset ds;
      ds.name = spec.name;
      ds.corpus.source_lang = authentic.source_lang;
      ds.corpus.target_lang = authentic.target_lang;
      Append(&ds.corpus, auth_slice);
      if (spec.mono > 0) {
        Append(&ds.corpus,
               SliceForStage(synth_mono.corpus, spec.mono, seed, spec.name));
      }
      if (spec.mix1 > 0) {
        Append(&ds.corpus,
               SliceForStage(synth_mix1.corpus, spec.mix1, seed, spec.name));
      }
      if (spec.mix2 > 0) {
        Append(&ds.corpus,
               SliceForStage(synth_mix2.corpus, spec.mix2, seed, spec.name));
      }
      ds.metadata = {
          {"name", spec.name},
          {"track", start},
          {"stage", stage_index++},
          {"seed", seed},
          {"languages",
           {{"source", authentic.source_lang},
            {"target", authentic.target_lang}}},
          {"counts",
           {{"authentic", start},
            {"synth_mono", spec.mono},
            {"synth_mix1", spec.mix1},
            {"synth_mix2", spec.mix2},
            {"total", ds.corpus.size()}}},
          {"lineage",
           {{"synth_mono", LineageJson(synth_mono.lineage)},
            {"synth_mix1", LineageJson(synth_mix1.lineage)},
            {"synth_mix2", LineageJson(synth_mix2.lineage)}}},
      };
      datasets.push_back(std::move(ds));
    }
  }
  return datasets;
}

ParallelCorpus AssembleMultisource(
    const std::vector<const ParallelCorpus*>& parts,
    const std::vector<std::string>& part_names, bool tag_sources) {
  if (parts.empty()) throw DataError("multisource assembly needs parts");
  ParallelCorpus out;
  out.target_lang = parts.front()->target_lang;
  std::string source_label;
  for (size_t p = 0; p < parts.size(); ++p) {
    const ParallelCorpus& part = *parts[p];
    const std::string name =
        p < part_names.size() ? part_names[p] : std::to_string(p);
    if (part.target_lang != out.target_lang) {
      throw DataError("multisource part " + name + " targets " +
                      part.target_lang + ", expected " + out.target_lang);
    }
    if (!source_label.empty()) source_label += "+";
    source_label += part.source_lang;
    const std::string tag = "<" + FoldCase(part.source_lang) + ">";
    for (const auto& [src, tgt] : part.pairs) {
      if (!tag_sources) {
        out.pairs.emplace_back(src, tgt);
        continue;
      }
      Sentence tagged;
      tagged.tokens.reserve(src.tokens.size() + 1);
      tagged.tokens.push_back(tag);
      tagged.tokens.insert(tagged.tokens.end(), src.tokens.begin(),
                           src.tokens.end());
      tagged.text = JoinTokens(tagged.tokens);
      out.pairs.emplace_back(std::move(tagged), tgt);
    }
  }
  out.source_lang = source_label;
  return out;
}

void WriteDataset(const std::string& out_dir, const Dataset& dataset,
                  bool shuffle, uint64_t seed) {
  fs::create_directories(out_dir);
  const fs::path base = fs::path(out_dir) / dataset.name;
  ParallelCorpus corpus = dataset.corpus;
  uint64_t dataset_seed = 0;
  if (shuffle) {
    dataset_seed = MixSeed(seed, Fnv1a64(dataset.name));
    const std::vector<size_t> order =
        ShuffledIndices(corpus.size(), dataset_seed);
    ParallelCorpus shuffled = corpus;
    shuffled.pairs.clear();
    shuffled.pairs.reserve(corpus.size());
    for (size_t idx : order) shuffled.pairs.push_back(corpus.pairs[idx]);
    corpus = std::move(shuffled);
  }
  SaveBitext(corpus, base.string() + ".src", base.string() + ".tgt");
  nlohmann::json meta = dataset.metadata;
  meta["shuffled"] = shuffle;
  if (shuffle) meta["shuffle_seed"] = dataset_seed;
  meta["files"] = {{"source", dataset.name + ".src"},
                   {"target", dataset.name + ".tgt"}};
  WriteFile(base.string() + ".meta.json", meta.dump(2) + "\n");
}

nlohmann::json RunPipelineBuild(const PipelineManifest& manifest,
                                const std::string& base_dir,
                                const std::string& out_dir) {
  ValidateManifest(manifest);
  const fs::path base(base_dir);

  auto resolve = [&](const std::string& path) {
    if (path.empty() || fs::path(path).is_absolute()) return path;
    return (base / path).string();
  };

  std::map<std::string, const CorpusSpec*> corpus_specs;
  for (const CorpusSpec& c : manifest.corpora) corpus_specs[c.name] = &c;
  std::map<std::string, const TranslatorSpec*> translator_specs;
  for (const TranslatorSpec& t : manifest.translators) {
    translator_specs[t.name] = &t;
  }

  std::map<std::string, ParallelCorpus> bitexts;
  std::map<std::string, MonoCorpus> monos;
  auto load_bitext = [&](const std::string& name) -> const ParallelCorpus& {
    auto it = bitexts.find(name);
    if (it != bitexts.end()) return it->second;
    const CorpusSpec& spec = *corpus_specs.at(name);
    if (spec.kind == "mono") {
      throw DataError("corpus " + name + " is monolingual, bitext needed");
    }
    ParallelCorpus corpus =
        spec.kind == "tsv"
            ? LoadBitextTsv(resolve(spec.path), spec.source_lang,
                            spec.target_lang)
            : LoadBitext(resolve(spec.source), resolve(spec.target),
                         spec.source_lang, spec.target_lang);
    return bitexts.emplace(name, std::move(corpus)).first->second;
  };
  auto load_mono = [&](const std::string& name) -> const MonoCorpus& {
    auto it = monos.find(name);
    if (it != monos.end()) return it->second;
    const CorpusSpec& spec = *corpus_specs.at(name);
    if (spec.kind != "mono") {
      throw DataError("corpus " + name + " is a bitext, mono needed");
    }
    return monos.emplace(name, LoadMono(resolve(spec.path), spec.lang))
        .first->second;
  };

  std::map<std::string, std::unique_ptr<Translator>> translators;
  auto get_translator = [&](const std::string& name) -> Translator& {
    auto it = translators.find(name);
    if (it != translators.end()) return *it->second;
    TranslatorSpec spec = *translator_specs.at(name);
    spec.translit_rules = resolve(spec.translit_rules);
    spec.syntax_rules = resolve(spec.syntax_rules);
    return *translators.emplace(name, MakeTranslator(spec)).first->second;
  };
  auto check_direction = [&](const std::string& name, const std::string& from,
                             const std::string& to) {
    const TranslatorSpec& spec = *translator_specs.at(name);
    if ((!spec.from.empty() && spec.from != from) ||
        (!spec.to.empty() && spec.to != to)) {
      throw DataError("translator " + name + " is declared " + spec.from +
                      "->" + spec.to + " but used as " + from + "->" + to);
    }
  };

  fs::create_directories(out_dir);
  nlohmann::json summary;
  summary["seed"] = manifest.seed;
  summary["shuffle"] = manifest.shuffle;
  nlohmann::json written = nlohmann::json::array();

  auto emit = [&](const Dataset& ds) {
    WriteDataset(out_dir, ds, manifest.shuffle, manifest.seed);
    written.push_back({{"name", ds.name}, {"pairs", ds.corpus.size()}});
  };

  if (manifest.schedule) {
    const ScheduleSpec& sched = *manifest.schedule;
    const ParallelCorpus& authentic = load_bitext(sched.authentic);
    const std::string lrl = authentic.source_lang;

    const MonoCorpus& mono_src = load_mono(sched.synth_mono_source);
    check_direction(sched.synth_mono_translator, mono_src.lang, lrl);
    SynthBitext synth_mono =
        BuildSynthMono(mono_src, get_translator(sched.synth_mono_translator),
                       lrl, sched.synth_mono_source);

    const ParallelCorpus& hrl_tgt = load_bitext(sched.synth_mix1_source);
    check_direction(sched.synth_mix1_translator, hrl_tgt.source_lang, lrl);
    SynthBitext synth_mix1 =
        BuildSynthMix1(hrl_tgt, get_translator(sched.synth_mix1_translator),
                       lrl, sched.synth_mix1_source);

    const MonoCorpus& mix2_src = load_mono(sched.synth_mix2_source);
    const std::string hrl = hrl_tgt.source_lang;
    check_direction(sched.synth_mix2_first, mix2_src.lang, hrl);
    check_direction(sched.synth_mix2_second, hrl, lrl);
    SynthBitext synth_mix2 = BuildSynthMix2(
        mix2_src, get_translator(sched.synth_mix2_first), hrl,
        get_translator(sched.synth_mix2_second), lrl, sched.synth_mix2_source);

    // The synthetic bitexts are artifacts in their own right.
    for (const SynthBitext* synth : {&synth_mono, &synth_mix1, &synth_mix2}) {
      Dataset ds;
      ds.name = ProvenanceName(synth->corpus.provenance);
      ds.corpus = synth->corpus;
      ds.metadata = {
          {"name", ds.name},
          {"provenance", ProvenanceName(synth->corpus.provenance)},
          {"seed", manifest.seed},
          {"languages",
           {{"source", synth->corpus.source_lang},
            {"target", synth->corpus.target_lang}}},
          {"counts", {{"total", synth->corpus.size()}}},
          {"lineage", LineageJson(synth->lineage)},
      };
      emit(ds);
    }

    for (const Dataset& ds :
         BuildSchedule(authentic, synth_mono, synth_mix1, synth_mix2,
                       sched.starts, sched.increments, manifest.seed)) {
      emit(ds);
    }
  }

  for (const MultisourceSpec& ms : manifest.multisource) {
    std::vector<const ParallelCorpus*> parts;
    for (const std::string& part : ms.parts) parts.push_back(&load_bitext(part));
    Dataset ds;
    ds.name = ms.name;
    ds.corpus = AssembleMultisource(parts, ms.parts, ms.tag_sources);
    nlohmann::json part_counts = nlohmann::json::object();
    for (size_t i = 0; i < parts.size(); ++i) {
      part_counts[ms.parts[i]] = parts[i]->size();
    }
    ds.metadata = {
        {"name", ms.name},
        {"multisource", true},
        {"tag_sources", ms.tag_sources},
        {"seed", manifest.seed},
        {"languages",
         {{"source", ds.corpus.source_lang},
          {"target", ds.corpus.target_lang}}},
        {"counts",
         {{"parts", part_counts}, {"total", ds.corpus.size()}}},
    };
    emit(ds);
  }

  summary["datasets"] = std::move(written);
  WriteFile((fs::path(out_dir) / "build_summary.json").string(),
            summary.dump(2) + "\n");
  return summary;
}

}  // namespace kouzen
