#include "fuse/corpus_store.h"

#include <fstream>
#include <future>
#include <set>
#include <sstream>

#include "json.hpp"

namespace fuse {
namespace fs = std::filesystem;

namespace {

std::optional<std::string> ReadFile(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) return std::nullopt;
  return buffer.str();
}

void WriteFile(const fs::path &path, const std::string &content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << content;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

struct LanguageLoad {
  std::optional<Treebank> treebank;
  std::vector<Diagnostic> diagnostics;
};

struct PairSetLoad {
  std::optional<PairSet> pair_set;
  std::vector<Diagnostic> diagnostics;
};

// Reads and parses one file; failures land in `diagnostics`.
template <typename Parse>
auto ReadAndParse(const fs::path &path, std::vector<Diagnostic> &diagnostics,
                  Parse parse) -> std::optional<decltype(parse("", ""))> {
  const std::string name = path.string();
  auto text = ReadFile(path);
  if (!text) {
    diagnostics.push_back(MakeError(codes::kIo, name, 0, "cannot read file"));
    return std::nullopt;
  }
  try {
    return parse(*text, name);
  } catch (const FormatError &e) {
    diagnostics.push_back(e.diagnostic());
    return std::nullopt;
  }
}

LanguageLoad LoadLanguage(const ManifestLanguage &entry, const fs::path &base,
                          const TagRegistry &registry) {
  LanguageLoad load;
  const fs::path trees_path = base / entry.trees_path;
  const fs::path predarg_path = base / entry.predarg_path;
  auto trees = ReadAndParse(
      trees_path, load.diagnostics,
      [](std::string_view text, const std::string &file) {
        return ParseTrees(text, file);
      });
  auto predarg = ReadAndParse(
      predarg_path, load.diagnostics,
      [&](std::string_view text, const std::string &file) {
        return ParsePredArg(text, file, registry);
      });
  if (!trees || !predarg) return load;

  Treebank treebank;
  treebank.lang = entry.code;
  treebank.trees_file = trees_path.string();
  treebank.predarg_file = predarg_path.string();
  std::map<std::string, size_t> position;
  for (SentenceTree &tree : *trees) {
    position[tree.id] = treebank.sentences.size();
    treebank.sentences.push_back({std::move(tree), {}});
  }
  treebank.Reindex();
  for (PredArgSentence &block : *predarg) {
    auto it = position.find(block.sentence_id);
    if (it == position.end()) {
      load.diagnostics.push_back(
          MakeError(codes::kSentenceUnknown, treebank.predarg_file,
                    block.loc.line,
                    "no tree for sentence " + entry.code + ":" +
                        block.sentence_id));
      continue;
    }
    treebank.sentences[it->second].predarg = std::move(block.predarg);
  }
  load.treebank = std::move(treebank);
  return load;
}

PairSetLoad LoadPairSet(const ManifestAlignSet &entry, const fs::path &base,
                        const TagRegistry &registry) {
  PairSetLoad load;
  const fs::path path = base / entry.path;
  auto pairs = ReadAndParse(
      path, load.diagnostics,
      [&](std::string_view text, const std::string &file) {
        return ParseAlignments(text, file, registry);
      });
  if (!pairs) return load;
  load.pair_set = PairSet{entry.left_lang, entry.right_lang, path.string(),
                          std::move(*pairs)};
  return load;
}

void CountAligned(const PairSet &pair_set, int side,
                  std::set<std::pair<std::string, ElementRef>> *aligned) {
  for (const SentencePairAlignment &pair : pair_set.pairs) {
    const std::string &sid = side == 0 ? pair.left_sentence
                                       : pair.right_sentence;
    for (const Alignment &a : pair.alignments) {
      aligned->insert({sid, side == 0 ? a.left : a.right});
    }
  }
}

void CountUnaligned(const Treebank *treebank,
                    const std::set<std::pair<std::string, ElementRef>> &aligned,
                    int *preds, int *args) {
  if (treebank == nullptr) return;
  for (const MonolingualAnnotation &s : treebank->sentences) {
    for (const Predicate &p : s.predarg.predicates) {
      if (!aligned.count({s.tree.id, {p.id, ""}})) ++*preds;
    }
    for (const Argument &a : s.predarg.arguments) {
      if (!aligned.count({s.tree.id, {a.pred_id, a.role}})) ++*args;
    }
  }
}

}  // namespace

bool LoadResult::io_failure() const {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic &d) { return d.code == codes::kIo; });
}

LoadResult LoadCorpus(const fs::path &manifest_path,
                      const LoadOptions &options) {
  LoadResult result;
  auto manifest = ReadAndParse(
      manifest_path, result.diagnostics,
      [](std::string_view text, const std::string &file) {
        return ParseManifest(text, file);
      });
  if (!manifest) return result;

  const TagRegistry registry =
      options.registry_override.value_or(manifest->registry);
  const fs::path base = manifest_path.parent_path();

  std::vector<std::future<LanguageLoad>> language_loads;
  for (const ManifestLanguage &entry : manifest->languages) {
    language_loads.push_back(std::async(std::launch::async, LoadLanguage,
                                        std::cref(entry), std::cref(base),
                                        std::cref(registry)));
  }
  std::vector<std::future<PairSetLoad>> pair_loads;
  for (const ManifestAlignSet &entry : manifest->align_sets) {
    pair_loads.push_back(std::async(std::launch::async, LoadPairSet,
                                    std::cref(entry), std::cref(base),
                                    std::cref(registry)));
  }

  ParallelCorpus corpus;
  corpus.registry = registry;
  for (auto &future : language_loads) {
    LanguageLoad load = future.get();
    result.diagnostics.insert(result.diagnostics.end(),
                              load.diagnostics.begin(),
                              load.diagnostics.end());
    if (load.treebank) {
      std::string lang = load.treebank->lang;
      corpus.treebanks.emplace(lang, std::move(*load.treebank));
    }
  }
  for (auto &future : pair_loads) {
    PairSetLoad load = future.get();
    result.diagnostics.insert(result.diagnostics.end(),
                              load.diagnostics.begin(),
                              load.diagnostics.end());
    if (load.pair_set && corpus.treebanks.count(load.pair_set->left_lang) &&
        corpus.treebanks.count(load.pair_set->right_lang)) {
      corpus.pair_sets.push_back(std::move(*load.pair_set));
    }
  }
  corpus.SortPairSets();

  auto validation = ValidateCorpus(corpus, options.validator);
  result.diagnostics.insert(result.diagnostics.end(), validation.begin(),
                            validation.end());
  SortAndDedupe(result.diagnostics);
  if (!HasError(result.diagnostics)) result.corpus = std::move(corpus);
  return result;
}

CorpusStats ComputeStats(const ParallelCorpus &corpus) {
  CorpusStats stats;
  for (const auto &[lang, treebank] : corpus.treebanks) {
    LanguageStats &ls = stats.languages[lang];
    ls.predicates_by_class = {{'v', 0}, {'n', 0}, {'a', 0}};
    for (const MonolingualAnnotation &s : treebank.sentences) {
      ++ls.sentences;
      ls.tokens += static_cast<int>(s.tree.tokens.size());
      ls.predicates += static_cast<int>(s.predarg.predicates.size());
      ls.arguments += static_cast<int>(s.predarg.arguments.size());
      for (const Predicate &p : s.predarg.predicates) {
        ++ls.predicates_by_class[ClassLetter(p.cls)];
      }
      for (const Binding &b : s.predarg.bindings) {
        for (const std::string &tag : b.tags) ++ls.binding_tags[tag];
      }
    }
  }
  for (const PairSet &pair_set : corpus.pair_sets) {
    PairSetStats ps;
    ps.left_lang = pair_set.left_lang;
    ps.right_lang = pair_set.right_lang;
    for (const SentencePairAlignment &pair : pair_set.pairs) {
      ++ps.pairs;
      for (const Alignment &a : pair.alignments) {
        bool pred = a.kind == AlignKind::kPredicate;
        ++(pred ? ps.pred_alignments : ps.arg_alignments);
        if (!a.tag.empty()) {
          ++(pred ? ps.pred_alignment_tags : ps.arg_alignment_tags)[a.tag];
        }
      }
    }
    std::set<std::pair<std::string, ElementRef>> left, right;
    CountAligned(pair_set, 0, &left);
    CountAligned(pair_set, 1, &right);
    CountUnaligned(corpus.FindTreebank(pair_set.left_lang), left,
                   &ps.unaligned_left_preds, &ps.unaligned_left_args);
    CountUnaligned(corpus.FindTreebank(pair_set.right_lang), right,
                   &ps.unaligned_right_preds, &ps.unaligned_right_args);
    stats.pair_sets.push_back(std::move(ps));
  }
  return stats;
}

std::string RenderStatsTsv(const CorpusStats &stats) {
  std::string out = "scope\tmetric\tvalue\n";
  auto row = [&](const std::string &scope, const std::string &metric,
                 int value) {
    out += scope + "\t" + metric + "\t" + std::to_string(value) + "\n";
  };
  for (const auto &[lang, ls] : stats.languages) {
    row(lang, "sentences", ls.sentences);
    row(lang, "tokens", ls.tokens);
    row(lang, "predicates", ls.predicates);
    row(lang, "arguments", ls.arguments);
    for (char cls : {'v', 'n', 'a'}) {
      row(lang, std::string("predicates.") + cls,
          ls.predicates_by_class.at(cls));
    }
    for (const auto &[tag, count] : ls.binding_tags) {
      row(lang, "binding_tag." + tag, count);
    }
  }
  for (const PairSetStats &ps : stats.pair_sets) {
    const std::string scope = ps.left_lang + "-" + ps.right_lang;
    row(scope, "pairs", ps.pairs);
    row(scope, "alignments.pred", ps.pred_alignments);
    row(scope, "alignments.arg", ps.arg_alignments);
    for (const auto &[tag, count] : ps.pred_alignment_tags) {
      row(scope, "alignment_tag.pred." + tag, count);
    }
    for (const auto &[tag, count] : ps.arg_alignment_tags) {
      row(scope, "alignment_tag.arg." + tag, count);
    }
    row(scope, "unaligned." + ps.left_lang + ".pred", ps.unaligned_left_preds);
    row(scope, "unaligned." + ps.left_lang + ".arg", ps.unaligned_left_args);
    row(scope, "unaligned." + ps.right_lang + ".pred",
        ps.unaligned_right_preds);
    row(scope, "unaligned." + ps.right_lang + ".arg", ps.unaligned_right_args);
  }
  return out;
}

std::string RenderStatsJson(const CorpusStats &stats) {
  using json = nlohmann::ordered_json;
  json root;
  root["languages"] = json::object();
  for (const auto &[lang, ls] : stats.languages) {
    json classes = json::object();
    for (char cls : {'v', 'n', 'a'}) {
      classes[std::string(1, cls)] = ls.predicates_by_class.at(cls);
    }
    root["languages"][lang] = {
        {"sentences", ls.sentences},   {"tokens", ls.tokens},
        {"predicates", ls.predicates}, {"arguments", ls.arguments},
        {"predicates_by_class", classes},
        {"binding_tags", json(ls.binding_tags)},
    };
  }
  root["pair_sets"] = json::array();
  for (const PairSetStats &ps : stats.pair_sets) {
    root["pair_sets"].push_back({
        {"left", ps.left_lang},
        {"right", ps.right_lang},
        {"pairs", ps.pairs},
        {"pred_alignments", ps.pred_alignments},
        {"arg_alignments", ps.arg_alignments},
        {"pred_alignment_tags", json(ps.pred_alignment_tags)},
        {"arg_alignment_tags", json(ps.arg_alignment_tags)},
        {"unaligned_left_preds", ps.unaligned_left_preds},
        {"unaligned_left_args", ps.unaligned_left_args},
        {"unaligned_right_preds", ps.unaligned_right_preds},
        {"unaligned_right_args", ps.unaligned_right_args},
    });
  }
  return root.dump(2) + "\n";
}

std::string SerializeTreebankTrees(const Treebank &treebank) {
  std::vector<SentenceTree> trees;
  for (const MonolingualAnnotation &s : treebank.sentences) {
    trees.push_back(s.tree);
  }
  return SerializeTrees(trees);
}

std::string SerializeTreebankPredArg(const Treebank &treebank) {
  std::vector<PredArgSentence> blocks;
  for (const MonolingualAnnotation &s : treebank.sentences) {
    if (s.predarg.empty()) continue;
    blocks.push_back({s.tree.id, s.predarg, {}});
  }
  return SerializePredArg(blocks);
}

std::string SerializePairSet(const PairSet &pair_set) {
  return SerializeAlignments(pair_set.pairs);
}

fs::path ExportCorpus(const ParallelCorpus &corpus,
                      const fs::path &directory) {
  fs::create_directories(directory);
  Manifest manifest;
  manifest.registry = corpus.registry;
  for (const auto &[lang, treebank] : corpus.treebanks) {
    ManifestLanguage entry{lang, lang + ".tb", lang + ".pa", 0};
    WriteFile(directory / entry.trees_path, SerializeTreebankTrees(treebank));
    WriteFile(directory / entry.predarg_path,
              SerializeTreebankPredArg(treebank));
    manifest.languages.push_back(std::move(entry));
  }
  std::set<std::string> names;
  for (const PairSet &pair_set : corpus.pair_sets) {
    std::string stem = pair_set.left_lang + "-" + pair_set.right_lang;
    std::string name = stem + ".al";
    for (int n = 2; !names.insert(name).second; ++n) {
      name = stem + "-" + std::to_string(n) + ".al";
    }
    WriteFile(directory / name, SerializePairSet(pair_set));
    manifest.align_sets.push_back(
        {pair_set.left_lang, pair_set.right_lang, name, 0});
  }
  fs::path manifest_path = directory / "corpus.manifest";
  WriteFile(manifest_path, SerializeManifest(manifest));
  return manifest_path;
}

}  // namespace fuse
