// Loading a manifest-defined corpus, corpus statistics and canonical export.

#ifndef FUSE_CORPUS_STORE_H_
#define FUSE_CORPUS_STORE_H_

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fuse/diagnostic.h"
#include "fuse/formats.h"
#include "fuse/model.h"
#include "fuse/validator.h"

namespace fuse {

struct LoadOptions {
  // Replaces the manifest's tag registry when set.
  std::optional<TagRegistry> registry_override;
  ValidatorOptions validator;
};

struct LoadResult {
  // Present only when no ERROR was found.
  std::optional<ParallelCorpus> corpus;
  std::vector<Diagnostic> diagnostics;

  // True when some file could not be read (E-IO).
  bool io_failure() const;
};

// Reads the manifest and every file it names, assembles the corpus and runs
// full validation. Files are parsed concurrently; diagnostics come back
// sorted and deduplicated.
LoadResult LoadCorpus(const std::filesystem::path &manifest_path,
                      const LoadOptions &options = {});

struct LanguageStats {
  int sentences = 0;
  int tokens = 0;
  int predicates = 0;
  int arguments = 0;
  std::map<char, int> predicates_by_class;  // 'v', 'n', 'a', always present
  std::map<std::string, int> binding_tags;
};

struct PairSetStats {
  std::string left_lang;
  std::string right_lang;
  int pairs = 0;
  int pred_alignments = 0;
  int arg_alignments = 0;
  // Tag histograms per alignment kind; untagged alignments are not counted.
  std::map<std::string, int> pred_alignment_tags;
  std::map<std::string, int> arg_alignment_tags;
  // Elements of each side's treebank that no alignment in this set covers.
  int unaligned_left_preds = 0;
  int unaligned_left_args = 0;
  int unaligned_right_preds = 0;
  int unaligned_right_args = 0;
};

struct CorpusStats {
  std::map<std::string, LanguageStats> languages;
  std::vector<PairSetStats> pair_sets;
};

CorpusStats ComputeStats(const ParallelCorpus &corpus);

std::string RenderStatsTsv(const CorpusStats &stats);
std::string RenderStatsJson(const CorpusStats &stats);

// Writes the corpus in canonical form to `directory`: corpus.manifest,
// <lang>.tb, <lang>.pa and <langA>-<langB>.al. Returns the manifest path.
std::filesystem::path ExportCorpus(const ParallelCorpus &corpus,
                                   const std::filesystem::path &directory);

// Canonical documents for one treebank and one pair set.
std::string SerializeTreebankTrees(const Treebank &treebank);
std::string SerializeTreebankPredArg(const Treebank &treebank);
std::string SerializePairSet(const PairSet &pair_set);

}  // namespace fuse

#endif  // FUSE_CORPUS_STORE_H_
