// fuse: command-line front end over a manifest-defined corpus.
//
//   fuse validate <manifest>
//   fuse query    <manifest> "<query>" [--json]
//   fuse stats    <manifest> [--json]
//   fuse suggest  <manifest> --lang L --group G [--used R1,R2]
//   fuse export   <manifest> --out DIR
//
// Exit status: 0 success, 1 ERROR diagnostics or a bad query, 2 I/O failure.
// FUSE_TAGS may name a tag-registry file that replaces the manifest's tags.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "fuse/corpus_store.h"
#include "fuse/diagnostic.h"
#include "fuse/formats.h"
#include "fuse/query.h"
#include "fuse/suggester.h"

namespace {

constexpr int kOk = 0;
constexpr int kErrors = 1;
constexpr int kIoFailure = 2;

void PrintDiagnostics(const std::vector<fuse::Diagnostic> &diagnostics) {
  for (const auto &d : diagnostics) std::cerr << fuse::Render(d) << '\n';
}

// Reads the FUSE_TAGS registry, if set. Returns an exit code on failure.
std::optional<int> ReadTagOverride(fuse::LoadOptions &options) {
  const char *path = std::getenv("FUSE_TAGS");
  if (!path || !*path) return std::nullopt;
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    PrintDiagnostics({fuse::MakeError(fuse::codes::kIo, path, 0,
                                      "cannot read tag registry")});
    return kIoFailure;
  }
  std::ostringstream text;
  text << in.rdbuf();
  try {
    options.registry_override = fuse::ParseTagRegistry(text.str(), path);
  } catch (const fuse::FormatError &e) {
    PrintDiagnostics({e.diagnostic()});
    return kErrors;
  }
  return std::nullopt;
}

// Loads and validates. On failure prints diagnostics and sets `status`.
std::optional<fuse::ParallelCorpus> Load(const std::string &manifest,
                                         int &status) {
  fuse::LoadOptions options;
  if (auto failed = ReadTagOverride(options)) {
    status = *failed;
    return std::nullopt;
  }
  fuse::LoadResult result = fuse::LoadCorpus(manifest, options);
  PrintDiagnostics(result.diagnostics);
  if (result.io_failure()) {
    status = kIoFailure;
  } else if (!result.corpus) {
    status = kErrors;
  } else {
    status = kOk;
  }
  return std::move(result.corpus);
}

std::set<std::string> SplitCommaList(const std::string &text) {
  std::set<std::string> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (!item.empty()) out.insert(item);
  }
  return out;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Validate, query and export an aligned predicate-argument "
               "treebank corpus."};
  app.require_subcommand(1);

  std::string manifest;
  std::string query_text;
  bool json = false;
  std::string out_dir;
  std::string lang;
  std::string group;
  std::string used;

  auto *validate = app.add_subcommand("validate", "Load and validate a corpus");
  validate->add_option("manifest", manifest, "Corpus manifest")->required();

  auto *query = app.add_subcommand("query", "Run a query");
  query->add_option("manifest", manifest, "Corpus manifest")->required();
  query->add_option("query", query_text, "Query text")->required();
  query->add_flag("--json", json, "One JSON object per row");

  auto *stats = app.add_subcommand("stats", "Corpus statistics");
  stats->add_option("manifest", manifest, "Corpus manifest")->required();
  stats->add_flag("--json", json, "JSON instead of TSV");

  auto *suggest = app.add_subcommand("suggest", "Rank role names for a group");
  suggest->add_option("manifest", manifest, "Corpus manifest")->required();
  suggest->add_option("--lang", lang, "Language code")->required();
  suggest->add_option("--group", group, "Predicate group")->required();
  suggest->add_option("--used", used, "Comma-separated roles to leave out");

  auto *export_cmd = app.add_subcommand("export", "Write canonical files");
  export_cmd->add_option("manifest", manifest, "Corpus manifest")->required();
  export_cmd->add_option("--out", out_dir, "Target directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kErrors;
  }

  // A query is checked before the corpus is read.
  std::optional<fuse::Query> parsed_query;
  if (query->parsed()) {
    try {
      parsed_query = fuse::ParseQuery(query_text);
    } catch (const fuse::QueryError &e) {
      std::cerr << "ERROR\t" << e.code() << "\tquery:" << e.position() << '\t'
                << e.what() << '\n';
      return kErrors;
    }
  }

  int status = kOk;
  auto corpus = Load(manifest, status);
  if (!corpus) return status;

  try {
    if (validate->parsed()) return kOk;

    if (query->parsed()) {
      fuse::QueryResult result = fuse::RunQuery(*corpus, *parsed_query);
      std::cout << (json ? fuse::RenderJsonLines(result)
                         : fuse::RenderTsv(result));
      return kOk;
    }
    if (stats->parsed()) {
      fuse::CorpusStats s = fuse::ComputeStats(*corpus);
      std::cout << (json ? fuse::RenderStatsJson(s) : fuse::RenderStatsTsv(s));
      return kOk;
    }
    if (suggest->parsed()) {
      auto suggestions =
          fuse::SuggestRoles(*corpus, lang, group, SplitCommaList(used));
      std::cout << fuse::RenderSuggestions(suggestions);
      return kOk;
    }
    if (export_cmd->parsed()) {
      fuse::ExportCorpus(*corpus, out_dir);
      return kOk;
    }
  } catch (const fuse::QueryError &e) {
    std::cerr << "ERROR\t" << e.code() << "\tquery\t" << e.what() << '\n';
    return kErrors;
  } catch (const fuse::ResolutionError &e) {
    std::cerr << "ERROR\t" << e.what() << '\n';
    return kErrors;
  } catch (const std::runtime_error &e) {
    // Export write failures.
    std::cerr << "ERROR\t" << fuse::codes::kIo << '\t' << e.what() << '\n';
    return kIoFailure;
  }
  return kOk;
}
