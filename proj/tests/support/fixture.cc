#include "support/fixture.h"

#include <sys/wait.h>

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "fuse/validator.h"

namespace fs = std::filesystem;

namespace fuse::testing {

fs::path FixtureDir() { return FUSE_FIXTURE_DIR; }
fs::path FixtureManifest() { return FixtureDir() / "corpus.manifest"; }
fs::path CliPath() { return FUSE_CLI_PATH; }

std::string ReadFile(const fs::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return text.str();
}

void WriteFile(const fs::path &path, const std::string &text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out << text;
  if (!out) throw std::runtime_error("cannot write " + path.string());
}

TempDir::TempDir() {
  static std::atomic<int> counter{0};
  std::random_device device;
  path_ = fs::temp_directory_path() /
          ("fuse-test-" + std::to_string(device()) + "-" +
           std::to_string(counter++));
  fs::create_directories(path_);
}

TempDir::~TempDir() {
  std::error_code ignored;
  fs::remove_all(path_, ignored);
}

ParallelCorpus LoadFixture() {
  LoadResult result = LoadCorpus(FixtureManifest());
  if (!result.corpus) {
    std::string message = "fixture does not load:";
    for (const auto &d : result.diagnostics) message += "\n" + Render(d);
    throw std::runtime_error(message);
  }
  return std::move(*result.corpus);
}

fs::path CopyFixture(const fs::path &dir) {
  for (const auto &entry : fs::directory_iterator(FixtureDir())) {
    fs::copy_file(entry.path(), dir / entry.path().filename(),
                  fs::copy_options::overwrite_existing);
  }
  return dir / "corpus.manifest";
}

void ReplaceOnce(const fs::path &file, const std::string &from,
                 const std::string &to) {
  std::string text = ReadFile(file);
  size_t at = text.find(from);
  if (at == std::string::npos || text.find(from, at + 1) != std::string::npos) {
    throw std::runtime_error("'" + from + "' does not occur exactly once in " +
                             file.string());
  }
  text.replace(at, from.size(), to);
  WriteFile(file, text);
}

const std::vector<Mutation> &ValidatorMutations() {
  static const std::vector<Mutation> kMutations = {
      {"E-BIND-MISSING", "de.pa",
       "group=DOLMETSCHEN nodes=t3 tags=pv", "group=DOLMETSCHEN", nullptr},
      {"E-BIND-DANGLE", "en.pa", "group=HARMONISE nodes=t7",
       "group=HARMONISE nodes=t99", nullptr},
      {"E-EXCL-NOT-DESC", "de.pa", "role=HARMONISIERTES nodes=n501",
       "role=HARMONISIERTES nodes=n501 excl=t2", nullptr},
      {"E-INCL-NESTED", "de.pa", "role=HARMONISIERTES nodes=n501",
       "role=HARMONISIERTES nodes=n500,n501", nullptr},
      {"E-YIELD-EMPTY", "en.pa", "role=PLACE nodes=n501",
       "role=PLACE nodes=n501 excl=t5,t6", nullptr},
      {"E-RECURSION", "en.pa", "nodes=n525 excl=n517", "nodes=n525", nullptr},
      {"E-TAG-ON-ARG", "en.pa", "role=SAFEGUARDER nodes=n502",
       "role=SAFEGUARDER nodes=n502 tags=pv", nullptr},
      {"E-ALIGN-DANGLE", "en-de.al", "AALIGN p1.PLACE p1.ORT",
       "AALIGN p1.PLACE p1.NOSUCH", nullptr},
      {"E-ALIGN-KIND", "en-de.al", "AALIGN p1.PLACE p1.ORT",
       "PALIGN p1.PLACE p1.ORT", nullptr},
      {"E-ALIGN-DUP", "en-de.al",
       "#PAIR en:s1 de:s1\nPALIGN p1 p1\n",
       "#PAIR en:s1 de:s1\nPALIGN p1 p1\nPALIGN p1 p2\n", nullptr},
      {"E-ALIGN-ORPHAN-ARG", "en-de.al",
       "PALIGN p1 p1\nAALIGN p1.ENT_GIVEN", "AALIGN p1.ENT_GIVEN", nullptr},
      // The parser rejects unregistered tags, so this one is seeded after
      // loading.
      {"E-ALIGN-TAG", "", "", "",
       [](ParallelCorpus &corpus) {
         corpus.pair_sets.at(0).pairs.at(2).alignments.at(0).tag = "bogus";
       }},
      {"W-ROLE-NEAR-DUP", "en.pa", "role=ENT_HARMONISED nodes=n501",
       "role=ENT_HARMONISED nodes=n501\nARG p1 role=ENT_HARMONIZED nodes=t8",
       nullptr},
  };
  return kMutations;
}

std::vector<Diagnostic> Diagnose(const Mutation &mutation) {
  if (mutation.in_memory) {
    ParallelCorpus corpus = LoadFixture();
    mutation.in_memory(corpus);
    return ValidateCorpus(corpus);
  }
  TempDir dir;
  fs::path manifest = CopyFixture(dir.path());
  ReplaceOnce(dir.path() / mutation.file, mutation.from, mutation.to);
  return LoadCorpus(manifest).diagnostics;
}

std::string ShellQuote(const std::string &text) {
  std::string out = "'";
  for (char c : text) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out += c;
    }
  }
  return out + "'";
}

CommandResult RunCli(const std::string &args, const std::string &env) {
  TempDir dir;
  fs::path out = dir.path() / "out";
  fs::path err = dir.path() / "err";
  std::string command = env + (env.empty() ? "" : " ") +
                        ShellQuote(CliPath().string()) + " " + args + " >" +
                        ShellQuote(out.string()) + " 2>" +
                        ShellQuote(err.string());
  int status = std::system(command.c_str());
  CommandResult result;
  if (status != -1 && WIFEXITED(status)) result.exit_code = WEXITSTATUS(status);
  result.out = ReadFile(out);
  result.err = ReadFile(err);
  return result;
}

}  // namespace fuse::testing
