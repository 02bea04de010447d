// Access to the hand-built fixture corpus and seeded mutations of it.

#ifndef FUSE_TESTS_FIXTURE_H_
#define FUSE_TESTS_FIXTURE_H_

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "fuse/corpus_store.h"

namespace fuse::testing {

std::filesystem::path FixtureDir();
std::filesystem::path FixtureManifest();
std::filesystem::path CliPath();

std::string ReadFile(const std::filesystem::path &path);
void WriteFile(const std::filesystem::path &path, const std::string &text);

// Fresh empty directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir();
  ~TempDir();
  TempDir(const TempDir &) = delete;
  TempDir &operator=(const TempDir &) = delete;

  const std::filesystem::path &path() const { return path_; }

 private:
  std::filesystem::path path_;
};

// Loads the fixture; aborts the test run if it does not validate.
ParallelCorpus LoadFixture();

// Copies the fixture into `dir` and returns the copied manifest path.
std::filesystem::path CopyFixture(const std::filesystem::path &dir);

// Replaces exactly one occurrence of `from` in `file`; throws if `from`
// occurs zero or several times.
void ReplaceOnce(const std::filesystem::path &file, const std::string &from,
                 const std::string &to);

// One seeded defect. File mutations edit a copy of the fixture; in-memory
// mutations edit a loaded corpus before it is validated again.
struct Mutation {
  std::string code;
  std::string file;
  std::string from;
  std::string to;
  std::function<void(ParallelCorpus &)> in_memory;
};

// One mutation per validator code, 12 ERROR codes then the warning.
const std::vector<Mutation> &ValidatorMutations();

// Diagnostics produced by the fixture with `mutation` applied.
std::vector<Diagnostic> Diagnose(const Mutation &mutation);

// Shell-quotes `text` for /bin/sh.
std::string ShellQuote(const std::string &text);

struct CommandResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

// Runs the CLI with `args` (already quoted) and an optional environment
// prefix, capturing stdout and stderr.
CommandResult RunCli(const std::string &args, const std::string &env = "");

}  // namespace fuse::testing

#endif  // FUSE_TESTS_FIXTURE_H_
