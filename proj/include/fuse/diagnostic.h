#ifndef FUSE_DIAGNOSTIC_H_
#define FUSE_DIAGNOSTIC_H_

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fuse {

enum class Severity { kError, kWarning };

struct Diagnostic {
  Severity severity = Severity::kError;
  std::string code;
  std::string file;
  int line = 0;  // 0 when the problem has no line
  std::string message;

  bool is_error() const { return severity == Severity::kError; }
  bool operator==(const Diagnostic &) const = default;
};

// Stable diagnostic codes. Every code a component emits is listed here.
namespace codes {

// Input decoding and file access.
inline constexpr std::string_view kEncoding = "E-ENCODING";
inline constexpr std::string_view kIo = "E-IO";
inline constexpr std::string_view kSyntax = "E-SYNTAX";

// Tree files.
inline constexpr std::string_view kSentenceDup = "E-SENT-DUP";
inline constexpr std::string_view kNodeIdRange = "E-NODE-ID-RANGE";
inline constexpr std::string_view kNodeDup = "E-NODE-DUP";
inline constexpr std::string_view kTreeOrder = "E-TREE-ORDER";
inline constexpr std::string_view kTreeParent = "E-TREE-PARENT";
inline constexpr std::string_view kTreeCycle = "E-TREE-CYCLE";
inline constexpr std::string_view kTreeEmptyNode = "E-TREE-EMPTY-NODE";

// Predicate-argument files.
inline constexpr std::string_view kClass = "E-CLASS";
inline constexpr std::string_view kName = "E-NAME";
inline constexpr std::string_view kRef = "E-REF";
inline constexpr std::string_view kTagUnknown = "E-TAG-UNKNOWN";
inline constexpr std::string_view kPredDup = "E-PRED-DUP";
inline constexpr std::string_view kRoleDup = "E-ROLE-DUP";
inline constexpr std::string_view kOrder = "E-ORDER";
inline constexpr std::string_view kBindDup = "E-BIND-DUP";

// Alignment files.
inline constexpr std::string_view kPairDup = "E-PAIR-DUP";
inline constexpr std::string_view kPairLang = "E-PAIR-LANG";

// Manifest and corpus assembly.
inline constexpr std::string_view kManifestSyntax = "E-MANIFEST-SYNTAX";
inline constexpr std::string_view kManifestLang = "E-MANIFEST-LANG";
inline constexpr std::string_view kSentenceUnknown = "E-SENT-UNKNOWN";

// Monolingual validation.
inline constexpr std::string_view kBindMissing = "E-BIND-MISSING";
inline constexpr std::string_view kBindDangle = "E-BIND-DANGLE";
inline constexpr std::string_view kBindTarget = "E-BIND-TARGET";
inline constexpr std::string_view kExclNotDesc = "E-EXCL-NOT-DESC";
inline constexpr std::string_view kInclNested = "E-INCL-NESTED";
inline constexpr std::string_view kYieldEmpty = "E-YIELD-EMPTY";
inline constexpr std::string_view kRecursion = "E-RECURSION";
inline constexpr std::string_view kTagOnArg = "E-TAG-ON-ARG";
inline constexpr std::string_view kRoleNearDup = "W-ROLE-NEAR-DUP";

// Pair validation.
inline constexpr std::string_view kAlignDangle = "E-ALIGN-DANGLE";
inline constexpr std::string_view kAlignKind = "E-ALIGN-KIND";
inline constexpr std::string_view kAlignDup = "E-ALIGN-DUP";
inline constexpr std::string_view kAlignOrphanArg = "E-ALIGN-ORPHAN-ARG";
inline constexpr std::string_view kAlignTag = "E-ALIGN-TAG";

// Queries.
inline constexpr std::string_view kQuerySyntax = "E-Q-SYNTAX";
inline constexpr std::string_view kQueryKey = "E-Q-KEY";
inline constexpr std::string_view kQueryUnvalidated = "E-Q-UNVALIDATED";

}  // namespace codes

// Every registered code, in the order above.
const std::vector<std::string_view> &RegisteredCodes();
bool IsRegisteredCode(std::string_view code);

Diagnostic MakeError(std::string_view code, std::string file, int line,
                     std::string message);
Diagnostic MakeWarning(std::string_view code, std::string file, int line,
                       std::string message);

// "<severity>\t<code>\t<file>:<line>\t<message>"; the ":<line>" part is
// dropped when there is no line.
std::string Render(const Diagnostic &diagnostic);

// Sorts by (file, line, code, message) and drops exact duplicates.
void SortAndDedupe(std::vector<Diagnostic> &diagnostics);

bool HasError(const std::vector<Diagnostic> &diagnostics);

// Carries the first ERROR of a fail-fast parse.
class FormatError : public std::runtime_error {
 public:
  explicit FormatError(Diagnostic diagnostic);
  const Diagnostic &diagnostic() const { return diagnostic_; }

 private:
  Diagnostic diagnostic_;
};

}  // namespace fuse

#endif  // FUSE_DIAGNOSTIC_H_
