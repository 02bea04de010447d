#include "fuse/diagnostic.h"

#include <algorithm>
#include <tuple>

namespace fuse {

const std::vector<std::string_view> &RegisteredCodes() {
  static const std::vector<std::string_view> kCodes = {
      codes::kEncoding,        codes::kIo,
      codes::kSyntax,          codes::kSentenceDup,
      codes::kNodeIdRange,     codes::kNodeDup,
      codes::kTreeOrder,       codes::kTreeParent,
      codes::kTreeCycle,       codes::kTreeEmptyNode,
      codes::kClass,           codes::kName,
      codes::kRef,             codes::kTagUnknown,
      codes::kPredDup,         codes::kRoleDup,
      codes::kOrder,           codes::kBindDup,
      codes::kPairDup,         codes::kPairLang,
      codes::kManifestSyntax,  codes::kManifestLang,
      codes::kSentenceUnknown, codes::kBindMissing,
      codes::kBindDangle,      codes::kBindTarget,
      codes::kExclNotDesc,     codes::kInclNested,
      codes::kYieldEmpty,      codes::kRecursion,
      codes::kTagOnArg,        codes::kRoleNearDup,
      codes::kAlignDangle,     codes::kAlignKind,
      codes::kAlignDup,        codes::kAlignOrphanArg,
      codes::kAlignTag,        codes::kQuerySyntax,
      codes::kQueryKey,        codes::kQueryUnvalidated,
  };
  return kCodes;
}

bool IsRegisteredCode(std::string_view code) {
  const auto &all = RegisteredCodes();
  return std::find(all.begin(), all.end(), code) != all.end();
}

Diagnostic MakeError(std::string_view code, std::string file, int line,
                     std::string message) {
  return {Severity::kError, std::string(code), std::move(file), line,
          std::move(message)};
}

Diagnostic MakeWarning(std::string_view code, std::string file, int line,
                       std::string message) {
  return {Severity::kWarning, std::string(code), std::move(file), line,
          std::move(message)};
}

std::string Render(const Diagnostic &d) {
  std::string out = d.is_error() ? "ERROR" : "WARNING";
  out += '\t';
  out += d.code;
  out += '\t';
  out += d.file;
  if (d.line > 0) out += ":" + std::to_string(d.line);
  out += '\t';
  out += d.message;
  return out;
}

void SortAndDedupe(std::vector<Diagnostic> &diagnostics) {
  auto key = [](const Diagnostic &d) {
    return std::tie(d.file, d.line, d.code, d.message, d.severity);
  };
  std::sort(diagnostics.begin(), diagnostics.end(),
            [&](const Diagnostic &a, const Diagnostic &b) {
              return key(a) < key(b);
            });
  diagnostics.erase(std::unique(diagnostics.begin(), diagnostics.end()),
                    diagnostics.end());
}

bool HasError(const std::vector<Diagnostic> &diagnostics) {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic &d) { return d.is_error(); });
}

FormatError::FormatError(Diagnostic diagnostic)
    : std::runtime_error(Render(diagnostic)),
      diagnostic_(std::move(diagnostic)) {}

}  // namespace fuse
