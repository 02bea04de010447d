// Helpers shared by the line-based parsers.

#ifndef FUSE_SRC_TEXT_UTIL_H_
#define FUSE_SRC_TEXT_UTIL_H_

#include <charconv>
#include <string>
#include <string_view>
#include <vector>

#include "fuse/diagnostic.h"
#include "fuse/unicode.h"

namespace fuse::internal {

struct Line {
  int number;
  std::string_view text;
};

// Normalized copy of a document split into lines. A trailing '\r' is
// dropped from every line.
class Document {
 public:
  Document(std::string_view text, const std::string &file) : file_(file) {
    auto normalized = NormalizeNfc(text);
    if (!normalized) {
      throw FormatError(MakeError(codes::kEncoding, file, 0,
                                  "input is not well-formed UTF-8"));
    }
    text_ = std::move(*normalized);
    std::string_view rest = text_;
    int number = 1;
    while (!rest.empty()) {
      size_t end = rest.find('\n');
      std::string_view line = rest.substr(0, end);
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
      lines_.push_back({number++, line});
      if (end == std::string_view::npos) break;
      rest.remove_prefix(end + 1);
    }
  }

  const std::vector<Line> &lines() const { return lines_; }
  const std::string &file() const { return file_; }

  [[noreturn]] void Fail(std::string_view code, int line,
                         std::string message) const {
    throw FormatError(MakeError(code, file_, line, std::move(message)));
  }

 private:
  std::string file_;
  std::string text_;
  std::vector<Line> lines_;
};

inline bool IsComment(std::string_view line) {
  return line.substr(0, 2) == "%%";
}

inline bool IsBlank(std::string_view line) {
  return line.find_first_not_of(" \t") == std::string_view::npos;
}

inline std::vector<std::string_view> SplitOn(std::string_view text,
                                             char separator) {
  std::vector<std::string_view> out;
  while (true) {
    size_t pos = text.find(separator);
    out.push_back(text.substr(0, pos));
    if (pos == std::string_view::npos) break;
    text.remove_prefix(pos + 1);
  }
  return out;
}

// Splits on runs of spaces and tabs.
inline std::vector<std::string_view> SplitWords(std::string_view text) {
  std::vector<std::string_view> out;
  size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
    size_t start = i;
    while (i < text.size() && text[i] != ' ' && text[i] != '\t') ++i;
    if (i > start) out.push_back(text.substr(start, i - start));
  }
  return out;
}

inline bool ParseNonNegative(std::string_view text, int *value) {
  if (text.empty() || text[0] < '0' || text[0] > '9') return false;
  auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), *value);
  return ec == std::errc() && ptr == text.data() + text.size();
}

inline bool HasWhitespace(std::string_view text) {
  return text.find_first_of(" \t\r\n") != std::string_view::npos;
}

inline std::string Join(const std::vector<std::string> &parts,
                        std::string_view separator) {
  std::string out;
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out += separator;
    out += parts[i];
  }
  return out;
}

}  // namespace fuse::internal

#endif  // FUSE_SRC_TEXT_UTIL_H_
