#ifndef FUSE_UNICODE_H_
#define FUSE_UNICODE_H_

#include <optional>
#include <string>
#include <string_view>

namespace fuse {

// Returns the NFC form of a UTF-8 string, or nullopt if the input is not
// well-formed UTF-8.
std::optional<std::string> NormalizeNfc(std::string_view text);

// True for names built only from uppercase letters, '_' and '-'. Used for
// lemmas, group names and role names.
bool IsUpperName(std::string_view name);

// Full Unicode case folding.
std::string FoldCase(std::string_view text);

// Number of code points.
size_t CodePointLength(std::string_view text);

// Edit distance counted in code points.
int Levenshtein(std::string_view a, std::string_view b);

}  // namespace fuse

#endif  // FUSE_UNICODE_H_
