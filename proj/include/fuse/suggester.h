// Role-name suggestions for a predicate group, ranked by how often earlier
// annotation used each role within that group.

#ifndef FUSE_SUGGESTER_H_
#define FUSE_SUGGESTER_H_

#include <set>
#include <string>
#include <vector>

#include "fuse/model.h"

namespace fuse {

struct RoleSuggestion {
  std::string role;
  int frequency = 0;
  // frequency / number of arguments of the group, counting roles in
  // `already_used` as well.
  double share = 0.0;

  bool operator==(const RoleSuggestion &) const = default;
};

// Roles seen on arguments of predicates in `group` of language `lang`, minus
// `already_used`, by descending frequency then role. An unknown group gives
// an empty list; an unknown language throws ResolutionError.
std::vector<RoleSuggestion> SuggestRoles(
    const ParallelCorpus &corpus, const std::string &lang,
    const std::string &group, const std::set<std::string> &already_used = {});

// "<role>\t<freq>\t<share>" lines, share with four decimals.
std::string RenderSuggestions(const std::vector<RoleSuggestion> &suggestions);

}  // namespace fuse

#endif  // FUSE_SUGGESTER_H_
