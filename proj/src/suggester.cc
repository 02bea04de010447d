#include "fuse/suggester.h"

#include <algorithm>
#include <cstdio>
#include <map>

namespace fuse {

std::vector<RoleSuggestion> SuggestRoles(
    const ParallelCorpus &corpus, const std::string &lang,
    const std::string &group, const std::set<std::string> &already_used) {
  const Treebank *treebank = corpus.FindTreebank(lang);
  if (!treebank) throw ResolutionError("unknown language '" + lang + "'");

  std::map<std::string, int> counts;
  int total = 0;
  for (const MonolingualAnnotation &sentence : treebank->sentences) {
    const PredArgLayer &layer = sentence.predarg;
    for (const Argument &arg : layer.arguments) {
      const Predicate *pred = FindPredicate(layer, arg.pred_id);
      if (!pred || pred->group != group) continue;
      ++counts[arg.role];
      ++total;
    }
  }

  std::vector<RoleSuggestion> out;
  for (const auto &[role, frequency] : counts) {
    if (already_used.count(role)) continue;
    out.push_back({role, frequency, static_cast<double>(frequency) / total});
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const RoleSuggestion &a, const RoleSuggestion &b) {
                     return a.frequency > b.frequency;
                   });
  return out;
}

std::string RenderSuggestions(const std::vector<RoleSuggestion> &suggestions) {
  std::string out;
  char share[32];
  for (const RoleSuggestion &s : suggestions) {
    std::snprintf(share, sizeof share, "%.4f", s.share);
    out += s.role + '\t' + std::to_string(s.frequency) + '\t' + share + '\n';
  }
  return out;
}

}  // namespace fuse
