// Cross-layer well-formedness checks.
//
// Structural impossibilities are ERRORs. The only WARNING is
// W-ROLE-NEAR-DUP: two role names in one predicate group that look like
// spelling variants of each other (case-insensitively equal, or at edit
// distance 1, both at least four code points long).
//
// Unaligned predicates and arguments are never reported.

#ifndef FUSE_VALIDATOR_H_
#define FUSE_VALIDATOR_H_

#include <string>
#include <vector>

#include "fuse/diagnostic.h"
#include "fuse/model.h"

namespace fuse {

struct ValidatorOptions {
  // Lets one element take part in several alignments of a pair.
  bool allow_multi_alignment = false;
};

// True iff the two role names count as near-duplicates.
bool AreNearDuplicateRoles(std::string_view a, std::string_view b);

// Binding, recursion and role-consistency checks for one sentence. `file`
// names the predicate-argument file in diagnostics.
std::vector<Diagnostic> ValidateMonolingual(
    const MonolingualAnnotation &annotation, const TagRegistry &registry,
    const std::string &file = "");

// As ValidateMonolingual for every sentence, with the role-consistency check
// run over the whole treebank.
std::vector<Diagnostic> ValidateTreebank(const Treebank &treebank,
                                         const TagRegistry &registry);

// Alignment checks for one sentence pair of `pair_set`.
std::vector<Diagnostic> ValidatePair(const ParallelCorpus &corpus,
                                     const PairSet &pair_set,
                                     const SentencePairAlignment &pair,
                                     const ValidatorOptions &options = {});

// Everything above over the whole corpus. Marks the corpus validated when no
// ERROR was found.
std::vector<Diagnostic> ValidateCorpus(ParallelCorpus &corpus,
                                       const ValidatorOptions &options = {});

}  // namespace fuse

#endif  // FUSE_VALIDATOR_H_
