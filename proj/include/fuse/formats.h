// Line-based text formats for trees (.tb), predicate-argument annotation
// (.pa), alignments (.al) and the corpus manifest.
//
// Parsers normalize their input to NFC and stop at the first error, which is
// thrown as a FormatError carrying file and line. Serializers emit the
// canonical form, so parse(serialize(x)) == x and serializing a parsed
// canonical document reproduces it byte for byte.

#ifndef FUSE_FORMATS_H_
#define FUSE_FORMATS_H_

#include <string>
#include <string_view>
#include <vector>

#include "fuse/diagnostic.h"
#include "fuse/model.h"

namespace fuse {

// ---------------------------------------------------------------------------
// .tb
//
//   #BOS <sid>
//   <form>\t<pos>\t<edge>\t<parent>      terminals, surface order
//   #<id>\t<cat>\t<edge>\t<parent>       nonterminals, ascending id >= 500
//   #EOS <sid>
//
// <parent> is a nonterminal id or 0 for the virtual root, <edge> is "--"
// when absent.

std::vector<SentenceTree> ParseTrees(std::string_view text,
                                     const std::string &file);
std::string SerializeTrees(const std::vector<SentenceTree> &trees);

// ---------------------------------------------------------------------------
// .pa
//
//   #SENT <sid>
//   PRED <pid> lemma=<L> class=<v|n|a> group=<G> [nodes=<refs>]
//        [excl=<refs>] [tags=<tags>]
//   ARG <pid> role=<R> [nodes=<refs>] [excl=<refs>] [tags=<tags>]
//   BIND <pid>[.<R>] nodes=<refs> [excl=<refs>] [tags=<tags>]
//
// A BIND line attaches the binding of an element declared earlier in the
// block. Serialization always writes bindings inline.

struct PredArgSentence {
  std::string sentence_id;
  PredArgLayer predarg;
  SourceLoc loc;

  bool operator==(const PredArgSentence &) const = default;
};

std::vector<PredArgSentence> ParsePredArg(std::string_view text,
                                          const std::string &file,
                                          const TagRegistry &registry);
std::string SerializePredArg(const std::vector<PredArgSentence> &sentences);

// ---------------------------------------------------------------------------
// .al
//
//   #PAIR <langL>:<sidL> <langR>:<sidR>
//   PALIGN <pidL> <pidR> [tag=<t>]
//   AALIGN <pidL>.<ROLE> <pidR>.<ROLE> [tag=<t>]
//
// Whether a reference names the element kind its keyword promises is left
// to the validator.

std::vector<SentencePairAlignment> ParseAlignments(
    std::string_view text, const std::string &file,
    const TagRegistry &registry);
std::string SerializeAlignments(
    const std::vector<SentencePairAlignment> &pairs);

// ---------------------------------------------------------------------------
// Manifest
//
//   LANG <code> TREES <path> PREDARG <path>
//   ALIGN <codeA> <codeB> <path>
//   BINDTAGS <t>[,<t>...]
//   ALIGNTAGS <t>[,<t>...]

struct ManifestLanguage {
  std::string code;
  std::string trees_path;
  std::string predarg_path;
  int line = 0;
};

struct ManifestAlignSet {
  std::string left_lang;
  std::string right_lang;
  std::string path;
  int line = 0;
};

struct Manifest {
  std::vector<ManifestLanguage> languages;
  std::vector<ManifestAlignSet> align_sets;
  TagRegistry registry = TagRegistry::Defaults();
};

Manifest ParseManifest(std::string_view text, const std::string &file);
std::string SerializeManifest(const Manifest &manifest);

// Parses a file holding only BINDTAGS / ALIGNTAGS lines. Lists that are not
// given keep their defaults.
TagRegistry ParseTagRegistry(std::string_view text, const std::string &file);

}  // namespace fuse

#endif  // FUSE_FORMATS_H_
