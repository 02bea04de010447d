// In-memory representation of a parallel treebank annotated with
// predicate-argument structures and a tagged alignment layer.
//
// Layers, from one language to the other:
//
//   Phrasal    SentenceTree (tokens + nonterminals)
//   Binding    Binding (predicate/argument -> included/excluded nodes)
//   PA         Predicate, Argument
//   Alignment  Alignment, SentencePairAlignment
//   PA / Binding / Phrasal of the second language
//
// All types are plain values. A loaded corpus is never mutated, so any number
// of readers may share it.

#ifndef FUSE_MODEL_H_
#define FUSE_MODEL_H_

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace fuse {

inline constexpr int kVirtualRoot = 0;
inline constexpr int kMinNonTerminalId = 500;

// Line in the file an element was read from. Locations never take part in
// structural equality.
struct SourceLoc {
  int line = 0;

  friend bool operator==(const SourceLoc &, const SourceLoc &) { return true; }
};

// Orders strings so that embedded digit runs compare numerically
// ("p2" < "p10"). Ties fall back to plain byte order.
bool NaturalLess(std::string_view a, std::string_view b);

struct NaturalOrder {
  bool operator()(std::string_view a, std::string_view b) const {
    return NaturalLess(a, b);
  }
};

// Thrown when a node, sentence or element reference does not resolve.
class ResolutionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown when exclusions remove every token of a binding.
class EmptyYieldError : public ResolutionError {
 public:
  using ResolutionError::ResolutionError;
};

// ---------------------------------------------------------------------------
// Phrasal layer.

enum class NodeKind { kTerminal, kNonTerminal };

// A terminal (by 1-based surface index) or a nonterminal (by id >= 500).
// Written "t3" and "n502".
struct NodeRef {
  NodeKind kind = NodeKind::kTerminal;
  int id = 0;

  static NodeRef Terminal(int index) { return {NodeKind::kTerminal, index}; }
  static NodeRef NonTerminal(int id) { return {NodeKind::kNonTerminal, id}; }

  bool is_terminal() const { return kind == NodeKind::kTerminal; }
  std::string ToString() const;
  static std::optional<NodeRef> Parse(std::string_view text);

  auto operator<=>(const NodeRef &) const = default;
};

struct Token {
  int index = 0;
  std::string form;
  std::string pos;
  std::string edge;  // empty when the attachment is unlabelled
  int parent = kVirtualRoot;
  SourceLoc loc;

  bool operator==(const Token &) const = default;
};

struct NonTerminal {
  int id = 0;
  std::string category;
  std::string edge;
  int parent = kVirtualRoot;
  SourceLoc loc;

  bool operator==(const NonTerminal &) const = default;
};

struct SentenceTree {
  std::string id;
  std::vector<Token> tokens;             // surface order, index i+1 at [i]
  std::vector<NonTerminal> nonterminals;  // ascending by id
  SourceLoc loc;

  bool operator==(const SentenceTree &) const = default;
};

// Sorts nonterminals by id.
void Canonicalize(SentenceTree &tree);

const NonTerminal *FindNonTerminal(const SentenceTree &tree, int id);
bool Contains(const SentenceTree &tree, NodeRef node);

// Parent nonterminal id of a node, or kVirtualRoot. Throws ResolutionError
// for unknown nodes.
int ParentOf(const SentenceTree &tree, NodeRef node);

// True iff `ancestor` is a proper ancestor of `node`.
bool IsProperAncestor(const SentenceTree &tree, NodeRef ancestor,
                      NodeRef node);

// All terminal indices dominated by `node` (descendant-or-self), ascending.
std::vector<int> NodeYield(const SentenceTree &tree, NodeRef node);

// Space-joined token forms, with "…" marking each gap in the index list.
std::string RenderYield(const SentenceTree &tree,
                        const std::vector<int> &yield);

// ---------------------------------------------------------------------------
// Predicate-argument layer.

enum class PredClass { kVerbal, kNominal, kAdjectival };

char ClassLetter(PredClass cls);
std::optional<PredClass> ParsePredClass(std::string_view text);

struct Predicate {
  std::string id;
  std::string lemma;
  PredClass cls = PredClass::kVerbal;
  std::string group;
  SourceLoc loc;

  bool operator==(const Predicate &) const = default;
};

struct Argument {
  std::string pred_id;
  std::string role;
  SourceLoc loc;

  bool operator==(const Argument &) const = default;
};

// "p1" names a predicate, "p1.ROLE" one of its arguments.
struct ElementRef {
  std::string pred_id;
  std::string role;

  bool is_argument() const { return !role.empty(); }
  ElementRef owner() const { return {pred_id, ""}; }
  std::string ToString() const;
  static std::optional<ElementRef> Parse(std::string_view text);

  bool operator==(const ElementRef &) const = default;
  // Natural order on predicate id, then role; predicate before its arguments.
  bool operator<(const ElementRef &other) const;
};

// Valid predicate ids start with an ASCII letter and continue with ASCII
// letters, digits, '_' or '-'.
bool IsValidPredId(std::string_view id);

struct Binding {
  ElementRef target;
  std::vector<NodeRef> included;
  std::vector<NodeRef> excluded;
  std::vector<std::string> tags;
  SourceLoc loc;

  bool operator==(const Binding &) const = default;
};

struct PredArgLayer {
  std::vector<Predicate> predicates;  // natural order by id
  std::vector<Argument> arguments;    // by owner id, then role
  std::vector<Binding> bindings;      // by target

  bool operator==(const PredArgLayer &) const = default;
  bool empty() const { return predicates.empty() && arguments.empty(); }
};

// Sorts every collection of the layer into canonical order. Node and tag
// lists inside bindings are sorted too; duplicates are kept so that the
// validator can still see them.
void Canonicalize(PredArgLayer &layer);

struct MonolingualAnnotation {
  SentenceTree tree;
  PredArgLayer predarg;

  bool operator==(const MonolingualAnnotation &) const = default;
};

const Predicate *FindPredicate(const PredArgLayer &layer, std::string_view id);
const Argument *FindArgument(const PredArgLayer &layer, std::string_view id,
                             std::string_view role);
const Binding *FindBinding(const PredArgLayer &layer, const ElementRef &ref);

using Element = std::variant<const Predicate *, const Argument *>;

// Resolves a predicate or argument reference. Throws ResolutionError naming
// the sentence when the reference is unknown.
Element ElementOf(const MonolingualAnnotation &annotation,
                  const ElementRef &ref);

// Union of the included nodes' yields minus the excluded nodes' yields,
// ascending. Throws ResolutionError for nodes outside the tree and
// EmptyYieldError when nothing is left.
std::vector<int> ResolveYield(const SentenceTree &tree,
                              const Binding &binding);

// True iff the resolved yield is not one contiguous index range.
bool IsDiscontinuous(const SentenceTree &tree, const Binding &binding);

// ---------------------------------------------------------------------------
// Alignment layer.

enum class AlignKind { kPredicate, kArgument };

struct Alignment {
  AlignKind kind = AlignKind::kPredicate;
  ElementRef left;
  ElementRef right;
  std::string tag;  // empty when untagged
  SourceLoc loc;

  bool operator==(const Alignment &) const = default;
};

struct SentencePairAlignment {
  std::string left_lang;
  std::string left_sentence;
  std::string right_lang;
  std::string right_sentence;
  std::vector<Alignment> alignments;  // by left reference
  SourceLoc loc;

  bool operator==(const SentencePairAlignment &) const = default;
};

void Canonicalize(SentencePairAlignment &pair);

// ---------------------------------------------------------------------------
// Corpus.

struct TagRegistry {
  std::set<std::string> binding_tags;
  std::set<std::string> alignment_tags;

  // {pv, imp} for bindings, {abs-opp, incomp} for alignments.
  static TagRegistry Defaults();

  bool operator==(const TagRegistry &) const = default;
};

// All sentences of one language.
struct Treebank {
  std::string lang;
  std::string trees_file;
  std::string predarg_file;
  std::vector<MonolingualAnnotation> sentences;  // file order

  // Returns nullptr for unknown sentence ids.
  const MonolingualAnnotation *Find(std::string_view sentence_id) const;
  // Rebuilds the id index; call after changing `sentences`.
  void Reindex();

  friend bool operator==(const Treebank &a, const Treebank &b) {
    return a.lang == b.lang && a.sentences == b.sentences;
  }

 private:
  std::map<std::string, size_t, std::less<>> index_;
};

// One alignment file: pairs of sentences between two languages.
struct PairSet {
  std::string left_lang;
  std::string right_lang;
  std::string file;
  std::vector<SentencePairAlignment> pairs;  // file order

  friend bool operator==(const PairSet &a, const PairSet &b) {
    return a.left_lang == b.left_lang && a.right_lang == b.right_lang &&
           a.pairs == b.pairs;
  }
};

// Union of {treebank A, treebank B, alignment set} triples. Sentence ids are
// namespaced by language code ("en:s1").
struct ParallelCorpus {
  std::map<std::string, Treebank> treebanks;
  std::vector<PairSet> pair_sets;  // by (left_lang, right_lang, file)
  TagRegistry registry = TagRegistry::Defaults();
  // Set by ValidateCorpus when no ERROR was found.
  bool validated = false;

  const Treebank *FindTreebank(std::string_view lang) const;
  // Sorts pair sets into canonical order.
  void SortPairSets();

  friend bool operator==(const ParallelCorpus &a, const ParallelCorpus &b) {
    return a.treebanks == b.treebanks && a.pair_sets == b.pair_sets &&
           a.registry == b.registry;
  }
};

}  // namespace fuse

#endif  // FUSE_MODEL_H_
