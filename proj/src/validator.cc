#include "fuse/validator.h"

#include <algorithm>
#include <map>
#include <optional>

#include "fuse/unicode.h"

namespace fuse {
namespace {

std::string JoinIndices(const std::vector<int> &indices) {
  std::string out;
  for (size_t i = 0; i < indices.size(); ++i) {
    if (i > 0) out += ",";
    out += "t" + std::to_string(indices[i]);
  }
  return out;
}

class SentenceChecker {
 public:
  SentenceChecker(const MonolingualAnnotation &annotation,
                  const TagRegistry &registry, const std::string &file,
                  std::vector<Diagnostic> *out)
      : tree_(annotation.tree),
        layer_(annotation.predarg),
        registry_(registry),
        file_(file),
        out_(out) {}

  void Run() {
    CheckElements();
    for (const Binding &binding : layer_.bindings) CheckBinding(binding);
    CheckRecursion();
  }

 private:
  void Error(std::string_view code, int line, std::string message) {
    out_->push_back(MakeError(code, file_, line,
                              "sentence " + tree_.id + ": " + message));
  }

  void CheckElements() {
    for (const Predicate &p : layer_.predicates) {
      if (FindBinding(layer_, {p.id, ""}) == nullptr) {
        Error(codes::kBindMissing, p.loc.line,
              "predicate " + p.id + " has no binding");
      }
    }
    for (const Argument &a : layer_.arguments) {
      if (FindPredicate(layer_, a.pred_id) == nullptr) {
        Error(codes::kOrder, a.loc.line,
              "argument " + a.role + " of unknown predicate " + a.pred_id);
      }
      if (FindBinding(layer_, {a.pred_id, a.role}) == nullptr) {
        Error(codes::kBindMissing, a.loc.line,
              "argument " + a.pred_id + "." + a.role + " has no binding");
      }
    }
    std::map<ElementRef, int> seen;
    for (const Binding &b : layer_.bindings) {
      bool known = b.target.is_argument()
                       ? FindArgument(layer_, b.target.pred_id,
                                      b.target.role) != nullptr
                       : FindPredicate(layer_, b.target.pred_id) != nullptr;
      if (!known) {
        Error(codes::kBindTarget, b.loc.line,
              "binding for undeclared element " + b.target.ToString());
      }
      if (++seen[b.target] == 2) {
        Error(codes::kBindDup, b.loc.line,
              b.target.ToString() + " is bound twice");
      }
    }
  }

  void CheckBinding(const Binding &b) {
    const int line = b.loc.line;
    const std::string what = b.target.ToString();

    bool dangling = false;
    for (const auto *nodes : {&b.included, &b.excluded}) {
      for (NodeRef node : *nodes) {
        if (!Contains(tree_, node)) {
          Error(codes::kBindDangle, line,
                what + " is bound to " + node.ToString() +
                    ", which is not in the tree");
          dangling = true;
        }
      }
    }

    if (!b.tags.empty() && b.target.is_argument()) {
      Error(codes::kTagOnArg, line,
            "binding tags are only allowed on predicates, found on " + what);
    }
    for (const std::string &tag : b.tags) {
      if (!registry_.binding_tags.count(tag)) {
        Error(codes::kTagUnknown, line, "unknown binding tag '" + tag + "'");
      }
    }
    if (dangling) return;

    bool structural = true;
    if (b.included.empty()) {
      Error(codes::kYieldEmpty, line, what + " has no included node");
      return;
    }
    for (size_t i = 0; i < b.included.size(); ++i) {
      for (size_t j = i + 1; j < b.included.size(); ++j) {
        NodeRef x = b.included[i], y = b.included[j];
        if (x == y || IsProperAncestor(tree_, x, y) ||
            IsProperAncestor(tree_, y, x)) {
          Error(codes::kInclNested, line,
                what + " includes both " + x.ToString() + " and " +
                    y.ToString() + ", which dominate one another");
          structural = false;
        }
      }
    }
    for (NodeRef excluded : b.excluded) {
      int owners = 0;
      for (NodeRef included : b.included) {
        if (IsProperAncestor(tree_, included, excluded)) ++owners;
      }
      if (owners != 1) {
        Error(codes::kExclNotDesc, line,
              what + " excludes " + excluded.ToString() +
                  ", which is not a proper descendant of exactly one "
                  "included node");
        structural = false;
      }
    }
    if (!structural) return;

    try {
      yields_[b.target] = ResolveYield(tree_, b);
    } catch (const EmptyYieldError &) {
      Error(codes::kYieldEmpty, line,
            "exclusions remove every token bound to " + what);
    }
  }

  void CheckRecursion() {
    for (const Argument &a : layer_.arguments) {
      auto arg_yield = yields_.find({a.pred_id, a.role});
      auto pred_yield = yields_.find({a.pred_id, ""});
      if (arg_yield == yields_.end() || pred_yield == yields_.end()) continue;
      std::vector<int> overlap;
      std::set_intersection(arg_yield->second.begin(), arg_yield->second.end(),
                            pred_yield->second.begin(),
                            pred_yield->second.end(),
                            std::back_inserter(overlap));
      if (!overlap.empty()) {
        const Binding *b = FindBinding(layer_, {a.pred_id, a.role});
        Error(codes::kRecursion, b->loc.line,
              "argument " + a.pred_id + "." + a.role +
                  " contains its own predicate (" + JoinIndices(overlap) +
                  ")");
      }
    }
  }

  const SentenceTree &tree_;
  const PredArgLayer &layer_;
  const TagRegistry &registry_;
  const std::string &file_;
  std::vector<Diagnostic> *out_;
  std::map<ElementRef, std::vector<int>> yields_;
};

void CheckRoleInventory(
    const std::vector<const MonolingualAnnotation *> &annotations,
    const std::string &file, std::vector<Diagnostic> *out) {
  struct RoleUse {
    std::string role;
    int line;
  };
  std::map<std::string, std::vector<RoleUse>> groups;
  for (const MonolingualAnnotation *annotation : annotations) {
    const PredArgLayer &layer = annotation->predarg;
    for (const Argument &a : layer.arguments) {
      const Predicate *p = FindPredicate(layer, a.pred_id);
      if (p == nullptr) continue;
      auto &uses = groups[p->group];
      bool known = std::any_of(uses.begin(), uses.end(), [&](const RoleUse &u) {
        return u.role == a.role;
      });
      if (!known) uses.push_back({a.role, a.loc.line});
    }
  }
  for (const auto &[group, uses] : groups) {
    for (size_t j = 1; j < uses.size(); ++j) {
      for (size_t i = 0; i < j; ++i) {
        if (AreNearDuplicateRoles(uses[i].role, uses[j].role)) {
          out->push_back(MakeWarning(
              codes::kRoleNearDup, file, uses[j].line,
              "role " + uses[j].role + " in group " + group +
                  " looks like a variant of " + uses[i].role));
        }
      }
    }
  }
}

bool Resolves(const MonolingualAnnotation &annotation, const ElementRef &ref) {
  if (ref.is_argument()) {
    return FindArgument(annotation.predarg, ref.pred_id, ref.role) != nullptr;
  }
  return FindPredicate(annotation.predarg, ref.pred_id) != nullptr;
}

}  // namespace

bool AreNearDuplicateRoles(std::string_view a, std::string_view b) {
  if (a == b) return false;
  if (std::min(CodePointLength(a), CodePointLength(b)) < 4) return false;
  return FoldCase(a) == FoldCase(b) || Levenshtein(a, b) <= 1;
}

std::vector<Diagnostic> ValidateMonolingual(
    const MonolingualAnnotation &annotation, const TagRegistry &registry,
    const std::string &file) {
  std::vector<Diagnostic> out;
  SentenceChecker(annotation, registry, file, &out).Run();
  CheckRoleInventory({&annotation}, file, &out);
  SortAndDedupe(out);
  return out;
}

std::vector<Diagnostic> ValidateTreebank(const Treebank &treebank,
                                         const TagRegistry &registry) {
  std::vector<Diagnostic> out;
  std::vector<const MonolingualAnnotation *> all;
  for (const MonolingualAnnotation &annotation : treebank.sentences) {
    SentenceChecker(annotation, registry, treebank.predarg_file, &out).Run();
    all.push_back(&annotation);
  }
  CheckRoleInventory(all, treebank.predarg_file, &out);
  SortAndDedupe(out);
  return out;
}

std::vector<Diagnostic> ValidatePair(const ParallelCorpus &corpus,
                                     const PairSet &pair_set,
                                     const SentencePairAlignment &pair,
                                     const ValidatorOptions &options) {
  std::vector<Diagnostic> out;
  const std::string &file = pair_set.file;
  const std::string where =
      pair.left_lang + ":" + pair.left_sentence + " " + pair.right_lang + ":" +
      pair.right_sentence;
  auto error = [&](std::string_view code, int line, std::string message) {
    out.push_back(MakeError(code, file, line,
                            "pair " + where + ": " + message));
  };

  if (pair.left_lang != pair_set.left_lang ||
      pair.right_lang != pair_set.right_lang) {
    error(codes::kPairLang, pair.loc.line,
          "languages do not match the alignment set " + pair_set.left_lang +
              "-" + pair_set.right_lang);
    return out;
  }
  const MonolingualAnnotation *sides[2] = {nullptr, nullptr};
  const std::string *langs[2] = {&pair.left_lang, &pair.right_lang};
  const std::string *sids[2] = {&pair.left_sentence, &pair.right_sentence};
  for (int s = 0; s < 2; ++s) {
    const Treebank *treebank = corpus.FindTreebank(*langs[s]);
    if (treebank != nullptr) sides[s] = treebank->Find(*sids[s]);
    if (sides[s] == nullptr) {
      error(codes::kSentenceUnknown, pair.loc.line,
            "unknown sentence " + *langs[s] + ":" + *sids[s]);
    }
  }
  if (sides[0] == nullptr || sides[1] == nullptr) return out;

  std::vector<const Alignment *> usable;
  for (const Alignment &a : pair.alignments) {
    if (!a.tag.empty() && !corpus.registry.alignment_tags.count(a.tag)) {
      error(codes::kAlignTag, a.loc.line,
            "unregistered alignment tag '" + a.tag + "'");
    }
    bool resolved = true;
    const ElementRef *refs[2] = {&a.left, &a.right};
    for (int s = 0; s < 2; ++s) {
      if (!Resolves(*sides[s], *refs[s])) {
        error(codes::kAlignDangle, a.loc.line,
              "unknown element " + refs[s]->ToString() + " in " + *langs[s] +
                  ":" + *sids[s]);
        resolved = false;
      }
    }
    bool want_argument = a.kind == AlignKind::kArgument;
    if (a.left.is_argument() != want_argument ||
        a.right.is_argument() != want_argument) {
      error(codes::kAlignKind, a.loc.line,
            std::string(want_argument ? "AALIGN" : "PALIGN") + " " +
                a.left.ToString() + " " + a.right.ToString() +
                " must link two " +
                (want_argument ? "arguments" : "predicates"));
      continue;
    }
    if (resolved) usable.push_back(&a);
  }

  if (!options.allow_multi_alignment) {
    std::map<ElementRef, int> used[2];
    for (const Alignment *a : usable) {
      const ElementRef *refs[2] = {&a->left, &a->right};
      for (int s = 0; s < 2; ++s) {
        if (++used[s][*refs[s]] == 2) {
          error(codes::kAlignDup, a->loc.line,
                refs[s]->ToString() + " (" + *langs[s] +
                    ") takes part in more than one alignment");
        }
      }
    }
  }

  for (const Alignment *a : usable) {
    if (a->kind != AlignKind::kArgument) continue;
    ElementRef left_owner = a->left.owner(), right_owner = a->right.owner();
    bool licensed = std::any_of(usable.begin(), usable.end(),
                                [&](const Alignment *p) {
                                  return p->kind == AlignKind::kPredicate &&
                                         p->left == left_owner &&
                                         p->right == right_owner;
                                });
    if (!licensed) {
      error(codes::kAlignOrphanArg, a->loc.line,
            "arguments " + a->left.ToString() + " and " +
                a->right.ToString() + " are aligned but their predicates " +
                "are not");
    }
  }
  SortAndDedupe(out);
  return out;
}

std::vector<Diagnostic> ValidateCorpus(ParallelCorpus &corpus,
                                       const ValidatorOptions &options) {
  std::vector<Diagnostic> out;
  for (const auto &[lang, treebank] : corpus.treebanks) {
    auto d = ValidateTreebank(treebank, corpus.registry);
    out.insert(out.end(), d.begin(), d.end());
  }
  for (const PairSet &pair_set : corpus.pair_sets) {
    for (const SentencePairAlignment &pair : pair_set.pairs) {
      auto d = ValidatePair(corpus, pair_set, pair, options);
      out.insert(out.end(), d.begin(), d.end());
    }
  }
  SortAndDedupe(out);
  corpus.validated = !HasError(out);
  return out;
}

}  // namespace fuse
