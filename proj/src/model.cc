#include "fuse/model.h"

#include <algorithm>
#include <charconv>
#include <tuple>
#include <unordered_map>

namespace fuse {
namespace {

bool IsDigit(char c) { return c >= '0' && c <= '9'; }

bool ParsePositiveInt(std::string_view text, int *value) {
  if (text.empty() || !IsDigit(text[0])) return false;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(),
                                   *value);
  return ec == std::errc() && ptr == text.data() + text.size();
}

std::string NodeDescription(const SentenceTree &tree, NodeRef node) {
  return "node " + node.ToString() + " in sentence " + tree.id;
}

}  // namespace

bool NaturalLess(std::string_view a, std::string_view b) {
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (IsDigit(a[i]) && IsDigit(b[j])) {
      size_t ei = i, ej = j;
      while (ei < a.size() && IsDigit(a[ei])) ++ei;
      while (ej < b.size() && IsDigit(b[ej])) ++ej;
      std::string_view da = a.substr(i, ei - i), db = b.substr(j, ej - j);
      while (da.size() > 1 && da[0] == '0') da.remove_prefix(1);
      while (db.size() > 1 && db[0] == '0') db.remove_prefix(1);
      if (da.size() != db.size()) return da.size() < db.size();
      if (da != db) return da < db;
      i = ei;
      j = ej;
    } else {
      if (a[i] != b[j]) {
        return static_cast<unsigned char>(a[i]) <
               static_cast<unsigned char>(b[j]);
      }
      ++i;
      ++j;
    }
  }
  if ((a.size() - i) != (b.size() - j)) return (a.size() - i) < (b.size() - j);
  return a < b;
}

std::string NodeRef::ToString() const {
  return (is_terminal() ? "t" : "n") + std::to_string(id);
}

std::optional<NodeRef> NodeRef::Parse(std::string_view text) {
  if (text.size() < 2) return std::nullopt;
  int value = 0;
  if (!ParsePositiveInt(text.substr(1), &value)) return std::nullopt;
  if (text[0] == 't' && value >= 1) return Terminal(value);
  if (text[0] == 'n') return NonTerminal(value);
  return std::nullopt;
}

void Canonicalize(SentenceTree &tree) {
  std::sort(tree.nonterminals.begin(), tree.nonterminals.end(),
            [](const NonTerminal &a, const NonTerminal &b) {
              return a.id < b.id;
            });
}

const NonTerminal *FindNonTerminal(const SentenceTree &tree, int id) {
  auto it = std::lower_bound(
      tree.nonterminals.begin(), tree.nonterminals.end(), id,
      [](const NonTerminal &nt, int key) { return nt.id < key; });
  if (it == tree.nonterminals.end() || it->id != id) return nullptr;
  return &*it;
}

bool Contains(const SentenceTree &tree, NodeRef node) {
  if (node.is_terminal()) {
    return node.id >= 1 && node.id <= static_cast<int>(tree.tokens.size());
  }
  return FindNonTerminal(tree, node.id) != nullptr;
}

int ParentOf(const SentenceTree &tree, NodeRef node) {
  if (!Contains(tree, node)) {
    throw ResolutionError("unknown " + NodeDescription(tree, node));
  }
  if (node.is_terminal()) return tree.tokens[node.id - 1].parent;
  return FindNonTerminal(tree, node.id)->parent;
}

bool IsProperAncestor(const SentenceTree &tree, NodeRef ancestor,
                      NodeRef node) {
  if (ancestor.is_terminal()) return false;
  int parent = ParentOf(tree, node);
  // Bounded walk; a well-formed tree has no cycles but callers may hand us
  // an unchecked one.
  for (size_t steps = 0;
       parent != kVirtualRoot && steps <= tree.nonterminals.size(); ++steps) {
    if (parent == ancestor.id) return true;
    const NonTerminal *nt = FindNonTerminal(tree, parent);
    if (nt == nullptr) return false;
    parent = nt->parent;
  }
  return false;
}

std::vector<int> NodeYield(const SentenceTree &tree, NodeRef node) {
  if (!Contains(tree, node)) {
    throw ResolutionError("unknown " + NodeDescription(tree, node));
  }
  if (node.is_terminal()) return {node.id};

  std::unordered_map<int, std::vector<int>> child_nts;
  std::unordered_map<int, std::vector<int>> child_tokens;
  for (const NonTerminal &nt : tree.nonterminals) {
    child_nts[nt.parent].push_back(nt.id);
  }
  for (const Token &token : tree.tokens) {
    child_tokens[token.parent].push_back(token.index);
  }

  std::vector<int> yield;
  std::vector<int> stack = {node.id};
  std::set<int> visited;
  while (!stack.empty()) {
    int id = stack.back();
    stack.pop_back();
    if (!visited.insert(id).second) continue;
    if (auto it = child_tokens.find(id); it != child_tokens.end()) {
      yield.insert(yield.end(), it->second.begin(), it->second.end());
    }
    if (auto it = child_nts.find(id); it != child_nts.end()) {
      stack.insert(stack.end(), it->second.begin(), it->second.end());
    }
  }
  std::sort(yield.begin(), yield.end());
  return yield;
}

std::string RenderYield(const SentenceTree &tree,
                        const std::vector<int> &yield) {
  std::string out;
  for (size_t i = 0; i < yield.size(); ++i) {
    if (i > 0) {
      out += ' ';
      if (yield[i] != yield[i - 1] + 1) out += "… ";
    }
    int index = yield[i];
    if (index >= 1 && index <= static_cast<int>(tree.tokens.size())) {
      out += tree.tokens[index - 1].form;
    }
  }
  return out;
}

char ClassLetter(PredClass cls) {
  switch (cls) {
    case PredClass::kVerbal:
      return 'v';
    case PredClass::kNominal:
      return 'n';
    case PredClass::kAdjectival:
      return 'a';
  }
  return '?';
}

std::optional<PredClass> ParsePredClass(std::string_view text) {
  if (text == "v") return PredClass::kVerbal;
  if (text == "n") return PredClass::kNominal;
  if (text == "a") return PredClass::kAdjectival;
  return std::nullopt;
}

std::string ElementRef::ToString() const {
  return role.empty() ? pred_id : pred_id + "." + role;
}

std::optional<ElementRef> ElementRef::Parse(std::string_view text) {
  size_t dot = text.find('.');
  ElementRef ref;
  ref.pred_id = std::string(text.substr(0, dot));
  if (!IsValidPredId(ref.pred_id)) return std::nullopt;
  if (dot != std::string_view::npos) {
    ref.role = std::string(text.substr(dot + 1));
    if (ref.role.empty()) return std::nullopt;
    for (char c : ref.role) {
      if (c == ' ' || c == '\t' || c == ',' || c == '=' || c == '.') {
        return std::nullopt;
      }
    }
  }
  return ref;
}

bool ElementRef::operator<(const ElementRef &other) const {
  if (pred_id != other.pred_id) return NaturalLess(pred_id, other.pred_id);
  return role < other.role;
}

bool IsValidPredId(std::string_view id) {
  if (id.empty()) return false;
  auto alpha = [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
  };
  if (!alpha(id[0])) return false;
  return std::all_of(id.begin(), id.end(), [&](char c) {
    return alpha(c) || IsDigit(c) || c == '_' || c == '-';
  });
}

void Canonicalize(PredArgLayer &layer) {
  std::sort(layer.predicates.begin(), layer.predicates.end(),
            [](const Predicate &a, const Predicate &b) {
              return NaturalLess(a.id, b.id);
            });
  std::sort(layer.arguments.begin(), layer.arguments.end(),
            [](const Argument &a, const Argument &b) {
              return ElementRef{a.pred_id, a.role} <
                     ElementRef{b.pred_id, b.role};
            });
  for (Binding &binding : layer.bindings) {
    std::sort(binding.included.begin(), binding.included.end());
    std::sort(binding.excluded.begin(), binding.excluded.end());
    std::sort(binding.tags.begin(), binding.tags.end());
  }
  std::sort(layer.bindings.begin(), layer.bindings.end(),
            [](const Binding &a, const Binding &b) {
              return a.target < b.target;
            });
}

const Predicate *FindPredicate(const PredArgLayer &layer,
                               std::string_view id) {
  for (const Predicate &p : layer.predicates) {
    if (p.id == id) return &p;
  }
  return nullptr;
}

const Argument *FindArgument(const PredArgLayer &layer, std::string_view id,
                             std::string_view role) {
  for (const Argument &a : layer.arguments) {
    if (a.pred_id == id && a.role == role) return &a;
  }
  return nullptr;
}

const Binding *FindBinding(const PredArgLayer &layer, const ElementRef &ref) {
  for (const Binding &b : layer.bindings) {
    if (b.target == ref) return &b;
  }
  return nullptr;
}

Element ElementOf(const MonolingualAnnotation &annotation,
                  const ElementRef &ref) {
  if (!ref.is_argument()) {
    if (const Predicate *p = FindPredicate(annotation.predarg, ref.pred_id)) {
      return p;
    }
  } else if (const Argument *a = FindArgument(annotation.predarg, ref.pred_id,
                                              ref.role)) {
    return a;
  }
  throw ResolutionError("unknown element " + ref.ToString() +
                        " in sentence " + annotation.tree.id);
}

std::vector<int> ResolveYield(const SentenceTree &tree,
                              const Binding &binding) {
  std::set<int> tokens;
  for (NodeRef node : binding.included) {
    for (int t : NodeYield(tree, node)) tokens.insert(t);
  }
  for (NodeRef node : binding.excluded) {
    for (int t : NodeYield(tree, node)) tokens.erase(t);
  }
  if (tokens.empty()) {
    throw EmptyYieldError("empty binding yield for " +
                          binding.target.ToString() + " in sentence " +
                          tree.id);
  }
  return {tokens.begin(), tokens.end()};
}

bool IsDiscontinuous(const SentenceTree &tree, const Binding &binding) {
  std::vector<int> yield = ResolveYield(tree, binding);
  return yield.back() - yield.front() + 1 != static_cast<int>(yield.size());
}

void Canonicalize(SentencePairAlignment &pair) {
  std::sort(pair.alignments.begin(), pair.alignments.end(),
            [](const Alignment &a, const Alignment &b) {
              if (!(a.left == b.left)) return a.left < b.left;
              if (a.kind != b.kind) return a.kind < b.kind;
              if (!(a.right == b.right)) return a.right < b.right;
              return a.tag < b.tag;
            });
}

TagRegistry TagRegistry::Defaults() {
  return {{"imp", "pv"}, {"abs-opp", "incomp"}};
}

const MonolingualAnnotation *Treebank::Find(
    std::string_view sentence_id) const {
  auto it = index_.find(sentence_id);
  if (it == index_.end()) return nullptr;
  return &sentences[it->second];
}

void Treebank::Reindex() {
  index_.clear();
  for (size_t i = 0; i < sentences.size(); ++i) {
    index_.emplace(sentences[i].tree.id, i);
  }
}

const Treebank *ParallelCorpus::FindTreebank(std::string_view lang) const {
  auto it = treebanks.find(std::string(lang));
  return it == treebanks.end() ? nullptr : &it->second;
}

void ParallelCorpus::SortPairSets() {
  std::stable_sort(pair_sets.begin(), pair_sets.end(),
                   [](const PairSet &a, const PairSet &b) {
                     return std::tie(a.left_lang, a.right_lang, a.file) <
                            std::tie(b.left_lang, b.right_lang, b.file);
                   });
}

}  // namespace fuse
