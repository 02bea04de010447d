#include "fuse/query.h"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "json.hpp"

#include "fuse/diagnostic.h"

namespace fuse {

namespace {

struct CommandInfo {
  QueryCommand command;
  std::string_view name;
  std::vector<std::string_view> keys;
  std::vector<std::string> columns;
};

const std::vector<CommandInfo> &Commands() {
  static const std::vector<CommandInfo> kCommands = {
      {QueryCommand::kPreds,
       "preds",
       {"class", "aligned-class", "lemma", "group", "tag", "aligned-tag",
        "atag", "voice"},
       {"langs", "left_sentence", "right_sentence", "left_pred", "left_lemma",
        "left_class", "left_tags", "right_pred", "right_lemma", "right_class",
        "right_tags", "atag"}},
      {QueryCommand::kAligns,
       "aligns",
       {"kind", "atag"},
       {"langs", "left_sentence", "right_sentence", "kind", "left",
        "left_label", "right", "right_label", "atag"}},
      {QueryCommand::kUnaligned,
       "unaligned",
       {"kind", "lang"},
       {"lang", "sentence", "kind", "element", "lemma", "class", "role"}},
      {QueryCommand::kRealizations,
       "realizations",
       {"group", "role", "lang", "class"},
       {"lang", "sentence", "pred", "lemma", "class", "group", "role", "tokens",
        "text"}},
      {QueryCommand::kFrames,
       "frames",
       {"lemma", "group", "lang", "class"},
       {"lang", "lemma", "class", "group", "frame", "tags", "count"}},
  };
  return kCommands;
}

const CommandInfo &InfoFor(QueryCommand command) {
  for (const CommandInfo &info : Commands()) {
    if (info.command == command) return info;
  }
  throw std::logic_error("unknown query command");
}

// Closed value sets; other keys take free text.
const std::vector<std::string_view> *AllowedValues(std::string_view key) {
  static const std::vector<std::string_view> kClasses = {"v", "n", "a"};
  static const std::vector<std::string_view> kKinds = {"pred", "arg"};
  static const std::vector<std::string_view> kVoices = {"diverge", "same"};
  if (key == "class" || key == "aligned-class") return &kClasses;
  if (key == "kind") return &kKinds;
  if (key == "voice") return &kVoices;
  return nullptr;
}

bool IsQuerySpace(char c) { return c == ' ' || c == '\t'; }

void CheckFilter(QueryCommand command, const QueryFilter &filter,
                 int position) {
  const auto &keys = InfoFor(command).keys;
  if (std::find(keys.begin(), keys.end(), filter.key) == keys.end()) {
    throw QueryError(codes::kQueryKey, position,
                     "key '" + filter.key + "' is not valid for '" +
                         std::string(CommandName(command)) + "'");
  }
  if (const auto *values = AllowedValues(filter.key)) {
    if (std::find(values->begin(), values->end(), filter.value) ==
        values->end()) {
      throw QueryError(codes::kQueryKey, position,
                       "invalid value '" + filter.value + "' for key '" +
                           filter.key + "'");
    }
  }
}

std::string JoinTags(const std::vector<std::string> &tags) {
  if (tags.empty()) return "none";
  std::set<std::string> unique(tags.begin(), tags.end());
  std::string out;
  for (const std::string &tag : unique) {
    if (!out.empty()) out += ',';
    out += tag;
  }
  return out;
}

std::vector<std::string> BindingTags(const PredArgLayer &layer,
                                     const ElementRef &ref) {
  const Binding *binding = FindBinding(layer, ref);
  return binding ? binding->tags : std::vector<std::string>{};
}

bool HasTag(const std::vector<std::string> &tags, const std::string &tag) {
  if (tag == "none") return tags.empty();
  return std::find(tags.begin(), tags.end(), tag) != tags.end();
}

std::string AlignTagText(const Alignment &alignment) {
  return alignment.tag.empty() ? "none" : alignment.tag;
}

bool AlignTagMatches(const Alignment &alignment, const std::string &value) {
  if (value == "none") return alignment.tag.empty();
  return alignment.tag == value;
}

std::string ClassText(PredClass cls) { return std::string(1, ClassLetter(cls)); }

// Every filter must hold. `test` answers the positive form of one filter.
template <typename Test>
bool AllHold(const Query &query, Test test) {
  for (const QueryFilter &filter : query.filters) {
    if (test(filter) == filter.negated) return false;
  }
  return true;
}

bool PairLess(const SentencePairAlignment *a, const SentencePairAlignment *b) {
  if (a->left_sentence != b->left_sentence) {
    return NaturalLess(a->left_sentence, b->left_sentence);
  }
  return NaturalLess(a->right_sentence, b->right_sentence);
}

std::vector<const SentencePairAlignment *> OrderedPairs(const PairSet &set) {
  std::vector<const SentencePairAlignment *> pairs;
  for (const auto &pair : set.pairs) pairs.push_back(&pair);
  std::stable_sort(pairs.begin(), pairs.end(), PairLess);
  return pairs;
}

std::vector<const MonolingualAnnotation *> OrderedSentences(
    const Treebank &treebank) {
  std::vector<const MonolingualAnnotation *> sentences;
  for (const auto &sentence : treebank.sentences) sentences.push_back(&sentence);
  std::stable_sort(sentences.begin(), sentences.end(),
                   [](const auto *a, const auto *b) {
                     return NaturalLess(a->tree.id, b->tree.id);
                   });
  return sentences;
}

struct PairSides {
  const MonolingualAnnotation *left = nullptr;
  const MonolingualAnnotation *right = nullptr;
};

PairSides Sides(const ParallelCorpus &corpus, const SentencePairAlignment &pair) {
  PairSides sides;
  if (const Treebank *tb = corpus.FindTreebank(pair.left_lang)) {
    sides.left = tb->Find(pair.left_sentence);
  }
  if (const Treebank *tb = corpus.FindTreebank(pair.right_lang)) {
    sides.right = tb->Find(pair.right_sentence);
  }
  if (!sides.left || !sides.right) {
    throw ResolutionError("sentence pair " + pair.left_lang + ":" +
                          pair.left_sentence + " " + pair.right_lang + ":" +
                          pair.right_sentence + " does not resolve");
  }
  return sides;
}

std::string Langs(const PairSet &set) {
  return set.left_lang + "-" + set.right_lang;
}

void RunPreds(const ParallelCorpus &corpus, const Query &query,
              QueryResult &result) {
  for (const PairSet &set : corpus.pair_sets) {
    for (const auto *pair : OrderedPairs(set)) {
      PairSides sides = Sides(corpus, *pair);
      for (const Alignment &alignment : pair->alignments) {
        if (alignment.kind != AlignKind::kPredicate) continue;
        const Predicate *left =
            FindPredicate(sides.left->predarg, alignment.left.pred_id);
        const Predicate *right =
            FindPredicate(sides.right->predarg, alignment.right.pred_id);
        if (!left || !right) {
          throw ResolutionError("predicate alignment does not resolve");
        }
        auto left_tags = BindingTags(sides.left->predarg, alignment.left);
        auto right_tags = BindingTags(sides.right->predarg, alignment.right);
        bool ok = AllHold(query, [&](const QueryFilter &f) {
          if (f.key == "class") return ClassText(left->cls) == f.value;
          if (f.key == "aligned-class") return ClassText(right->cls) == f.value;
          if (f.key == "lemma") {
            return left->lemma == f.value || right->lemma == f.value;
          }
          if (f.key == "group") {
            return left->group == f.value || right->group == f.value;
          }
          if (f.key == "tag") return HasTag(left_tags, f.value);
          if (f.key == "aligned-tag") return HasTag(right_tags, f.value);
          if (f.key == "atag") return AlignTagMatches(alignment, f.value);
          // voice
          bool diverge = HasTag(left_tags, "pv") != HasTag(right_tags, "pv");
          return diverge == (f.value == "diverge");
        });
        if (!ok) continue;
        result.rows.push_back({{Langs(set), pair->left_sentence,
                                pair->right_sentence, left->id, left->lemma,
                                ClassText(left->cls), JoinTags(left_tags),
                                right->id, right->lemma, ClassText(right->cls),
                                JoinTags(right_tags), AlignTagText(alignment)}});
      }
    }
  }
}

std::string Label(const MonolingualAnnotation &annotation,
                  const ElementRef &ref) {
  if (ref.is_argument()) return ref.role;
  const Predicate *pred = FindPredicate(annotation.predarg, ref.pred_id);
  if (!pred) throw ResolutionError("predicate " + ref.pred_id + " unknown");
  return pred->lemma;
}

void RunAligns(const ParallelCorpus &corpus, const Query &query,
               QueryResult &result) {
  for (const PairSet &set : corpus.pair_sets) {
    for (const auto *pair : OrderedPairs(set)) {
      PairSides sides = Sides(corpus, *pair);
      for (const Alignment &alignment : pair->alignments) {
        std::string kind =
            alignment.kind == AlignKind::kPredicate ? "pred" : "arg";
        bool ok = AllHold(query, [&](const QueryFilter &f) {
          if (f.key == "kind") return kind == f.value;
          return AlignTagMatches(alignment, f.value);
        });
        if (!ok) continue;
        result.rows.push_back(
            {{Langs(set), pair->left_sentence, pair->right_sentence, kind,
              alignment.left.ToString(), Label(*sides.left, alignment.left),
              alignment.right.ToString(), Label(*sides.right, alignment.right),
              AlignTagText(alignment)}});
      }
    }
  }
}

// Every element of every sentence of every language, in row order.
template <typename Visit>
void ForEachElement(const ParallelCorpus &corpus, Visit visit) {
  for (const auto &[lang, treebank] : corpus.treebanks) {
    for (const auto *sentence : OrderedSentences(treebank)) {
      std::vector<ElementRef> refs;
      for (const Predicate &p : sentence->predarg.predicates) {
        refs.push_back({p.id, ""});
      }
      for (const Argument &a : sentence->predarg.arguments) {
        refs.push_back({a.pred_id, a.role});
      }
      std::sort(refs.begin(), refs.end());
      for (const ElementRef &ref : refs) {
        const Predicate *owner =
            FindPredicate(sentence->predarg, ref.pred_id);
        if (!owner) throw ResolutionError("predicate " + ref.pred_id + " unknown");
        visit(lang, *sentence, ref, *owner);
      }
    }
  }
}

void RunUnaligned(const ParallelCorpus &corpus, const Query &query,
                  QueryResult &result) {
  // (lang, sentence, element) for every aligned element.
  std::set<std::tuple<std::string, std::string, std::string>> aligned;
  for (const PairSet &set : corpus.pair_sets) {
    for (const auto &pair : set.pairs) {
      for (const Alignment &alignment : pair.alignments) {
        aligned.emplace(pair.left_lang, pair.left_sentence,
                        alignment.left.ToString());
        aligned.emplace(pair.right_lang, pair.right_sentence,
                        alignment.right.ToString());
      }
    }
  }
  ForEachElement(corpus, [&](const std::string &lang,
                             const MonolingualAnnotation &sentence,
                             const ElementRef &ref, const Predicate &owner) {
    if (aligned.count({lang, sentence.tree.id, ref.ToString()})) return;
    std::string kind = ref.is_argument() ? "arg" : "pred";
    bool ok = AllHold(query, [&](const QueryFilter &f) {
      if (f.key == "kind") return kind == f.value;
      return lang == f.value;
    });
    if (!ok) return;
    result.rows.push_back({{lang, sentence.tree.id, kind, ref.ToString(),
                            owner.lemma, ClassText(owner.cls),
                            ref.is_argument() ? ref.role : "-"}});
  });
}

std::string JoinIndices(const std::vector<int> &indices) {
  std::string out;
  for (int i : indices) {
    if (!out.empty()) out += ',';
    out += std::to_string(i);
  }
  return out;
}

void RunRealizations(const ParallelCorpus &corpus, const Query &query,
                     QueryResult &result) {
  ForEachElement(corpus, [&](const std::string &lang,
                             const MonolingualAnnotation &sentence,
                             const ElementRef &ref, const Predicate &owner) {
    if (!ref.is_argument()) return;
    bool ok = AllHold(query, [&](const QueryFilter &f) {
      if (f.key == "group") return owner.group == f.value;
      if (f.key == "role") return ref.role == f.value;
      if (f.key == "lang") return lang == f.value;
      return ClassText(owner.cls) == f.value;
    });
    if (!ok) return;
    const Binding *binding = FindBinding(sentence.predarg, ref);
    if (!binding) {
      throw ResolutionError("argument " + ref.ToString() + " in sentence " +
                            sentence.tree.id + " is unbound");
    }
    std::vector<int> yield = ResolveYield(sentence.tree, *binding);
    result.rows.push_back({{lang, sentence.tree.id, owner.id, owner.lemma,
                            ClassText(owner.cls), owner.group, ref.role,
                            JoinIndices(yield),
                            RenderYield(sentence.tree, yield)}});
  });
}

void RunFrames(const ParallelCorpus &corpus, const Query &query,
               QueryResult &result) {
  using Key = std::tuple<std::string, std::string, std::string, std::string,
                         std::string, std::string>;
  std::map<Key, int> counts;
  for (const auto &[lang, treebank] : corpus.treebanks) {
    for (const auto &sentence : treebank.sentences) {
      const PredArgLayer &layer = sentence.predarg;
      for (const Predicate &pred : layer.predicates) {
        bool ok = AllHold(query, [&](const QueryFilter &f) {
          if (f.key == "lemma") return pred.lemma == f.value;
          if (f.key == "group") return pred.group == f.value;
          if (f.key == "lang") return lang == f.value;
          return ClassText(pred.cls) == f.value;
        });
        if (!ok) continue;
        std::vector<std::string> roles;
        for (const Argument &arg : layer.arguments) {
          if (arg.pred_id == pred.id) roles.push_back(arg.role);
        }
        std::sort(roles.begin(), roles.end());
        std::string frame;
        for (const std::string &role : roles) {
          if (!frame.empty()) frame += '+';
          frame += role;
        }
        if (frame.empty()) frame = "-";
        ++counts[{lang, pred.lemma, ClassText(pred.cls), pred.group, frame,
                  JoinTags(BindingTags(layer, {pred.id, ""}))}];
      }
    }
  }
  for (const auto &[key, count] : counts) {
    const auto &[lang, lemma, cls, group, frame, tags] = key;
    result.rows.push_back(
        {{lang, lemma, cls, group, frame, tags, std::to_string(count)}});
  }
}

std::string EscapeTsv(const std::string &value) {
  std::string out;
  for (char c : value) {
    if (c == '\t' || c == '\n') {
      out += ' ';
    } else {
      out += c;
    }
  }
  return out;
}

}  // namespace

std::string_view CommandName(QueryCommand command) {
  return InfoFor(command).name;
}

QueryError::QueryError(std::string_view code, int position,
                       const std::string &message)
    : std::runtime_error(message), code_(code), position_(position) {}

const std::vector<std::string_view> &KeysFor(QueryCommand command) {
  return InfoFor(command).keys;
}

const std::vector<std::string> &ColumnsFor(QueryCommand command) {
  return InfoFor(command).columns;
}

Query ParseQuery(std::string_view text) {
  // Words with their 1-based start column.
  std::vector<std::pair<std::string, int>> words;
  size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && IsQuerySpace(text[i])) ++i;
    size_t start = i;
    while (i < text.size() && !IsQuerySpace(text[i])) ++i;
    if (i > start) {
      words.emplace_back(std::string(text.substr(start, i - start)),
                         static_cast<int>(start) + 1);
    }
  }
  if (words.empty()) throw QueryError(codes::kQuerySyntax, 1, "empty query");

  Query query;
  const auto &[name, name_pos] = words.front();
  auto command = std::find_if(Commands().begin(), Commands().end(),
                              [&](const CommandInfo &c) { return c.name == name; });
  if (command == Commands().end()) {
    throw QueryError(codes::kQuerySyntax, name_pos, "unknown command '" + name + "'");
  }
  query.command = command->command;

  for (size_t w = 1; w < words.size(); ++w) {
    const auto &[word, pos] = words[w];
    size_t eq = word.find('=');
    if (eq == std::string::npos) {
      throw QueryError(codes::kQuerySyntax, pos,
                       "expected key=value or key!=value, got '" + word + "'");
    }
    QueryFilter filter;
    size_t key_end = eq;
    if (eq > 0 && word[eq - 1] == '!') {
      filter.negated = true;
      key_end = eq - 1;
    }
    filter.key = word.substr(0, key_end);
    filter.value = word.substr(eq + 1);
    if (filter.key.empty()) {
      throw QueryError(codes::kQuerySyntax, pos, "empty key");
    }
    if (filter.value.empty()) {
      throw QueryError(codes::kQuerySyntax, pos + static_cast<int>(eq) + 1,
                       "empty value for key '" + filter.key + "'");
    }
    CheckFilter(query.command, filter, pos);
    query.filters.push_back(std::move(filter));
  }
  return query;
}

QueryResult RunQuery(const ParallelCorpus &corpus, const Query &query) {
  if (!corpus.validated) {
    throw QueryError(codes::kQueryUnvalidated, 0,
                     "corpus has not passed validation");
  }
  for (const QueryFilter &filter : query.filters) {
    if (filter.value.empty()) {
      throw QueryError(codes::kQuerySyntax, 0,
                       "empty value for key '" + filter.key + "'");
    }
    CheckFilter(query.command, filter, 0);
  }
  QueryResult result;
  result.columns = ColumnsFor(query.command);
  switch (query.command) {
    case QueryCommand::kPreds:
      RunPreds(corpus, query, result);
      break;
    case QueryCommand::kAligns:
      RunAligns(corpus, query, result);
      break;
    case QueryCommand::kUnaligned:
      RunUnaligned(corpus, query, result);
      break;
    case QueryCommand::kRealizations:
      RunRealizations(corpus, query, result);
      break;
    case QueryCommand::kFrames:
      RunFrames(corpus, query, result);
      break;
  }
  return result;
}

std::string RenderTsv(const QueryResult &result) {
  std::string out;
  auto line = [&](const std::vector<std::string> &values) {
    for (size_t i = 0; i < values.size(); ++i) {
      if (i) out += '\t';
      out += EscapeTsv(values[i]);
    }
    out += '\n';
  };
  line(result.columns);
  for (const ResultRow &row : result.rows) line(row.values);
  return out;
}

std::string RenderJsonLines(const QueryResult &result) {
  std::string out;
  for (const ResultRow &row : result.rows) {
    nlohmann::ordered_json object = nlohmann::ordered_json::object();
    for (size_t i = 0; i < result.columns.size() && i < row.values.size(); ++i) {
      object[result.columns[i]] = row.values[i];
    }
    out += object.dump();
    out += '\n';
  }
  return out;
}

}  // namespace fuse
