#include "support/oracles.h"

#include <algorithm>
#include <map>

namespace fuse::testing {

namespace {

using Attributes = std::map<std::string, std::set<std::string>>;

bool Accepts(const Query &query, const Attributes &attributes) {
  for (const QueryFilter &f : query.filters) {
    auto it = attributes.find(f.key);
    bool holds = it != attributes.end() && it->second.count(f.value) > 0;
    if (holds == f.negated) return false;
  }
  return true;
}

std::set<std::string> TagSet(const std::vector<std::string> &tags) {
  if (tags.empty()) return {"none"};
  return {tags.begin(), tags.end()};
}

std::string TagText(const std::vector<std::string> &tags) {
  std::set<std::string> set = TagSet(tags);
  std::string out;
  for (const auto &t : set) out += (out.empty() ? "" : ",") + t;
  return out;
}

std::string Letter(PredClass cls) {
  switch (cls) {
    case PredClass::kVerbal: return "v";
    case PredClass::kNominal: return "n";
    case PredClass::kAdjectival: return "a";
  }
  return "?";
}

const Predicate &Pred(const MonolingualAnnotation &s, const std::string &id) {
  for (const auto &p : s.predarg.predicates) {
    if (p.id == id) return p;
  }
  throw std::runtime_error("oracle: no predicate " + id);
}

std::vector<std::string> Tags(const MonolingualAnnotation &s,
                              const ElementRef &ref) {
  for (const auto &b : s.predarg.bindings) {
    if (b.target == ref) return b.tags;
  }
  return {};
}

const MonolingualAnnotation &Sentence(const ParallelCorpus &corpus,
                                      const std::string &lang,
                                      const std::string &id) {
  for (const auto &s : corpus.treebanks.at(lang).sentences) {
    if (s.tree.id == id) return s;
  }
  throw std::runtime_error("oracle: no sentence " + lang + ":" + id);
}

std::string RefText(const ElementRef &ref) {
  return ref.role.empty() ? ref.pred_id : ref.pred_id + "." + ref.role;
}

std::string YieldText(const SentenceTree &tree, const std::vector<int> &yield) {
  std::string out;
  for (size_t i = 0; i < yield.size(); ++i) {
    if (i > 0) out += yield[i] == yield[i - 1] + 1 ? " " : " … ";
    out += tree.tokens[yield[i] - 1].form;
  }
  return out;
}

}  // namespace

std::vector<int> OracleNodeYield(const SentenceTree &tree, NodeRef node) {
  if (node.is_terminal()) return {node.id};
  std::vector<int> out;
  for (const Token &t : tree.tokens) {
    int at = t.parent;
    for (size_t steps = 0; at != kVirtualRoot && steps <= tree.nonterminals.size();
         ++steps) {
      if (at == node.id) {
        out.push_back(t.index);
        break;
      }
      int next = kVirtualRoot;
      for (const NonTerminal &n : tree.nonterminals) {
        if (n.id == at) next = n.parent;
      }
      at = next;
    }
  }
  return out;
}

std::vector<int> OracleResolveYield(const SentenceTree &tree,
                                    const Binding &binding) {
  std::set<int> yield;
  for (const NodeRef &n : binding.included) {
    for (int i : OracleNodeYield(tree, n)) yield.insert(i);
  }
  for (const NodeRef &n : binding.excluded) {
    for (int i : OracleNodeYield(tree, n)) yield.erase(i);
  }
  return {yield.begin(), yield.end()};
}

std::vector<std::vector<std::string>> OracleQuery(const ParallelCorpus &corpus,
                                                  const Query &query) {
  std::vector<std::vector<std::string>> rows;
  switch (query.command) {
    case QueryCommand::kPreds:
    case QueryCommand::kAligns:
      for (const PairSet &set : corpus.pair_sets) {
        std::string langs = set.left_lang + "-" + set.right_lang;
        for (const auto &pair : set.pairs) {
          const auto &ls = Sentence(corpus, pair.left_lang, pair.left_sentence);
          const auto &rs =
              Sentence(corpus, pair.right_lang, pair.right_sentence);
          for (const Alignment &al : pair.alignments) {
            std::string atag = al.tag.empty() ? "none" : al.tag;
            bool is_pred = al.kind == AlignKind::kPredicate;
            if (query.command == QueryCommand::kAligns) {
              Attributes attrs = {{"kind", {is_pred ? "pred" : "arg"}},
                                  {"atag", {atag}}};
              if (!Accepts(query, attrs)) continue;
              std::string ll = is_pred ? Pred(ls, al.left.pred_id).lemma
                                       : al.left.role;
              std::string rl = is_pred ? Pred(rs, al.right.pred_id).lemma
                                       : al.right.role;
              rows.push_back({langs, pair.left_sentence, pair.right_sentence,
                              is_pred ? "pred" : "arg", RefText(al.left), ll,
                              RefText(al.right), rl, atag});
              continue;
            }
            if (!is_pred) continue;
            const Predicate &l = Pred(ls, al.left.pred_id);
            const Predicate &r = Pred(rs, al.right.pred_id);
            auto lt = Tags(ls, al.left);
            auto rt = Tags(rs, al.right);
            bool lpv = std::count(lt.begin(), lt.end(), "pv") > 0;
            bool rpv = std::count(rt.begin(), rt.end(), "pv") > 0;
            Attributes attrs = {
                {"class", {Letter(l.cls)}},
                {"aligned-class", {Letter(r.cls)}},
                {"lemma", {l.lemma, r.lemma}},
                {"group", {l.group, r.group}},
                {"tag", TagSet(lt)},
                {"aligned-tag", TagSet(rt)},
                {"atag", {atag}},
                {"voice", {lpv != rpv ? "diverge" : "same"}}};
            if (!Accepts(query, attrs)) continue;
            rows.push_back({langs, pair.left_sentence, pair.right_sentence,
                            l.id, l.lemma, Letter(l.cls), TagText(lt), r.id,
                            r.lemma, Letter(r.cls), TagText(rt), atag});
          }
        }
      }
      break;

    case QueryCommand::kUnaligned:
    case QueryCommand::kRealizations:
      for (const auto &[lang, tb] : corpus.treebanks) {
        for (const auto &s : tb.sentences) {
          std::vector<ElementRef> refs;
          for (const auto &p : s.predarg.predicates) refs.push_back({p.id, ""});
          for (const auto &a : s.predarg.arguments) {
            refs.push_back({a.pred_id, a.role});
          }
          for (const ElementRef &ref : refs) {
            const Predicate &owner = Pred(s, ref.pred_id);
            bool is_arg = !ref.role.empty();
            if (query.command == QueryCommand::kUnaligned) {
              bool aligned = false;
              for (const PairSet &set : corpus.pair_sets) {
                for (const auto &pair : set.pairs) {
                  for (const Alignment &al : pair.alignments) {
                    aligned |= pair.left_lang == lang &&
                               pair.left_sentence == s.tree.id &&
                               al.left == ref;
                    aligned |= pair.right_lang == lang &&
                               pair.right_sentence == s.tree.id &&
                               al.right == ref;
                  }
                }
              }
              if (aligned) continue;
              Attributes attrs = {{"kind", {is_arg ? "arg" : "pred"}},
                                  {"lang", {lang}}};
              if (!Accepts(query, attrs)) continue;
              rows.push_back({lang, s.tree.id, is_arg ? "arg" : "pred",
                              RefText(ref), owner.lemma, Letter(owner.cls),
                              is_arg ? ref.role : "-"});
              continue;
            }
            if (!is_arg) continue;
            Attributes attrs = {{"group", {owner.group}},
                                {"role", {ref.role}},
                                {"lang", {lang}},
                                {"class", {Letter(owner.cls)}}};
            if (!Accepts(query, attrs)) continue;
            std::vector<int> yield;
            for (const auto &b : s.predarg.bindings) {
              if (b.target == ref) yield = OracleResolveYield(s.tree, b);
            }
            std::string indices;
            for (int i : yield) {
              indices += (indices.empty() ? "" : ",") + std::to_string(i);
            }
            rows.push_back({lang, s.tree.id, owner.id, owner.lemma,
                            Letter(owner.cls), owner.group, ref.role, indices,
                            YieldText(s.tree, yield)});
          }
        }
      }
      break;

    case QueryCommand::kFrames: {
      std::map<std::vector<std::string>, int> counts;
      for (const auto &[lang, tb] : corpus.treebanks) {
        for (const auto &s : tb.sentences) {
          for (const auto &p : s.predarg.predicates) {
            Attributes attrs = {{"lemma", {p.lemma}},
                                {"group", {p.group}},
                                {"lang", {lang}},
                                {"class", {Letter(p.cls)}}};
            if (!Accepts(query, attrs)) continue;
            std::multiset<std::string> roles;
            for (const auto &a : s.predarg.arguments) {
              if (a.pred_id == p.id) roles.insert(a.role);
            }
            std::string frame;
            for (const auto &r : roles) frame += (frame.empty() ? "" : "+") + r;
            ++counts[{lang, p.lemma, Letter(p.cls), p.group,
                      frame.empty() ? "-" : frame,
                      TagText(Tags(s, {p.id, ""}))}];
          }
        }
      }
      for (const auto &[key, count] : counts) {
        rows.push_back(key);
        rows.back().push_back(std::to_string(count));
      }
      break;
    }
  }
  std::sort(rows.begin(), rows.end());
  return rows;
}

std::vector<OracleSuggestion> OracleSuggest(const ParallelCorpus &corpus,
                                            const std::string &lang,
                                            const std::string &group,
                                            const std::set<std::string> &used) {
  std::vector<std::string> uses;
  for (const auto &s : corpus.treebanks.at(lang).sentences) {
    for (const auto &a : s.predarg.arguments) {
      if (Pred(s, a.pred_id).group == group) uses.push_back(a.role);
    }
  }
  std::set<std::string> distinct(uses.begin(), uses.end());
  std::vector<OracleSuggestion> out;
  for (const auto &role : distinct) {
    if (used.count(role)) continue;
    out.push_back({role, static_cast<int>(std::count(uses.begin(), uses.end(), role)),
                   static_cast<int>(uses.size())});
  }
  std::sort(out.begin(), out.end(), [](const auto &a, const auto &b) {
    return a.frequency != b.frequency ? a.frequency > b.frequency
                                      : a.role < b.role;
  });
  return out;
}

}  // namespace fuse::testing
