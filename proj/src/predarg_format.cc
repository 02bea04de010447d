#include <algorithm>
#include <map>
#include <set>

#include "fuse/formats.h"
#include "fuse/unicode.h"
#include "text_util.h"

namespace fuse {

using internal::Document;
using internal::Line;

namespace {

constexpr std::string_view kHeader = "%% fuse predarg\n";

using Attributes = std::map<std::string_view, std::string_view>;

Attributes ParseAttributes(const Document &doc, const Line &line,
                           const std::vector<std::string_view> &words,
                           size_t first,
                           const std::set<std::string_view> &allowed) {
  Attributes attrs;
  for (size_t i = first; i < words.size(); ++i) {
    size_t eq = words[i].find('=');
    if (eq == std::string_view::npos) {
      doc.Fail(codes::kSyntax, line.number,
               "expected key=value, found '" + std::string(words[i]) + "'");
    }
    std::string_view key = words[i].substr(0, eq);
    std::string_view value = words[i].substr(eq + 1);
    if (!allowed.count(key)) {
      doc.Fail(codes::kSyntax, line.number,
               "unknown attribute '" + std::string(key) + "'");
    }
    if (value.empty()) {
      doc.Fail(codes::kSyntax, line.number,
               "empty value for '" + std::string(key) + "'");
    }
    if (!attrs.emplace(key, value).second) {
      doc.Fail(codes::kSyntax, line.number,
               "repeated attribute '" + std::string(key) + "'");
    }
  }
  return attrs;
}

std::string_view Require(const Document &doc, const Line &line,
                         const Attributes &attrs, std::string_view key) {
  auto it = attrs.find(key);
  if (it == attrs.end()) {
    doc.Fail(codes::kSyntax, line.number,
             "missing attribute '" + std::string(key) + "'");
  }
  return it->second;
}

std::string UpperName(const Document &doc, const Line &line,
                      std::string_view what, std::string_view value) {
  if (!IsUpperName(value)) {
    doc.Fail(codes::kName, line.number,
             std::string(what) + " '" + std::string(value) +
                 "' must consist of uppercase letters, '_' and '-'");
  }
  return std::string(value);
}

std::vector<NodeRef> ParseNodeList(const Document &doc, const Line &line,
                                   std::string_view value) {
  std::vector<NodeRef> nodes;
  for (std::string_view item : internal::SplitOn(value, ',')) {
    auto node = NodeRef::Parse(item);
    if (!node) {
      doc.Fail(codes::kRef, line.number,
               "malformed node reference '" + std::string(item) + "'");
    }
    nodes.push_back(*node);
  }
  return nodes;
}

// Reads the nodes/excl/tags attributes. Returns false when the element is
// declared without a binding.
bool ParseBinding(const Document &doc, const Line &line,
                  const Attributes &attrs, const TagRegistry &registry,
                  Binding *binding) {
  auto nodes = attrs.find("nodes");
  if (nodes == attrs.end()) {
    if (attrs.count("excl") || attrs.count("tags")) {
      doc.Fail(codes::kSyntax, line.number,
               "excl/tags given without nodes");
    }
    return false;
  }
  binding->included = ParseNodeList(doc, line, nodes->second);
  if (auto excl = attrs.find("excl"); excl != attrs.end()) {
    binding->excluded = ParseNodeList(doc, line, excl->second);
  }
  if (auto tags = attrs.find("tags"); tags != attrs.end()) {
    for (std::string_view tag : internal::SplitOn(tags->second, ',')) {
      if (!registry.binding_tags.count(std::string(tag))) {
        doc.Fail(codes::kTagUnknown, line.number,
                 "unknown binding tag '" + std::string(tag) + "'");
      }
      binding->tags.emplace_back(tag);
    }
  }
  binding->loc.line = line.number;
  return true;
}

std::string NodeList(const std::vector<NodeRef> &nodes) {
  std::vector<std::string> parts;
  for (NodeRef n : nodes) parts.push_back(n.ToString());
  return internal::Join(parts, ",");
}

std::string BindingAttributes(const Binding *binding) {
  if (binding == nullptr) return "";
  std::string out = " nodes=" + NodeList(binding->included);
  if (!binding->excluded.empty()) out += " excl=" + NodeList(binding->excluded);
  if (!binding->tags.empty()) {
    out += " tags=" + internal::Join(binding->tags, ",");
  }
  return out;
}

class BlockParser {
 public:
  BlockParser(const Document &doc, const TagRegistry &registry,
              PredArgSentence *block)
      : doc_(doc), registry_(registry), block_(block) {}

  void Consume(const Line &line) {
    auto words = internal::SplitWords(line.text);
    if (words.size() < 2) {
      doc_.Fail(codes::kSyntax, line.number, "incomplete line");
    }
    if (words[0] == "PRED") {
      PredLine(line, words);
    } else if (words[0] == "ARG") {
      ArgLine(line, words);
    } else if (words[0] == "BIND") {
      BindLine(line, words);
    } else {
      doc_.Fail(codes::kSyntax, line.number,
                "unknown keyword '" + std::string(words[0]) + "'");
    }
  }

 private:
  void PredLine(const Line &line, const std::vector<std::string_view> &words) {
    std::string id(words[1]);
    if (!IsValidPredId(id)) {
      doc_.Fail(codes::kRef, line.number, "malformed predicate id '" + id + "'");
    }
    if (FindPredicate(block_->predarg, id) != nullptr) {
      doc_.Fail(codes::kPredDup, line.number, "duplicate predicate id " + id);
    }
    Attributes attrs = ParseAttributes(
        doc_, line, words, 2,
        {"lemma", "class", "group", "nodes", "excl", "tags"});
    Predicate pred;
    pred.id = id;
    pred.lemma = UpperName(doc_, line, "lemma",
                           Require(doc_, line, attrs, "lemma"));
    std::string_view cls = Require(doc_, line, attrs, "class");
    auto parsed = ParsePredClass(cls);
    if (!parsed) {
      doc_.Fail(codes::kClass, line.number,
                "class '" + std::string(cls) + "' is not one of v, n, a");
    }
    pred.cls = *parsed;
    pred.group = UpperName(doc_, line, "group",
                           Require(doc_, line, attrs, "group"));
    pred.loc.line = line.number;
    AddBinding(line, attrs, {id, ""});
    block_->predarg.predicates.push_back(std::move(pred));
  }

  void ArgLine(const Line &line, const std::vector<std::string_view> &words) {
    std::string id(words[1]);
    if (!IsValidPredId(id)) {
      doc_.Fail(codes::kRef, line.number, "malformed predicate id '" + id + "'");
    }
    if (FindPredicate(block_->predarg, id) == nullptr) {
      doc_.Fail(codes::kOrder, line.number,
                "argument of " + id + " before its PRED line");
    }
    Attributes attrs = ParseAttributes(doc_, line, words, 2,
                                       {"role", "nodes", "excl", "tags"});
    Argument arg;
    arg.pred_id = id;
    arg.role = UpperName(doc_, line, "role", Require(doc_, line, attrs, "role"));
    if (FindArgument(block_->predarg, id, arg.role) != nullptr) {
      doc_.Fail(codes::kRoleDup, line.number,
                "predicate " + id + " already has role " + arg.role);
    }
    arg.loc.line = line.number;
    AddBinding(line, attrs, {id, arg.role});
    block_->predarg.arguments.push_back(std::move(arg));
  }

  void BindLine(const Line &line, const std::vector<std::string_view> &words) {
    auto ref = ElementRef::Parse(words[1]);
    if (!ref) {
      doc_.Fail(codes::kRef, line.number,
                "malformed element reference '" + std::string(words[1]) + "'");
    }
    bool declared =
        ref->is_argument()
            ? FindArgument(block_->predarg, ref->pred_id, ref->role) != nullptr
            : FindPredicate(block_->predarg, ref->pred_id) != nullptr;
    if (!declared) {
      doc_.Fail(codes::kOrder, line.number,
                "binding of " + ref->ToString() + " before its declaration");
    }
    Attributes attrs =
        ParseAttributes(doc_, line, words, 2, {"nodes", "excl", "tags"});
    Require(doc_, line, attrs, "nodes");
    AddBinding(line, attrs, *ref);
  }

  void AddBinding(const Line &line, const Attributes &attrs,
                  const ElementRef &target) {
    Binding binding;
    if (!ParseBinding(doc_, line, attrs, registry_, &binding)) return;
    if (FindBinding(block_->predarg, target) != nullptr) {
      doc_.Fail(codes::kBindDup, line.number,
                target.ToString() + " is already bound");
    }
    binding.target = target;
    block_->predarg.bindings.push_back(std::move(binding));
  }

  const Document &doc_;
  const TagRegistry &registry_;
  PredArgSentence *block_;
};

}  // namespace

std::vector<PredArgSentence> ParsePredArg(std::string_view text,
                                          const std::string &file,
                                          const TagRegistry &registry) {
  Document doc(text, file);
  std::vector<PredArgSentence> sentences;
  std::set<std::string> seen;
  bool inside = false;

  for (const Line &line : doc.lines()) {
    if (internal::IsComment(line.text)) continue;
    if (internal::IsBlank(line.text)) {
      inside = false;
      continue;
    }
    if (line.text.substr(0, 5) == "#SENT") {
      auto words = internal::SplitWords(line.text);
      if (words.size() != 2 || words[0] != "#SENT") {
        doc.Fail(codes::kSyntax, line.number, "expected '#SENT <id>'");
      }
      std::string id(words[1]);
      if (!seen.insert(id).second) {
        doc.Fail(codes::kSentenceDup, line.number,
                 "duplicate sentence block " + id);
      }
      PredArgSentence block;
      block.sentence_id = id;
      block.loc.line = line.number;
      sentences.push_back(std::move(block));
      inside = true;
      continue;
    }
    if (!inside) {
      doc.Fail(codes::kSyntax, line.number, "line outside a #SENT block");
    }
    BlockParser(doc, registry, &sentences.back()).Consume(line);
  }
  for (PredArgSentence &s : sentences) Canonicalize(s.predarg);
  return sentences;
}

std::string SerializePredArg(const std::vector<PredArgSentence> &sentences) {
  std::string out(kHeader);
  for (const PredArgSentence &sentence : sentences) {
    PredArgLayer layer = sentence.predarg;
    Canonicalize(layer);
    out += "\n#SENT " + sentence.sentence_id + "\n";
    for (const Predicate &p : layer.predicates) {
      out += "PRED " + p.id + " lemma=" + p.lemma + " class=" +
             ClassLetter(p.cls) + " group=" + p.group +
             BindingAttributes(FindBinding(layer, {p.id, ""})) + "\n";
      for (const fuse::Argument &a : layer.arguments) {
        if (a.pred_id != p.id) continue;
        out += "ARG " + a.pred_id + " role=" + a.role +
               BindingAttributes(FindBinding(layer, {a.pred_id, a.role})) +
               "\n";
      }
    }
  }
  return out;
}

}  // namespace fuse
