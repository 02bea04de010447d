#include <algorithm>
#include <map>
#include <set>

#include "fuse/formats.h"
#include "text_util.h"

namespace fuse {

using internal::Document;
using internal::Line;

namespace {

std::string EdgeField(const std::string &edge) {
  return edge.empty() ? "--" : edge;
}

std::string EdgeValue(std::string_view field) {
  return field == "--" ? std::string() : std::string(field);
}

int ParseParent(const Document &doc, const Line &line,
                std::string_view field) {
  int parent = 0;
  if (!internal::ParseNonNegative(field, &parent)) {
    doc.Fail(codes::kSyntax, line.number,
             "malformed parent '" + std::string(field) + "'");
  }
  if (parent != kVirtualRoot && parent < kMinNonTerminalId) {
    doc.Fail(codes::kTreeParent, line.number,
             "parent " + std::to_string(parent) +
                 " is neither 0 nor a nonterminal id");
  }
  return parent;
}

std::vector<std::string_view> TabFields(const Document &doc,
                                        const Line &line) {
  std::vector<std::string_view> fields = internal::SplitOn(line.text, '\t');
  if (fields.size() != 4) {
    doc.Fail(codes::kSyntax, line.number,
             "expected 4 tab-separated fields, found " +
                 std::to_string(fields.size()));
  }
  for (std::string_view f : fields) {
    if (f.empty()) doc.Fail(codes::kSyntax, line.number, "empty field");
  }
  return fields;
}

// Structural checks that need the whole sentence.
void CheckSentence(const Document &doc, const SentenceTree &tree,
                   int eos_line) {
  if (tree.tokens.empty()) {
    doc.Fail(codes::kSyntax, eos_line,
             "sentence " + tree.id + " has no tokens");
  }
  std::map<int, int> children;
  auto check_parent = [&](int parent, int line, const std::string &what) {
    if (parent == kVirtualRoot) return;
    if (FindNonTerminal(tree, parent) == nullptr) {
      doc.Fail(codes::kTreeParent, line,
               what + " attaches to unknown node " + std::to_string(parent));
    }
    ++children[parent];
  };
  for (const Token &t : tree.tokens) {
    check_parent(t.parent, t.loc.line, "token " + std::to_string(t.index));
  }
  for (const NonTerminal &nt : tree.nonterminals) {
    check_parent(nt.parent, nt.loc.line,
                 "node " + std::to_string(nt.id));
  }
  for (const NonTerminal &nt : tree.nonterminals) {
    int parent = nt.parent;
    for (size_t steps = 0; parent != kVirtualRoot &&
                           steps < tree.nonterminals.size();
         ++steps) {
      if (parent == nt.id) {
        doc.Fail(codes::kTreeCycle, nt.loc.line,
                 "node " + std::to_string(nt.id) + " dominates itself");
      }
      parent = FindNonTerminal(tree, parent)->parent;
    }
  }
  for (const NonTerminal &nt : tree.nonterminals) {
    if (children[nt.id] == 0) {
      doc.Fail(codes::kTreeEmptyNode, nt.loc.line,
               "node " + std::to_string(nt.id) + " has no children");
    }
  }
}

}  // namespace

std::vector<SentenceTree> ParseTrees(std::string_view text,
                                     const std::string &file) {
  Document doc(text, file);
  std::vector<SentenceTree> trees;
  std::set<std::string> seen;
  bool inside = false;
  SentenceTree current;

  for (const Line &line : doc.lines()) {
    if (internal::IsComment(line.text)) continue;
    if (!inside) {
      if (internal::IsBlank(line.text)) continue;
      auto words = internal::SplitWords(line.text);
      if (words.size() != 2 || words[0] != "#BOS") {
        doc.Fail(codes::kSyntax, line.number, "expected '#BOS <id>'");
      }
      std::string id(words[1]);
      if (!seen.insert(id).second) {
        doc.Fail(codes::kSentenceDup, line.number,
                 "duplicate sentence id " + id);
      }
      current = SentenceTree{};
      current.id = id;
      current.loc.line = line.number;
      inside = true;
      continue;
    }

    if (internal::IsBlank(line.text)) {
      doc.Fail(codes::kSyntax, line.number, "blank line inside sentence");
    }
    if (line.text.substr(0, 4) == "#EOS" || line.text.substr(0, 4) == "#BOS") {
      auto words = internal::SplitWords(line.text);
      if (words[0] != "#EOS" || words.size() != 2 || words[1] != current.id) {
        doc.Fail(codes::kSyntax, line.number,
                 "expected '#EOS " + current.id + "'");
      }
      CheckSentence(doc, current, line.number);
      trees.push_back(std::move(current));
      inside = false;
      continue;
    }

    auto fields = TabFields(doc, line);
    if (line.text[0] == '#') {
      int id = 0;
      if (!internal::ParseNonNegative(fields[0].substr(1), &id)) {
        doc.Fail(codes::kSyntax, line.number,
                 "malformed node id '" + std::string(fields[0]) + "'");
      }
      if (id < kMinNonTerminalId) {
        doc.Fail(codes::kNodeIdRange, line.number,
                 "nonterminal id " + std::to_string(id) + " is below " +
                     std::to_string(kMinNonTerminalId));
      }
      if (!current.nonterminals.empty()) {
        int last = current.nonterminals.back().id;
        if (id == last) {
          doc.Fail(codes::kNodeDup, line.number,
                   "duplicate node id " + std::to_string(id));
        }
        if (id < last) {
          doc.Fail(codes::kTreeOrder, line.number,
                   "nonterminals must ascend by id");
        }
      }
      NonTerminal nt;
      nt.id = id;
      nt.category = std::string(fields[1]);
      nt.edge = EdgeValue(fields[2]);
      nt.parent = ParseParent(doc, line, fields[3]);
      nt.loc.line = line.number;
      current.nonterminals.push_back(std::move(nt));
    } else {
      if (!current.nonterminals.empty()) {
        doc.Fail(codes::kTreeOrder, line.number,
                 "terminal after nonterminals");
      }
      Token token;
      token.index = static_cast<int>(current.tokens.size()) + 1;
      token.form = std::string(fields[0]);
      token.pos = std::string(fields[1]);
      token.edge = EdgeValue(fields[2]);
      token.parent = ParseParent(doc, line, fields[3]);
      token.loc.line = line.number;
      current.tokens.push_back(std::move(token));
    }
  }
  if (inside) {
    int last = doc.lines().empty() ? 0 : doc.lines().back().number;
    doc.Fail(codes::kSyntax, last,
             "sentence " + current.id + " is not closed by #EOS");
  }
  return trees;
}

std::string SerializeTrees(const std::vector<SentenceTree> &trees) {
  std::string out;
  for (const SentenceTree &tree : trees) {
    out += "#BOS " + tree.id + "\n";
    for (const Token &t : tree.tokens) {
      out += t.form + "\t" + t.pos + "\t" + EdgeField(t.edge) + "\t" +
             std::to_string(t.parent) + "\n";
    }
    std::vector<const NonTerminal *> nts;
    for (const NonTerminal &nt : tree.nonterminals) nts.push_back(&nt);
    std::sort(nts.begin(), nts.end(),
              [](const NonTerminal *a, const NonTerminal *b) {
                return a->id < b->id;
              });
    for (const NonTerminal *nt : nts) {
      out += "#" + std::to_string(nt->id) + "\t" + nt->category + "\t" +
             EdgeField(nt->edge) + "\t" + std::to_string(nt->parent) + "\n";
    }
    out += "#EOS " + tree.id + "\n";
  }
  return out;
}

}  // namespace fuse
