#include <set>
#include <utility>

#include "fuse/formats.h"
#include "text_util.h"

namespace fuse {

using internal::Document;
using internal::Line;

namespace {

constexpr std::string_view kHeader = "%% fuse align\n";

// Splits "<lang>:<sid>".
std::pair<std::string, std::string> SentenceRef(const Document &doc,
                                                const Line &line,
                                                std::string_view word) {
  size_t colon = word.find(':');
  if (colon == std::string_view::npos || colon == 0 ||
      colon + 1 == word.size()) {
    doc.Fail(codes::kSyntax, line.number,
             "expected <lang>:<sentence>, found '" + std::string(word) + "'");
  }
  return {std::string(word.substr(0, colon)),
          std::string(word.substr(colon + 1))};
}

Alignment ParseAlignmentLine(const Document &doc, const Line &line,
                             const TagRegistry &registry) {
  auto words = internal::SplitWords(line.text);
  Alignment alignment;
  if (words[0] == "PALIGN") {
    alignment.kind = AlignKind::kPredicate;
  } else if (words[0] == "AALIGN") {
    alignment.kind = AlignKind::kArgument;
  } else {
    doc.Fail(codes::kSyntax, line.number,
             "unknown keyword '" + std::string(words[0]) + "'");
  }
  if (words.size() < 3 || words.size() > 4) {
    doc.Fail(codes::kSyntax, line.number,
             "expected '" + std::string(words[0]) +
                 " <left> <right> [tag=<t>]'");
  }
  for (int side = 0; side < 2; ++side) {
    auto ref = ElementRef::Parse(words[1 + side]);
    if (!ref) {
      doc.Fail(codes::kRef, line.number,
               "malformed element reference '" +
                   std::string(words[1 + side]) + "'");
    }
    (side == 0 ? alignment.left : alignment.right) = std::move(*ref);
  }
  if (words.size() == 4) {
    std::string_view attr = words[3];
    if (attr.substr(0, 4) != "tag=" || attr.size() == 4) {
      doc.Fail(codes::kSyntax, line.number,
               "expected tag=<t>, found '" + std::string(attr) + "'");
    }
    alignment.tag = std::string(attr.substr(4));
    if (!registry.alignment_tags.count(alignment.tag)) {
      doc.Fail(codes::kTagUnknown, line.number,
               "unknown alignment tag '" + alignment.tag + "'");
    }
  }
  alignment.loc.line = line.number;
  return alignment;
}

}  // namespace

std::vector<SentencePairAlignment> ParseAlignments(
    std::string_view text, const std::string &file,
    const TagRegistry &registry) {
  Document doc(text, file);
  std::vector<SentencePairAlignment> pairs;
  std::set<std::pair<std::string, std::string>> seen;
  bool inside = false;

  for (const Line &line : doc.lines()) {
    if (internal::IsComment(line.text)) continue;
    if (internal::IsBlank(line.text)) {
      inside = false;
      continue;
    }
    if (line.text.substr(0, 5) == "#PAIR") {
      auto words = internal::SplitWords(line.text);
      if (words.size() != 3 || words[0] != "#PAIR") {
        doc.Fail(codes::kSyntax, line.number,
                 "expected '#PAIR <lang>:<sid> <lang>:<sid>'");
      }
      SentencePairAlignment pair;
      std::tie(pair.left_lang, pair.left_sentence) =
          SentenceRef(doc, line, words[1]);
      std::tie(pair.right_lang, pair.right_sentence) =
          SentenceRef(doc, line, words[2]);
      if (!seen.emplace(pair.left_sentence, pair.right_sentence).second) {
        doc.Fail(codes::kPairDup, line.number,
                 "duplicate pair " + std::string(words[1]) + " " +
                     std::string(words[2]));
      }
      pair.loc.line = line.number;
      pairs.push_back(std::move(pair));
      inside = true;
      continue;
    }
    if (!inside) {
      doc.Fail(codes::kSyntax, line.number, "line outside a #PAIR block");
    }
    pairs.back().alignments.push_back(
        ParseAlignmentLine(doc, line, registry));
  }
  for (SentencePairAlignment &pair : pairs) Canonicalize(pair);
  return pairs;
}

std::string SerializeAlignments(
    const std::vector<SentencePairAlignment> &pairs) {
  std::string out(kHeader);
  for (const SentencePairAlignment &original : pairs) {
    SentencePairAlignment pair = original;
    Canonicalize(pair);
    out += "\n#PAIR " + pair.left_lang + ":" + pair.left_sentence + " " +
           pair.right_lang + ":" + pair.right_sentence + "\n";
    for (const Alignment &a : pair.alignments) {
      out += a.kind == AlignKind::kPredicate ? "PALIGN " : "AALIGN ";
      out += a.left.ToString() + " " + a.right.ToString();
      if (!a.tag.empty()) out += " tag=" + a.tag;
      out += "\n";
    }
  }
  return out;
}

}  // namespace fuse
