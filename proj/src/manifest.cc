#include <set>

#include "fuse/formats.h"
#include "text_util.h"

namespace fuse {

using internal::Document;
using internal::Line;

namespace {

constexpr std::string_view kHeader = "%% fuse corpus manifest\n";

std::set<std::string> ParseTagList(const Document &doc, const Line &line,
                                   std::string_view list) {
  std::set<std::string> tags;
  for (std::string_view tag : internal::SplitOn(list, ',')) {
    if (tag.empty() || tag.find('=') != std::string_view::npos) {
      doc.Fail(codes::kManifestSyntax, line.number,
               "malformed tag list '" + std::string(list) + "'");
    }
    tags.emplace(tag);
  }
  return tags;
}

// Handles BINDTAGS / ALIGNTAGS. Returns false for other keywords.
bool ParseTagLine(const Document &doc, const Line &line,
                  const std::vector<std::string_view> &words,
                  TagRegistry *registry, std::set<std::string_view> *seen) {
  if (words[0] != "BINDTAGS" && words[0] != "ALIGNTAGS") return false;
  if (words.size() != 2) {
    doc.Fail(codes::kManifestSyntax, line.number,
             "expected '" + std::string(words[0]) + " <tag>[,<tag>...]'");
  }
  if (!seen->insert(words[0]).second) {
    doc.Fail(codes::kManifestSyntax, line.number,
             "repeated " + std::string(words[0]) + " line");
  }
  auto tags = ParseTagList(doc, line, words[1]);
  if (words[0] == "BINDTAGS") {
    registry->binding_tags = std::move(tags);
  } else {
    registry->alignment_tags = std::move(tags);
  }
  return true;
}

std::string TagList(const std::set<std::string> &tags) {
  return internal::Join({tags.begin(), tags.end()}, ",");
}

}  // namespace

Manifest ParseManifest(std::string_view text, const std::string &file) {
  Document doc(text, file);
  Manifest manifest;
  std::set<std::string_view> tag_lines;
  std::set<std::string> codes_seen;

  for (const Line &line : doc.lines()) {
    if (internal::IsComment(line.text) || internal::IsBlank(line.text)) {
      continue;
    }
    auto words = internal::SplitWords(line.text);
    if (ParseTagLine(doc, line, words, &manifest.registry, &tag_lines)) {
      continue;
    }
    if (words[0] == "LANG") {
      if (words.size() != 6 || words[2] != "TREES" || words[4] != "PREDARG") {
        doc.Fail(codes::kManifestSyntax, line.number,
                 "expected 'LANG <code> TREES <path> PREDARG <path>'");
      }
      std::string code(words[1]);
      if (code.find(':') != std::string::npos) {
        doc.Fail(codes::kManifestSyntax, line.number,
                 "language code must not contain ':'");
      }
      if (!codes_seen.insert(code).second) {
        doc.Fail(codes::kManifestLang, line.number,
                 "language " + code + " declared twice");
      }
      manifest.languages.push_back(
          {code, std::string(words[3]), std::string(words[5]), line.number});
    } else if (words[0] == "ALIGN") {
      if (words.size() != 4) {
        doc.Fail(codes::kManifestSyntax, line.number,
                 "expected 'ALIGN <codeA> <codeB> <path>'");
      }
      manifest.align_sets.push_back({std::string(words[1]),
                                     std::string(words[2]),
                                     std::string(words[3]), line.number});
    } else {
      doc.Fail(codes::kManifestSyntax, line.number,
               "unknown keyword '" + std::string(words[0]) + "'");
    }
  }

  if (manifest.languages.empty()) {
    doc.Fail(codes::kManifestLang, 0, "manifest declares no language");
  }
  for (const ManifestAlignSet &set : manifest.align_sets) {
    for (const std::string &code : {set.left_lang, set.right_lang}) {
      if (!codes_seen.count(code)) {
        doc.Fail(codes::kManifestLang, set.line,
                 "ALIGN references undeclared language " + code);
      }
    }
    if (set.left_lang == set.right_lang) {
      doc.Fail(codes::kManifestLang, set.line,
               "ALIGN needs two distinct languages");
    }
  }
  return manifest;
}

std::string SerializeManifest(const Manifest &manifest) {
  std::string out(kHeader);
  out += "BINDTAGS " + TagList(manifest.registry.binding_tags) + "\n";
  out += "ALIGNTAGS " + TagList(manifest.registry.alignment_tags) + "\n";
  for (const ManifestLanguage &lang : manifest.languages) {
    out += "LANG " + lang.code + " TREES " + lang.trees_path + " PREDARG " +
           lang.predarg_path + "\n";
  }
  for (const ManifestAlignSet &set : manifest.align_sets) {
    out += "ALIGN " + set.left_lang + " " + set.right_lang + " " + set.path +
           "\n";
  }
  return out;
}

TagRegistry ParseTagRegistry(std::string_view text, const std::string &file) {
  Document doc(text, file);
  TagRegistry registry = TagRegistry::Defaults();
  std::set<std::string_view> seen;
  for (const Line &line : doc.lines()) {
    if (internal::IsComment(line.text) || internal::IsBlank(line.text)) {
      continue;
    }
    auto words = internal::SplitWords(line.text);
    if (!ParseTagLine(doc, line, words, &registry, &seen)) {
      doc.Fail(codes::kManifestSyntax, line.number,
               "expected BINDTAGS or ALIGNTAGS");
    }
  }
  return registry;
}

}  // namespace fuse
