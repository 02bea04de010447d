#include "doctest.h"
#include "fuse/corpus_store.h"
#include "fuse/formats.h"
#include "support/fixture.h"
#include "support/random_corpus.h"

namespace fuse {
namespace {

using testing::FixtureDir;
using testing::ReadFile;

// Runs `parse` and returns the diagnostic it throws.
template <typename F>
Diagnostic FailureOf(F parse) {
  try {
    parse();
  } catch (const FormatError &e) {
    return e.diagnostic();
  }
  FAIL("expected a format error");
  return {};
}

Diagnostic TreesFailure(const std::string &text) {
  return FailureOf([&] { ParseTrees(text, "x.tb"); });
}

Diagnostic PredArgFailure(const std::string &text) {
  return FailureOf(
      [&] { ParsePredArg(text, "x.pa", TagRegistry::Defaults()); });
}

Diagnostic AlignFailure(const std::string &text) {
  return FailureOf(
      [&] { ParseAlignments(text, "x.al", TagRegistry::Defaults()); });
}

Diagnostic ManifestFailure(const std::string &text) {
  return FailureOf([&] { ParseManifest(text, "c.manifest"); });
}

const char *kSmallTree =
    "#BOS s1\n"
    "wenn\tKOUS\tCP\t501\n"
    "korrekt\tADJD\tMO\t500\n"
    "gedolmetscht\tVVPP\tHD\t500\n"
    "wurde\tVAFIN\tHD\t501\n"
    "#500\tVP\tOC\t501\n"
    "#501\tS\t--\t0\n"
    "#EOS s1\n";

TEST_CASE("fixture files reproduce byte for byte") {
  TagRegistry registry = TagRegistry::Defaults();
  for (const char *name : {"en.tb", "de.tb"}) {
    std::string text = ReadFile(FixtureDir() / name);
    CHECK(SerializeTrees(ParseTrees(text, name)) == text);
  }
  for (const char *name : {"en.pa", "de.pa"}) {
    std::string text = ReadFile(FixtureDir() / name);
    CHECK(SerializePredArg(ParsePredArg(text, name, registry)) == text);
  }
  std::string al = ReadFile(FixtureDir() / "en-de.al");
  CHECK(SerializeAlignments(ParseAlignments(al, "en-de.al", registry)) == al);
  std::string manifest = ReadFile(FixtureDir() / "corpus.manifest");
  CHECK(SerializeManifest(ParseManifest(manifest, "corpus.manifest")) ==
        manifest);
}

TEST_CASE("trees: forward parent references and empty edges") {
  auto trees = ParseTrees(kSmallTree, "x.tb");
  REQUIRE(trees.size() == 1);
  const SentenceTree &tree = trees[0];
  CHECK(tree.id == "s1");
  CHECK(tree.tokens.size() == 4);
  CHECK(tree.tokens[2].form == "gedolmetscht");
  CHECK(tree.tokens[2].parent == 500);
  CHECK(tree.nonterminals[1].edge.empty());
  CHECK(tree.tokens[0].loc.line == 2);
  CHECK(SerializeTrees(trees) == kSmallTree);
}

TEST_CASE("trees: input is normalized to NFC") {
  std::string text =
      "#BOS s1\nDa\xCC\x88nemark\tNE\t--\t0\n#EOS s1\n";
  auto trees = ParseTrees(text, "x.tb");
  CHECK(trees[0].tokens[0].form == "D\xC3\xA4nemark");
}

TEST_CASE("trees: errors carry code, file and line") {
  Diagnostic d = TreesFailure("#BOS s1\nx\tNN\t--\t0\n#499\tNP\t--\t0\n#EOS s1\n");
  CHECK(d.code == "E-NODE-ID-RANGE");
  CHECK(d.file == "x.tb");
  CHECK(d.line == 3);

  CHECK(TreesFailure("#BOS s1\nx\tNN\t--\t500\n#500\tNP\t--\t0\n#500\tNP\t--\t0\n#EOS s1\n")
            .code == "E-NODE-DUP");
  CHECK(TreesFailure("#BOS s1\nx\tNN\t--\t501\n#501\tNP\t--\t0\n#500\tNP\t--\t501\n#EOS s1\n")
            .code == "E-TREE-ORDER");
  CHECK(TreesFailure("#BOS s1\nx\tNN\t--\t500\n#500\tNP\t--\t501\n#501\tNP\t--\t500\n#EOS s1\n")
            .code == "E-TREE-CYCLE");
  CHECK(TreesFailure("#BOS s1\nx\tNN\t--\t0\n#500\tNP\t--\t0\n#EOS s1\n").code ==
        "E-TREE-EMPTY-NODE");
  CHECK(TreesFailure("#BOS s1\nx\tNN\t--\t502\n#EOS s1\n").code ==
        "E-TREE-PARENT");
  CHECK(TreesFailure("#BOS s1\nx\tNN\t--\t7\n#EOS s1\n").code ==
        "E-TREE-PARENT");
  CHECK(TreesFailure("#BOS s1\nx\tNN\t--\t0\n#EOS s1\n#BOS s1\ny\tNN\t--\t0\n#EOS s1\n")
            .code == "E-SENT-DUP");
  CHECK(TreesFailure("#BOS s1\nx\tNN\t--\t0\n").code == "E-SYNTAX");
  CHECK(TreesFailure("#BOS s1\nx NN -- 0\n#EOS s1\n").code == "E-SYNTAX");
  CHECK(TreesFailure("#BOS s1\n#EOS s1\n").code == "E-SYNTAX");
  CHECK(TreesFailure("#BOS s1\nx\tNN\t--\t0\n#EOS s2\n").code == "E-SYNTAX");
  CHECK(TreesFailure("#BOS s1\n\xC3\x28\tNN\t--\t0\n#EOS s1\n").code ==
        "E-ENCODING");
}

TEST_CASE("predarg: inline and separate bindings") {
  std::string text =
      "%% fuse predarg\n"
      "\n"
      "#SENT s1\n"
      "PRED p1 lemma=DOLMETSCHEN class=v group=DOLMETSCHEN\n"
      "ARG p1 role=DOLMETSCHER\n"
      "BIND p1 nodes=t3 tags=pv\n"
      "BIND p1.DOLMETSCHER nodes=n500 excl=t3\n";
  auto sentences = ParsePredArg(text, "x.pa", TagRegistry::Defaults());
  REQUIRE(sentences.size() == 1);
  const PredArgLayer &layer = sentences[0].predarg;
  REQUIRE(layer.bindings.size() == 2);
  const Binding *pred = FindBinding(layer, {"p1", ""});
  REQUIRE(pred);
  CHECK(pred->tags == std::vector<std::string>{"pv"});
  const Binding *arg = FindBinding(layer, {"p1", "DOLMETSCHER"});
  REQUIRE(arg);
  CHECK(arg->excluded == std::vector<NodeRef>{NodeRef::Terminal(3)});
  CHECK(SerializePredArg(sentences) ==
        "%% fuse predarg\n"
        "\n"
        "#SENT s1\n"
        "PRED p1 lemma=DOLMETSCHEN class=v group=DOLMETSCHEN nodes=t3 tags=pv\n"
        "ARG p1 role=DOLMETSCHER nodes=n500 excl=t3\n");
}

TEST_CASE("predarg: errors") {
  const std::string head = "%% fuse predarg\n\n#SENT s1\n";
  const std::string pred = "PRED p1 lemma=GIVE class=v group=GIVE nodes=t1\n";
  CHECK(PredArgFailure(head + pred + pred).code == "E-PRED-DUP");
  CHECK(PredArgFailure(head + pred + "ARG p1 role=GIVER\nARG p1 role=GIVER\n")
            .code == "E-ROLE-DUP");
  CHECK(PredArgFailure(head + "ARG p1 role=GIVER\n" + pred).code == "E-ORDER");
  CHECK(PredArgFailure(head + "BIND p1 nodes=t1\n" + pred).code == "E-ORDER");
  CHECK(PredArgFailure(head + pred + "BIND p1 nodes=t2\n").code == "E-BIND-DUP");
  CHECK(PredArgFailure(head + "PRED p1 lemma=GIVE class=v group=GIVE tags=xx nodes=t1\n")
            .code == "E-TAG-UNKNOWN");
  CHECK(PredArgFailure(head + "PRED p1 lemma=give class=v group=GIVE\n").code ==
        "E-NAME");
  CHECK(PredArgFailure(head + pred + "ARG p1 role=Giver\n").code == "E-NAME");
  CHECK(PredArgFailure(head + "PRED p1 lemma=GIVE class=x group=GIVE\n").code ==
        "E-CLASS");
  CHECK(PredArgFailure(head + "PRED 1p lemma=GIVE class=v group=GIVE\n").code ==
        "E-REF");
  CHECK(PredArgFailure(head + "PRED p1 lemma=GIVE class=v group=GIVE nodes=q1\n")
            .code == "E-REF");
  CHECK(PredArgFailure(head + "PRED p1 lemma=GIVE class=v\n").code ==
        "E-SYNTAX");
  CHECK(PredArgFailure(head + "PRED p1 lemma=GIVE class=v group=GIVE color=red\n")
            .code == "E-SYNTAX");
  CHECK(PredArgFailure(head + "PRED p1 lemma=GIVE class=v group=GIVE excl=t1\n")
            .code == "E-SYNTAX");
  CHECK(PredArgFailure(head + "FOO p1\n").code == "E-SYNTAX");
  CHECK(PredArgFailure("%% fuse predarg\nPRED p1 lemma=A class=v group=A\n")
            .code == "E-SYNTAX");
  Diagnostic d = PredArgFailure(head + pred + pred);
  CHECK(d.line == 5);
  CHECK(d.file == "x.pa");
}

TEST_CASE("predarg: unknown tags follow the registry") {
  std::string text =
      "%% fuse predarg\n\n#SENT s1\n"
      "PRED p1 lemma=GIVE class=v group=GIVE nodes=t1 tags=ref\n";
  TagRegistry registry = TagRegistry::Defaults();
  CHECK_THROWS_AS(ParsePredArg(text, "x.pa", registry), FormatError);
  registry.binding_tags.insert("ref");
  CHECK(ParsePredArg(text, "x.pa", registry).size() == 1);
}

TEST_CASE("alignments: parsing and errors") {
  std::string text =
      "%% fuse align\n\n#PAIR en:s1 de:s1\n"
      "AALIGN p1.GIVER p1.MITGEBER tag=incomp\n"
      "PALIGN p1 p1\n";
  auto pairs = ParseAlignments(text, "x.al", TagRegistry::Defaults());
  REQUIRE(pairs.size() == 1);
  REQUIRE(pairs[0].alignments.size() == 2);
  CHECK(pairs[0].alignments[0].kind == AlignKind::kPredicate);
  CHECK(pairs[0].alignments[1].tag == "incomp");
  CHECK(pairs[0].alignments[1].loc.line == 4);

  const std::string head = "%% fuse align\n\n#PAIR en:s1 de:s1\n";
  CHECK(AlignFailure(head + "PALIGN p1 p1 tag=bogus\n").code ==
        "E-TAG-UNKNOWN");
  CHECK(AlignFailure(head + "PALIGN p1\n").code == "E-SYNTAX");
  CHECK(AlignFailure(head + "PALIGN p1 p1 color=red\n").code == "E-SYNTAX");
  CHECK(AlignFailure(head + "PALIGN p1 p1\n\n#PAIR en:s1 de:s1\n").code ==
        "E-PAIR-DUP");
  CHECK(AlignFailure("%% fuse align\n\n#PAIR en-s1 de:s1\n").code ==
        "E-SYNTAX");
  CHECK(AlignFailure(head + "PALIGN p1 1x\n").code == "E-REF");
}

TEST_CASE("manifest: parsing and errors") {
  Manifest m = ParseManifest(
      "%% fuse corpus manifest\n"
      "ALIGNTAGS abs-opp,incomp,equiv\n"
      "LANG en TREES en.tb PREDARG en.pa\n"
      "LANG de TREES de.tb PREDARG de.pa\n"
      "ALIGN en de en-de.al\n",
      "c.manifest");
  CHECK(m.languages.size() == 2);
  CHECK(m.align_sets.size() == 1);
  CHECK(m.registry.alignment_tags.count("equiv"));
  CHECK(m.registry.binding_tags == TagRegistry::Defaults().binding_tags);

  CHECK(ManifestFailure("%% fuse corpus manifest\n").code == "E-MANIFEST-LANG");
  CHECK(ManifestFailure("%% fuse corpus manifest\n"
                        "LANG en TREES a PREDARG b\nLANG en TREES c PREDARG d\n")
            .code == "E-MANIFEST-LANG");
  CHECK(ManifestFailure("%% fuse corpus manifest\n"
                        "LANG en TREES a PREDARG b\nALIGN en fr x.al\n")
            .code == "E-MANIFEST-LANG");
  CHECK(ManifestFailure("%% fuse corpus manifest\n"
                        "LANG en TREES a PREDARG b\nALIGN en en x.al\n")
            .code == "E-MANIFEST-LANG");
  CHECK(ManifestFailure("%% fuse corpus manifest\nLANG en TREES a\n").code ==
        "E-MANIFEST-SYNTAX");
  CHECK(ManifestFailure("%% fuse corpus manifest\nFOO\n").code ==
        "E-MANIFEST-SYNTAX");

  TagRegistry tags = ParseTagRegistry("BINDTAGS pv\n", "tags");
  CHECK(tags.binding_tags == std::set<std::string>{"pv"});
  CHECK(tags.alignment_tags == TagRegistry::Defaults().alignment_tags);
}

TEST_CASE("random corpora survive serialize then parse") {
  testing::Rng rng(21);
  for (int round = 0; round < 200; ++round) {
    ParallelCorpus corpus = testing::RandomCorpus(rng);
    for (const auto &[lang, tb] : corpus.treebanks) {
      std::vector<SentenceTree> trees;
      std::vector<PredArgSentence> predarg;
      for (const auto &s : tb.sentences) {
        trees.push_back(s.tree);
        if (!s.predarg.empty()) predarg.push_back({s.tree.id, s.predarg, {}});
      }
      std::string tb_text = SerializeTreebankTrees(tb);
      CHECK(ParseTrees(tb_text, "r.tb") == trees);
      std::string pa_text = SerializeTreebankPredArg(tb);
      auto parsed = ParsePredArg(pa_text, "r.pa", corpus.registry);
      CHECK(parsed == predarg);
      CHECK(SerializePredArg(parsed) == pa_text);
    }
    for (const PairSet &set : corpus.pair_sets) {
      std::string al_text = SerializePairSet(set);
      auto parsed = ParseAlignments(al_text, "r.al", corpus.registry);
      CHECK(parsed == set.pairs);
      CHECK(SerializeAlignments(parsed) == al_text);
    }
  }
}

}  // namespace
}  // namespace fuse
