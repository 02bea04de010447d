// A small query language over a validated corpus.
//
//   query   := command (filter)*
//   filter  := key '=' value | key '!=' value
//
// Commands and their keys:
//
//   preds         pred-pred alignments. class, aligned-class, lemma, group,
//                 tag, aligned-tag, atag, voice (diverge|same)
//   aligns        alignments. kind (pred|arg), atag
//   unaligned     predicates/arguments without any alignment. kind, lang
//   realizations  bound yields of arguments. group, role, lang, class
//   frames        valency patterns per predicate. lemma, group, lang, class
//
// Filters are conjunctive. `tag`/`aligned-tag` test membership in the binding
// tag set; `atag=none` selects untagged alignments. `voice=diverge` holds when
// exactly one side of a predicate alignment carries the `pv` binding tag.

#ifndef FUSE_QUERY_H_
#define FUSE_QUERY_H_

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "fuse/model.h"

namespace fuse {

enum class QueryCommand { kPreds, kAligns, kUnaligned, kRealizations, kFrames };

std::string_view CommandName(QueryCommand command);

struct QueryFilter {
  std::string key;
  bool negated = false;
  std::string value;

  bool operator==(const QueryFilter &) const = default;
};

struct Query {
  QueryCommand command = QueryCommand::kPreds;
  std::vector<QueryFilter> filters;

  bool operator==(const Query &) const = default;
};

class QueryError : public std::runtime_error {
 public:
  // `position` is the 1-based column of the offending text, 0 if none.
  QueryError(std::string_view code, int position, const std::string &message);

  const std::string &code() const { return code_; }
  int position() const { return position_; }

 private:
  std::string code_;
  int position_;
};

// Throws QueryError with E-Q-SYNTAX or E-Q-KEY.
Query ParseQuery(std::string_view text);

// Keys accepted by a command.
const std::vector<std::string_view> &KeysFor(QueryCommand command);

struct ResultRow {
  std::vector<std::string> values;

  bool operator==(const ResultRow &) const = default;
  bool operator<(const ResultRow &other) const { return values < other.values; }
};

struct QueryResult {
  std::vector<std::string> columns;
  std::vector<ResultRow> rows;

  bool operator==(const QueryResult &) const = default;
};

// Column names per command.
const std::vector<std::string> &ColumnsFor(QueryCommand command);

// Evaluates `query`. Rows come in a fixed order: by pair set, sentence pair
// and left element for alignment commands, by language, sentence and element
// otherwise. Throws QueryError (E-Q-UNVALIDATED) for a corpus that has not
// passed validation, E-Q-KEY for keys the command does not accept.
QueryResult RunQuery(const ParallelCorpus &corpus, const Query &query);

// Tab-separated with a header row.
std::string RenderTsv(const QueryResult &result);
// One JSON object per line, keyed by column name.
std::string RenderJsonLines(const QueryResult &result);

}  // namespace fuse

#endif  // FUSE_QUERY_H_
