#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "ten/decimal.hpp"
#include "ten/numeral.hpp"

namespace ten {

enum class Split { train, test };
enum class Source { numhg, xsum, generic };

std::optional<Source> parse_source(std::string_view name);
std::string_view to_string(Source source);

// One headline-generation example. `operation` and `correct_numeral` are
// dataset annotations and may be absent (xsum-style data has neither).
struct Sample {
  std::string id;
  std::string article;
  std::string headline;
  std::optional<OperationType> operation;
  std::optional<Decimal> correct_numeral;
  Split split = Split::train;
};

struct Corpus {
  std::vector<Sample> samples;
  Source source = Source::generic;
};

// Loads newline-delimited JSON records:
//   {"id", "article", "headline", "operation"?, "correct_numeral"?, "split"?}
// All records are returned in file order with annotations preserved; no
// filtering happens here. Throws CorpusError naming the (1-based) record and
// the offending field for malformed records, unknown operation labels,
// duplicate ids, or a correct_numeral that matches no headline numeral.
Corpus load_corpus(const std::filesystem::path& path, Source source);

// Writes the same schema back. Article and headline text round-trips
// byte-identically.
void save_corpus(const Corpus& corpus, const std::filesystem::path& path);

// Drops records whose (article, headline) pair, compared after whitespace
// normalization, was already seen. First occurrence wins. Idempotent.
Corpus dedupe(const Corpus& corpus);

// Keeps samples whose headline contains exactly one numeral. Idempotent.
Corpus filter_single_numeral(const Corpus& corpus);

// xsum-style rule: article word count (whitespace tokens) within
// [min_words, max_words], both inclusive, and the headline's single numeral
// is a whole number. Samples without exactly one headline numeral are
// dropped too, so the filter is safe to run on unfiltered corpora.
Corpus filter_xsum(const Corpus& corpus, int min_words = 200,
                   int max_words = 500);

// Whitespace-token count, the measure used by filter_xsum.
int word_count(std::string_view text);

// The preparation recipe behind `corpus prep`: dedupe + single-numeral for
// every source, plus the xsum length/wholeness rule when source == xsum.
Corpus prep_corpus(const Corpus& corpus, int min_words = 200,
                   int max_words = 500);

}  // namespace ten
