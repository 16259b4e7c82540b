#pragma once

// Word-similarity evaluation: dataset loading, cosine similarity and
// Spearman rank correlation.

#include "kca/ca.hpp"
#include "kca/linalg.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace kca {

struct WordPairScore {
  std::string a;
  std::string b;
  double score = 0.0;
};

/// Human-rated word pairs.  Words are lowercased; an unordered pair occurs
/// once, with the mean of all scores it was listed with.
struct WordSimDataset {
  std::string name;
  std::vector<WordPairScore> pairs;

  std::size_t size() const { return pairs.size(); }
  double max_score() const;
};

/// Each nonblank line holds "word_a word_b score", separated by tabs, commas
/// or spaces (detected per line, in that order of preference).  A first line
/// whose score field is not numeric is taken as a header and skipped; any
/// later malformed line is an error naming its line number.  Lines starting
/// with '#' are comments.
WordSimDataset parse_wordsim(std::istream& in, std::string name = "");
WordSimDataset load_wordsim(const std::string& path);

/// u.v / (|u||v|).  A zero vector gives 0 and a warning on std::clog.
double cosine(const Vector& u, const Vector& v);

/// Average (fractional) ranks, 1-based; ties share their mean rank.
std::vector<double> fractional_ranks(const std::vector<double>& xs);

/// Pearson correlation of fractional ranks.  Throws std::invalid_argument on
/// a length mismatch, fewer than two points, or a constant input (where the
/// coefficient is undefined).
double spearman(const std::vector<double>& xs, const std::vector<double>& ys);

enum class PointSet { F, G };

struct EvalReport {
  std::string dataset;
  double spearman_rho = 0.0;
  std::size_t pairs_used = 0;
  std::size_t pairs_skipped = 0;
};

/// Cosine of the chosen coordinate rows against human scores.  Pairs with an
/// out-of-vocabulary word are skipped and counted.  Throws
/// std::runtime_error("zero usable pairs") when nothing is left.
EvalReport evaluate(const EmbeddingSet& e, PointSet which,
                    const WordSimDataset& d);

/// Writes "method\tdataset\trho\tused\tskipped" rows (no header).
void write_report_row(std::ostream& out, const std::string& method,
                      const EvalReport& report);

}  // namespace kca
