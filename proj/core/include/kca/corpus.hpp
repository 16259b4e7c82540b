#pragma once

// Corpus ingestion: tokenization, vocabulary, windowed word-context counts.

#include "kca/tables.hpp"

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace kca {

struct CooccurrenceConfig {
  /// Symmetric window: offsets 1 <= |d| <= window, all weighted 1.
  int window = 2;
  /// Words seen fewer times are removed from the stream before counting.
  std::size_t min_count = 0;
  /// Keep at most this many of the most frequent words.
  std::optional<std::size_t> max_vocab;
  bool lowercase = true;
};

/// Removes ASCII punctuation, optionally lowercases ASCII letters, and splits
/// on whitespace.
std::vector<std::string> tokenize(std::string_view text, bool lowercase = true);

/// Tokenizes a whole file.
std::vector<std::string> read_corpus(const std::string& path, bool lowercase = true);

/// The first floor(size * percent / 100) tokens.
std::vector<std::string> slice_tokens(std::vector<std::string> tokens, double percent);

/// Words meeting min_count, most frequent first (ties in byte order), capped
/// at max_vocab.
std::vector<std::string> build_vocabulary(const std::vector<std::string>& tokens,
                                          const CooccurrenceConfig& cfg);

/// #(w, c) over a fixed symmetric window on the vocabulary-filtered stream.
/// Rows and columns share the vocabulary, so the table is symmetric.
/// Throws std::invalid_argument if the vocabulary is empty or no pair fits.
ContingencyTable count_cooccurrences(const std::vector<std::string>& tokens,
                                     const CooccurrenceConfig& cfg);

/// Number of in-range (position, offset) pairs in a stream of `length`
/// tokens: sum over d = 1..window of 2 * max(0, length - d).
std::uint64_t window_pair_count(std::size_t length, int window);

/// Newline-delimited word list.  Blank lines are skipped, duplicates merge.
/// A missing file throws; an empty list logs a warning.
std::set<std::string> load_stopwords(const std::string& path);

}  // namespace kca
