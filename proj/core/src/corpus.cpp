#include "kca/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace kca {

std::vector<std::string> tokenize(std::string_view text, bool lowercase) {
  std::vector<std::string> tokens;
  std::string cur;
  for (const char raw : text) {
    const auto ch = static_cast<unsigned char>(raw);
    if (std::isspace(ch)) {
      if (!cur.empty()) tokens.push_back(std::move(cur));
      cur.clear();
    } else if (ch < 0x80 && std::ispunct(ch)) {
      continue;
    } else {
      cur += lowercase && ch < 0x80 ? static_cast<char>(std::tolower(ch)) : raw;
    }
  }
  if (!cur.empty()) tokens.push_back(std::move(cur));
  return tokens;
}

std::vector<std::string> read_corpus(const std::string& path, bool lowercase) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open corpus: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return tokenize(buf.str(), lowercase);
}

std::vector<std::string> slice_tokens(std::vector<std::string> tokens,
                                      double percent) {
  if (!(percent > 0.0 && percent <= 100.0)) {
    throw std::invalid_argument("slice percentage must be in (0, 100]");
  }
  const auto keep = static_cast<std::size_t>(
      std::floor(static_cast<double>(tokens.size()) * percent / 100.0));
  tokens.resize(std::min(keep, tokens.size()));
  return tokens;
}

std::vector<std::string> build_vocabulary(const std::vector<std::string>& tokens,
                                          const CooccurrenceConfig& cfg) {
  std::unordered_map<std::string, std::size_t> freq;
  for (const auto& t : tokens) ++freq[t];
  std::vector<std::pair<std::string, std::size_t>> items;
  for (auto& [word, count] : freq) {
    if (count >= cfg.min_count) items.emplace_back(word, count);
  }
  std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
    return a.second != b.second ? a.second > b.second : a.first < b.first;
  });
  if (cfg.max_vocab && items.size() > *cfg.max_vocab) items.resize(*cfg.max_vocab);
  std::vector<std::string> vocab;
  vocab.reserve(items.size());
  for (auto& item : items) vocab.push_back(std::move(item.first));
  return vocab;
}

ContingencyTable count_cooccurrences(const std::vector<std::string>& tokens,
                                     const CooccurrenceConfig& cfg) {
  if (cfg.window < 1) {
    throw std::invalid_argument("co-occurrence window must be at least 1");
  }
  const std::vector<std::string> vocab = build_vocabulary(tokens, cfg);
  if (vocab.empty()) {
    throw std::invalid_argument("empty vocabulary");
  }
  std::unordered_map<std::string, Index> lookup;
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    lookup.emplace(vocab[i], static_cast<Index>(i));
  }
  std::vector<Index> stream;
  stream.reserve(tokens.size());
  for (const auto& t : tokens) {
    const auto it = lookup.find(t);
    if (it != lookup.end()) stream.push_back(it->second);
  }
  if (stream.size() < 2) {
    throw std::invalid_argument("corpus has no in-window word pairs");
  }

  const auto v = static_cast<Index>(vocab.size());
  Matrix counts = Matrix::Zero(v, v);
  const auto len = static_cast<std::ptrdiff_t>(stream.size());
  for (std::ptrdiff_t i = 0; i < len; ++i) {
    const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, i - cfg.window);
    const std::ptrdiff_t hi = std::min<std::ptrdiff_t>(len - 1, i + cfg.window);
    for (std::ptrdiff_t j = lo; j <= hi; ++j) {
      if (j != i) counts(stream[i], stream[j]) += 1.0;
    }
  }
  return ContingencyTable(std::move(counts), vocab, vocab);
}

std::uint64_t window_pair_count(std::size_t length, int window) {
  std::uint64_t total = 0;
  for (int d = 1; d <= window; ++d) {
    if (static_cast<std::size_t>(d) < length) total += 2 * (length - d);
  }
  return total;
}

std::set<std::string> load_stopwords(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open stop-word list: " + path);
  std::set<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    const auto b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    const auto e = line.find_last_not_of(" \t\r");
    words.insert(line.substr(b, e - b + 1));
  }
  if (words.empty()) {
    std::clog << "warning: stop-word list " << path << " is empty\n";
  }
  return words;
}

}  // namespace kca
