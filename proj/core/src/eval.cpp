#include "kca/eval.hpp"

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "kca/tables.hpp"

namespace kca {

namespace {

std::string lowercase(std::string s) {
  for (char& ch : s) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  return s;
}

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  char delim = 0;
  if (line.find('\t') != std::string::npos) {
    delim = '\t';
  } else if (line.find(',') != std::string::npos) {
    delim = ',';
  }
  if (delim == 0) {
    std::istringstream in(line);
    std::string token;
    while (in >> token) fields.push_back(token);
    return fields;
  }
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(delim, start);
    fields.push_back(trim(line.substr(start, pos - start)));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  return fields;
}

}  // namespace

double WordSimDataset::max_score() const {
  double best = 0.0;
  for (const auto& p : pairs) best = std::max(best, p.score);
  return best;
}

WordSimDataset parse_wordsim(std::istream& in, std::string name) {
  struct Accumulator {
    std::size_t order;
    std::string a;
    std::string b;
    double sum;
    int count;
  };
  std::map<std::pair<std::string, std::string>, Accumulator> seen;

  std::string line;
  std::size_t line_no = 0;
  bool first_content = true;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string body = trim(line);
    if (body.empty() || body[0] == '#') continue;
    const std::vector<std::string> fields = split_fields(body);
    double score = 0.0;
    bool ok = fields.size() == 3 && !fields[0].empty() && !fields[1].empty();
    if (ok) {
      try {
        score = parse_real(fields[2]);
        ok = std::isfinite(score);
      } catch (const std::invalid_argument&) {
        ok = false;
      }
    }
    if (!ok) {
      if (first_content && fields.size() == 3) {
        first_content = false;
        continue;
      }
      std::ostringstream msg;
      msg << "word-similarity line " << line_no
          << ": expected 'word_a word_b score', got '" << body << "'";
      throw std::invalid_argument(msg.str());
    }
    first_content = false;

    std::string a = lowercase(fields[0]);
    std::string b = lowercase(fields[1]);
    auto key = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
    auto [it, inserted] =
        seen.try_emplace(std::move(key), Accumulator{seen.size(), a, b, 0.0, 0});
    it->second.sum += score;
    it->second.count += 1;
  }
  if (seen.empty()) {
    throw std::invalid_argument("word-similarity dataset is empty");
  }

  std::vector<const Accumulator*> ordered;
  ordered.reserve(seen.size());
  for (const auto& [key, acc] : seen) ordered.push_back(&acc);
  std::sort(ordered.begin(), ordered.end(),
            [](const Accumulator* x, const Accumulator* y) { return x->order < y->order; });

  WordSimDataset d;
  d.name = std::move(name);
  for (const Accumulator* acc : ordered) {
    d.pairs.push_back({acc->a, acc->b, acc->sum / acc->count});
  }
  return d;
}

WordSimDataset load_wordsim(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open word-similarity file: " + path);
  return parse_wordsim(in, std::filesystem::path(path).stem().string());
}

double cosine(const Vector& u, const Vector& v) {
  if (u.size() != v.size()) {
    throw std::invalid_argument("cosine: vectors differ in length");
  }
  const double nu = u.norm();
  const double nv = v.norm();
  if (nu == 0.0 || nv == 0.0) {
    std::clog << "warning: cosine with a zero vector, using 0\n";
    return 0.0;
  }
  return std::clamp(u.dot(v) / (nu * nv), -1.0, 1.0);
}

std::vector<double> fractional_ranks(const std::vector<double>& xs) {
  std::vector<std::size_t> order(xs.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return xs[i] < xs[j]; });
  std::vector<double> ranks(xs.size());
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j + 1 < order.size() && xs[order[j + 1]] == xs[order[i]]) ++j;
    // positions i..j (0-based) share rank mean(i+1 .. j+1)
    const double rank = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = rank;
    i = j + 1;
  }
  return ranks;
}

double spearman(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size()) {
    throw std::invalid_argument("spearman: length mismatch");
  }
  if (xs.size() < 2) {
    throw std::invalid_argument("spearman: need at least two points");
  }
  const std::vector<double> rx = fractional_ranks(xs);
  const std::vector<double> ry = fractional_ranks(ys);
  // Twice a fractional rank is an integer, and so is 2 * rank - (m + 1).
  // Accumulating those in integers keeps every sum exact; the only rounding
  // is the final division.
  const auto m = static_cast<std::int64_t>(rx.size());
  std::int64_t sxy = 0;
  std::int64_t sxx = 0;
  std::int64_t syy = 0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    const auto dx = static_cast<std::int64_t>(2.0 * rx[i]) - (m + 1);
    const auto dy = static_cast<std::int64_t>(2.0 * ry[i]) - (m + 1);
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0 || syy == 0) {
    throw std::invalid_argument("spearman: undefined for a constant input");
  }
  const double num = static_cast<double>(sxy);
  const double rho = sxx == syy ? num / static_cast<double>(sxx)
                                : num / std::sqrt(static_cast<double>(sxx) *
                                                  static_cast<double>(syy));
  return std::clamp(rho, -1.0, 1.0);
}

EvalReport evaluate(const EmbeddingSet& e, PointSet which,
                    const WordSimDataset& d) {
  const Matrix& coords = which == PointSet::F ? e.F : e.G;
  const auto& labels = which == PointSet::F ? e.row_labels : e.col_labels;
  std::unordered_map<std::string, Index> lookup;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    lookup.emplace(labels[i], static_cast<Index>(i));
  }

  EvalReport report;
  report.dataset = d.name;
  std::vector<double> human;
  std::vector<double> model;
  for (const auto& pair : d.pairs) {
    const auto ia = lookup.find(pair.a);
    const auto ib = lookup.find(pair.b);
    if (ia == lookup.end() || ib == lookup.end()) {
      ++report.pairs_skipped;
      continue;
    }
    ++report.pairs_used;
    human.push_back(pair.score);
    model.push_back(cosine(coords.row(ia->second).transpose(),
                           coords.row(ib->second).transpose()));
  }
  if (report.pairs_used == 0) {
    throw std::runtime_error("zero usable pairs");
  }
  report.spearman_rho = spearman(human, model);
  return report;
}

void write_report_row(std::ostream& out, const std::string& method,
                      const EvalReport& report) {
  out << method << '\t' << report.dataset << '\t'
      << format_real(report.spearman_rho) << '\t' << report.pairs_used << '\t'
      << report.pairs_skipped << '\n';
}

}  // namespace kca
