// Copyright 2026 The kouzen Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "kouzen/phonvec.h"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "kouzen/error.h"
#include "kouzen/text.h"

namespace kouzen {

namespace {

std::vector<std::string> SplitCsvLine(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  for (char c : line) {
    if (c == ',') {
      cells.push_back(cell);
      cell.clear();
    } else {
      cell += c;
    }
  }
  cells.push_back(cell);
  return cells;
}

int CellValue(const std::string& cell, size_t lineno) {
  if (cell == "+") return 1;
  if (cell == "-") return -1;
  if (cell == "0") return 0;
  throw DataError("line " + std::to_string(lineno) + ": invalid cell \"" +
                  cell + "\" (expected -, 0 or +)");
}

}  // namespace

PhoneFeatureTable ParseFeatureTable(std::string_view csv) {
  const std::vector<std::string> lines = SplitLines(Nfc(csv));
  if (lines.empty()) throw DataError("no entries in feature table");

  PhoneFeatureTable table;
  const std::vector<std::string> header = SplitCsvLine(lines[0]);
  if (header.size() < 2 || header[0] != "segment") {
    throw DataError("feature table header must be `segment,f1,...`");
  }
  table.feature_names.assign(header.begin() + 1, header.end());
  const size_t f = table.feature_names.size();

  for (size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].empty()) continue;
    const std::vector<std::string> cells = SplitCsvLine(lines[i]);
    if (cells.size() != f + 1) {
      throw DataError("line " + std::to_string(i + 1) + ": expected " +
                      std::to_string(f + 1) + " cells, got " +
                      std::to_string(cells.size()));
    }
    const std::string& segment = cells[0];
    if (segment.empty()) {
      throw DataError("line " + std::to_string(i + 1) + ": empty segment");
    }
    if (table.index.count(segment)) {
      throw DataError("duplicate segment \"" + segment + "\" at line " +
                      std::to_string(i + 1));
    }
    std::vector<int> row(f);
    for (size_t c = 0; c < f; ++c) row[c] = CellValue(cells[c + 1], i + 1);
    table.index.emplace(segment, table.segments.size());
    table.segments.push_back(DecodeUtf8(segment));
    table.max_segment_len =
        std::max(table.max_segment_len, table.segments.back().size());
    table.values.push_back(std::move(row));
  }
  if (table.segments.empty()) throw DataError("no entries in feature table");
  return table;
}

PhoneFeatureTable LoadFeatureTable(const std::string& path) {
  return ParseFeatureTable(ReadFile(path));
}

PhoneSequence SegmentPhones(const PhoneFeatureTable& table,
                            std::string_view ipa) {
  const std::u32string cps = DecodeUtf8(Nfc(ipa));
  PhoneSequence out;
  size_t pos = 0;
  while (pos < cps.size()) {
    size_t matched = 0;
    const size_t longest = std::min(table.max_segment_len, cps.size() - pos);
    for (size_t len = longest; len >= 1; --len) {
      const std::string candidate =
          EncodeUtf8(std::u32string_view(cps).substr(pos, len));
      if (table.index.count(candidate)) {
        out.phones.push_back(candidate);
        out.phone_positions.push_back(pos);
        matched = len;
        break;
      }
    }
    if (matched == 0) {
      out.residue.emplace_back(pos, EncodeUtf8(cps[pos]));
      ++pos;
    } else {
      pos += matched;
    }
  }
  return out;
}

WordEmbedding EmbedWord(const PhoneFeatureTable& table, std::string_view ipa,
                        std::string word_label) {
  PhoneSequence seq = SegmentPhones(table, ipa);
  WordEmbedding emb;
  emb.word = word_label.empty() ? std::string(ipa) : std::move(word_label);
  emb.vector.assign(table.FeatureCount(), 0);
  for (const std::string& phone : seq.phones) {
    const std::vector<int>& row = table.values[table.index.at(phone)];
    for (size_t i = 0; i < row.size(); ++i) emb.vector[i] += row[i];
  }
  emb.residue = std::move(seq.residue);
  return emb;
}

namespace {

double EuclideanDistance(const std::vector<int>& a, const std::vector<int>& b) {
  double sum = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    const double d = static_cast<double>(a[i]) - static_cast<double>(b[i]);
    sum += d * d;
  }
  return std::sqrt(sum);
}

double Norm(const std::vector<int>& v) {
  double sum = 0;
  for (int x : v) sum += static_cast<double>(x) * x;
  return std::sqrt(sum);
}

double CosineSimilarity(const WordEmbedding& a, const WordEmbedding& b) {
  const double na = Norm(a.vector);
  const double nb = Norm(b.vector);
  if (na == 0) throw DomainError("cosine undefined on zero vector: " + a.word);
  if (nb == 0) throw DomainError("cosine undefined on zero vector: " + b.word);
  double dot = 0;
  for (size_t i = 0; i < a.vector.size(); ++i) {
    dot += static_cast<double>(a.vector[i]) * b.vector[i];
  }
  return dot / (na * nb);
}

}  // namespace

std::vector<std::vector<Neighbor>> NearestNeighbors(
    const std::vector<WordEmbedding>& queries,
    const std::vector<WordEmbedding>& pool, size_t k, Metric metric) {
  if (k < 1) throw DomainError("k must be >= 1");
  const size_t dim =
      queries.empty() ? (pool.empty() ? 0 : pool[0].vector.size())
                      : queries[0].vector.size();
  for (const auto& e : queries) {
    if (e.vector.size() != dim) {
      throw DomainError("dimension mismatch for " + e.word);
    }
  }
  for (const auto& e : pool) {
    if (e.vector.size() != dim) {
      throw DomainError("dimension mismatch for " + e.word);
    }
  }

  std::vector<std::vector<Neighbor>> results;
  results.reserve(queries.size());
  for (const WordEmbedding& q : queries) {
    std::vector<Neighbor> scored;
    scored.reserve(pool.size());
    for (const WordEmbedding& p : pool) {
      const double s = metric == Metric::kEuclidean
                           ? EuclideanDistance(q.vector, p.vector)
                           : CosineSimilarity(q, p);
      scored.push_back(Neighbor{p.word, s});
    }
    const bool ascending = metric == Metric::kEuclidean;
    std::sort(scored.begin(), scored.end(),
              [ascending](const Neighbor& a, const Neighbor& b) {
                if (a.score != b.score) {
                  return ascending ? a.score < b.score : a.score > b.score;
                }
                return a.word < b.word;
              });
    if (scored.size() > k) scored.resize(k);
    results.push_back(std::move(scored));
  }
  return results;
}

EmbeddingMatrix BuildEmbeddingMatrix(const std::vector<std::string>& vocab,
                                     const RewriteRuleSet& g2p_rules,
                                     const PhoneFeatureTable& table,
                                     size_t dim) {
  const size_t f = table.FeatureCount();
  if (dim < f) {
    throw DomainError("target dimension " + std::to_string(dim) +
                      " is smaller than the feature count " +
                      std::to_string(f));
  }
  EmbeddingMatrix matrix;
  matrix.vocab = vocab;
  matrix.rows.reserve(vocab.size());
  for (const std::string& token : vocab) {
    const std::string ipa = G2p(g2p_rules, token);
    WordEmbedding emb = EmbedWord(table, ipa, token);
    std::vector<double> row(dim, 0.0);
    int max_abs = 0;
    for (int v : emb.vector) max_abs = std::max(max_abs, std::abs(v));
    if (max_abs > 0) {
      for (size_t i = 0; i < f; ++i) {
        row[i] = static_cast<double>(emb.vector[i]) / max_abs;
      }
    }
    if (!emb.residue.empty() || max_abs == 0) {
      std::string residue;
      for (const auto& [pos, ch] : emb.residue) residue += ch;
      matrix.report.emplace_back(token, residue);
    }
    matrix.rows.push_back(std::move(row));
  }
  return matrix;
}

void WriteEmbeddingMatrix(const EmbeddingMatrix& matrix,
                          const std::string& path,
                          const std::string& report_path) {
  std::string out;
  char buf[64];
  for (size_t i = 0; i < matrix.vocab.size(); ++i) {
    out += matrix.vocab[i];
    for (double v : matrix.rows[i]) {
      std::snprintf(buf, sizeof(buf), " %.6g", v);
      out += buf;
    }
    out += '\n';
  }
  WriteFile(path, out);
  if (!report_path.empty()) {
    std::string report;
    for (const auto& [token, residue] : matrix.report) {
      report += token;
      report += '\t';
      report += residue;
      report += '\n';
    }
    WriteFile(report_path, report);
  }
}

}  // namespace kouzen
