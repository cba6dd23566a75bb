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
//
// Articulatory phonological word embeddings: IPA strings are segmented
// against a ternary feature table (greedy longest match) and a word's
// vector is the elementwise sum of its phone vectors. Sums are
// order-insensitive by construction.
//
// Feature table: CSV with header `segment,f1,...,fF` and cells in
// {-,0,+}, mapped to {-1,0,+1}.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "kouzen/translit.h"

namespace kouzen {

struct PhoneFeatureTable {
  std::vector<std::string> feature_names;
  std::vector<std::u32string> segments;            // keyed lookup below
  std::vector<std::vector<int>> values;            // parallel to segments
  std::unordered_map<std::string, size_t> index;   // UTF-8 segment -> row
  size_t max_segment_len = 0;                      // in codepoints

  size_t FeatureCount() const { return feature_names.size(); }
};

PhoneFeatureTable ParseFeatureTable(std::string_view csv);
PhoneFeatureTable LoadFeatureTable(const std::string& path);

struct PhoneSequence {
  std::vector<std::string> phones;       // matched segments, in order
  std::vector<size_t> phone_positions;   // codepoint offset of each phone
  // Characters no table key covers, with their codepoint offsets.
  std::vector<std::pair<size_t, std::string>> residue;
};

// Greedy longest-match segmentation, left to right. Unmatched
// characters land in the residue; concatenating phones and residue in
// position order reconstructs the input.
PhoneSequence SegmentPhones(const PhoneFeatureTable& table,
                            std::string_view ipa);

struct WordEmbedding {
  std::string word;
  std::vector<int> vector;  // length F
  std::vector<std::pair<size_t, std::string>> residue;
};

// Sum of matched phone vectors; the empty phone sequence gives the zero
// vector. Residue characters contribute nothing but are reported.
WordEmbedding EmbedWord(const PhoneFeatureTable& table, std::string_view ipa,
                        std::string word_label = "");

enum class Metric { kEuclidean, kCosine };

struct Neighbor {
  std::string word;
  double score;  // distance for euclidean, similarity for cosine
};

// Brute-force scan: the k nearest pool entries per query (smallest
// distance or largest similarity), ties broken lexicographically by
// word. k larger than the pool ranks the whole pool. Cosine throws
// DomainError on a zero vector, naming the word.
std::vector<std::vector<Neighbor>> NearestNeighbors(
    const std::vector<WordEmbedding>& queries,
    const std::vector<WordEmbedding>& pool, size_t k, Metric metric);

struct EmbeddingMatrix {
  std::vector<std::string> vocab;
  std::vector<std::vector<double>> rows;  // vocab.size() x dim
  // Tokens with residue; fully-unknown tokens get the zero row.
  std::vector<std::pair<std::string, std::string>> report;
};

// One row per vocab token: G2p -> phone sum -> row scaled to unit
// max-absolute-value -> zero-padded to dim. Throws DomainError when dim
// is smaller than the table's feature count.
EmbeddingMatrix BuildEmbeddingMatrix(const std::vector<std::string>& vocab,
                                     const RewriteRuleSet& g2p_rules,
                                     const PhoneFeatureTable& table,
                                     size_t dim);

// Text word-vector convention: `token v1 ... vD` per line. The sidecar
// report is a `token<TAB>residue` TSV, written only when a path is
// given.
void WriteEmbeddingMatrix(const EmbeddingMatrix& matrix,
                          const std::string& path,
                          const std::string& report_path = "");

}  // namespace kouzen
