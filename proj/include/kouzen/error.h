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

#pragma once

#include <stdexcept>
#include <string>

namespace kouzen {

// Base class for all toolkit errors. Messages carry the full context
// (file, line number, offending text) so callers can print them as-is.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input text: rule files, bracketed trees, CSV tables, TSV
// lexicons, manifests.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Structurally valid input that violates a data invariant: misaligned
// bitexts, empty segments, duplicate keys, ragged rows.
class DataError : public Error {
 public:
  using Error::Error;
};

// An argument outside its mathematical domain (rate not in [0,1],
// cosine of a zero vector, maxN < 1, D < F).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A request for more items than a corpus can supply.
class CapacityError : public Error {
 public:
  using Error::Error;
};

// An external translator violated the line-in/line-out contract.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

// Filesystem-level failures (missing file, unwritable path).
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace kouzen
