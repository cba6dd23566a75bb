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

#include <string>
#include <string_view>
#include <vector>

namespace kouzen {

// Strict UTF-8 decoding. Rejects overlong encodings, surrogates, values
// above U+10FFFF and truncated sequences; throws DataError naming the
// byte offset of the offending sequence.
std::u32string DecodeUtf8(std::string_view s);

std::string EncodeUtf8(std::u32string_view cps);
std::string EncodeUtf8(char32_t cp);

// Canonical composition (NFC). Input must be valid UTF-8.
std::string Nfc(std::string_view s);

// Unicode White_Space property (covers NBSP and the usual ASCII set).
bool IsSpace(char32_t c);

// Other control characters; these are stripped during normalization.
bool IsControl(char32_t c);

bool IsUpper(char32_t c);
bool IsPunct(char32_t c);
char32_t ToLower(char32_t c);
char32_t ToUpper(char32_t c);

// Per-codepoint lowercasing of a whole UTF-8 string.
std::string FoldCase(std::string_view s);

// If `original` starts with an uppercase letter, uppercase the first
// codepoint of `replacement`; otherwise return it unchanged.
std::string MatchInitialCapital(std::string_view original,
                                std::string_view replacement);

std::vector<std::string> SplitWhitespace(std::string_view s);
std::string JoinTokens(const std::vector<std::string>& tokens);

// Entire file as one string. Throws IoError if unreadable.
std::string ReadFile(const std::string& path);
void WriteFile(const std::string& path, std::string_view content);

// Splits on '\n'; a trailing newline does not produce an empty last
// element. '\r' preceding a newline is dropped.
std::vector<std::string> SplitLines(std::string_view text);

}  // namespace kouzen
