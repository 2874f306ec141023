// Copyright 2026 The Subvec Authors.
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

#ifndef SUBVEC_UTF8_H_
#define SUBVEC_UTF8_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace subvec::utf8 {

inline constexpr std::string_view kReplacement = "\xEF\xBF\xBD";

// ASCII whitespace; the corpus is pre-normalized so Unicode spaces are not
// token separators.
inline bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' ||
         c == '\f';
}

// Length in bytes of the well-formed sequence starting at `s[pos]`, or 0 if
// the bytes there are not valid UTF-8.
std::size_t sequence_length(std::string_view s, std::size_t pos);

bool is_valid(std::string_view s);

// Copies `s`, replacing every ill-formed byte with U+FFFD.
std::string sanitize(std::string_view s);

// Byte offsets of each scalar value in valid UTF-8 `s`, followed by s.size().
std::vector<std::size_t> boundaries(std::string_view s);

// Lowercases ASCII, Latin-1, Latin Extended-A, Greek and Cyrillic letters.
// Other scalar values are copied through.
std::string to_lower(std::string_view s);

}  // namespace subvec::utf8

#endif  // SUBVEC_UTF8_H_
