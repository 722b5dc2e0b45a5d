// Copyright 2026 The qwalk Authors.
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

#ifndef QWALK_SRC_CSV_UTIL_HPP_
#define QWALK_SRC_CSV_UTIL_HPP_

#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

namespace qwalk::csv {

// Shortest decimal that parses back to the same double.
std::string FormatDouble(double v);

std::vector<std::string> SplitLine(std::string_view line);

// Strict: whole field must be a finite number. Throws ParseError naming
// `where` (e.g. "line 3, column D_um2_s").
double ParseDouble(std::string_view field, const std::string& where);
unsigned long long ParseCount(std::string_view field, const std::string& where);

std::string Trim(std::string_view s);

// Opens for reading; IoError naming the path on failure.
std::ifstream OpenIn(const std::filesystem::path& path);
// Creates parent directories; IoError naming the path on failure.
std::ofstream OpenOut(const std::filesystem::path& path);

// Reads the header line and checks it against `expected` (after trimming).
// Throws ParseError listing the expected header on mismatch.
void ExpectHeader(std::istream& in, const std::vector<std::string>& expected,
                  const std::string& source);

}  // namespace qwalk::csv

#endif  // QWALK_SRC_CSV_UTIL_HPP_
