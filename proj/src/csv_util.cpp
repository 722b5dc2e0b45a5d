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

#include "csv_util.hpp"

#include <charconv>
#include <cmath>
#include <system_error>

#include "qwalk/error.hpp"

namespace qwalk::csv {

std::string FormatDouble(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) throw Error("cannot format number");
  return std::string(buf, ptr);
}

std::vector<std::string> SplitLine(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      out.emplace_back(line.substr(start));
      break;
    }
    out.emplace_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return out;
}

std::string Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(first, last - first + 1));
}

double ParseDouble(std::string_view field, const std::string& where) {
  const std::string f = Trim(field);
  double v = 0.0;
  const char* begin = f.data();
  const char* end = f.data() + f.size();
  if (!f.empty() && *begin == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, v);
  if (f.empty() || ec != std::errc() || ptr != end || !std::isfinite(v)) {
    throw ParseError(where + ": expected a finite number, got '" + f + "'");
  }
  return v;
}

unsigned long long ParseCount(std::string_view field, const std::string& where) {
  const std::string f = Trim(field);
  unsigned long long v = 0;
  auto [ptr, ec] = std::from_chars(f.data(), f.data() + f.size(), v);
  if (f.empty() || ec != std::errc() || ptr != f.data() + f.size()) {
    throw ParseError(where + ": expected a non-negative integer, got '" + f +
                     "'");
  }
  return v;
}

std::ifstream OpenIn(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  return in;
}

std::ofstream OpenOut(const std::filesystem::path& path) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  return out;
}

void ExpectHeader(std::istream& in, const std::vector<std::string>& expected,
                  const std::string& source) {
  std::string line;
  std::string want;
  for (std::size_t i = 0; i < expected.size(); ++i) {
    want += (i ? "," : "") + expected[i];
  }
  if (!std::getline(in, line)) {
    throw ParseError(source + ": missing header, expected '" + want + "'");
  }
  // Tolerate a UTF-8 byte-order mark.
  if (line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
  const auto fields = SplitLine(line);
  bool ok = fields.size() == expected.size();
  for (std::size_t i = 0; ok && i < fields.size(); ++i) {
    ok = Trim(fields[i]) == expected[i];
  }
  if (!ok) {
    throw ParseError(source + ": line 1: bad header '" + Trim(line) +
                     "', expected '" + want + "'");
  }
}

}  // namespace qwalk::csv
