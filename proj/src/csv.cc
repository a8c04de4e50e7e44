// Copyright 2026 The netexp Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "netexp/csv.h"

#include <charconv>
#include <cmath>
#include <sstream>

#include "netexp/errors.h"

namespace netexp {
namespace {

std::vector<std::string> Split(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

}  // namespace

std::string FormatDouble(double value) {
  if (value == 0.0) return "0";
  if (std::isnan(value)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

int CsvTable::Column(const std::string& name) const {
  for (size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return static_cast<int>(i);
  }
  throw ConfigError("csv: missing column '" + name + "'");
}

CsvTable ReadCsv(std::istream& in, const std::string& source_name) {
  CsvTable table;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto fields = Split(line);
    if (table.header.empty()) {
      table.header = std::move(fields);
      continue;
    }
    if (fields.size() != table.header.size()) {
      throw ConfigError(source_name + " line " + std::to_string(line_no) + ": expected " +
                        std::to_string(table.header.size()) + " fields");
    }
    table.rows.push_back(std::move(fields));
  }
  if (table.header.empty()) throw ConfigError(source_name + ": empty file");
  return table;
}

double ParseDouble(const std::string& text, const std::string& context) {
  double value = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw ConfigError(context + ": not a number: '" + text + "'");
  }
  return value;
}

int ParseInt(const std::string& text, const std::string& context) {
  int value = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw ConfigError(context + ": not an integer: '" + text + "'");
  }
  return value;
}

}  // namespace netexp
