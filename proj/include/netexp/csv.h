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

#ifndef NETEXP_CSV_H_
#define NETEXP_CSV_H_

#include <istream>
#include <string>
#include <vector>

namespace netexp {

// Shortest decimal text that parses back to exactly `value`.
std::string FormatDouble(double value);

// Minimal reader for the unquoted comma-separated files this project
// writes. The first row is the header.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Column index by name; throws ConfigError if absent.
  int Column(const std::string& name) const;
};

CsvTable ReadCsv(std::istream& in, const std::string& source_name);

double ParseDouble(const std::string& text, const std::string& context);
int ParseInt(const std::string& text, const std::string& context);

}  // namespace netexp

#endif  // NETEXP_CSV_H_
