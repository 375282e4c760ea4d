/*
 * Copyright 2026 The occucode Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#include "csv.hpp"

#include <iterator>

#include "occucode/error.hpp"

namespace occucode::csv {

std::vector<Record> read_records(std::istream& in) {
  const std::string data{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  std::vector<Record> records;

  std::size_t i = 0;
  std::size_t line = 1;
  if (data.starts_with("\xEF\xBB\xBF")) i = 3;

  while (i < data.size()) {
    // Blank line.
    if (data[i] == '\n' || (data[i] == '\r' && i + 1 < data.size() && data[i + 1] == '\n')) {
      i += data[i] == '\r' ? 2 : 1;
      ++line;
      continue;
    }

    Record rec;
    rec.line = line;
    std::string field;
    bool done = false;
    while (!done) {
      field.clear();
      if (i < data.size() && data[i] == '"') {
        ++i;
        while (true) {
          if (i >= data.size()) {
            fail(ErrorKind::kMalformedRow,
                 "line " + std::to_string(rec.line) + ": unterminated quoted field");
          }
          const char c = data[i];
          if (c == '"') {
            if (i + 1 < data.size() && data[i + 1] == '"') {
              field += '"';
              i += 2;
              continue;
            }
            ++i;
            break;
          }
          if (c == '\n') ++line;
          field += c;
          ++i;
        }
        if (i < data.size() && data[i] != ',' && data[i] != '\n' && data[i] != '\r') {
          fail(ErrorKind::kMalformedRow,
               "line " + std::to_string(line) + ": unexpected character after closing quote");
        }
      } else {
        while (i < data.size() && data[i] != ',' && data[i] != '\n' && data[i] != '\r') {
          field += data[i++];
        }
      }
      rec.fields.push_back(field);

      if (i >= data.size()) {
        done = true;
      } else if (data[i] == ',') {
        ++i;
      } else if (data[i] == '\n') {
        ++i;
        ++line;
        done = true;
      } else if (data[i] == '\r') {
        i += (i + 1 < data.size() && data[i + 1] == '\n') ? 2 : 1;
        ++line;
        done = true;
      }
    }
    records.push_back(std::move(rec));
  }
  return records;
}

}  // namespace occucode::csv
