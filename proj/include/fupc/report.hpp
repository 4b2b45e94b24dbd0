// Copyright 2026 The fupc Authors.
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


#ifndef FUPC_REPORT_HPP_
#define FUPC_REPORT_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"

#include "fupc/alphabets.hpp"
#include "fupc/experiments.hpp"
#include "fupc/oqm.hpp"
#include "fupc/spectral.hpp"

namespace fupc {

using Cell = std::variant<std::monostate, bool, std::int64_t, std::uint64_t,
                          double, std::string, Complex>;

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  // Throws Error{kLengthMismatch} when the row width differs from columns.
  void AddRow(std::vector<Cell> row);
};

// A rendered result: a config echo, an optional timestamp line, and one or
// more tables.
struct Document {
  std::string command;
  nlohmann::json config = nlohmann::json::object();
  std::optional<std::string> timestamp;
  std::vector<Table> tables;
};

enum class Format { kCsv, kJson };

// "csv" or "json"; Error{kParseError} otherwise.
Format ParseFormat(std::string_view text);

// Shortest text that reads back to the same double; "nan", "inf", "-inf".
std::string FormatDouble(double x);

// "re+imj" / "re-imj".
std::string FormatComplex(Complex z);

// RFC 4180 field quoting: fields holding a comma, quote, CR or LF are wrapped
// in quotes with inner quotes doubled.
std::string QuoteCsvField(std::string_view field);

// Comment lines "# command: ...", "# generated: ..." (if set) and
// "# config: {...}", then each table as a header row plus data rows. With
// several tables each one is preceded by "# table: name" and separated by a
// blank line. Lines end in "\n".
std::string RenderCsv(const Document& doc);

// {"command", "generated" (if set), "config", "tables": {name: [row objects]}}
// pretty-printed with two-space indent. Complex cells become "re+imj"
// strings, non-finite doubles become null.
std::string RenderJson(const Document& doc);

std::string Render(const Document& doc, Format format);

// Current UTC time as YYYY-MM-DDTHH:MM:SSZ.
std::string UtcTimestamp();

// Table builders. Column names are fixed per record type.
Table SpectralTable(const std::vector<SpectralReport>& reports);
Table TailTable(const TailReport& report);
Table GoodSetSummaryTable(const GoodSetReport& report);
Table GoodSetFrequencyTable(const GoodSetReport& report);
Table GapTable(const std::vector<GapRow>& rows);
Table FupcTable(const std::vector<FupcRecord>& records);
Table CurveTable(const std::vector<CurvePoint>& points);
Table SampleTable(const BetaSample& sample, const EvalMode& mode);

}  // namespace fupc

#endif  // FUPC_REPORT_HPP_
