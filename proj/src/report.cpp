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


#include "fupc/report.hpp"

#include <charconv>
#include <cmath>
#include <ctime>

#include "fupc/error.hpp"

namespace fupc {

namespace {

std::string CellText(const Cell& cell) {
  struct Visitor {
    std::string operator()(std::monostate) const { return ""; }
    std::string operator()(bool b) const { return b ? "true" : "false"; }
    std::string operator()(std::int64_t v) const { return std::to_string(v); }
    std::string operator()(std::uint64_t v) const { return std::to_string(v); }
    std::string operator()(double v) const { return FormatDouble(v); }
    std::string operator()(const std::string& s) const { return s; }
    std::string operator()(Complex z) const { return FormatComplex(z); }
  };
  return std::visit(Visitor{}, cell);
}

nlohmann::json CellJson(const Cell& cell) {
  struct Visitor {
    nlohmann::json operator()(std::monostate) const { return nullptr; }
    nlohmann::json operator()(bool b) const { return b; }
    nlohmann::json operator()(std::int64_t v) const { return v; }
    nlohmann::json operator()(std::uint64_t v) const { return v; }
    nlohmann::json operator()(double v) const {
      if (!std::isfinite(v)) return nullptr;
      return v;
    }
    nlohmann::json operator()(const std::string& s) const { return s; }
    nlohmann::json operator()(Complex z) const { return FormatComplex(z); }
  };
  return std::visit(Visitor{}, cell);
}

Cell Int(int v) { return static_cast<std::int64_t>(v); }
Cell Count(std::uint64_t v) { return v; }
Cell Text(std::string s) { return s; }

Cell ModeSeed(const EvalMode& mode) {
  if (mode.kind == EvalKind::kExact) return std::monostate{};
  return mode.seed;
}

Cell ModeSamples(const EvalMode& mode, std::uint64_t count) {
  return mode.kind == EvalKind::kExact ? count : mode.samples;
}

std::string TrivialNote(const Alphabet& a) {
  if (a.size() == a.base()) return "full alphabet: r_k = 1";
  if (a.size() == 1) return "singleton: r_k = M^(-k/2)";
  return "";
}

}  // namespace

void Table::AddRow(std::vector<Cell> row) {
  if (row.size() != columns.size()) {
    throw Error(ErrorCode::kLengthMismatch,
                "table '" + name + "' has " + std::to_string(columns.size()) +
                    " columns, row has " + std::to_string(row.size()));
  }
  rows.push_back(std::move(row));
}

Format ParseFormat(std::string_view text) {
  if (text == "csv") return Format::kCsv;
  if (text == "json") return Format::kJson;
  throw Error(ErrorCode::kParseError,
              "format must be csv or json, got '" + std::string(text) + "'");
}

std::string FormatDouble(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

std::string FormatComplex(Complex z) {
  std::string out = FormatDouble(z.real());
  const double im = z.imag();
  out += (std::signbit(im) && !std::isnan(im)) ? "-" : "+";
  out += FormatDouble(std::abs(im));
  out += "j";
  return out;
}

std::string QuoteCsvField(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string RenderCsv(const Document& doc) {
  std::string out = "# command: " + doc.command + "\n";
  if (doc.timestamp) out += "# generated: " + *doc.timestamp + "\n";
  out += "# config: " + doc.config.dump() + "\n";
  const bool named = doc.tables.size() > 1;
  for (std::size_t t = 0; t < doc.tables.size(); ++t) {
    const Table& table = doc.tables[t];
    if (named) {
      if (t > 0) out += "\n";
      out += "# table: " + table.name + "\n";
    }
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
      if (c > 0) out += ',';
      out += QuoteCsvField(table.columns[c]);
    }
    out += '\n';
    for (const auto& row : table.rows) {
      for (std::size_t c = 0; c < row.size(); ++c) {
        if (c > 0) out += ',';
        out += QuoteCsvField(CellText(row[c]));
      }
      out += '\n';
    }
  }
  return out;
}

std::string RenderJson(const Document& doc) {
  nlohmann::ordered_json root;
  root["command"] = doc.command;
  if (doc.timestamp) root["generated"] = *doc.timestamp;
  root["config"] = doc.config;
  nlohmann::ordered_json tables = nlohmann::ordered_json::object();
  for (const Table& table : doc.tables) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
      nlohmann::ordered_json obj = nlohmann::ordered_json::object();
      for (std::size_t c = 0; c < row.size(); ++c) obj[table.columns[c]] = CellJson(row[c]);
      rows.push_back(std::move(obj));
    }
    tables[table.name] = std::move(rows);
  }
  root["tables"] = std::move(tables);
  return root.dump(2) + "\n";
}

std::string Render(const Document& doc, Format format) {
  return format == Format::kCsv ? RenderCsv(doc) : RenderJson(doc);
}

std::string UtcTimestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Table SpectralTable(const std::vector<SpectralReport>& reports) {
  Table t{"spectral",
          {"M", "alphabet", "k", "r_k", "beta_k", "method", "residual", "iterations",
           "converged", "schur_bound", "volume_bound", "red_line", "best_possible", "note"},
          {}};
  for (const SpectralReport& r : reports) {
    const double delta = Dimension(r.alphabet);
    t.AddRow({Int(r.alphabet.base()), Text(r.alphabet.ToString()), Int(r.k), r.r_k,
              r.beta_k, Text(SpectralMethodName(r.method)), r.residual, Int(r.iterations),
              r.converged, SchurBound(r.alphabet), VolumeBound(delta), RedLine(delta),
              BestPossible(delta), Text(TrivialNote(r.alphabet))});
  }
  return t;
}

Table TailTable(const TailReport& report) {
  Table t{"tail",
          {"t", "empirical", "bound", "mode", "samples", "seed", "ci_low", "ci_high"},
          {}};
  for (const auto& [name, values] : report.extra_bounds) t.columns.push_back(name);
  t.columns.push_back("lipschitz");
  t.columns.push_back("mean");
  for (std::size_t i = 0; i < report.t_grid.size(); ++i) {
    std::vector<Cell> row{report.t_grid[i],
                          report.empirical_tail[i],
                          report.bound[i],
                          Text(EvalKindName(report.mode.kind)),
                          Count(report.samples),
                          ModeSeed(report.mode),
                          report.ci_low[i],
                          report.ci_high[i]};
    for (const auto& [name, values] : report.extra_bounds) row.push_back(values[i]);
    row.push_back(report.lipschitz);
    row.push_back(report.mean);
    t.AddRow(std::move(row));
  }
  return t;
}

Table GoodSetSummaryTable(const GoodSetReport& r) {
  Table t{"goodset",
          {"M", "A", "L", "mode", "samples", "seed", "complement_measure",
           "union_bound_64", "union_bound_16", "holds_64", "holds_16"},
          {}};
  t.AddRow({Int(r.m), Int(r.a_card), r.level, Text(EvalKindName(r.mode.kind)),
            ModeSamples(r.mode, r.count), ModeSeed(r.mode), r.complement_measure,
            r.union_bound_64, r.union_bound_16, r.holds_64, r.holds_16});
  return t;
}

Table GoodSetFrequencyTable(const GoodSetReport& r) {
  Table t{"per_frequency",
          {"freq", "complement_measure", "per_freq_bound_64", "per_freq_bound_16"},
          {}};
  for (std::size_t i = 0; i < r.per_freq_complement.size(); ++i) {
    t.AddRow({Count(i + 1), r.per_freq_complement[i], r.per_freq_bound_64,
              r.per_freq_bound_16});
  }
  return t;
}

Table GapTable(const std::vector<GapRow>& rows) {
  Table t{"gap", {"M", "alphabet", "k", "N", "rho", "norm", "j_used", "converged"}, {}};
  if (!rows.empty()) {
    for (const GapColumn& c : rows.front().columns) {
      const std::string& n = c.candidate.name;
      t.columns.push_back("beta_" + n);
      t.columns.push_back("m_pow_neg_beta_" + n);
      t.columns.push_back("m_pow_beta_" + n);
      t.columns.push_back("regime_not_reached_" + n);
    }
  }
  for (const GapRow& r : rows) {
    std::vector<Cell> row{Int(r.alphabet.base()), Text(r.alphabet.ToString()), Int(r.k),
                          Count(r.n), r.rho, r.norm, Int(r.j_used), r.converged};
    for (const GapColumn& c : r.columns) {
      row.push_back(c.candidate.beta);
      row.push_back(c.m_pow_neg_beta);
      row.push_back(c.m_pow_beta);
      row.push_back(c.regime_not_reached);
    }
    t.AddRow(std::move(row));
  }
  return t;
}

Table FupcTable(const std::vector<FupcRecord>& records) {
  Table t{"fupc",
          {"m", "a_card", "delta", "epsilon", "threshold", "mode", "samples", "seed",
           "k_max", "count", "successes", "success_fraction", "theorem_floor",
           "floor_vacuous", "in_regime", "floor_holds", "unconverged"},
          {}};
  for (const FupcRecord& r : records) {
    t.AddRow({Int(r.m), Int(r.a_card), r.delta, r.epsilon, r.threshold,
              Text(EvalKindName(r.mode.kind)), ModeSamples(r.mode, r.count),
              ModeSeed(r.mode), Int(r.k_max), Count(r.count), Count(r.successes),
              r.success_fraction, r.theorem_floor, r.floor_vacuous, r.in_regime,
              r.floor_holds, Count(r.unconverged)});
  }
  return t;
}

Table CurveTable(const std::vector<CurvePoint>& points) {
  Table t{"curve",
          {"m", "a_card", "delta", "mean_beta_lower", "volume_bound", "red_line",
           "best_possible", "k_max", "std_error", "mode", "samples", "seed", "count",
           "dominates_volume", "above_red_line", "unconverged"},
          {}};
  for (const CurvePoint& p : points) {
    t.AddRow({Int(p.m), Int(p.a_card), p.delta, p.mean_beta_lower, p.volume_bound,
              p.red_line, p.best_possible, Int(p.k_max), p.std_error,
              Text(EvalKindName(p.mode.kind)), ModeSamples(p.mode, p.count),
              ModeSeed(p.mode), Count(p.count), p.dominates_volume, p.above_red_line,
              Count(p.unconverged)});
  }
  return t;
}

Table SampleTable(const BetaSample& sample, const EvalMode& mode) {
  Table t{"alphabets", {mode.kind == EvalKind::kExact ? "rank" : "sample", "alphabet",
                        "beta_lower"}, {}};
  for (std::size_t i = 0; i < sample.alphabets.size(); ++i) {
    t.AddRow({Count(i), Text(sample.alphabets[i].ToString()), sample.beta_lower[i]});
  }
  return t;
}

}  // namespace fupc
