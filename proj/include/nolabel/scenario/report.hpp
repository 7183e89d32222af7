// Copyright 2026 The nolabel Authors
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

#ifndef NOLABEL_SCENARIO_REPORT_HPP
#define NOLABEL_SCENARIO_REPORT_HPP

#include <cstdio>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "nolabel/scenario/pipeline.hpp"

namespace nolabel::scenario {

enum class ReportFormat { kCsv, kJson };

inline std::optional<ReportFormat> parse_report_format(const std::string &s) {
  if (s == "csv") return ReportFormat::kCsv;
  if (s == "json") return ReportFormat::kJson;
  return std::nullopt;
}

inline const std::vector<std::string> &report_columns() {
  static const std::vector<std::string> cols{
      "index",   "statistics", "initial_state", "channel",     "q",           "placement",
      "deformation", "l_re",   "l_im",          "lp_re",       "lp_im",       "r_re",
      "r_im",    "rp_re",      "rp_im",         "indistinguishability", "probability", "concurrence",
      "eof",     "fidelity_target", "fidelity", "wall_time_s"};
  return cols;
}

namespace detail {

// 12 significant digits.
inline std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline double round_12(double v) { return std::stod(format_number(v)); }

inline std::string csv_field(const std::string &s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// Column values as (is_number, text, value) in report_columns() order.
struct Cell {
  enum Kind { kEmpty, kText, kNumber } kind = kEmpty;
  std::string text;
  double number = 0.0;
};

inline std::vector<Cell> cells(const RunRecord &r) {
  auto num = [](double v) { return Cell{Cell::kNumber, {}, v}; };
  auto text = [](const std::string &s) { return Cell{Cell::kText, s, 0.0}; };
  auto opt = [&](const std::optional<double> &v) { return v ? num(*v) : Cell{}; };
  auto re = [&](const std::optional<Complex> &v) { return v ? num(v->real()) : Cell{}; };
  auto im = [&](const std::optional<Complex> &v) { return v ? num(v->imag()) : Cell{}; };
  return {num(static_cast<double>(r.index)),
          text(r.statistics),
          text(r.initial_state),
          text(r.channel),
          num(r.q),
          text(r.placement),
          text(r.deformation),
          re(r.l),
          im(r.l),
          re(r.lp),
          im(r.lp),
          re(r.r),
          im(r.r),
          re(r.rp),
          im(r.rp),
          opt(r.indistinguishability),
          opt(r.probability),
          opt(r.concurrence),
          opt(r.eof),
          text(r.fidelity_target),
          opt(r.fidelity),
          num(r.wall_time_s)};
}

}  // namespace detail

inline void write_csv(std::ostream &os, const std::vector<RunRecord> &records) {
  const auto &cols = report_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
  os << "\n";
  for (const auto &r : records) {
    const auto cs = detail::cells(r);
    for (std::size_t i = 0; i < cs.size(); ++i) {
      if (i) os << ",";
      if (cs[i].kind == detail::Cell::kText) os << detail::csv_field(cs[i].text);
      if (cs[i].kind == detail::Cell::kNumber) os << detail::format_number(cs[i].number);
    }
    os << "\n";
  }
}

inline nlohmann::json to_json(const std::vector<RunRecord> &records) {
  const auto &cols = report_columns();
  auto arr = nlohmann::json::array();
  for (const auto &r : records) {
    nlohmann::json obj = nlohmann::json::object();
    const auto cs = detail::cells(r);
    for (std::size_t i = 0; i < cs.size(); ++i) {
      switch (cs[i].kind) {
        case detail::Cell::kEmpty: obj[cols[i]] = nullptr; break;
        case detail::Cell::kText: obj[cols[i]] = cs[i].text; break;
        case detail::Cell::kNumber:
          if (cols[i] == "index") {
            obj[cols[i]] = r.index;
          } else {
            obj[cols[i]] = detail::round_12(cs[i].number);
          }
          break;
      }
    }
    arr.push_back(std::move(obj));
  }
  return arr;
}

inline void write_json(std::ostream &os, const std::vector<RunRecord> &records) { os << to_json(records).dump(2) << "\n"; }

inline std::string render_report(const std::vector<RunRecord> &records, ReportFormat format) {
  std::ostringstream os;
  if (format == ReportFormat::kCsv) {
    write_csv(os, records);
  } else {
    write_json(os, records);
  }
  return os.str();
}

inline void emit_report(const std::vector<RunRecord> &records, ReportFormat format, const std::string &path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot open report file '" + path + "' for writing");
  out << render_report(records, format);
  if (!out) throw Error(ErrorCode::kIo, "failed writing report file '" + path + "'");
}

}  // namespace nolabel::scenario

#endif  // NOLABEL_SCENARIO_REPORT_HPP
