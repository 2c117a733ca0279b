// Copyright 2026 The pcm-weights Authors.
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

#include "pcmw/pcm_io.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include <nlohmann/json.hpp>

#include "pcmw/error.hpp"

namespace pcmw {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

std::string format17(double v) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                 std::chars_format::general, 17);
  return std::string(buf.data(), ptr);
}

[[noreturn]] void parse_fail(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::kParseError, where + ": " + what);
}

IncompletePCM parse_csv(std::string_view text) {
  std::vector<std::vector<std::string_view>> rows;
  std::vector<std::size_t> line_numbers;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{} : text.substr(eol + 1);
    ++line_no;
    if (trim(line).empty()) continue;
    std::vector<std::string_view> cells;
    while (true) {
      const auto comma = line.find(',');
      cells.push_back(trim(line.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      line.remove_prefix(comma + 1);
    }
    rows.push_back(std::move(cells));
    line_numbers.push_back(line_no);
  }

  const std::size_t n = rows.size();
  if (n < 2) parse_fail("csv", "expected at least 2 rows, found " + std::to_string(n));

  std::vector<RawEntry> entries;
  for (std::size_t r = 0; r < n; ++r) {
    const std::string where = "csv line " + std::to_string(line_numbers[r]);
    if (rows[r].size() != n) {
      parse_fail(where, "expected " + std::to_string(n) + " fields, found " +
                            std::to_string(rows[r].size()));
    }
    for (std::size_t c = 0; c < n; ++c) {
      const std::string_view cell = rows[r][c];
      if (cell.empty()) continue;
      const std::string field = where + " field " + std::to_string(c + 1);
      double v = 0.0;
      const char* first = cell.data();
      const char* last = cell.data() + cell.size();
      if (*first == '+') ++first;
      auto [ptr, ec] = std::from_chars(first, last, v);
      if (ec != std::errc{} || ptr != last) {
        parse_fail(field, "not a decimal literal: '" + std::string(cell) + "'");
      }
      if (!std::isfinite(v)) {
        parse_fail(field, "NaN and Inf are not accepted");
      }
      entries.push_back({r, c, v});
    }
  }
  return validate(n, entries);
}

IncompletePCM parse_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text.begin(), text.end());
  } catch (const nlohmann::json::parse_error& e) {
    parse_fail("json", e.what());
  }
  if (!doc.is_object()) parse_fail("json", "top level must be an object");
  const auto n_it = doc.find("n");
  if (n_it == doc.end() || !n_it->is_number_integer()) {
    parse_fail("json field 'n'", "missing or not an integer");
  }
  const auto n_signed = n_it->get<long long>();
  if (n_signed < 2) parse_fail("json field 'n'", "must be at least 2");
  const auto n = static_cast<std::size_t>(n_signed);

  const auto e_it = doc.find("entries");
  if (e_it == doc.end() || !e_it->is_array()) {
    parse_fail("json field 'entries'", "missing or not an array");
  }
  std::vector<RawEntry> entries;
  entries.reserve(e_it->size());
  std::size_t k = 0;
  for (const auto& item : *e_it) {
    const std::string where = "json entries[" + std::to_string(k++) + "]";
    if (!item.is_array() || item.size() != 3 || !item[0].is_number_integer() ||
        !item[1].is_number_integer() || !item[2].is_number()) {
      parse_fail(where, "expected [i, j, value] with integer indices");
    }
    const auto i = item[0].get<long long>();
    const auto j = item[1].get<long long>();
    if (i < 1 || j < 1 || i > n_signed || j > n_signed) {
      throw Error(ErrorCode::kIndexOutOfRange,
                  where + ": index (" + std::to_string(i) + "," +
                      std::to_string(j) + ") outside 1.." + std::to_string(n));
    }
    entries.push_back({static_cast<NodeId>(i - 1), static_cast<NodeId>(j - 1),
                       item[2].get<double>()});
  }
  return validate(n, entries);
}

std::string format_json(const IncompletePCM& pcm) {
  nlohmann::ordered_json doc;
  doc["n"] = pcm.size();
  auto entries = nlohmann::ordered_json::array();
  for (const auto& c : pcm.comparisons()) {
    entries.push_back({c.i + 1, c.j + 1, c.value});
  }
  doc["entries"] = std::move(entries);
  return doc.dump() + "\n";
}

std::string format_csv(const IncompletePCM& pcm) {
  std::string out;
  const std::size_t n = pcm.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j > 0) out += ',';
      if (i == j) {
        out += '1';
      } else if (auto v = pcm.value(i, j)) {
        out += format17(*v);
      }
    }
    out += '\n';
  }
  return out;
}

}  // namespace

std::string_view to_string(PcmFormat format) noexcept {
  return format == PcmFormat::kJson ? "json" : "csv";
}

std::optional<PcmFormat> parse_format(std::string_view text) {
  if (text == "json") return PcmFormat::kJson;
  if (text == "csv") return PcmFormat::kCsv;
  return std::nullopt;
}

std::optional<PcmFormat> format_from_extension(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (ext == ".json") return PcmFormat::kJson;
  if (ext == ".csv") return PcmFormat::kCsv;
  return std::nullopt;
}

IncompletePCM parse_pcm(std::string_view text, PcmFormat format) {
  return format == PcmFormat::kJson ? parse_json(text) : parse_csv(text);
}

std::string format_pcm(const IncompletePCM& pcm, PcmFormat format) {
  return format == PcmFormat::kJson ? format_json(pcm) : format_csv(pcm);
}

IncompletePCM read_pcm(const std::filesystem::path& path, PcmFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::kIoError, "cannot read " + path.string());
  return parse_pcm(buf.str(), format);
}

void write_pcm(const IncompletePCM& pcm, const std::filesystem::path& path,
               PcmFormat format) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  out << format_pcm(pcm, format);
  out.flush();
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
}

}  // namespace pcmw
