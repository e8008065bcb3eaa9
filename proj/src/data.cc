// Copyright 2026 The hgbt Authors. All Rights Reserved.
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "hgbt/data.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <optional>
#include <random>
#include <sstream>
#include <string_view>

namespace hgbt {

void DataMatrix::PushRow(std::vector<Entry> row, double label) {
  if (!std::isfinite(label)) {
    throw ContractError("label must be finite");
  }
  std::erase_if(row, [](Entry const& e) { return std::isnan(e.fvalue); });
  std::sort(row.begin(), row.end(),
            [](Entry const& a, Entry const& b) { return a.index < b.index; });
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (std::isinf(row[i].fvalue)) {
      throw ContractError("feature value must be finite (feature " +
                          std::to_string(row[i].index) + ")");
    }
    if (i > 0 && row[i].index == row[i - 1].index) {
      throw ContractError("duplicate feature index " + std::to_string(row[i].index));
    }
  }
  if (!row.empty()) {
    n_features_ = std::max<std::size_t>(n_features_, row.back().index + 1);
  }
  entries_.insert(entries_.end(), row.begin(), row.end());
  row_ptr_.push_back(entries_.size());
  labels_.push_back(label);
}

DataMatrix DataMatrix::FromDense(std::span<float const> values, std::size_t n_rows,
                                 std::size_t n_features, std::span<double const> labels) {
  if (values.size() != n_rows * n_features || labels.size() != n_rows) {
    throw ContractError("dense matrix shape does not match buffer sizes");
  }
  DataMatrix out;
  std::vector<Entry> row;
  for (std::size_t i = 0; i < n_rows; ++i) {
    row.clear();
    for (std::size_t j = 0; j < n_features; ++j) {
      row.push_back({static_cast<bst_feature_t>(j), values[i * n_features + j]});
    }
    out.PushRow(row, labels[i]);
  }
  out.SetNumFeatures(n_features);
  return out;
}

void DataMatrix::SetNumFeatures(std::size_t n) {
  std::size_t max_seen = 0;
  for (auto const& e : entries_) max_seen = std::max<std::size_t>(max_seen, e.index + 1);
  if (n < max_seen) {
    throw ContractError("cannot shrink feature count below " + std::to_string(max_seen));
  }
  n_features_ = n;
}

void DataMatrix::SetLabels(std::vector<double> labels) {
  if (labels.size() != NumRows()) throw ContractError("label count does not match row count");
  for (double y : labels) {
    if (!std::isfinite(y)) throw ContractError("label must be finite");
  }
  labels_ = std::move(labels);
}

namespace {

std::string ReadFile(std::string const& path) {
  std::ifstream fi(path, std::ios::binary);
  if (!fi) throw IoError("cannot open file: " + path);
  std::ostringstream ss;
  ss << fi.rdbuf();
  if (fi.bad()) throw IoError("cannot read file: " + path);
  return ss.str();
}

std::string_view Trim(std::string_view s) {
  auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

bool IsNanToken(std::string_view s) {
  if (s.size() != 3) return false;
  auto lower = [](char c) { return static_cast<char>(c | 0x20); };
  return lower(s[0]) == 'n' && lower(s[1]) == 'a' && lower(s[2]) == 'n';
}

/*! \brief parse a full token as a double; nullopt if it is not a number */
std::optional<double> ParseNumber(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return std::nullopt;
  double v{};
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ptr != s.data() + s.size()) return std::nullopt;
  if (ec == std::errc::result_out_of_range) return std::numeric_limits<double>::infinity();
  if (ec != std::errc{}) return std::nullopt;
  return v;
}

[[noreturn]] void Fail(std::string const& path, std::size_t line, std::size_t col,
                       std::string const& msg) {
  std::string where = path + ":" + std::to_string(line);
  if (col != 0) where += ":" + std::to_string(col);
  throw ParseError(where + ": " + msg, line, col);
}

float ToFeatureValue(double v, std::string const& path, std::size_t line, std::size_t col) {
  if (std::isnan(v)) return std::numeric_limits<float>::quiet_NaN();
  auto f = static_cast<float>(v);
  if (!std::isfinite(f)) Fail(path, line, col, "feature value is not a finite float");
  return f;
}

/*! \brief iterate over lines, reporting 1-based line numbers */
template <typename Fn>
void ForEachLine(std::string_view text, Fn&& fn) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    ++line_no;
    fn(line, line_no);
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
}

}  // namespace

DataMatrix LoadCsv(std::string const& path, CsvOptions const& opts) {
  std::string const text = ReadFile(path);
  DataMatrix out;
  std::optional<std::size_t> n_columns;
  std::vector<Entry> row;
  bool header_pending = opts.header;

  ForEachLine(text, [&](std::string_view line, std::size_t line_no) {
    if (Trim(line).empty()) return;
    if (header_pending) {
      header_pending = false;
      return;
    }
    row.clear();
    std::optional<double> label;
    std::size_t col = 0;
    std::size_t pos = 0;
    while (true) {
      auto comma = line.find(',', pos);
      std::string_view cell = Trim(line.substr(pos, comma == std::string_view::npos
                                                        ? std::string_view::npos
                                                        : comma - pos));
      std::optional<double> value;
      if (!cell.empty() && !IsNanToken(cell)) {
        value = ParseNumber(cell);
        if (!value) {
          Fail(path, line_no, pos + 1, "not a number: '" + std::string(cell) + "'");
        }
      }
      if (col == opts.label_column) {
        if (!value) Fail(path, line_no, pos + 1, "missing label");
        if (!std::isfinite(*value)) Fail(path, line_no, pos + 1, "label is not finite");
        label = value;
      } else if (value) {
        auto feature = static_cast<bst_feature_t>(col < opts.label_column ? col : col - 1);
        row.push_back({feature, ToFeatureValue(*value, path, line_no, pos + 1)});
      }
      ++col;
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    if (!n_columns) {
      if (opts.label_column >= col) {
        Fail(path, line_no, 0,
             "label column " + std::to_string(opts.label_column) + " out of range for " +
                 std::to_string(col) + " columns");
      }
      n_columns = col;
    } else if (col != *n_columns) {
      Fail(path, line_no, 0,
           "expected " + std::to_string(*n_columns) + " columns, found " + std::to_string(col));
    }
    out.PushRow(row, *label);
  });

  if (out.NumRows() == 0) throw ParseError(path + ": no rows", 0, 0);
  out.SetNumFeatures(*n_columns - 1);
  return out;
}

DataMatrix LoadLibsvm(std::string const& path, IndexBase base) {
  std::string const text = ReadFile(path);
  DataMatrix out;
  std::vector<Entry> row;
  auto const offset = static_cast<std::uint64_t>(base);

  ForEachLine(text, [&](std::string_view line, std::size_t line_no) {
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (Trim(line).empty()) return;
    row.clear();
    std::optional<double> label;
    std::size_t pos = 0;
    while (pos < line.size()) {
      while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\t' || line[pos] == '\r')) {
        ++pos;
      }
      if (pos >= line.size()) break;
      std::size_t end = pos;
      while (end < line.size() && line[end] != ' ' && line[end] != '\t' && line[end] != '\r') {
        ++end;
      }
      std::string_view token = line.substr(pos, end - pos);
      std::size_t const column = pos + 1;
      pos = end;

      if (!label) {
        label = ParseNumber(token);
        if (!label || !std::isfinite(*label)) {
          Fail(path, line_no, column, "invalid label '" + std::string(token) + "'");
        }
        continue;
      }
      auto colon = token.find(':');
      if (colon == std::string_view::npos) {
        Fail(path, line_no, column, "expected idx:value, got '" + std::string(token) + "'");
      }
      std::string_view idx_str = token.substr(0, colon);
      std::string_view val_str = token.substr(colon + 1);
      std::uint64_t idx{};
      auto [iptr, iec] = std::from_chars(idx_str.data(), idx_str.data() + idx_str.size(), idx);
      if (iec != std::errc{} || iptr != idx_str.data() + idx_str.size()) {
        Fail(path, line_no, column, "invalid feature index '" + std::string(idx_str) + "'");
      }
      if (idx < offset) {
        Fail(path, line_no, column, "feature index " + std::to_string(idx) +
                                        " below index base " + std::to_string(offset));
      }
      idx -= offset;
      if (idx >= std::numeric_limits<bst_feature_t>::max()) {
        Fail(path, line_no, column, "feature index too large");
      }
      std::optional<double> value;
      if (IsNanToken(val_str)) {
        value = std::numeric_limits<double>::quiet_NaN();
      } else {
        value = ParseNumber(val_str);
      }
      if (!value) {
        Fail(path, line_no, column + colon + 1,
             "not a number: '" + std::string(val_str) + "'");
      }
      row.push_back({static_cast<bst_feature_t>(idx),
                     ToFeatureValue(*value, path, line_no, column + colon + 1)});
    }
    try {
      out.PushRow(row, *label);
    } catch (ContractError const& e) {
      Fail(path, line_no, 0, e.what());
    }
  });

  if (out.NumRows() == 0) throw ParseError(path + ": no rows", 0, 0);
  return out;
}

void SaveLibsvm(DataMatrix const& data, std::string const& path, IndexBase base) {
  std::ofstream fo(path);
  if (!fo) throw IoError("cannot open file for writing: " + path);
  auto const offset = static_cast<std::uint64_t>(base);
  char buf[64];
  for (std::size_t i = 0; i < data.NumRows(); ++i) {
    auto res = std::to_chars(buf, buf + sizeof(buf), data.Labels()[i]);
    fo.write(buf, res.ptr - buf);
    for (auto const& e : data.Row(i)) {
      fo << ' ' << (e.index + offset) << ':';
      res = std::to_chars(buf, buf + sizeof(buf), e.fvalue);
      fo.write(buf, res.ptr - buf);
    }
    fo << '\n';
  }
  if (!fo) throw IoError("failed writing file: " + path);
}

DataMatrix MakeSynthetic(SyntheticKind kind, std::size_t n_rows, std::size_t n_features,
                         std::uint64_t seed) {
  if (n_rows == 0 || n_features == 0) {
    throw ContractError("synthetic data needs at least one row and one feature");
  }
  std::mt19937_64 rng(seed);
  auto uniform = [&rng](double lo, double hi) {
    double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    return lo + (hi - lo) * u;
  };
  std::size_t const n_informative = std::min<std::size_t>(n_features, 5);
  std::vector<double> weights(n_informative);
  for (std::size_t k = 0; k < n_informative; ++k) {
    weights[k] = (k % 2 == 0 ? 1.0 : -1.0) * (1.0 + 0.5 * static_cast<double>(k));
  }

  DataMatrix out;
  std::vector<Entry> row(n_features);
  for (std::size_t i = 0; i < n_rows; ++i) {
    double signal = 0.0;
    for (std::size_t j = 0; j < n_features; ++j) {
      auto x = static_cast<float>(uniform(-1.0, 1.0));
      row[j] = {static_cast<bst_feature_t>(j), x};
      if (j < n_informative) signal += weights[j] * static_cast<double>(x);
    }
    double label = 0.0;
    if (kind == SyntheticKind::kRegression) {
      label = signal + uniform(-0.1, 0.1);
    } else {
      label = signal > 0.0 ? 1.0 : 0.0;
    }
    out.PushRow(row, label);
  }
  out.SetNumFeatures(n_features);
  return out;
}

}  // namespace hgbt
