#include "pcasim/ingest.hpp"

#include "pcasim/error.hpp"
#include "pcasim/summation.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_map>

namespace pcasim {

std::string_view to_string(PreprocessMode mode) {
  switch (mode) {
    case PreprocessMode::Center: return "center";
    case PreprocessMode::ZScore: return "zscore";
    case PreprocessMode::None: return "none";
  }
  return "none";
}

std::string_view to_string(CategoricalPolicy policy) {
  switch (policy) {
    case CategoricalPolicy::OrdinalEncode: return "ordinal";
    case CategoricalPolicy::Drop: return "drop";
    case CategoricalPolicy::Reject: return "reject";
  }
  return "ordinal";
}

std::optional<PreprocessMode> parse_preprocess_mode(std::string_view text) {
  if (text == "center") return PreprocessMode::Center;
  if (text == "zscore") return PreprocessMode::ZScore;
  if (text == "none") return PreprocessMode::None;
  return std::nullopt;
}

std::optional<CategoricalPolicy> parse_categorical_policy(std::string_view text) {
  if (text == "ordinal" || text == "ordinal_encode") return CategoricalPolicy::OrdinalEncode;
  if (text == "drop") return CategoricalPolicy::Drop;
  if (text == "reject") return CategoricalPolicy::Reject;
  return std::nullopt;
}

namespace {

std::vector<std::string> default_names(Eigen::Index cols) {
  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(cols));
  for (Eigen::Index j = 0; j < cols; ++j) names.push_back("c" + std::to_string(j));
  return names;
}

}  // namespace

DataMatrix::DataMatrix(Eigen::MatrixXd values)
    : DataMatrix(values, default_names(values.cols())) {}

DataMatrix::DataMatrix(Eigen::MatrixXd values, std::vector<std::string> col_names)
    : values_(std::move(values)), col_names_(std::move(col_names)) {
  if (values_.rows() < 2) {
    throw Error(ErrorCode::TooFewRows,
                "need at least 2 rows, got " + std::to_string(values_.rows()));
  }
  if (values_.cols() < 1) {
    throw Error(ErrorCode::InvalidArgument, "need at least one column");
  }
  if (col_names_.size() != static_cast<std::size_t>(values_.cols())) {
    throw Error(ErrorCode::LengthMismatch, "column name count differs from column count");
  }
  std::set<std::string_view> seen;
  for (const auto& name : col_names_) {
    if (!seen.insert(name).second) {
      throw Error(ErrorCode::InvalidArgument, "duplicate column name '" + name + "'");
    }
  }
  if (!values_.allFinite()) {
    throw Error(ErrorCode::InvalidArgument, "matrix contains NaN or Inf");
  }
}

bool DataMatrix::operator==(const DataMatrix& other) const {
  return col_names_ == other.col_names_ && values_.rows() == other.values_.rows() &&
         values_.cols() == other.values_.cols() && values_ == other.values_;
}

PreprocessStats fit_preprocess(const DataMatrix& data, PreprocessMode mode) {
  const std::size_t n = data.rows();
  const std::size_t d = data.cols();
  PreprocessStats stats;
  stats.mode = mode;
  stats.means.assign(d, 0.0);
  stats.scales.assign(d, 1.0);
  stats.zero_variance.assign(d, false);
  if (mode == PreprocessMode::None) return stats;

  std::vector<double> scratch(n);
  for (std::size_t j = 0; j < d; ++j) {
    auto column = data.values().col(static_cast<Eigen::Index>(j));
    for (std::size_t i = 0; i < n; ++i) scratch[i] = column(static_cast<Eigen::Index>(i));
    const double mean = order_invariant_sum_inplace(scratch) / static_cast<double>(n);
    double magnitude = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double x = column(static_cast<Eigen::Index>(i));
      magnitude = std::max(magnitude, std::abs(x));
      scratch[i] = (x - mean) * (x - mean);
    }
    const double stddev =
        std::sqrt(order_invariant_sum_inplace(scratch) / static_cast<double>(n - 1));
    stats.means[j] = mean;
    // Relative threshold: a constant column whose mean is not exactly
    // representable still leaves rounding residue after centering.
    stats.zero_variance[j] = magnitude == 0.0 || stddev <= 1e-12 * magnitude;
    if (mode == PreprocessMode::ZScore && !stats.zero_variance[j]) stats.scales[j] = stddev;
  }
  return stats;
}

DataMatrix apply_preprocess(const DataMatrix& data, const PreprocessStats& stats) {
  if (stats.means.size() != data.cols()) {
    throw Error(ErrorCode::DimensionMismatch,
                "statistics fitted for " + std::to_string(stats.means.size()) +
                    " columns, data has " + std::to_string(data.cols()));
  }
  if (stats.mode == PreprocessMode::None) return data;
  Eigen::MatrixXd out = data.values();
  for (Eigen::Index j = 0; j < out.cols(); ++j) {
    const auto col = static_cast<std::size_t>(j);
    if (stats.zero_variance[col]) {
      out.col(j).setZero();
    } else {
      out.col(j) = (out.col(j).array() - stats.means[col]) / stats.scales[col];
    }
  }
  return DataMatrix(std::move(out), data.col_names());
}

DataMatrix preprocess(const DataMatrix& data, const PreprocessSpec& spec) {
  return apply_preprocess(data, fit_preprocess(data, spec.mode));
}

DataMatrix zero_feature(const DataMatrix& data, std::size_t feature) {
  if (feature >= data.cols()) {
    throw Error(ErrorCode::IndexOutOfRange, "feature " + std::to_string(feature) +
                                                " out of range for " +
                                                std::to_string(data.cols()) + " columns");
  }
  Eigen::MatrixXd out = data.values();
  out.col(static_cast<Eigen::Index>(feature)).setZero();
  return DataMatrix(std::move(out), data.col_names());
}

namespace {

using CsvRecord = std::vector<std::string>;

std::vector<CsvRecord> split_records(std::string_view text) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
  std::vector<CsvRecord> records;
  CsvRecord current;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;
  std::size_t line = 1;

  auto end_field = [&] {
    current.push_back(std::move(field));
    field.clear();
    field_started = false;
  };
  auto end_record = [&] {
    end_field();
    // A bare empty line is skipped rather than read as one empty field.
    if (!(current.size() == 1 && current[0].empty())) records.push_back(std::move(current));
    current.clear();
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        field.push_back(c);
      }
      continue;
    }
    switch (c) {
      case '"':
        if (field_started) {
          throw Error(ErrorCode::ParseError,
                      "stray quote inside unquoted field on line " + std::to_string(line));
        }
        in_quotes = true;
        field_started = true;
        break;
      case ',':
        end_field();
        break;
      case '\r':
        if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
        end_record();
        ++line;
        break;
      case '\n':
        end_record();
        ++line;
        break;
      default:
        field.push_back(c);
        field_started = true;
    }
  }
  if (in_quotes) throw Error(ErrorCode::ParseError, "unterminated quoted field");
  if (field_started || !current.empty()) end_record();
  return records;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

std::optional<double> parse_number(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return std::nullopt;
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return value;
}

std::string cell_location(std::size_t data_row, const std::string& column) {
  return "row " + std::to_string(data_row) + ", column '" + column + "'";
}

}  // namespace

DataMatrix parse_csv(std::string_view text, const PreprocessSpec& spec,
                     std::vector<std::string>* warnings) {
  const auto records = split_records(text);
  if (records.empty()) throw Error(ErrorCode::ParseError, "missing header row");
  const CsvRecord& header = records.front();
  const std::size_t width = header.size();
  const std::size_t n = records.size() - 1;

  for (std::size_t r = 1; r < records.size(); ++r) {
    if (records[r].size() != width) {
      throw Error(ErrorCode::ParseError,
                  "row " + std::to_string(r) + " has " + std::to_string(records[r].size()) +
                      " fields, header has " + std::to_string(width));
    }
  }
  if (n < 2) {
    throw Error(ErrorCode::TooFewRows, "need at least 2 data rows, got " + std::to_string(n));
  }

  std::vector<std::vector<double>> kept_columns;
  std::vector<std::string> kept_names;
  for (std::size_t j = 0; j < width; ++j) {
    std::vector<double> numeric(n);
    bool is_numeric = true;
    for (std::size_t r = 0; r < n; ++r) {
      const std::string& cell = records[r + 1][j];
      if (trim(cell).empty()) {
        throw Error(ErrorCode::ParseError,
                    "missing value at " + cell_location(r + 1, header[j]));
      }
      if (!is_numeric) continue;
      if (auto value = parse_number(cell)) {
        if (!std::isfinite(*value)) {
          throw Error(ErrorCode::ParseError,
                      "non-finite value at " + cell_location(r + 1, header[j]));
        }
        numeric[r] = *value;
      } else {
        is_numeric = false;
      }
    }

    if (!is_numeric) {
      switch (spec.categorical) {
        case CategoricalPolicy::Reject:
          throw Error(ErrorCode::CategoricalRejected,
                      "column '" + header[j] + "' is not numeric");
        case CategoricalPolicy::Drop:
          if (warnings) warnings->push_back("dropped categorical column '" + header[j] + "'");
          continue;
        case CategoricalPolicy::OrdinalEncode: {
          std::unordered_map<std::string, double> codes;
          for (std::size_t r = 0; r < n; ++r) {
            const auto [it, inserted] =
                codes.try_emplace(records[r + 1][j], static_cast<double>(codes.size()));
            numeric[r] = it->second;
          }
          break;
        }
      }
    }
    kept_columns.push_back(std::move(numeric));
    kept_names.push_back(header[j]);
  }

  if (kept_columns.empty()) throw Error(ErrorCode::ParseError, "no usable columns");
  std::set<std::string_view> seen;
  for (const auto& name : kept_names) {
    if (!seen.insert(name).second) {
      throw Error(ErrorCode::ParseError, "duplicate column name '" + name + "'");
    }
  }

  Eigen::MatrixXd values(static_cast<Eigen::Index>(n),
                         static_cast<Eigen::Index>(kept_columns.size()));
  for (std::size_t j = 0; j < kept_columns.size(); ++j) {
    for (std::size_t r = 0; r < n; ++r) {
      values(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j)) = kept_columns[j][r];
    }
  }
  return DataMatrix(std::move(values), std::move(kept_names));
}

DataMatrix load_csv(const std::filesystem::path& path, const PreprocessSpec& spec,
                    std::vector<std::string>* warnings) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::FileNotFound, "cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_csv(buffer.str(), spec, warnings);
}

std::string format_double(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

namespace {

std::string quote_if_needed(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace

void write_csv(const DataMatrix& data, std::ostream& out) {
  const auto& names = data.col_names();
  for (std::size_t j = 0; j < names.size(); ++j) {
    if (j) out << ',';
    out << quote_if_needed(names[j]);
  }
  out << '\n';
  for (std::size_t i = 0; i < data.rows(); ++i) {
    for (std::size_t j = 0; j < data.cols(); ++j) {
      if (j) out << ',';
      out << format_double(data(i, j));
    }
    out << '\n';
  }
}

}  // namespace pcasim
