#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace pcasim {

enum class PreprocessMode { Center, ZScore, None };
enum class CategoricalPolicy { OrdinalEncode, Drop, Reject };

std::string_view to_string(PreprocessMode mode);
std::string_view to_string(CategoricalPolicy policy);
std::optional<PreprocessMode> parse_preprocess_mode(std::string_view text);
std::optional<CategoricalPolicy> parse_categorical_policy(std::string_view text);

/// Preprocessing applied before PCA. Zero-variance columns are always left
/// centered (all zeros); that policy is fixed and therefore not a field.
struct PreprocessSpec {
  PreprocessMode mode = PreprocessMode::ZScore;
  CategoricalPolicy categorical = CategoricalPolicy::OrdinalEncode;

  bool operator==(const PreprocessSpec&) const = default;
};

/// An n x d table of finite reals with unique column names, n >= 2, d >= 1.
class DataMatrix {
 public:
  /// Columns are named "c0", "c1", ...
  explicit DataMatrix(Eigen::MatrixXd values);
  DataMatrix(Eigen::MatrixXd values, std::vector<std::string> col_names);

  std::size_t rows() const { return static_cast<std::size_t>(values_.rows()); }
  std::size_t cols() const { return static_cast<std::size_t>(values_.cols()); }

  const Eigen::MatrixXd& values() const { return values_; }
  const std::vector<std::string>& col_names() const { return col_names_; }

  double operator()(std::size_t row, std::size_t col) const {
    return values_(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
  }

  bool operator==(const DataMatrix&) const;

 private:
  Eigen::MatrixXd values_;
  std::vector<std::string> col_names_;
};

/// Per-column statistics fitted by preprocessing; reusable on other data
/// with the same schema.
struct PreprocessStats {
  PreprocessMode mode = PreprocessMode::None;
  std::vector<double> means;
  std::vector<double> scales;
  std::vector<bool> zero_variance;
};

PreprocessStats fit_preprocess(const DataMatrix& data, PreprocessMode mode);

/// Applies fitted statistics. Columns flagged zero-variance come out as
/// exact zeros under Center and ZScore.
DataMatrix apply_preprocess(const DataMatrix& data, const PreprocessStats& stats);

DataMatrix preprocess(const DataMatrix& data, const PreprocessSpec& spec);

/// Copy of `data` with every value of column `feature` set to zero.
DataMatrix zero_feature(const DataMatrix& data, std::size_t feature);

/// Parses RFC-4180 CSV text with a header row. Non-numeric columns are
/// handled per `spec.categorical`; ordinal codes follow first appearance.
/// Messages about dropped columns are appended to `warnings` when given.
DataMatrix parse_csv(std::string_view text, const PreprocessSpec& spec,
                     std::vector<std::string>* warnings = nullptr);

DataMatrix load_csv(const std::filesystem::path& path, const PreprocessSpec& spec,
                    std::vector<std::string>* warnings = nullptr);

/// Writes header plus rows using shortest round-trip number formatting.
void write_csv(const DataMatrix& data, std::ostream& out);

/// Shortest decimal text that parses back to exactly `value`.
std::string format_double(double value);

}  // namespace pcasim
