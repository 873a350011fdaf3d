#pragma once

#include "pcasim/experiments.hpp"
#include "pcasim/metrics.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace pcasim {

enum class OutputFormat { Json, Csv, Table };

std::optional<OutputFormat> parse_output_format(std::string_view text);

// JSON report layout:
//   {metrics: {delta_lambda, delta_theta, corr_diff, ks_mean},
//    config:  {preprocess, p, categorical, spectrum},
//    flags:   {degenerate_a, degenerate_b, delta_lambda_unbounded},
//    inputs:  {path_a, path_b, n_a, n_b, d[, seed]}}
// Numbers are written in shortest round-trip form, so parsing and
// re-serializing a report reproduces it byte for byte.
std::string render(const MetricReport& report, OutputFormat format);

std::string render(const ExperimentResult& result, OutputFormat format);

/// Human-aligned table of string cells; numeric cells are expected to be
/// preformatted by the caller.
std::string format_table(const std::vector<std::string>& header,
                         const std::vector<std::vector<std::string>>& rows);

/// Quotes a CSV field when it contains a comma, quote or line break.
std::string csv_escape(const std::string& field);

/// printf("%.4g").
std::string four_significant(double value);

}  // namespace pcasim
