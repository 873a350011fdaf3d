#include "cli.hpp"

#include "pcasim/error.hpp"
#include "pcasim/experiments.hpp"
#include "pcasim/ingest.hpp"
#include "pcasim/metrics.hpp"
#include "pcasim/report.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <charconv>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

namespace pcasim::cli {
namespace {

struct CommonOptions {
  std::string format = "json";
  std::string output;
  unsigned threads = 0;
  std::string categorical = "ordinal";
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--format", opts.format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "table"}))
      ->capture_default_str();
  cmd->add_option("--output,-o", opts.output, "Write the result to this file instead of stdout");
  cmd->add_option("--threads", opts.threads,
                  "Worker threads (0 = all logical processors); never changes results")
      ->capture_default_str();
  cmd->add_option("--categorical", opts.categorical, "Policy for non-numeric CSV columns")
      ->check(CLI::IsMember({"ordinal", "drop", "reject"}))
      ->capture_default_str();
}

PreprocessSpec make_spec(const std::string& mode, const CommonOptions& opts) {
  return PreprocessSpec{*parse_preprocess_mode(mode), *parse_categorical_policy(opts.categorical)};
}

DataMatrix load(const std::string& path, const PreprocessSpec& spec, std::ostream& err) {
  std::vector<std::string> warnings;
  DataMatrix data = load_csv(path, spec, &warnings);
  for (const auto& w : warnings) err << "warning: " << path << ": " << w << '\n';
  return data;
}

void emit(const std::string& text, const CommonOptions& opts, std::ostream& out) {
  if (opts.output.empty()) {
    out << text;
    return;
  }
  std::ofstream file(opts.output, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(ErrorCode::FileNotFound, "cannot write '" + opts.output + "'");
  file << text;
  if (!file) throw Error(ErrorCode::FileNotFound, "failed writing '" + opts.output + "'");
}

/// Resolves a column given by index or by name.
std::size_t resolve_column(const DataMatrix& data, const std::string& token) {
  std::size_t index = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), index);
  if (ec == std::errc() && ptr == token.data() + token.size()) {
    if (index >= data.cols()) {
      throw Error(ErrorCode::IndexOutOfRange,
                  "column " + token + " out of range for " + std::to_string(data.cols()) +
                      " columns");
    }
    return index;
  }
  const auto& names = data.col_names();
  for (std::size_t j = 0; j < names.size(); ++j) {
    if (names[j] == token) return j;
  }
  throw Error(ErrorCode::IndexOutOfRange, "no column named '" + token + "'");
}

// --- compare ---------------------------------------------------------------

struct CompareArgs {
  std::string path_a;
  std::string path_b;
  std::string preprocess = "zscore";
  std::size_t components = 0;
  bool raw_eigenvalues = false;
  CommonOptions common;
};

void setup_compare(CLI::App& app, CompareArgs& args) {
  auto* cmd = app.add_subcommand("compare", "Compare two datasets with the PCA metrics");
  cmd->add_option("a", args.path_a, "First CSV file")->required();
  cmd->add_option("b", args.path_b, "Second CSV file")->required();
  cmd->add_option("--preprocess", args.preprocess, "Preprocessing before PCA")
      ->check(CLI::IsMember({"center", "zscore", "none"}))
      ->capture_default_str();
  cmd->add_option("--components,-p", args.components,
                  "Retained principal components (default: all)");
  cmd->add_flag("--raw-eigenvalues", args.raw_eigenvalues,
                "Compare raw eigenvalues instead of explained-variance ratios");
  add_common(cmd, args.common);
}

void run_compare(const CompareArgs& args, std::ostream& out, std::ostream& err) {
  const PreprocessSpec spec = make_spec(args.preprocess, args.common);
  const DataMatrix a = load(args.path_a, spec, err);
  const DataMatrix b = load(args.path_b, spec, err);
  CompareOptions options{spec, std::nullopt,
                         args.raw_eigenvalues ? SpectrumKind::RawEigenvalues
                                              : SpectrumKind::Ratios};
  if (args.components != 0) options.p = args.components;
  MetricReport report = compare(a, b, options);
  report.id_a = args.path_a;
  report.id_b = args.path_b;
  emit(render(report, *parse_output_format(args.common.format)), args.common, out);
}

// --- aad -------------------------------------------------------------------

struct AadArgs {
  std::string path;
  std::vector<std::string> selected;
  std::string order;
  std::size_t k = 0;
  std::string preprocess = "center";
  CommonOptions common;
};

void setup_aad(CLI::App& app, AadArgs& args) {
  auto* cmd = app.add_subcommand("aad", "Average angle difference of a feature selection");
  cmd->add_option("data", args.path, "CSV file")->required();
  auto* selected = cmd->add_option("--selected", args.selected,
                                   "Selected columns (indices or names, comma separated)")
                       ->delimiter(',');
  auto* order = cmd->add_option("--order", args.order,
                                "Rank columns by 'variance' or 'target:<col>'");
  cmd->add_option("--k", args.k, "With --order: score only the first k ranked columns")
      ->needs(order);
  selected->excludes(order);
  cmd->add_option("--preprocess", args.preprocess, "Preprocessing before PCA")
      ->check(CLI::IsMember({"center", "zscore", "none"}))
      ->capture_default_str();
  add_common(cmd, args.common);
}

std::string render_single_aad(double value, const DataMatrix& data, const FeatureSubset& subset,
                              const AadArgs& args, const PreprocessSpec& spec) {
  std::vector<std::string> selected;
  std::vector<std::string> unselected;
  for (std::size_t f : subset.selected()) selected.push_back(data.col_names()[f]);
  for (std::size_t f : subset.complement()) unselected.push_back(data.col_names()[f]);

  auto join = [](const std::vector<std::string>& parts, char sep) {
    std::string s;
    for (const auto& p : parts) {
      if (!s.empty()) s += sep;
      s += p;
    }
    return s;
  };

  switch (*parse_output_format(args.common.format)) {
    case OutputFormat::Json: {
      const nlohmann::ordered_json doc{
          {"aad", value},
          {"selected", selected},
          {"complement", unselected},
          {"config",
           {{"preprocess", to_string(spec.mode)}, {"categorical", to_string(spec.categorical)}}},
          {"inputs", {{"path", args.path}, {"n", data.rows()}, {"d", data.cols()}}}};
      return doc.dump(2) + "\n";
    }
    case OutputFormat::Csv: {
      return "aad,selected,complement,preprocess,path\n" + format_double(value) + "," +
             csv_escape(join(selected, ';')) + "," + csv_escape(join(unselected, ';')) + "," +
             std::string(to_string(spec.mode)) + "," + csv_escape(args.path) + "\n";
    }
    case OutputFormat::Table:
      return format_table({"field", "value"}, {{"aad", four_significant(value)},
                                               {"selected", join(selected, ',')},
                                               {"complement", join(unselected, ',')},
                                               {"preprocess", std::string(to_string(spec.mode))},
                                               {"data", args.path}});
  }
  return {};
}

void run_aad(const AadArgs& args, std::ostream& out, std::ostream& err) {
  const PreprocessSpec spec = make_spec(args.preprocess, args.common);
  const DataMatrix data = load(args.path, spec, err);
  const OutputFormat format = *parse_output_format(args.common.format);

  if (!args.selected.empty()) {
    std::vector<std::size_t> indices;
    for (const auto& token : args.selected) indices.push_back(resolve_column(data, token));
    const FeatureSubset subset(indices, data.cols());
    const double value = aad(data, subset, spec, args.common.threads);
    emit(render_single_aad(value, data, subset, args, spec), args.common, out);
    return;
  }
  if (args.order.empty()) {
    throw Error(ErrorCode::InvalidArgument, "aad needs --selected or --order");
  }

  RankMethod method;
  if (args.order == "variance") {
    method.kind = RankMethod::Kind::Variance;
  } else if (args.order.starts_with("target:")) {
    method.kind = RankMethod::Kind::AbsCorrToTarget;
    method.target_col = resolve_column(data, args.order.substr(7));
  } else {
    throw Error(ErrorCode::InvalidArgument,
                "--order must be 'variance' or 'target:<col>', got '" + args.order + "'");
  }
  const std::vector<std::size_t> ordering = rank_features(data, method);

  if (args.k != 0) {
    const auto take = static_cast<std::ptrdiff_t>(std::min(args.k, ordering.size()));
    const FeatureSubset subset({ordering.begin(), ordering.begin() + take}, data.cols());
    const double value = aad(data, subset, spec, args.common.threads);
    emit(render_single_aad(value, data, subset, args, spec), args.common, out);
    return;
  }
  ExperimentResult result = aad_sweep(data, ordering, spec, args.common.threads);
  result.config.emplace_back("order", args.order);
  result.config.emplace_back("path", args.path);
  emit(render(result, format), args.common, out);
}

// --- instability -------------------------------------------------------------

struct InstabilityArgs {
  std::vector<std::size_t> dims{5};
  std::vector<std::size_t> sizes{10, 100, 1000, 10000};
  std::size_t trials = 10;
  std::uint64_t seed = 0;
  std::string preprocess = "zscore";
  CommonOptions common;
};

void setup_instability(CLI::App& app, InstabilityArgs& args) {
  auto* cmd = app.add_subcommand("instability",
                                 "Metric spread between same-distribution samples by size");
  cmd->add_option("--dims", args.dims, "Dimensionalities")->delimiter(',')->capture_default_str();
  cmd->add_option("--sizes", args.sizes, "Sample sizes")->delimiter(',')->capture_default_str();
  cmd->add_option("--trials", args.trials, "Trials per grid cell")->capture_default_str();
  cmd->add_option("--seed", args.seed, "Master seed")->capture_default_str();
  cmd->add_option("--preprocess", args.preprocess, "Preprocessing before PCA")
      ->check(CLI::IsMember({"center", "zscore", "none"}))
      ->capture_default_str();
  add_common(cmd, args.common);
}

void run_instability(const InstabilityArgs& args, std::ostream& out) {
  InstabilityConfig config;
  config.dims = args.dims;
  config.sizes = args.sizes;
  config.trials = args.trials;
  config.seed = args.seed;
  config.preprocess = make_spec(args.preprocess, args.common);
  config.threads = args.common.threads;
  emit(render(instability_sweep(config), *parse_output_format(args.common.format)), args.common,
       out);
}

// --- invariance --------------------------------------------------------------

struct InvarianceArgs {
  std::string path;
  double noise = 0.1;
  double rotate = 45.0;
  std::uint64_t seed = 0;
  CommonOptions common;
};

void setup_invariance(CLI::App& app, InvarianceArgs& args) {
  auto* cmd = app.add_subcommand("invariance",
                                 "Check noise, affine and rotation behavior of the metrics");
  cmd->add_option("data", args.path, "CSV file")->required();
  cmd->add_option("--noise", args.noise, "Noise scale as a fraction of column std")
      ->capture_default_str();
  cmd->add_option("--rotate", args.rotate, "Rotation angle in degrees, (0, 90]")
      ->capture_default_str();
  cmd->add_option("--seed", args.seed, "Seed for noise and affine parameters")
      ->capture_default_str();
  add_common(cmd, args.common);
}

void run_invariance(const InvarianceArgs& args, std::ostream& out, std::ostream& err) {
  const PreprocessSpec spec = make_spec("none", args.common);
  const DataMatrix data = load(args.path, spec, err);
  ExperimentResult result = invariance_suite(data, {args.noise, args.rotate, args.seed});
  result.config.emplace_back("path", args.path);
  emit(render(result, *parse_output_format(args.common.format)), args.common, out);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"PCA-based inter-dataset similarity metrics", "pcasim"};
  app.require_subcommand(1);

  CompareArgs compare_args;
  AadArgs aad_args;
  InstabilityArgs instability_args;
  InvarianceArgs invariance_args;
  setup_compare(app, compare_args);
  setup_aad(app, aad_args);
  setup_instability(app, instability_args);
  setup_invariance(app, invariance_args);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // Help requests exit 0 and print to `out`; everything else is bad input.
    return app.exit(e, out, err) == 0 ? kExitOk : kExitInputError;
  }

  try {
    if (app.got_subcommand("compare")) run_compare(compare_args, out, err);
    else if (app.got_subcommand("aad")) run_aad(aad_args, out, err);
    else if (app.got_subcommand("instability")) run_instability(instability_args, out);
    else if (app.got_subcommand("invariance")) run_invariance(invariance_args, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return is_numerical(e.code()) ? kExitNumericError : kExitInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumericError;
  }
  return kExitOk;
}

}  // namespace pcasim::cli
