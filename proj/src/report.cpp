#include "pcasim/report.hpp"

#include "pcasim/ingest.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace pcasim {

using Json = nlohmann::ordered_json;

std::optional<OutputFormat> parse_output_format(std::string_view text) {
  if (text == "json") return OutputFormat::Json;
  if (text == "csv") return OutputFormat::Csv;
  if (text == "table") return OutputFormat::Table;
  return std::nullopt;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string four_significant(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", value);
  return buf;
}

std::string format_table(const std::vector<std::string>& header,
                         const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size() && c < width.size(); ++c) {
      width[c] = std::max(width[c], row[c].size());
    }
  }
  std::ostringstream out;
  auto emit = [&](const std::vector<std::string>& cells) {
    std::string line;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (c) line += "  ";
      line += cells[c];
      if (c + 1 < cells.size()) line.append(width[c] - cells[c].size(), ' ');
    }
    out << line << '\n';
  };
  emit(header);
  std::vector<std::string> rule;
  for (std::size_t w : width) rule.emplace_back(w, '-');
  emit(rule);
  for (const auto& row : rows) emit(row);
  return out.str();
}

namespace {

std::string_view to_string(SpectrumKind kind) {
  return kind == SpectrumKind::Ratios ? "ratios" : "raw_eigenvalues";
}

Json report_json(const MetricReport& r) {
  Json inputs = {{"path_a", r.id_a}, {"path_b", r.id_b}, {"n_a", r.n_a}, {"n_b", r.n_b},
                 {"d", r.d}};
  if (r.seed) inputs["seed"] = *r.seed;
  return Json{{"metrics",
               {{"delta_lambda", r.delta_lambda},
                {"delta_theta", r.delta_theta},
                {"corr_diff", r.corr_diff},
                {"ks_mean", r.ks_mean}}},
              {"config",
               {{"preprocess", to_string(r.preprocess.mode)},
                {"p", r.p},
                {"categorical", to_string(r.preprocess.categorical)},
                {"spectrum", to_string(r.spectrum)}}},
              {"flags",
               {{"degenerate_a", r.degenerate_a},
                {"degenerate_b", r.degenerate_b},
                {"delta_lambda_unbounded", r.delta_lambda_unbounded}}},
              {"inputs", std::move(inputs)}};
}

Json field_json(const Field& value) {
  return std::visit([](const auto& v) { return Json(v); }, value);
}

Json record_json(const Record& record) {
  Json out = Json::object();
  for (const auto& [key, value] : record) out[key] = field_json(value);
  return out;
}

std::string field_csv(const Field& value) {
  if (const auto* d = std::get_if<double>(&value)) return format_double(*d);
  if (const auto* i = std::get_if<std::int64_t>(&value)) return std::to_string(*i);
  return csv_escape(std::get<std::string>(value));
}

std::string field_table(const Field& value) {
  if (const auto* d = std::get_if<double>(&value)) return four_significant(*d);
  if (const auto* i = std::get_if<std::int64_t>(&value)) return std::to_string(*i);
  return std::get<std::string>(value);
}

}  // namespace

std::string render(const MetricReport& report, OutputFormat format) {
  switch (format) {
    case OutputFormat::Json:
      return report_json(report).dump(2) + "\n";
    case OutputFormat::Csv: {
      std::ostringstream out;
      out << "delta_lambda,delta_theta,corr_diff,ks_mean,preprocess,p,categorical,spectrum,"
             "degenerate_a,degenerate_b,delta_lambda_unbounded,path_a,path_b,n_a,n_b,d\n";
      out << format_double(report.delta_lambda) << ',' << format_double(report.delta_theta)
          << ',' << format_double(report.corr_diff) << ',' << format_double(report.ks_mean)
          << ',' << to_string(report.preprocess.mode) << ',' << report.p << ','
          << to_string(report.preprocess.categorical) << ',' << to_string(report.spectrum)
          << ',' << report.degenerate_a << ',' << report.degenerate_b << ','
          << report.delta_lambda_unbounded << ',' << csv_escape(report.id_a) << ','
          << csv_escape(report.id_b) << ',' << report.n_a << ',' << report.n_b << ','
          << report.d << '\n';
      return out.str();
    }
    case OutputFormat::Table: {
      auto flag = [](bool b) { return std::string(b ? "yes" : "no"); };
      return format_table(
          {"field", "value"},
          {{"delta_lambda", four_significant(report.delta_lambda)},
           {"delta_theta", four_significant(report.delta_theta)},
           {"corr_diff", four_significant(report.corr_diff)},
           {"ks_mean", four_significant(report.ks_mean)},
           {"preprocess", std::string(to_string(report.preprocess.mode))},
           {"p", std::to_string(report.p)},
           {"d", std::to_string(report.d)},
           {"degenerate_a", flag(report.degenerate_a)},
           {"degenerate_b", flag(report.degenerate_b)},
           {"delta_lambda_unbounded", flag(report.delta_lambda_unbounded)},
           {"a", report.id_a + " (n=" + std::to_string(report.n_a) + ")"},
           {"b", report.id_b + " (n=" + std::to_string(report.n_b) + ")"}});
    }
  }
  return {};
}

std::string render(const ExperimentResult& result, OutputFormat format) {
  switch (format) {
    case OutputFormat::Json: {
      Json rows = Json::array();
      for (const auto& row : result.rows) rows.push_back(record_json(row));
      const Json doc{{"kind", to_string(result.kind)},
                     {"seed", result.seed},
                     {"trials", result.trials},
                     {"config", record_json(result.config)},
                     {"summary", record_json(result.summary)},
                     {"rows", std::move(rows)}};
      return doc.dump(2) + "\n";
    }
    case OutputFormat::Csv: {
      std::ostringstream out;
      if (result.rows.empty()) return {};
      const Record& first = result.rows.front();
      for (std::size_t c = 0; c < first.size(); ++c) {
        if (c) out << ',';
        out << csv_escape(first[c].first);
      }
      out << '\n';
      for (const auto& row : result.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
          if (c) out << ',';
          out << field_csv(row[c].second);
        }
        out << '\n';
      }
      return out.str();
    }
    case OutputFormat::Table: {
      std::vector<std::string> header;
      if (!result.rows.empty()) {
        for (const auto& [key, value] : result.rows.front()) header.push_back(key);
      }
      std::vector<std::vector<std::string>> cells;
      for (const auto& row : result.rows) {
        std::vector<std::string> line;
        for (const auto& [key, value] : row) line.push_back(field_table(value));
        cells.push_back(std::move(line));
      }
      std::string out = format_table(header, cells);
      for (const auto& [key, value] : result.summary) {
        out += key + ": " + field_table(value) + "\n";
      }
      return out;
    }
  }
  return {};
}

}  // namespace pcasim
