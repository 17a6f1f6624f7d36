#include "debatesim/persistence/export.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "debatesim/persistence/run_store.hpp"

namespace debatesim {

namespace fs = std::filesystem;

namespace {

std::string level_name(ToxicityLevel level) { return std::string(to_string(level)); }
std::string side_name(Side side) { return std::string(to_string(side)); }

}  // namespace

std::string format_fixed(double value, int decimals) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, value);
  return buf;
}

std::string format_p_value(double p) {
  if (std::isnan(p)) return "nan";
  if (p == 0.0) return "0";
  if (p >= 1e-4) return format_fixed(p, 4);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1e", p);
  // "3.2e-07" -> "3.2e-7"
  std::string s(buf);
  const auto e = s.find('e');
  std::string mantissa = s.substr(0, e);
  std::string exponent = s.substr(e + 1);
  std::string sign;
  if (!exponent.empty() && (exponent[0] == '-' || exponent[0] == '+')) {
    if (exponent[0] == '-') sign = "-";
    exponent.erase(0, 1);
  }
  const auto first = exponent.find_first_not_of('0');
  exponent = first == std::string::npos ? "0" : exponent.substr(first);
  return mantissa + "e" + sign + exponent;
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n\r") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string latency_csv(const stats::StatReport& report) {
  std::string out = "model,condition,n,mean_tconv,var_tconv,pct_increase\n";
  for (const auto& row : report.latency.rows) {
    out += csv_field(row.model_tag) + "," + level_name(row.condition) + "," +
           std::to_string(row.n) + "," + format_fixed(row.mean, 2) + "," +
           format_fixed(row.variance, 2) + "," +
           (row.pct_increase ? format_fixed(*row.pct_increase, 2) : "") + "\n";
  }
  return out;
}

std::string starter_csv(const stats::StatReport& report) {
  std::string out = "model,starter,win_rate,p_value\n";
  for (const auto& row : report.tables.starter) {
    out += csv_field(row.model_tag) + "," + side_name(row.starter) + "," +
           format_fixed(row.win_rate, 4) + "," + format_p_value(row.test.p_value) + "\n";
  }
  return out;
}

std::string toxic_csv(const stats::StatReport& report) {
  std::string out = "model,side,win_rate,p_value\n";
  for (const auto& row : report.tables.toxic) {
    out += csv_field(row.model_tag) + "," + side_name(row.side) + "," +
           format_fixed(row.win_rate, 4) + "," + format_p_value(row.test.p_value) + "\n";
  }
  return out;
}

std::string anova_csv(const stats::StatReport& report) {
  std::string out = "model,level,pro_win_rate,con_win_rate,F,p_value\n";
  for (const auto& table : report.tables.anova) {
    const std::string f = table.test ? format_fixed(table.test->statistic, 2) : "";
    const std::string p = table.test ? format_p_value(table.test->p_value) : "";
    for (const auto& row : table.levels) {
      out += csv_field(table.model_tag) + "," + level_name(row.level) + "," +
             format_fixed(row.pro_win_rate, 4) + "," + format_fixed(row.con_win_rate, 4) + "," +
             f + "," + p + "\n";
    }
  }
  return out;
}

std::string histogram_csv(const stats::StatReport& report) {
  std::string out = "model,condition,bin,count\n";
  for (const auto& h : report.histograms) {
    const std::string prefix = csv_field(h.model_tag) + "," + level_name(h.condition) + ",";
    for (std::size_t i = 0; i < h.bins.size(); ++i) {
      out += prefix + std::to_string(i + 1) + "," + std::to_string(h.bins[i]) + "\n";
    }
    out += prefix + ">" + std::to_string(h.truncate_at) + "," + std::to_string(h.overflow) + "\n";
  }
  return out;
}

std::string max_rounds_csv(const stats::StatReport& report) {
  std::string out = "model,condition,topic,debates,max_tconv\n";
  for (const auto& row : report.max_rounds) {
    out += csv_field(row.model_tag) + "," + level_name(row.condition) + "," +
           csv_field(row.topic_id) + "," + std::to_string(row.debates) + "," +
           std::to_string(row.max_t_conv) + "\n";
  }
  return out;
}

std::string conventions_csv(const stats::StatReport& report) {
  std::string out = "key,value\n";
  for (const auto& [key, value] : report.conventions) {
    out += csv_field(key) + "," + csv_field(value) + "\n";
  }
  return out;
}

std::vector<fs::path> export_report(const stats::StatReport& report, const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw StorageFailure("cannot create " + dir.string() + ": " + ec.message());

  const std::pair<const char*, std::string> files[] = {
      {"latency.csv", latency_csv(report)},       {"starter.csv", starter_csv(report)},
      {"toxic.csv", toxic_csv(report)},           {"anova.csv", anova_csv(report)},
      {"histogram.csv", histogram_csv(report)},   {"max_rounds.csv", max_rounds_csv(report)},
      {"conventions.csv", conventions_csv(report)},
  };
  std::vector<fs::path> written;
  for (const auto& [name, body] : files) {
    const fs::path path = dir / name;
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << body;
    out.flush();
    if (!out) throw StorageFailure("cannot write " + path.string());
    written.push_back(path);
  }
  return written;
}

}  // namespace debatesim
