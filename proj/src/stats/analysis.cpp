#include "debatesim/stats/analysis.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <tuple>

namespace debatesim::stats {

namespace {

using ModelLevel = std::pair<std::string, ToxicityLevel>;

}  // namespace

double percent_increase(double mean, double baseline) {
  return 100.0 * (mean - baseline) / baseline;
}

LatencySummary summarize_latency(std::span<const OutcomeRecord> records) {
  std::map<ModelLevel, std::vector<double>> groups;
  for (const auto& r : records) {
    if (r.t_conv < 1) throw InvalidInput("t_conv must be >= 1");
    groups[{r.model_tag, r.condition}].push_back(static_cast<double>(r.t_conv));
  }

  LatencySummary out;
  std::map<std::string, double> baseline;
  for (const auto& [key, values] : groups) {
    if (key.second == ToxicityLevel::No) baseline[key.first] = mean(values);
  }
  for (const auto& [key, values] : groups) {
    LatencyRow row;
    row.model_tag = key.first;
    row.condition = key.second;
    row.n = values.size();
    row.mean = mean(values);
    row.variance = sample_variance(values);
    auto it = baseline.find(key.first);
    if (key.second != ToxicityLevel::No && it != baseline.end()) {
      row.pct_increase = percent_increase(row.mean, it->second);
    }
    out.rows.push_back(row);
  }
  for (const auto& [key, values] : groups) {
    if (!baseline.contains(key.first) &&
        std::find(out.missing_baseline.begin(), out.missing_baseline.end(), key.first) ==
            out.missing_baseline.end()) {
      out.missing_baseline.push_back(key.first);
    }
  }
  return out;
}

ToxicSamples toxic_indicator_samples(std::span<const OutcomeRecord> records,
                                     const std::string& model_tag, Side toxic_side) {
  ToxicSamples s;
  for (const auto& r : records) {
    if (r.model_tag != model_tag || !r.toxic_side || *r.toxic_side != toxic_side) continue;
    const double toxic_won = r.winner == toxic_side ? 1.0 : 0.0;
    s.toxic.push_back(toxic_won);
    s.non_toxic.push_back(1.0 - toxic_won);
  }
  return s;
}

WinRateTables win_rate_tables(std::span<const OutcomeRecord> records, TTestFlavor flavor) {
  WinRateTables out;
  std::set<std::string> models;
  for (const auto& r : records) models.insert(r.model_tag);

  for (const auto& model : models) {
    for (Side side : {Side::Pro, Side::Con}) {
      StarterRow row;
      row.model_tag = model;
      row.starter = side;
      for (const auto& r : records) {
        if (r.model_tag != model || r.starter != side) continue;
        ++row.n;
        if (r.winner == r.starter) ++row.wins;
      }
      if (row.n == 0) continue;
      row.win_rate = static_cast<double>(row.wins) / static_cast<double>(row.n);
      row.test = binom_test_two_sided(row.wins, row.n, 0.5);
      out.starter.push_back(row);
    }

    for (Side side : {Side::Pro, Side::Con}) {
      const ToxicSamples s = toxic_indicator_samples(records, model, side);
      if (s.toxic.size() < 2) continue;
      ToxicRow row;
      row.model_tag = model;
      row.side = side;
      row.n = s.toxic.size();
      row.wins = static_cast<std::size_t>(std::count(s.toxic.begin(), s.toxic.end(), 1.0));
      row.win_rate = static_cast<double>(row.wins) / static_cast<double>(row.n);
      row.test = flavor == TTestFlavor::Welch ? welch_t_test(s.toxic, s.non_toxic)
                                              : student_t_test(s.toxic, s.non_toxic);
      out.toxic.push_back(row);
    }

    AnovaTable table;
    table.model_tag = model;
    std::vector<std::vector<double>> groups;
    for (ToxicityLevel level : kAllLevels) {
      std::vector<double> pro_wins;
      for (const auto& r : records) {
        if (r.model_tag == model && r.condition == level) {
          pro_wins.push_back(r.winner == Side::Pro ? 1.0 : 0.0);
        }
      }
      if (pro_wins.empty()) continue;
      AnovaLevelRow row{level, pro_wins.size()};
      const auto pro = static_cast<std::size_t>(std::count(pro_wins.begin(), pro_wins.end(), 1.0));
      row.pro_win_rate = static_cast<double>(pro) / static_cast<double>(row.n);
      row.con_win_rate = static_cast<double>(row.n - pro) / static_cast<double>(row.n);
      table.levels.push_back(row);
      if (pro_wins.size() >= 2) groups.push_back(std::move(pro_wins));
    }
    if (groups.size() >= 2) table.test = one_way_anova(groups);
    if (!table.levels.empty()) out.anova.push_back(std::move(table));
  }
  return out;
}

std::uint64_t Histogram::total() const {
  std::uint64_t sum = overflow;
  for (auto b : bins) sum += b;
  return sum;
}

std::vector<Histogram> histogram(std::span<const OutcomeRecord> records, int truncate_at,
                                 std::span<const ToxicityLevel> levels) {
  if (truncate_at < 1) throw InvalidInput("truncate_at must be >= 1");
  std::map<ModelLevel, Histogram> hists;
  const auto slot = [&](const std::string& model, ToxicityLevel level) -> Histogram& {
    auto [it, inserted] = hists.try_emplace({model, level});
    if (inserted) {
      it->second.model_tag = model;
      it->second.condition = level;
      it->second.truncate_at = truncate_at;
      it->second.bins.assign(static_cast<std::size_t>(truncate_at), 0);
    }
    return it->second;
  };
  for (const auto& r : records) {
    Histogram& h = slot(r.model_tag, r.condition);
    if (r.t_conv > truncate_at) {
      ++h.overflow;
    } else if (r.t_conv >= 1) {
      ++h.bins[static_cast<std::size_t>(r.t_conv - 1)];
    }
  }
  std::set<std::string> models;
  for (const auto& r : records) models.insert(r.model_tag);
  for (const auto& model : models) {
    for (ToxicityLevel level : levels) slot(model, level);
  }

  std::vector<Histogram> out;
  for (auto& [key, h] : hists) out.push_back(std::move(h));
  return out;
}

std::vector<MaxRoundsRow> max_rounds_by_topic(std::span<const OutcomeRecord> records) {
  std::map<std::tuple<std::string, ToxicityLevel, std::string>, MaxRoundsRow> rows;
  for (const auto& r : records) {
    auto& row = rows[{r.model_tag, r.condition, r.topic_id}];
    row.model_tag = r.model_tag;
    row.condition = r.condition;
    row.topic_id = r.topic_id;
    row.max_t_conv = std::max(row.max_t_conv, r.t_conv);
    ++row.debates;
  }
  std::vector<MaxRoundsRow> out;
  for (auto& [key, row] : rows) out.push_back(std::move(row));
  return out;
}

}  // namespace debatesim::stats
