#include "obisim/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "obisim/version.hpp"

namespace obisim {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void append_ll(std::string& out, long long v) {
  char buf[24];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, ptr);
}

std::string artifact_comment(const SimConfig& cfg) {
  std::string line = "# ";
  line += kToolName;
  line += ' ';
  line += kToolVersion;
  line += " config=";
  line += config_hash(cfg);
  line += " seed=";
  append_ll(line, static_cast<long long>(cfg.seed));
  line += '\n';
  return line;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw std::runtime_error("short write to " + path.string());
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Splits a CSV body into rows of fields, skipping '#' comment lines and
// the header row.
std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream stream(text);
  std::string line;
  bool header_skipped = false;
  while (std::getline(stream, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (!header_skipped) {
      header_skipped = true;
      continue;
    }
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
      const std::size_t comma = line.find(',', start);
      if (comma == std::string::npos) {
        fields.push_back(line.substr(start));
        break;
      }
      fields.push_back(line.substr(start, comma - start));
      start = comma + 1;
    }
    rows.push_back(std::move(fields));
  }
  return rows;
}

long long to_ll(const std::string& field, const char* what) {
  long long v = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw std::runtime_error(std::string("bad ") + what + " value '" + field + "'");
  }
  return v;
}

json metrics_json(const MetricsSummary& m) {
  json j;
  j["tc"] = m.tc ? json(*m.tc) : json(nullptr);
  j["kurtosis"] = m.kurtosis ? json(*m.kurtosis) : json(nullptr);
  if (m.acf_sq_returns) {
    j["acf_sq_returns"] = *m.acf_sq_returns;
  } else {
    j["acf_sq_returns"] = nullptr;
  }
  j["obi_concordance"] = m.obi_concordance;
  j["avg_price"] = m.avg_price;
  j["avg_buy_depth"] = m.avg_buy_depth;
  j["avg_sell_depth"] = m.avg_sell_depth;
  j["mean_trade_price"] = m.mean_trade_price ? json(*m.mean_trade_price) : json(nullptr);
  j["n_trades"] = m.n_trades;
  j["n_fills"] = m.n_fills;
  return j;
}

json stats_json(const SampleStats& s) {
  return json{{"mean", s.mean}, {"sd", s.sd}, {"n", s.n}};
}

}  // namespace

fs::path run_directory(const fs::path& out_dir, const SimConfig& cfg,
                       const std::string& regime_label) {
  fs::path dir = out_dir / to_string(cfg.scenario.kind);
  if (!regime_label.empty()) dir /= regime_label;
  dir /= to_string(cfg.algo.kind);
  dir /= std::to_string(cfg.seed);
  return dir;
}

void write_run_result(const fs::path& dir, const SimConfig& cfg, const RunResult& run,
                      bool full_series) {
  fs::create_directories(dir);
  const std::string comment = artifact_comment(cfg);

  write_file(dir / "config.cfg", comment + to_canonical_string(cfg));
  write_file(dir / "summary.json", summary_json_text(cfg, run));

  if (!full_series) return;

  {
    std::string csv = comment + "t,price\n";
    csv.reserve(csv.size() + run.prices.size() * 14);
    for (std::size_t i = 0; i < run.prices.size(); ++i) {
      append_ll(csv, static_cast<long long>(i + 1));
      csv += ',';
      append_ll(csv, run.prices[i]);
      csv += '\n';
    }
    write_file(dir / "priceSeries.csv", csv);
  }
  {
    std::string csv = comment + "t,buy_depth,sell_depth\n";
    csv.reserve(csv.size() + run.depths.size() * 16);
    for (std::size_t i = 0; i < run.depths.size(); ++i) {
      append_ll(csv, static_cast<long long>(i + 1));
      csv += ',';
      append_ll(csv, run.depths[i].buy);
      csv += ',';
      append_ll(csv, run.depths[i].sell);
      csv += '\n';
    }
    write_file(dir / "depth.csv", csv);
  }
  {
    std::string csv = comment + "time,price,buyerOwner,sellerOwner,buyOrderId,sellOrderId\n";
    csv.reserve(csv.size() + run.trades.size() * 40);
    for (const Trade& t : run.trades) {
      append_ll(csv, t.time);
      csv += ',';
      append_ll(csv, t.price);
      csv += ',';
      csv += owner_label(t.buyer);
      csv += ',';
      csv += owner_label(t.seller);
      csv += ',';
      append_ll(csv, t.buy_order_id);
      csv += ',';
      append_ll(csv, t.sell_order_id);
      csv += '\n';
    }
    write_file(dir / "trades.csv", csv);
  }
  {
    std::string csv = comment + "time,algo_index,price,price_minus_pf\n";
    for (const FillRecord& f : run.fills) {
      append_ll(csv, f.time);
      csv += ',';
      append_ll(csv, f.algo_index);
      csv += ',';
      append_ll(csv, f.price);
      csv += ',';
      append_ll(csv, f.price - cfg.fundamental_price);
      csv += '\n';
    }
    write_file(dir / "fills.csv", csv);
  }
}

PersistedRun load_run_result(const fs::path& dir) {
  PersistedRun out;

  std::vector<std::string> errors;
  const auto kv = parse_config_text(read_file(dir / "config.cfg"), errors);
  for (const auto& e : apply_key_values(out.cfg, kv)) errors.push_back(e);
  if (!errors.empty()) {
    throw std::runtime_error("bad config in " + dir.string() + ": " + errors.front());
  }
  out.run.seed = out.cfg.seed;

  for (const auto& row : parse_csv(read_file(dir / "priceSeries.csv"))) {
    if (row.size() != 2) throw std::runtime_error("bad priceSeries.csv row");
    out.run.prices.push_back(to_ll(row[1], "price"));
  }
  for (const auto& row : parse_csv(read_file(dir / "depth.csv"))) {
    if (row.size() != 3) throw std::runtime_error("bad depth.csv row");
    out.run.depths.push_back(
        DepthSample{static_cast<std::uint32_t>(to_ll(row[1], "buy depth")),
                    static_cast<std::uint32_t>(to_ll(row[2], "sell depth"))});
  }
  for (const auto& row : parse_csv(read_file(dir / "trades.csv"))) {
    if (row.size() != 6) throw std::runtime_error("bad trades.csv row");
    Trade t;
    t.time = to_ll(row[0], "time");
    t.price = to_ll(row[1], "price");
    const auto buyer = parse_owner_label(row[2]);
    const auto seller = parse_owner_label(row[3]);
    if (!buyer || !seller) throw std::runtime_error("bad owner label in trades.csv");
    t.buyer = *buyer;
    t.seller = *seller;
    t.buy_order_id = static_cast<OrderId>(to_ll(row[4], "buy order id"));
    t.sell_order_id = static_cast<OrderId>(to_ll(row[5], "sell order id"));
    out.run.trades.push_back(t);
  }
  for (const auto& row : parse_csv(read_file(dir / "fills.csv"))) {
    if (row.size() != 4) throw std::runtime_error("bad fills.csv row");
    out.run.fills.push_back(FillRecord{to_ll(row[0], "time"), to_ll(row[2], "price"),
                                       static_cast<int>(to_ll(row[1], "algo index"))});
  }

  const json summary = json::parse(read_file(dir / "summary.json"));
  const json& counts = summary.at("counts");
  out.run.counts.na_model = counts.at("na_model").get<long long>();
  out.run.counts.na_forced = counts.at("na_forced").get<long long>();
  out.run.counts.na_skipped = counts.at("na_skipped").get<long long>();
  out.run.counts.algo_fills = counts.at("algo_fills").get<long long>();
  out.run.counts.algo_no_liquidity = counts.at("algo_no_liquidity").get<long long>();
  out.run.counts.spoof_placed = counts.at("spoof_placed").get<long long>();
  out.run.counts.expired = counts.at("expired").get<long long>();
  return out;
}

std::string summary_json_text(const SimConfig& cfg, const RunResult& run) {
  json j;
  j["schema_version"] = kSummarySchemaVersion;
  j["tool"] = kToolName;
  j["tool_version"] = kToolVersion;
  j["config_hash"] = config_hash(cfg);
  j["seed"] = cfg.seed;
  j["scenario"] = to_string(cfg.scenario.kind);
  j["algo_kind"] = to_string(cfg.algo.kind);
  j["counts"] = json{{"na_model", run.counts.na_model},
                     {"na_forced", run.counts.na_forced},
                     {"na_skipped", run.counts.na_skipped},
                     {"algo_fills", run.counts.algo_fills},
                     {"algo_no_liquidity", run.counts.algo_no_liquidity},
                     {"spoof_placed", run.counts.spoof_placed},
                     {"expired", run.counts.expired},
                     {"trades", static_cast<long long>(run.trades.size())}};
  j["metrics"] = metrics_json(compute_metrics(cfg, run));
  return j.dump(2) + "\n";
}

void write_experiment_report(const fs::path& out_dir, const ExperimentReport& report) {
  const fs::path dir = out_dir / to_string(report.scenario);
  fs::create_directories(dir);

  json j;
  j["schema_version"] = kSummarySchemaVersion;
  j["tool"] = kToolName;
  j["tool_version"] = kToolVersion;
  j["config_hash"] = report.config_hash;
  j["scenario"] = to_string(report.scenario);
  j["seeds"] = report.seeds;
  j["regimes"] = json::array();
  for (const RegimeResult& regime : report.regimes) {
    json side_array = json::array();
    auto side_json = [&](const char* name, const AlgoSideStats& side) {
      json s;
      s["algo"] = name;
      s["interval"] = side.interval;
      s["orders"] = stats_json(side.orders);
      s["tc"] = stats_json(side.tc);
      s["avg_price"] = stats_json(side.avg_price);
      json runs = json::array();
      for (const RunSummary& r : side.runs) {
        json rj;
        rj["seed"] = r.seed;
        rj["orders"] = r.algo_orders;
        rj["metrics"] = metrics_json(r.metrics);
        rj["fill_interval_avg_price"] =
            r.fill_interval_avg_price ? json(*r.fill_interval_avg_price) : json(nullptr);
        rj["fall_fill_fraction"] =
            r.fall_fill_fraction ? json(*r.fall_fill_fraction) : json(nullptr);
        rj["fall_time_fraction"] =
            r.fall_time_fraction ? json(*r.fall_time_fraction) : json(nullptr);
        runs.push_back(std::move(rj));
      }
      s["runs"] = std::move(runs);
      return s;
    };
    json rg;
    rg["label"] = regime.label;
    rg["implied_aa_count"] = regime.implied_aa_count;
    side_array.push_back(side_json("aa", regime.aa));
    side_array.push_back(side_json("oaa", regime.oaa));
    rg["sides"] = std::move(side_array);
    j["regimes"].push_back(std::move(rg));
  }
  write_file(dir / "experiment.json", j.dump(2) + "\n");

  std::string csv = "# " + std::string(kToolName) + " " + kToolVersion +
                    " config=" + report.config_hash + "\n";
  csv += "regime,algo,interval,orders_mean,orders_sd,tc_mean,tc_sd,avg_price_mean,avg_price_sd,"
         "n_runs\n";
  auto emit_side = [&](const RegimeResult& regime, const char* name,
                       const AlgoSideStats& side) {
    csv += regime.label;
    csv += ',';
    csv += name;
    csv += ',';
    append_ll(csv, side.interval);
    csv += ',';
    csv += format_double(side.orders.mean);
    csv += ',';
    csv += format_double(side.orders.sd);
    csv += ',';
    csv += format_double(side.tc.mean);
    csv += ',';
    csv += format_double(side.tc.sd);
    csv += ',';
    csv += format_double(side.avg_price.mean);
    csv += ',';
    csv += format_double(side.avg_price.sd);
    csv += ',';
    append_ll(csv, side.orders.n);
    csv += '\n';
  };
  for (const RegimeResult& regime : report.regimes) {
    emit_side(regime, "aa", regime.aa);
    emit_side(regime, "oaa", regime.oaa);
  }
  write_file(dir / "experiment_summary.csv", csv);
}

void write_sweep_csv(const fs::path& path, const ExperimentReport& report) {
  std::string csv = "# " + std::string(kToolName) + " " + kToolVersion +
                    " config=" + report.config_hash + "\n";
  csv += "regime,oaa_interval,orders_oaa_mean,orders_aa_mean,tc_aa_mean,tc_oaa_mean,tc_diff\n";
  for (const RegimeResult& regime : report.regimes) {
    csv += regime.label;
    csv += ',';
    append_ll(csv, regime.oaa.interval);
    csv += ',';
    csv += format_double(regime.oaa.orders.mean);
    csv += ',';
    csv += format_double(regime.aa.orders.mean);
    csv += ',';
    csv += format_double(regime.aa.tc.mean);
    csv += ',';
    csv += format_double(regime.oaa.tc.mean);
    csv += ',';
    csv += format_double(regime.oaa.tc.mean - regime.aa.tc.mean);
    csv += '\n';
  }
  fs::create_directories(path.parent_path());
  write_file(path, csv);
}

std::string experiment_table_text(const ExperimentReport& report) {
  std::ostringstream out;
  out << "scenario: " << to_string(report.scenario) << "  (" << report.seeds.size()
      << " seeds per cell)\n";
  char line[160];
  std::snprintf(line, sizeof line, "%-8s %-4s %9s %18s %18s %22s\n", "regime", "algo",
                "interval", "orders mean(sd)", "TC mean(sd)", "avg price mean(sd)");
  out << line;
  for (const RegimeResult& regime : report.regimes) {
    auto row = [&](const char* name, const AlgoSideStats& side) {
      char orders[32], tc[32], price[40];
      std::snprintf(orders, sizeof orders, "%.2f(%.2f)", side.orders.mean, side.orders.sd);
      std::snprintf(tc, sizeof tc, "%.2f(%.2f)", side.tc.mean, side.tc.sd);
      std::snprintf(price, sizeof price, "%.2f(%.2f)", side.avg_price.mean, side.avg_price.sd);
      std::snprintf(line, sizeof line, "%-8s %-4s %9lld %18s %18s %22s\n",
                    regime.label.c_str(), name, static_cast<long long>(side.interval), orders,
                    tc, price);
      out << line;
    };
    row("aa", regime.aa);
    row("oaa", regime.oaa);
  }
  return out.str();
}

WeightDumpObserver::WeightDumpObserver(std::string header_comment)
    : buffer_(std::move(header_comment)) {
  buffer_ += "t,agent,w1,w2\n";
}

void WeightDumpObserver::on_na_turn(TimeStep t, int agent_index,
                                    const NormalAgentState& post_learn, bool /*forced*/,
                                    const std::optional<Order>& /*placed*/) {
  append_ll(buffer_, t);
  buffer_ += ',';
  append_ll(buffer_, agent_index);
  buffer_ += ',';
  buffer_ += format_double(post_learn.w1);
  buffer_ += ',';
  buffer_ += format_double(post_learn.w2);
  buffer_ += '\n';
}

void WeightDumpObserver::write_to(const fs::path& path) const { write_file(path, buffer_); }

}  // namespace obisim
