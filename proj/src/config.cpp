#include "obisim/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace obisim {

namespace {

std::string parse_i64(const std::string& text, std::int64_t* out) {
  const char* first = text.data();
  const char* last = first + text.size();
  auto [ptr, ec] = std::from_chars(first, last, *out);
  if (ec != std::errc{} || ptr != last) return "expected an integer, got '" + text + "'";
  return "";
}

std::string parse_u64(const std::string& text, std::uint64_t* out) {
  const char* first = text.data();
  const char* last = first + text.size();
  auto [ptr, ec] = std::from_chars(first, last, *out);
  if (ec != std::errc{} || ptr != last)
    return "expected a non-negative integer, got '" + text + "'";
  return "";
}

std::string parse_f64(const std::string& text, double* out) {
  try {
    std::size_t pos = 0;
    *out = std::stod(text, &pos);
    if (pos != text.size()) return "expected a number, got '" + text + "'";
  } catch (const std::exception&) {
    return "expected a number, got '" + text + "'";
  }
  return "";
}

template <class T>
ConfigField int_field(std::string key, std::string desc, T SimConfig::* member) {
  return ConfigField{
      key, std::move(desc),
      [member](SimConfig& cfg, const std::string& text) {
        std::int64_t v = 0;
        std::string err = parse_i64(text, &v);
        if (err.empty()) cfg.*member = static_cast<T>(v);
        return err;
      },
      [member](const SimConfig& cfg) { return std::to_string(cfg.*member); }};
}

ConfigField f64_field(std::string key, std::string desc, double SimConfig::* member) {
  return ConfigField{
      key, std::move(desc),
      [member](SimConfig& cfg, const std::string& text) {
        return parse_f64(text, &(cfg.*member));
      },
      [member](const SimConfig& cfg) { return format_double(cfg.*member); }};
}

template <class Sub, class T>
ConfigField nested_int_field(std::string key, std::string desc, Sub SimConfig::* sub,
                             T Sub::* member) {
  return ConfigField{
      key, std::move(desc),
      [sub, member](SimConfig& cfg, const std::string& text) {
        std::int64_t v = 0;
        std::string err = parse_i64(text, &v);
        if (err.empty()) cfg.*sub.*member = static_cast<T>(v);
        return err;
      },
      [sub, member](const SimConfig& cfg) { return std::to_string(cfg.*sub.*member); }};
}

}  // namespace

const char* to_string(AlgoKind kind) {
  switch (kind) {
    case AlgoKind::None: return "none";
    case AlgoKind::AA: return "aa";
    case AlgoKind::OAA: return "oaa";
  }
  return "none";
}

const char* to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::Stable: return "stable";
    case ScenarioKind::Crash: return "crash";
    case ScenarioKind::Surge: return "surge";
    case ScenarioKind::Spoof: return "spoof";
  }
  return "stable";
}

bool parse_algo_kind(const std::string& text, AlgoKind* out) {
  if (text == "none") *out = AlgoKind::None;
  else if (text == "aa") *out = AlgoKind::AA;
  else if (text == "oaa") *out = AlgoKind::OAA;
  else return false;
  return true;
}

bool parse_scenario_kind(const std::string& text, ScenarioKind* out) {
  if (text == "stable") *out = ScenarioKind::Stable;
  else if (text == "crash") *out = ScenarioKind::Crash;
  else if (text == "surge") *out = ScenarioKind::Surge;
  else if (text == "spoof") *out = ScenarioKind::Spoof;
  else return false;
  return true;
}

const std::vector<ConfigField>& config_fields() {
  static const std::vector<ConfigField> fields = [] {
    std::vector<ConfigField> f;
    f.push_back(f64_field("w1_max", "max fundamental-strategy weight", &SimConfig::w1_max));
    f.push_back(f64_field("w2_max", "max technical-strategy weight", &SimConfig::w2_max));
    f.push_back(f64_field("u_max", "max noise-strategy weight", &SimConfig::u_max));
    f.push_back(int_field("tau_max", "max technical lookback", &SimConfig::tau_max));
    f.push_back(f64_field("sigma_eps", "noise-term standard deviation", &SimConfig::sigma_eps));
    f.push_back(int_field("tick_size", "price tick size", &SimConfig::tick_size));
    f.push_back(
        int_field("fundamental_price", "fundamental price P_f", &SimConfig::fundamental_price));
    f.push_back(int_field("t_learn", "learning-return lookback", &SimConfig::t_learn));
    f.push_back(int_field("t_cancel", "order cancel time", &SimConfig::t_cancel));
    f.push_back(int_field("t_end", "simulation length", &SimConfig::t_end));
    f.push_back(f64_field("k_learn", "learning-rate constant", &SimConfig::k_learn));
    f.push_back(f64_field("delta_learn", "weight reset probability", &SimConfig::delta_learn));
    f.push_back(f64_field("est", "order-price dispersion factor", &SimConfig::est));
    f.push_back(
        int_field("n_normal_agents", "number of normal agents", &SimConfig::n_normal_agents));
    f.push_back(ConfigField{
        "algo_kind", "execution algorithm: none|aa|oaa",
        [](SimConfig& cfg, const std::string& text) {
          return parse_algo_kind(text, &cfg.algo.kind)
                     ? ""
                     : "expected none|aa|oaa, got '" + text + "'";
        },
        [](const SimConfig& cfg) { return to_string(cfg.algo.kind); }});
    f.push_back(nested_int_field("n_algo_agents", "number of algorithm agents",
                                 &SimConfig::algo, &ExecAlgoConfig::count));
    f.push_back(nested_int_field("algo_interval", "steps between algorithm decision turns",
                                 &SimConfig::algo, &ExecAlgoConfig::decision_interval));
    f.push_back(nested_int_field("algo_start", "first algorithm decision turn",
                                 &SimConfig::algo, &ExecAlgoConfig::start_time));
    f.push_back(nested_int_field("depth_window", "depth/OBI window in ticks", &SimConfig::algo,
                                 &ExecAlgoConfig::depth_window));
    f.push_back(ConfigField{
        "scenario", "market environment: stable|crash|surge|spoof",
        [](SimConfig& cfg, const std::string& text) {
          return parse_scenario_kind(text, &cfg.scenario.kind)
                     ? ""
                     : "expected stable|crash|surge|spoof, got '" + text + "'";
        },
        [](const SimConfig& cfg) { return to_string(cfg.scenario.kind); }});
    f.push_back(nested_int_field("scenario_window_start", "injection window start",
                                 &SimConfig::scenario, &ScenarioConfig::window_start));
    f.push_back(nested_int_field("scenario_window_end", "injection window end (exclusive)",
                                 &SimConfig::scenario, &ScenarioConfig::window_end));
    f.push_back(ConfigField{
        "forced_order_probability", "crash/surge forced-order probability",
        [](SimConfig& cfg, const std::string& text) {
          return parse_f64(text, &cfg.scenario.forced_order_probability);
        },
        [](const SimConfig& cfg) {
          return format_double(cfg.scenario.forced_order_probability);
        }});
    f.push_back(nested_int_field("forced_sell_price", "crash forced sell price",
                                 &SimConfig::scenario, &ScenarioConfig::forced_sell_price));
    f.push_back(nested_int_field("forced_buy_price", "surge forced buy price",
                                 &SimConfig::scenario, &ScenarioConfig::forced_buy_price));
    f.push_back(nested_int_field("spoof_cycle", "spoof on/off alternation period",
                                 &SimConfig::scenario, &ScenarioConfig::spoof_cycle));
    f.push_back(nested_int_field("spoof_count", "maintained spoof orders",
                                 &SimConfig::scenario, &ScenarioConfig::spoof_count));
    f.push_back(nested_int_field("spoof_window", "spoof ladder width in ticks",
                                 &SimConfig::scenario, &ScenarioConfig::spoof_window));
    f.push_back(int_field("return_sampling_interval", "steps between return samples",
                          &SimConfig::return_sampling_interval));
    f.push_back(ConfigField{
        "seed", "master random seed",
        [](SimConfig& cfg, const std::string& text) { return parse_u64(text, &cfg.seed); },
        [](const SimConfig& cfg) { return std::to_string(cfg.seed); }});
    return f;
  }();
  return fields;
}

std::vector<std::string> apply_key_values(SimConfig& cfg,
                                          const std::map<std::string, std::string>& kv) {
  std::vector<std::string> errors;
  for (const auto& [key, value] : kv) {
    const ConfigField* field = nullptr;
    for (const ConfigField& f : config_fields()) {
      if (f.key == key) {
        field = &f;
        break;
      }
    }
    if (field == nullptr) {
      errors.push_back("unknown config key '" + key + "'");
      continue;
    }
    if (std::string err = field->apply(cfg, value); !err.empty()) {
      errors.push_back(key + ": " + err);
    }
  }
  return errors;
}

std::vector<std::string> validate(const SimConfig& cfg) {
  std::vector<std::string> errors;
  auto require = [&](bool ok, const std::string& message) {
    if (!ok) errors.push_back(message);
  };
  require(cfg.w1_max >= 0.0, "w1_max must be >= 0");
  require(cfg.w2_max >= 0.0, "w2_max must be >= 0");
  require(cfg.u_max >= 0.0, "u_max must be >= 0");
  require(cfg.tau_max >= 1, "tau_max must be >= 1");
  require(cfg.sigma_eps >= 0.0, "sigma_eps must be >= 0");
  require(cfg.tick_size >= 1, "tick_size must be >= 1");
  require(cfg.fundamental_price >= 1, "fundamental_price must be >= 1 tick");
  require(cfg.t_learn >= 1, "t_learn must be >= 1");
  require(cfg.t_cancel >= 1, "t_cancel must be >= 1");
  require(cfg.t_end >= 1, "t_end must be >= 1");
  require(cfg.k_learn >= 0.0, "k_learn must be >= 0");
  require(cfg.delta_learn >= 0.0 && cfg.delta_learn <= 1.0,
          "delta_learn must be in [0, 1]");
  require(cfg.est >= 0.0, "est must be >= 0");
  require(cfg.n_normal_agents >= 1, "n_normal_agents must be >= 1");
  if (cfg.algo.kind != AlgoKind::None) {
    require(cfg.algo.count >= 1, "n_algo_agents must be >= 1");
    require(cfg.algo.decision_interval >= 1, "algo_interval must be >= 1");
    require(cfg.algo.start_time >= 0, "algo_start must be >= 0");
  }
  require(cfg.algo.depth_window >= 1, "depth_window must be >= 1");
  require(cfg.scenario.forced_order_probability >= 0.0 &&
              cfg.scenario.forced_order_probability <= 1.0,
          "forced_order_probability must be in [0, 1]");
  if (cfg.scenario.kind == ScenarioKind::Crash || cfg.scenario.kind == ScenarioKind::Surge) {
    require(cfg.scenario.window_start < cfg.scenario.window_end,
            "scenario_window_start must be < scenario_window_end");
    require(cfg.scenario.forced_sell_price >= 1, "forced_sell_price must be >= 1 tick");
    require(cfg.scenario.forced_buy_price >= 1, "forced_buy_price must be >= 1 tick");
  }
  if (cfg.scenario.kind == ScenarioKind::Spoof) {
    require(cfg.scenario.spoof_cycle >= 1, "spoof_cycle must be >= 1");
    require(cfg.scenario.spoof_count >= 0, "spoof_count must be >= 0");
    require(cfg.scenario.spoof_window >= 1, "spoof_window must be >= 1");
  }
  require(cfg.return_sampling_interval >= 1, "return_sampling_interval must be >= 1");
  return errors;
}

std::map<std::string, std::string> parse_config_text(const std::string& text,
                                                     std::vector<std::string>& errors) {
  std::map<std::string, std::string> kv;
  std::istringstream stream(text);
  std::string line;
  int line_no = 0;
  auto trim = [](std::string s) {
    const auto begin = s.find_first_not_of(" \t\r");
    const auto end = s.find_last_not_of(" \t\r");
    if (begin == std::string::npos) return std::string{};
    return s.substr(begin, end - begin + 1);
  };
  while (std::getline(stream, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      errors.push_back("line " + std::to_string(line_no) + ": expected 'key = value'");
      continue;
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      errors.push_back("line " + std::to_string(line_no) + ": empty key");
      continue;
    }
    if (kv.count(key) != 0) {
      errors.push_back("line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
      continue;
    }
    kv[key] = value;
  }
  return kv;
}

std::map<std::string, std::string> load_config_file(const std::string& path,
                                                    std::vector<std::string>& errors) {
  std::ifstream in(path);
  if (!in) {
    errors.push_back("cannot open config file '" + path + "'");
    return {};
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str(), errors);
}

std::string to_canonical_string(const SimConfig& cfg) {
  std::string out;
  for (const ConfigField& f : config_fields()) {
    out += f.key;
    out += " = ";
    out += f.get(cfg);
    out += '\n';
  }
  return out;
}

std::string config_hash(const SimConfig& cfg) {
  const std::string text = to_canonical_string(cfg);
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace obisim
