#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "obisim/agents.hpp"
#include "obisim/execution.hpp"
#include "obisim/scenario.hpp"
#include "obisim/types.hpp"

namespace obisim {

// Full configuration of one simulation run. Defaults are the model's
// standard parameter set.
struct SimConfig {
  double w1_max = 1.0;
  double w2_max = 10.0;
  double u_max = 1.0;
  int tau_max = 10000;
  double sigma_eps = 0.06;
  Tick tick_size = 1;
  Tick fundamental_price = 10000;
  TimeStep t_learn = 10000;   // t_l
  TimeStep t_cancel = 20000;  // t_c
  TimeStep t_end = 400000;    // t_e
  double k_learn = 4.0;       // k_l
  double delta_learn = 0.01;  // delta_l
  double est = 0.003;
  int n_normal_agents = 990;
  ExecAlgoConfig algo;
  ScenarioConfig scenario;
  TimeStep return_sampling_interval = 5;
  std::uint64_t seed = 1;

  AgentParams agent_params() const {
    return AgentParams{w1_max, w2_max, u_max,       tau_max, sigma_eps,
                       k_learn, delta_learn, est, t_learn, tick_size};
  }

  friend bool operator==(const SimConfig&, const SimConfig&) = default;
};

const char* to_string(AlgoKind kind);
const char* to_string(ScenarioKind kind);
bool parse_algo_kind(const std::string& text, AlgoKind* out);
bool parse_scenario_kind(const std::string& text, ScenarioKind* out);

// One settable configuration field; shared by the config-file parser and
// the CLI flag table.
struct ConfigField {
  std::string key;
  std::string description;
  std::function<std::string(SimConfig&, const std::string&)> apply;  // "" or error
  std::function<std::string(const SimConfig&)> get;
};

const std::vector<ConfigField>& config_fields();

// Applies key/value pairs onto `cfg`. Unknown keys and unparsable values
// are reported, one message per violation.
std::vector<std::string> apply_key_values(SimConfig& cfg,
                                          const std::map<std::string, std::string>& kv);

// Range/consistency validation; each message names the offending field.
std::vector<std::string> validate(const SimConfig& cfg);

// `key = value` lines, '#' comments. Parse errors land in `errors`.
std::map<std::string, std::string> parse_config_text(const std::string& text,
                                                     std::vector<std::string>& errors);
std::map<std::string, std::string> load_config_file(const std::string& path,
                                                    std::vector<std::string>& errors);

// Canonical serialization (fixed field order, round-trip float format).
// Parsing it back reproduces the config exactly.
std::string to_canonical_string(const SimConfig& cfg);

// FNV-1a 64 over the canonical serialization, as 16 hex digits.
std::string config_hash(const SimConfig& cfg);

std::string format_double(double v);

}  // namespace obisim
