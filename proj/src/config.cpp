#include "bptrack/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace bptrack {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("config: bad number for '" + key + "': " + value);
  }
}

int parse_int(const std::string& key, const std::string& value) {
  int v = 0;
  const auto res = std::from_chars(value.data(), value.data() + value.size(), v);
  if (res.ec != std::errc{} || res.ptr != value.data() + value.size())
    throw ConfigError("config: bad integer for '" + key + "': " + value);
  return v;
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  std::uint64_t v = 0;
  const auto res = std::from_chars(value.data(), value.data() + value.size(), v);
  if (res.ec != std::errc{} || res.ptr != value.data() + value.size())
    throw ConfigError("config: bad unsigned integer for '" + key + "': " + value);
  return v;
}

Vec2 parse_vec2(const std::string& key, const std::string& value) {
  const auto comma = value.find(',');
  if (comma == std::string::npos)
    throw ConfigError("config: expected 'x,y' for '" + key + "': " + value);
  return {parse_double(key, trim(value.substr(0, comma))),
          parse_double(key, trim(value.substr(comma + 1)))};
}

std::vector<Vec2> parse_vec_list(const std::string& key, const std::string& value) {
  std::vector<Vec2> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ';')) {
    item = trim(item);
    if (item.empty()) continue;
    out.push_back(parse_vec2(key, item));
  }
  if (out.empty()) throw ConfigError("config: empty point list for '" + key + "'");
  return out;
}

void parse_range(const std::string& key, const std::string& value, double out[2]) {
  const Vec2 v = parse_vec2(key, value);
  out[0] = v.x;
  out[1] = v.y;
}

std::string format_vec2(const Vec2& v) {
  return format_double(v.x) + "," + format_double(v.y);
}

std::string format_vec_list(const std::vector<Vec2>& vs) {
  std::string out;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    if (i) out += "; ";
    out += format_vec2(vs[i]);
  }
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

RunConfig default_run_config() {
  RunConfig cfg;
  cfg.scenario = benchmark_scenario();
  cfg.tracker = benchmark_tracker_config();
  return cfg;
}

TrackerMode parse_mode(const std::string& name) {
  if (name == "full") return TrackerMode::Full;
  if (name == "simplified1") return TrackerMode::Simplified1;
  if (name == "simplified2") return TrackerMode::Simplified2;
  if (name == "tx-only") return TrackerMode::TxOnly;
  throw ConfigError("config: unknown mode '" + name +
                    "' (expected full|simplified1|simplified2|tx-only)");
}

std::string mode_name(TrackerMode mode) {
  switch (mode) {
    case TrackerMode::Full: return "full";
    case TrackerMode::Simplified1: return "simplified1";
    case TrackerMode::Simplified2: return "simplified2";
    case TrackerMode::TxOnly: return "tx-only";
  }
  return "full";
}

RunConfig parse_config_text(const std::string& text) {
  RunConfig cfg = default_run_config();

  // One handler per key keeps unknown-key detection trivial.
  const std::map<std::string, std::function<void(const std::string&, const std::string&)>>
      handlers{
          {"mode", [&](const std::string&, const std::string& v) { cfg.mode = parse_mode(v); }},
          {"runs", [&](const std::string& k, const std::string& v) { cfg.runs = parse_int(k, v); }},
          {"seed", [&](const std::string& k, const std::string& v) { cfg.seed = parse_u64(k, v); }},
          {"out_dir", [&](const std::string&, const std::string& v) { cfg.out_dir = v; }},
          {"ospa_order",
           [&](const std::string& k, const std::string& v) { cfg.ospa.order = parse_double(k, v); }},
          {"ospa_cutoff",
           [&](const std::string& k, const std::string& v) { cfg.ospa.cutoff = parse_double(k, v); }},
          {"track_spread_gate",
           [&](const std::string& k, const std::string& v) {
             cfg.track_spread_gate = parse_double(k, v);
           }},

          {"tx_position",
           [&](const std::string& k, const std::string& v) { cfg.scenario.tx_position = parse_vec2(k, v); }},
          {"static_scatterers",
           [&](const std::string& k, const std::string& v) {
             cfg.scenario.static_scatterers = parse_vec_list(k, v);
           }},
          {"target_waypoints",
           [&](const std::string& k, const std::string& v) {
             cfg.scenario.target_waypoints = parse_vec_list(k, v);
           }},
          {"target_speed",
           [&](const std::string& k, const std::string& v) { cfg.scenario.target_speed = parse_double(k, v); }},
          {"rx_waypoints",
           [&](const std::string& k, const std::string& v) {
             cfg.scenario.rx_waypoints = parse_vec_list(k, v);
           }},
          {"rx_speed",
           [&](const std::string& k, const std::string& v) { cfg.scenario.rx_speed = parse_double(k, v); }},
          {"n_steps",
           [&](const std::string& k, const std::string& v) { cfg.scenario.n_steps = parse_int(k, v); }},
          {"sigma_d_gen",
           [&](const std::string& k, const std::string& v) { cfg.scenario.sigma_d = parse_double(k, v); }},
          {"sigma_theta_gen",
           [&](const std::string& k, const std::string& v) { cfg.scenario.sigma_theta = parse_double(k, v); }},
          {"p_detect",
           [&](const std::string& k, const std::string& v) { cfg.scenario.p_detect = parse_double(k, v); }},
          {"mu_fa",
           [&](const std::string& k, const std::string& v) { cfg.scenario.mu_fa = parse_double(k, v); }},
          {"fa_d_range",
           [&](const std::string& k, const std::string& v) { parse_range(k, v, cfg.scenario.fa_d_range); }},
          {"fa_theta_range",
           [&](const std::string& k, const std::string& v) { parse_range(k, v, cfg.scenario.fa_theta_range); }},

          {"particle_count",
           [&](const std::string& k, const std::string& v) { cfg.tracker.particle_count = parse_int(k, v); }},
          {"p_exist_threshold",
           [&](const std::string& k, const std::string& v) { cfg.tracker.p_exist = parse_double(k, v); }},
          {"p_prune_threshold",
           [&](const std::string& k, const std::string& v) { cfg.tracker.p_prune = parse_double(k, v); }},
          {"assoc_tol",
           [&](const std::string& k, const std::string& v) { cfg.tracker.assoc_tol = parse_double(k, v); }},
          {"assoc_max_iter",
           [&](const std::string& k, const std::string& v) { cfg.tracker.assoc_max_iter = parse_int(k, v); }},
          {"lambda_undetected_init",
           [&](const std::string& k, const std::string& v) {
             cfg.tracker.lambda_undetected_init = parse_double(k, v);
           }},
          {"lambda_birth",
           [&](const std::string& k, const std::string& v) { cfg.tracker.lambda_birth = parse_double(k, v); }},
          {"tx_range_max",
           [&](const std::string& k, const std::string& v) { cfg.tracker.tx_range_max = parse_double(k, v); }},
          {"stack_partners",
           [&](const std::string& k, const std::string& v) {
             cfg.tracker.stack_partners = parse_int(k, v);
           }},
          {"bootstrap_std_threshold",
           [&](const std::string& k, const std::string& v) {
             cfg.tracker.bootstrap_std_threshold = parse_double(k, v);
           }},

          {"p_survival",
           [&](const std::string& k, const std::string& v) { cfg.tracker.model.p_survival = parse_double(k, v); }},
          {"model_p_detect",
           [&](const std::string& k, const std::string& v) { cfg.tracker.model.p_detect = parse_double(k, v); }},
          {"model_mu_fa",
           [&](const std::string& k, const std::string& v) { cfg.tracker.model.mu_fa = parse_double(k, v); }},
          {"sigma_d_lik",
           [&](const std::string& k, const std::string& v) { cfg.tracker.model.sigma_d = parse_double(k, v); }},
          {"sigma_theta_lik",
           [&](const std::string& k, const std::string& v) {
             cfg.tracker.model.sigma_theta = parse_double(k, v);
           }},
          {"sigma_tx_walk",
           [&](const std::string& k, const std::string& v) {
             cfg.tracker.model.sigma_tx_walk = parse_double(k, v);
           }},
          {"sigma_ps_walk",
           [&](const std::string& k, const std::string& v) {
             cfg.tracker.model.sigma_ps_walk = parse_double(k, v);
           }},
          {"model_fa_d_range",
           [&](const std::string& k, const std::string& v) {
             parse_range(k, v, cfg.tracker.model.fa_d_range);
           }},
          {"model_fa_theta_range",
           [&](const std::string& k, const std::string& v) {
             parse_range(k, v, cfg.tracker.model.fa_theta_range);
           }},
      };

  std::istringstream lines(text);
  std::string line;
  int line_no = 0;
  while (std::getline(lines, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config: line " + std::to_string(line_no) + " is not 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const auto it = handlers.find(key);
    if (it == handlers.end())
      throw ConfigError("config: unknown key '" + key + "' on line " + std::to_string(line_no));
    it->second(key, value);
  }

  if (cfg.runs < 1) throw ConfigError("config: runs must be >= 1");
  if (cfg.scenario.n_steps < 1) throw ConfigError("config: n_steps must be >= 1");
  return cfg;
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

std::string format_config(const RunConfig& cfg) {
  std::ostringstream out;
  out << "# batch\n";
  out << "mode = " << mode_name(cfg.mode) << "\n";
  out << "runs = " << cfg.runs << "\n";
  out << "seed = " << cfg.seed << "\n";
  out << "out_dir = " << cfg.out_dir << "\n";
  out << "ospa_order = " << format_double(cfg.ospa.order) << "\n";
  out << "ospa_cutoff = " << format_double(cfg.ospa.cutoff) << "\n";
  out << "track_spread_gate = " << format_double(cfg.track_spread_gate) << "\n";
  out << "\n# scene\n";
  out << "tx_position = " << format_vec2(cfg.scenario.tx_position) << "\n";
  out << "static_scatterers = " << format_vec_list(cfg.scenario.static_scatterers) << "\n";
  out << "target_waypoints = " << format_vec_list(cfg.scenario.target_waypoints) << "\n";
  out << "target_speed = " << format_double(cfg.scenario.target_speed) << "\n";
  out << "rx_waypoints = " << format_vec_list(cfg.scenario.rx_waypoints) << "\n";
  out << "rx_speed = " << format_double(cfg.scenario.rx_speed) << "\n";
  out << "n_steps = " << cfg.scenario.n_steps << "\n";
  out << "sigma_d_gen = " << format_double(cfg.scenario.sigma_d) << "\n";
  out << "sigma_theta_gen = " << format_double(cfg.scenario.sigma_theta) << "\n";
  out << "p_detect = " << format_double(cfg.scenario.p_detect) << "\n";
  out << "mu_fa = " << format_double(cfg.scenario.mu_fa) << "\n";
  out << "fa_d_range = " << format_double(cfg.scenario.fa_d_range[0]) << ","
      << format_double(cfg.scenario.fa_d_range[1]) << "\n";
  out << "fa_theta_range = " << format_double(cfg.scenario.fa_theta_range[0]) << ","
      << format_double(cfg.scenario.fa_theta_range[1]) << "\n";
  out << "\n# tracker\n";
  out << "particle_count = " << cfg.tracker.particle_count << "\n";
  out << "p_exist_threshold = " << format_double(cfg.tracker.p_exist) << "\n";
  out << "p_prune_threshold = " << format_double(cfg.tracker.p_prune) << "\n";
  out << "assoc_tol = " << format_double(cfg.tracker.assoc_tol) << "\n";
  out << "assoc_max_iter = " << cfg.tracker.assoc_max_iter << "\n";
  out << "lambda_undetected_init = " << format_double(cfg.tracker.lambda_undetected_init)
      << "\n";
  out << "lambda_birth = " << format_double(cfg.tracker.lambda_birth) << "\n";
  out << "tx_range_max = " << format_double(cfg.tracker.tx_range_max) << "\n";
  out << "stack_partners = " << cfg.tracker.stack_partners << "\n";
  out << "bootstrap_std_threshold = "
      << format_double(cfg.tracker.bootstrap_std_threshold) << "\n";
  out << "\n# measurement model\n";
  out << "p_survival = " << format_double(cfg.tracker.model.p_survival) << "\n";
  out << "model_p_detect = " << format_double(cfg.tracker.model.p_detect) << "\n";
  out << "model_mu_fa = " << format_double(cfg.tracker.model.mu_fa) << "\n";
  out << "sigma_d_lik = " << format_double(cfg.tracker.model.sigma_d) << "\n";
  out << "sigma_theta_lik = " << format_double(cfg.tracker.model.sigma_theta) << "\n";
  out << "sigma_tx_walk = " << format_double(cfg.tracker.model.sigma_tx_walk) << "\n";
  out << "sigma_ps_walk = " << format_double(cfg.tracker.model.sigma_ps_walk) << "\n";
  out << "model_fa_d_range = " << format_double(cfg.tracker.model.fa_d_range[0]) << ","
      << format_double(cfg.tracker.model.fa_d_range[1]) << "\n";
  out << "model_fa_theta_range = " << format_double(cfg.tracker.model.fa_theta_range[0])
      << "," << format_double(cfg.tracker.model.fa_theta_range[1]) << "\n";
  return out.str();
}

}  // namespace bptrack
