#include "artva/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include <Eigen/Geometry>

#include "artva/errors.hpp"
#include "artva/formation.hpp"

namespace artva {
namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return std::string{s.substr(first, last - first + 1)};
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.push_back(trim(s.substr(start)));
      return parts;
    }
    parts.push_back(trim(s.substr(start, pos - start)));
    start = pos + 1;
  }
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double out = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument{value};
    return out;
  } catch (const std::exception&) {
    throw ConfigError{"config key '" + key + "': expected a number, got '" +
                      value + "'"};
  }
}

std::uint64_t parse_u64(const std::string& key, const std::string& value) {
  try {
    if (!value.empty() && value.front() == '-') throw std::invalid_argument{value};
    std::size_t used = 0;
    const std::uint64_t out = std::stoull(value, &used);
    if (used != value.size()) throw std::invalid_argument{value};
    return out;
  } catch (const std::exception&) {
    throw ConfigError{"config key '" + key +
                      "': expected a non-negative integer, got '" + value + "'"};
  }
}

int parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const int out = std::stoi(value, &used);
    if (used != value.size()) throw std::invalid_argument{value};
    return out;
  } catch (const std::exception&) {
    throw ConfigError{"config key '" + key + "': expected an integer, got '" +
                      value + "'"};
  }
}

Eigen::Vector3d parse_vec3(const std::string& key, const std::string& value) {
  const auto parts = split(value, ',');
  if (parts.size() != 3) {
    throw ConfigError{"config key '" + key + "': expected 'x,y,z', got '" +
                      value + "'"};
  }
  return {parse_double(key, parts[0]), parse_double(key, parts[1]),
          parse_double(key, parts[2])};
}

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_vec3(const Eigen::Vector3d& v) {
  return fmt_double(v.x()) + "," + fmt_double(v.y()) + "," + fmt_double(v.z());
}

}  // namespace

const char* mode_name(Mode mode) {
  switch (mode) {
    case Mode::EsOnly: return "es";
    case Mode::LsOnly: return "ls";
    case Mode::Combined: return "esls";
  }
  return "esls";
}

std::optional<Mode> parse_mode(std::string_view text) {
  if (text == "es" || text == "es-only") return Mode::EsOnly;
  if (text == "ls" || text == "ls-only") return Mode::LsOnly;
  if (text == "esls" || text == "combined") return Mode::Combined;
  return std::nullopt;
}

std::vector<Eigen::Vector3d> SimConfig::resolved_offsets() const {
  if (!offsets.empty()) return offsets;
  return square_offsets(formation_edge);
}

double SimConfig::resolved_kappa() const {
  if (kappa) return *kappa;
  return dimensions == 3 ? 0.7 : 0.0;
}

TxSource SimConfig::tx_source() const {
  return TxSource{tx_position, rotation_from_rpy_deg(tx_attitude_rpy_deg),
                  tx_power};
}

DitherParams SimConfig::dither_params() const {
  DitherParams params;
  params.amplitude = delta;
  params.omega = omega;
  params.kappa = resolved_kappa();
  params.planar = dimensions == 2;
  return params;
}

Eigen::Matrix3d rotation_from_rpy_deg(const Eigen::Vector3d& rpy_deg) {
  constexpr double kDegToRad = 1.7453292519943295e-2;
  const Eigen::Vector3d rpy = kDegToRad * rpy_deg;
  return (Eigen::AngleAxisd{rpy.z(), Eigen::Vector3d::UnitZ()} *
          Eigen::AngleAxisd{rpy.y(), Eigen::Vector3d::UnitY()} *
          Eigen::AngleAxisd{rpy.x(), Eigen::Vector3d::UnitX()})
      .toRotationMatrix();
}

void validate(const SimConfig& config) {
  const auto fail = [](const std::string& msg) { throw ConfigError{msg}; };

  if (config.dimensions != 2 && config.dimensions != 3)
    fail("dimensions: must be 2 or 3");
  if (config.n_agents < 2) fail("n_agents: at least two agents are required");
  if (!(config.formation_edge > 0.0)) fail("formation_edge: must be positive");

  const auto offsets = config.resolved_offsets();
  if (static_cast<int>(offsets.size()) != config.n_agents) {
    if (config.offsets.empty())
      fail("offsets: required when n_agents != 4 (the default square has 4)");
    fail("offsets: got " + std::to_string(offsets.size()) + " entries for " +
         std::to_string(config.n_agents) + " agents");
  }
  Eigen::Vector3d mean = Eigen::Vector3d::Zero();
  for (const auto& o : offsets) mean += o;
  mean /= static_cast<double>(offsets.size());
  if (mean.norm() > 1e-9) fail("offsets: must be zero-mean");

  if (config.dimensions == 2) {
    for (const auto& o : offsets)
      if (o.z() != 0.0) fail("offsets: z-components must be 0 in planar mode");
    if (config.centroid_init.z() != 0.0)
      fail("centroid_init: z must be 0 in planar mode");
    if (config.tx_position.z() != 0.0)
      fail("tx_position: z must be 0 in planar mode");
    if (config.tx_attitude_rpy_deg.x() != 0.0 ||
        config.tx_attitude_rpy_deg.y() != 0.0)
      fail("tx_attitude_rpy_deg: roll and pitch must be 0 in planar mode");
  }

  if (!(config.tx_power > 0.0)) fail("tx_power: must be positive");
  if (!(config.noise_bound >= 0.0)) fail("noise_bound: must be >= 0");
  if (!(config.delta > 0.0)) fail("delta: must be positive");
  if (!(config.omega > 0.0) || config.omega > 2.0943951023931953)
    fail("omega: must lie in (0, 2*pi/3]");
  const double kappa = config.resolved_kappa();
  if (!(kappa >= 0.0) || kappa >= 1.0) fail("kappa: must lie in [0, 1)");
  if (!(config.alpha > 0.0) || config.alpha >= 1.0)
    fail("alpha: must lie in (0, 1)");
  if (!(config.beta > 0.0)) fail("beta: must be positive");
  // gamma = 0 is allowed: it freezes the formation, which is a supported
  // diagnostic scenario for observing the estimator alone.
  if (!(config.gamma >= 0.0)) fail("gamma: must be >= 0");
  if (!(config.rho_hat > 0.0)) fail("rho_hat: must be positive");
  if (!(config.eps_reg > 0.0)) fail("eps_reg: must be positive");
  if (config.period < 1) fail("period: must be >= 1");
  if (config.max_research_steps < 1) fail("max_research_steps: must be >= 1");
  if (!(config.grad_init_std >= 0.0)) fail("grad_init_std: must be >= 0");
  if (config.bearing_sign != 1.0 && config.bearing_sign != -1.0)
    fail("bearing_sign: must be +1 or -1");

  if (!is_rotation(rotation_from_rpy_deg(config.tx_attitude_rpy_deg), 1e-9))
    fail("tx_attitude_rpy_deg: does not yield a rotation matrix");
}

SimConfig parse_config_text(const std::string& text) {
  SimConfig config;
  using Handler = std::function<void(const std::string&, const std::string&)>;
  const std::map<std::string, Handler> handlers{
      {"dimensions", [&](const std::string& k, const std::string& v) {
         config.dimensions = parse_int(k, v);
       }},
      {"mode", [&](const std::string& k, const std::string& v) {
         const auto mode = parse_mode(v);
         if (!mode)
           throw ConfigError{"config key '" + k +
                             "': expected es, ls or esls, got '" + v + "'"};
         config.mode = *mode;
       }},
      {"sigma_force", [&](const std::string& k, const std::string& v) {
         if (v == "none") config.sigma_force = SigmaForce::None;
         else if (v == "0") config.sigma_force = SigmaForce::Zero;
         else if (v == "1") config.sigma_force = SigmaForce::One;
         else
           throw ConfigError{"config key '" + k +
                             "': expected none, 0 or 1, got '" + v + "'"};
       }},
      {"seed", [&](const std::string& k, const std::string& v) {
         config.seed = parse_u64(k, v);
       }},
      {"n_agents", [&](const std::string& k, const std::string& v) {
         config.n_agents = parse_int(k, v);
       }},
      {"formation_edge", [&](const std::string& k, const std::string& v) {
         config.formation_edge = parse_double(k, v);
       }},
      {"offsets", [&](const std::string& k, const std::string& v) {
         config.offsets.clear();
         for (const auto& item : split(v, ';'))
           config.offsets.push_back(parse_vec3(k, item));
       }},
      {"centroid_init", [&](const std::string& k, const std::string& v) {
         config.centroid_init = parse_vec3(k, v);
       }},
      {"tx_position", [&](const std::string& k, const std::string& v) {
         config.tx_position = parse_vec3(k, v);
       }},
      {"tx_attitude_rpy_deg", [&](const std::string& k, const std::string& v) {
         config.tx_attitude_rpy_deg = parse_vec3(k, v);
       }},
      {"tx_power", [&](const std::string& k, const std::string& v) {
         config.tx_power = parse_double(k, v);
       }},
      {"noise_bound", [&](const std::string& k, const std::string& v) {
         config.noise_bound = parse_double(k, v);
       }},
      {"delta", [&](const std::string& k, const std::string& v) {
         config.delta = parse_double(k, v);
       }},
      {"omega", [&](const std::string& k, const std::string& v) {
         config.omega = parse_double(k, v);
       }},
      {"kappa", [&](const std::string& k, const std::string& v) {
         config.kappa = parse_double(k, v);
       }},
      {"alpha", [&](const std::string& k, const std::string& v) {
         config.alpha = parse_double(k, v);
       }},
      {"beta", [&](const std::string& k, const std::string& v) {
         config.beta = parse_double(k, v);
       }},
      {"gamma", [&](const std::string& k, const std::string& v) {
         config.gamma = parse_double(k, v);
       }},
      {"rho_hat", [&](const std::string& k, const std::string& v) {
         config.rho_hat = parse_double(k, v);
       }},
      {"eps_reg", [&](const std::string& k, const std::string& v) {
         config.eps_reg = parse_double(k, v);
       }},
      {"period", [&](const std::string& k, const std::string& v) {
         config.period = parse_u64(k, v);
       }},
      {"max_research_steps", [&](const std::string& k, const std::string& v) {
         config.max_research_steps = parse_u64(k, v);
       }},
      {"grad_init_std", [&](const std::string& k, const std::string& v) {
         config.grad_init_std = parse_double(k, v);
       }},
      {"bearing_sign", [&](const std::string& k, const std::string& v) {
         config.bearing_sign = parse_double(k, v);
       }},
  };

  std::istringstream in{text};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string stripped = trim(line);
    if (stripped.empty()) continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw ConfigError{"config line " + std::to_string(line_no) +
                        ": expected 'key = value', got '" + stripped + "'"};
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    const auto it = handlers.find(key);
    if (it == handlers.end())
      throw ConfigError{"config line " + std::to_string(line_no) +
                        ": unknown key '" + key + "'"};
    it->second(key, value);
  }

  validate(config);
  return config;
}

SimConfig load_config(const std::string& path) {
  std::ifstream in{path};
  if (!in) throw IoError{"cannot open config file '" + path + "'"};
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError{"failed reading config file '" + path + "'"};
  return parse_config_text(buf.str());
}

std::string format_config(const SimConfig& config) {
  std::ostringstream out;
  out << "dimensions = " << config.dimensions << "\n";
  out << "mode = " << mode_name(config.mode) << "\n";
  switch (config.sigma_force) {
    case SigmaForce::None: out << "sigma_force = none\n"; break;
    case SigmaForce::Zero: out << "sigma_force = 0\n"; break;
    case SigmaForce::One: out << "sigma_force = 1\n"; break;
  }
  out << "seed = " << config.seed << "\n";
  out << "n_agents = " << config.n_agents << "\n";
  out << "formation_edge = " << fmt_double(config.formation_edge) << "\n";
  if (!config.offsets.empty()) {
    out << "offsets = ";
    for (std::size_t i = 0; i < config.offsets.size(); ++i) {
      if (i > 0) out << "; ";
      out << fmt_vec3(config.offsets[i]);
    }
    out << "\n";
  }
  out << "centroid_init = " << fmt_vec3(config.centroid_init) << "\n";
  out << "tx_position = " << fmt_vec3(config.tx_position) << "\n";
  out << "tx_attitude_rpy_deg = " << fmt_vec3(config.tx_attitude_rpy_deg)
      << "\n";
  out << "tx_power = " << fmt_double(config.tx_power) << "\n";
  out << "noise_bound = " << fmt_double(config.noise_bound) << "\n";
  out << "delta = " << fmt_double(config.delta) << "\n";
  out << "omega = " << fmt_double(config.omega) << "\n";
  if (config.kappa) out << "kappa = " << fmt_double(*config.kappa) << "\n";
  out << "alpha = " << fmt_double(config.alpha) << "\n";
  out << "beta = " << fmt_double(config.beta) << "\n";
  out << "gamma = " << fmt_double(config.gamma) << "\n";
  out << "rho_hat = " << fmt_double(config.rho_hat) << "\n";
  out << "eps_reg = " << fmt_double(config.eps_reg) << "\n";
  out << "period = " << config.period << "\n";
  out << "max_research_steps = " << config.max_research_steps << "\n";
  out << "grad_init_std = " << fmt_double(config.grad_init_std) << "\n";
  out << "bearing_sign = " << fmt_double(config.bearing_sign) << "\n";
  return out.str();
}

}  // namespace artva
