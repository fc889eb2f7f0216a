#include "ppact/config.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace ppact {

ConfigError::ConfigError(int line_, const std::string& msg)
    : std::runtime_error(line_ > 0 ? "line " + std::to_string(line_) + ": " + msg : msg),
      line(line_) {}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

double parse_number(std::string_view v, int line) {
  double out = 0.0;
  const char* first = v.data();
  const char* last = v.data() + v.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc{} || ptr != last)
    throw ConfigError(line, "malformed number '" + std::string(v) + "'");
  return out;
}

// Keys named with a unit suffix describe physical magnitudes and must be
// strictly positive.
bool unit_suffixed(std::string_view key) {
  return ends_with(key, "_m") || ends_with(key, "_kg") || ends_with(key, "_F") ||
         ends_with(key, "_ohm");
}

struct Parser {
  RunConfig cfg;
  std::set<std::string> seen;
  bool zeta_set = false;
  bool r_set = false;

  double num(std::string_view key, std::string_view val, int line) {
    const double v = parse_number(val, line);
    if (unit_suffixed(key) && !(v > 0.0))
      throw ConfigError(line, std::string(key) + " must be positive");
    return v;
  }

  void assign(const std::string& sec, const std::string& key, std::string_view val,
              int line) {
    const std::string full = sec + "." + key;
    if (!seen.insert(full).second)
      throw ConfigError(line, "duplicate key '" + key + "' in [" + sec + "]");

    if (sec == "geometry") {
      if (key == "width_m") cfg.geometry.width = num(key, val, line);
      else if (key == "length_m") cfg.geometry.length = num(key, val, line);
      else if (key == "gap0_m") cfg.geometry.gap0 = num(key, val, line);
      else if (key == "permittivity_F_per_m") cfg.geometry.permittivity = num(key, val, line);
      else throw ConfigError(line, "unknown key '" + key + "' in [geometry]");
    } else if (sec == "physical") {
      if (key == "mass_kg") cfg.mass = num(key, val, line);
      else if (key == "damping_Ns_per_m") cfg.damping = num(key, val, line);
      else if (key == "stiffness_N_per_m") cfg.stiffness = num(key, val, line);
      else if (key == "resistance_ohm") cfg.resistance = num(key, val, line);
      else throw ConfigError(line, "unknown key '" + key + "' in [physical]");
    } else if (sec == "parasitics") {
      if (key == "rho_p") cfg.rho_p = num(key, val, line);
      else if (key == "rho_s") cfg.rho_s = num(key, val, line);
      else if (key == "serial_model") {
        if (val == "constant") cfg.serial_model = SerialModel::constant;
        else if (val == "palmer-gap") cfg.serial_model = SerialModel::palmer_gap;
        else throw ConfigError(line, "serial_model must be constant or palmer-gap");
      } else throw ConfigError(line, "unknown key '" + key + "' in [parasitics]");
    } else if (sec == "controller") {
      auto& c = cfg.controller;
      if (key == "k1") c.k1 = num(key, val, line);
      else if (key == "k2") c.k2 = num(key, val, line);
      else if (key == "k3") c.k3 = num(key, val, line);
      else if (key == "kappa2") c.kappa2 = num(key, val, line);
      else if (key == "kappa31") c.kappa31 = num(key, val, line);
      else if (key == "kappa32") c.kappa32 = num(key, val, line);
      else if (key == "kappa33") c.kappa33 = num(key, val, line);
      else if (key == "kappa34") c.kappa34 = num(key, val, line);
      else if (key == "zeta0") c.zeta0 = num(key, val, line);
      else if (key == "r_min") c.r_min = num(key, val, line);
      else if (key == "r_max") c.r_max = num(key, val, line);
      else if (key == "rho_p_bar") c.rho_p_bar = num(key, val, line);
      else if (key == "rho_s_bar") c.rho_s_bar = num(key, val, line);
      else if (key == "beta0") c.beta0 = num(key, val, line);
      else if (key == "eps_q") c.eps_q = num(key, val, line);
      else throw ConfigError(line, "unknown key '" + key + "' in [controller]");
    } else if (sec == "trajectory") {
      auto& t = cfg.trajectory;
      if (key == "t_start") t.t_start = num(key, val, line);
      else if (key == "t_end") t.t_end = num(key, val, line);
      else if (key == "y_start") t.y_start = num(key, val, line);
      else if (key == "y_target") t.y_target = num(key, val, line);
      else throw ConfigError(line, "unknown key '" + key + "' in [trajectory]");
    } else if (sec == "simulation") {
      if (key == "zeta") { cfg.zeta = num(key, val, line); zeta_set = true; }
      else if (key == "r") { cfg.r = num(key, val, line); r_set = true; }
      else if (key == "dt") cfg.dt = num(key, val, line);
      else if (key == "t_final") cfg.t_final = num(key, val, line);
      else if (key == "form") {
        if (val == "charge") cfg.form = IntegrationForm::charge;
        else if (val == "x3") cfg.form = IntegrationForm::x3;
        else throw ConfigError(line, "form must be charge or x3");
      }
      else if (key == "x1_init") cfg.initial.x1 = num(key, val, line);
      else if (key == "x2_init") cfg.initial.x2 = num(key, val, line);
      else if (key == "x3_init") cfg.initial.x3 = num(key, val, line);
      else throw ConfigError(line, "unknown key '" + key + "' in [simulation]");
    } else {
      throw ConfigError(line, "unknown section [" + sec + "]");
    }
  }
};

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

RunConfig RunConfig::parse(std::string_view text) {
  Parser p;
  std::string section;
  int line_no = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    const size_t nl = text.find('\n', pos);
    std::string_view raw = text.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    const size_t hash = raw.find_first_of("#;");
    if (hash != std::string_view::npos) raw = raw.substr(0, hash);
    const std::string_view s = trim(raw);
    if (s.empty()) continue;

    if (s.front() == '[') {
      if (s.back() != ']' || s.size() < 3)
        throw ConfigError(line_no, "malformed section header");
      section = std::string(trim(s.substr(1, s.size() - 2)));
      continue;
    }

    const size_t eq = s.find('=');
    if (eq == std::string_view::npos)
      throw ConfigError(line_no, "expected key = value");
    const std::string key(trim(s.substr(0, eq)));
    const std::string_view val = trim(s.substr(eq + 1));
    if (key.empty()) throw ConfigError(line_no, "empty key");
    if (val.empty()) throw ConfigError(line_no, "empty value for '" + key + "'");
    if (section.empty())
      throw ConfigError(line_no, "key '" + key + "' appears before any section");
    p.assign(section, key, val, line_no);
  }

  RunConfig& cfg = p.cfg;
  try {
    const NormalizedParams base = normalize(cfg.physical());
    if (!p.zeta_set) cfg.zeta = base.zeta;
    if (!p.r_set) cfg.r = base.r;
    if (cfg.rho_p < 0.0) throw std::domain_error("rho_p must be non-negative");
    if (cfg.rho_s < 0.0) throw std::domain_error("rho_s must be non-negative");
    if (cfg.zeta < 0.0) throw std::domain_error("zeta must be non-negative");
    if (!(cfg.r > 0.0)) throw std::domain_error("r must be positive");
    if (!(cfg.dt > 0.0)) throw std::domain_error("dt must be positive");
    if (!(cfg.t_final >= cfg.dt))
      throw std::domain_error("t_final must cover at least one step");
    if (!cfg.initial.in_state_space())
      throw std::domain_error("initial state outside x1 in [0,1], x3 >= 0");
    cfg.controller.validate();
    cfg.trajectory.validate();
  } catch (const std::domain_error& e) {
    throw ConfigError(0, e.what());
  }
  return cfg;
}

RunConfig RunConfig::parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("cannot read config file '" + path + "'");
  return parse(buf.str());
}

std::string RunConfig::serialize() const {
  std::ostringstream os;
  os << "[geometry]\n"
     << "width_m = " << fmt17(geometry.width) << '\n'
     << "length_m = " << fmt17(geometry.length) << '\n'
     << "gap0_m = " << fmt17(geometry.gap0) << '\n'
     << "permittivity_F_per_m = " << fmt17(geometry.permittivity) << '\n'
     << "\n[physical]\n"
     << "mass_kg = " << fmt17(mass) << '\n'
     << "damping_Ns_per_m = " << fmt17(damping) << '\n'
     << "stiffness_N_per_m = " << fmt17(stiffness) << '\n'
     << "resistance_ohm = " << fmt17(resistance) << '\n'
     << "\n[parasitics]\n"
     << "rho_p = " << fmt17(rho_p) << '\n'
     << "rho_s = " << fmt17(rho_s) << '\n'
     << "serial_model = "
     << (serial_model == SerialModel::constant ? "constant" : "palmer-gap") << '\n'
     << "\n[controller]\n"
     << "k1 = " << fmt17(controller.k1) << '\n'
     << "k2 = " << fmt17(controller.k2) << '\n'
     << "k3 = " << fmt17(controller.k3) << '\n'
     << "kappa2 = " << fmt17(controller.kappa2) << '\n'
     << "kappa31 = " << fmt17(controller.kappa31) << '\n'
     << "kappa32 = " << fmt17(controller.kappa32) << '\n'
     << "kappa33 = " << fmt17(controller.kappa33) << '\n'
     << "kappa34 = " << fmt17(controller.kappa34) << '\n'
     << "zeta0 = " << fmt17(controller.zeta0) << '\n'
     << "r_min = " << fmt17(controller.r_min) << '\n'
     << "r_max = " << fmt17(controller.r_max) << '\n'
     << "rho_p_bar = " << fmt17(controller.rho_p_bar) << '\n'
     << "rho_s_bar = " << fmt17(controller.rho_s_bar) << '\n'
     << "beta0 = " << fmt17(controller.beta0) << '\n'
     << "eps_q = " << fmt17(controller.eps_q) << '\n'
     << "\n[trajectory]\n"
     << "t_start = " << fmt17(trajectory.t_start) << '\n'
     << "t_end = " << fmt17(trajectory.t_end) << '\n'
     << "y_start = " << fmt17(trajectory.y_start) << '\n'
     << "y_target = " << fmt17(trajectory.y_target) << '\n'
     << "\n[simulation]\n"
     << "zeta = " << fmt17(zeta) << '\n'
     << "r = " << fmt17(r) << '\n'
     << "dt = " << fmt17(dt) << '\n'
     << "t_final = " << fmt17(t_final) << '\n'
     << "form = " << (form == IntegrationForm::charge ? "charge" : "x3") << '\n'
     << "x1_init = " << fmt17(initial.x1) << '\n'
     << "x2_init = " << fmt17(initial.x2) << '\n'
     << "x3_init = " << fmt17(initial.x3) << '\n';
  return os.str();
}

PhysicalParams RunConfig::physical() const {
  PhysicalParams phys;
  phys.mass = mass;
  phys.damping = damping;
  phys.stiffness = stiffness;
  phys.resistance = resistance;
  phys.geometry = geometry;
  const double c0 = geometry.permittivity * geometry.width * geometry.length / geometry.gap0;
  phys.c_parallel = rho_p * c0;
  if (rho_s > 0.0) phys.c_serial = c0 / rho_s;
  return phys;
}

NormalizedParams RunConfig::truth() const {
  NormalizedParams p = normalize(physical());
  p.zeta = zeta;
  p.r = r;
  p.rho_p = rho_p;
  p.rho_s = rho_s;
  if (serial_model == SerialModel::palmer_gap) {
    const DeviceGeometry g = geometry;
    const CapacitanceFn model = palmer_model(g);
    const double c_ref = palmer_capacitance(g, g.gap0);
    p.rho_s_of_x1 = [g, model, c_ref](double x1) {
      return serial_ratio_at_gap(g, g.gap0 * (1.0 - x1), model, c_ref);
    };
  }
  return p;
}

Scenario RunConfig::scenario(double setpoint) const {
  if (!(setpoint >= 0.0 && setpoint <= 1.0))
    throw std::domain_error("setpoint must lie in [0, 1]");
  Scenario sc;
  sc.truth = truth();
  sc.controller = controller;
  sc.trajectory = trajectory;
  sc.trajectory.y_target = setpoint;
  sc.t_end = t_final;
  sc.dt = dt;
  sc.initial = initial;
  sc.form = form;
  sc.validate();
  return sc;
}

}  // namespace ppact
