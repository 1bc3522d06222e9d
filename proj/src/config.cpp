#include "umbilic/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "umbilic/errors.hpp"

namespace umbilic {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  try {
    std::size_t used = 0;
    double x = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("invalid numeric value for '" + key + "': " + v);
  }
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

ConfigData parse_config(const std::string& text) {
  ConfigData cfg;
  std::istringstream in(text);
  std::string line, section;
  int lineno = 0;
  bool saw_ga = false, saw_gb = false, saw_gc = false;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']')
        throw ConfigError("malformed section header at line " + std::to_string(lineno));
      section = trim(line.substr(1, line.size() - 2));
      if (section != "system" && section != "run")
        throw ConfigError("unknown section '" + section + "'");
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("expected key = value at line " + std::to_string(lineno));
    std::string key = trim(line.substr(0, eq));
    std::string val = trim(line.substr(eq + 1));
    if (section == "system") {
      if (key == "name") cfg.system.name = val;
      else if (key == "g_a") { cfg.system.g_a = val; saw_ga = true; }
      else if (key == "g_b") { cfg.system.g_b = val; saw_gb = true; }
      else if (key == "g_c") { cfg.system.g_c = val; saw_gc = true; }
      else if (key == "f_x") cfg.system.f_x = val;
      else if (key == "f_y") cfg.system.f_y = val;
      else throw ConfigError("unknown [system] key '" + key + "'");
    } else if (section == "run") {
      if (key == "eps") cfg.run.eps = to_double(key, val);
      else if (key == "nu") cfg.run.nu = to_double(key, val);
      else if (key == "tau") cfg.run.tau = to_double(key, val);
      else if (key == "seeds") cfg.run.seeds = static_cast<int>(to_double(key, val));
      else if (key == "w_x") cfg.run.w_x = to_double(key, val);
      else if (key == "k_a") cfg.run.k_a = to_double(key, val);
      else if (key == "delta0") cfg.run.delta0 = to_double(key, val);
      else if (key == "rtol") cfg.run.rtol = to_double(key, val);
      else if (key == "atol") cfg.run.atol = to_double(key, val);
      else throw ConfigError("unknown [run] key '" + key + "'");
    } else {
      throw ConfigError("key outside a section at line " + std::to_string(lineno));
    }
  }
  if (!saw_ga || !saw_gb || !saw_gc)
    throw ConfigError("[system] must define g_a, g_b and g_c");
  return cfg;
}

ConfigData load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string serialize_config(const ConfigData& cfg) {
  std::ostringstream os;
  os << "[system]\n";
  os << "name = " << cfg.system.name << "\n";
  os << "g_a = " << cfg.system.g_a << "\n";
  os << "g_b = " << cfg.system.g_b << "\n";
  os << "g_c = " << cfg.system.g_c << "\n";
  os << "f_x = " << cfg.system.f_x << "\n";
  os << "f_y = " << cfg.system.f_y << "\n";
  os << "\n[run]\n";
  os << "eps = " << fmt(cfg.run.eps) << "\n";
  os << "nu = " << fmt(cfg.run.nu) << "\n";
  os << "tau = " << fmt(cfg.run.tau) << "\n";
  os << "seeds = " << cfg.run.seeds << "\n";
  os << "w_x = " << fmt(cfg.run.w_x) << "\n";
  os << "k_a = " << fmt(cfg.run.k_a) << "\n";
  os << "delta0 = " << fmt(cfg.run.delta0) << "\n";
  os << "rtol = " << fmt(cfg.run.rtol) << "\n";
  os << "atol = " << fmt(cfg.run.atol) << "\n";
  return os.str();
}

FastSlowSystem make_system(const SystemSpec& spec) {
  auto parse = [](const std::string& field, const std::string& src) {
    try {
      return PolyExpr::parse(src);
    } catch (const ParseError& e) {
      throw ConfigError("in " + field + ": " + e.what());
    }
  };
  return FastSlowSystem(parse("g_a", spec.g_a), parse("g_b", spec.g_b),
                        parse("g_c", spec.g_c), parse("f_x", spec.f_x),
                        parse("f_y", spec.f_y), spec.name);
}

}  // namespace umbilic
