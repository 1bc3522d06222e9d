#pragma once

#include <string>

#include "umbilic/system.hpp"

namespace umbilic {

// `[system]` section of a run spec file: polynomial strings over
// {x,y,a,b,c,eps}; missing f_x / f_y default to "0".
struct SystemSpec {
  std::string name = "system";
  std::string g_a, g_b, g_c;
  std::string f_x = "0", f_y = "0";
};

// `[run]` section: experiment parameters.
struct RunSpec {
  double eps = 1e-3;
  double nu = 0.25;
  double tau = 0.05;
  int seeds = 64;
  double w_x = 0.05;
  double k_a = 0.1;
  double delta0 = 1e-4;
  double rtol = 1e-9;
  double atol = 1e-11;
};

struct ConfigData {
  SystemSpec system;
  RunSpec run;
};

// key = value text with [section] headers; '#' starts a comment. Unknown
// keys or sections are rejected.
ConfigData parse_config(const std::string& text);
ConfigData load_config_file(const std::string& path);
std::string serialize_config(const ConfigData& cfg);  // 17 significant digits

FastSlowSystem make_system(const SystemSpec& spec);

}  // namespace umbilic
