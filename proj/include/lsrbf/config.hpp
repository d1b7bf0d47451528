#pragma once

#include <fstream>
#include <istream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "lsrbf/geometry.hpp"
#include "lsrbf/kernels.hpp"
#include "lsrbf/scaling.hpp"
#include "lsrbf/solver.hpp"
#include "lsrbf/sweep.hpp"

namespace lsrbf {

/// Flat `key = value` configuration text: one pair per line, '#' starts a
/// comment, blank lines ignored.
inline std::map<std::string, std::string> parse_key_values(std::istream& in) {
  std::map<std::string, std::string> out;
  std::string line;
  int lineno = 0;
  auto trim = [](std::string s) {
    const char* ws = " \t\r";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string::npos) return std::string();
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
  };
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::string trimmed = trim(line);
    if (trimmed.empty()) continue;
    const auto eq = trimmed.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(trimmed.substr(0, eq));
    const std::string value = trim(trimmed.substr(eq + 1));
    if (key.empty())
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": empty key");
    out[key] = value;
  }
  return out;
}

inline std::map<std::string, std::string> parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
  return parse_key_values(in);
}

namespace detail {

inline double to_double(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("config key '" + key + "': '" + value + "' is not a number");
  }
  if (pos != value.size())
    throw std::invalid_argument("config key '" + key + "': trailing characters in '" + value + "'");
  return v;
}

inline int to_int(const std::string& key, const std::string& value) {
  const double v = to_double(key, value);
  const int i = static_cast<int>(v);
  if (static_cast<double>(i) != v)
    throw std::invalid_argument("config key '" + key + "': '" + value + "' is not an integer");
  return i;
}

inline bool to_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw std::invalid_argument("config key '" + key + "': '" + value + "' is not a boolean");
}

inline std::vector<double> to_doubles(const std::string& key, const std::string& value) {
  std::vector<double> out;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_double(key, item));
  return out;
}

}  // namespace detail

/// Build a sweep configuration from flat key/value pairs.  Unknown keys are
/// rejected so typos cannot silently fall back to defaults.
inline SweepConfig sweep_config_from_map(const std::map<std::string, std::string>& kv) {
  SweepConfig cfg;
  std::string scaling = "linear-optimal";
  double c = 0.0, alpha = 0.5;
  std::string domain_kind;
  double t1 = 1.2, t2 = 1.2;
  double box_hw1 = 1.0, box_hw2 = 1.0;
  double disk_cx = 0.0, disk_cy = 0.0, disk_r = 1.0;
  FourierCurve curve;

  using detail::to_bool;
  using detail::to_double;
  using detail::to_doubles;
  using detail::to_int;
  for (const auto& [key, value] : kv) {
    if (key == "function") cfg.function = value;
    else if (key == "kernel") cfg.kernel = kernel_from_name(value);
    else if (key == "T") cfg.T = to_double(key, value);
    else if (key == "tau") cfg.tau = to_double(key, value);
    else if (key == "threshold_mode") {
      if (value == "relative") cfg.threshold_mode = ThresholdMode::RelativeToSigma1;
      else if (value == "absolute") cfg.threshold_mode = ThresholdMode::Absolute;
      else throw std::invalid_argument("threshold_mode must be 'relative' or 'absolute'");
    } else if (key == "factorization") {
      if (value == "tsvd") cfg.factorization = Factorization::TruncatedSvd;
      else if (value == "qr") cfg.factorization = Factorization::PivotedQr;
      else throw std::invalid_argument("factorization must be 'tsvd' or 'qr'");
    } else if (key == "scaling") scaling = value;
    else if (key == "c") c = to_double(key, value);
    else if (key == "alpha") alpha = to_double(key, value);
    else if (key == "gamma") cfg.gamma = to_double(key, value);
    else if (key == "n_min") cfg.n_min = to_int(key, value);
    else if (key == "n_max") cfg.n_max = to_int(key, value);
    else if (key == "n_step") cfg.n_step = to_int(key, value);
    else if (key == "validation_grid") cfg.validation_grid = to_int(key, value);
    else if (key == "out") cfg.out = value;
    else if (key == "allow_touching") cfg.allow_touching_extent = to_bool(key, value);
    else if (key == "domain") domain_kind = value;
    else if (key == "T1") t1 = to_double(key, value);
    else if (key == "T2") t2 = to_double(key, value);
    else if (key == "box_hw1") box_hw1 = to_double(key, value);
    else if (key == "box_hw2") box_hw2 = to_double(key, value);
    else if (key == "disk_cx") disk_cx = to_double(key, value);
    else if (key == "disk_cy") disk_cy = to_double(key, value);
    else if (key == "disk_r") disk_r = to_double(key, value);
    else if (key == "x_cos") curve.x_cos = to_doubles(key, value);
    else if (key == "x_sin") curve.x_sin = to_doubles(key, value);
    else if (key == "y_cos") curve.y_cos = to_doubles(key, value);
    else if (key == "y_sin") curve.y_sin = to_doubles(key, value);
    else throw std::invalid_argument("unknown config key '" + key + "'");
  }

  if (scaling == "constant") {
    cfg.policy = ScalingPolicy::constant(c > 0.0 ? c : 1.0);
  } else if (scaling == "power") {
    cfg.policy = ScalingPolicy::power(c > 0.0 ? c : 1.0, alpha);
  } else if (scaling == "linear") {
    if (!(c > 0.0)) throw std::invalid_argument("scaling = linear requires a positive c");
    cfg.policy = ScalingPolicy::linear(c);
  } else if (scaling == "linear-optimal") {
    cfg.policy = ScalingPolicy::linear_optimal(cfg.T, cfg.tau);
  } else {
    throw std::invalid_argument("scaling must be constant, power, linear or linear-optimal");
  }

  if (domain_kind == "box") cfg.domain = Domain2D::box(box_hw1, box_hw2, t1, t2);
  else if (domain_kind == "disk") cfg.domain = Domain2D::disk({disk_cx, disk_cy}, disk_r, t1, t2);
  else if (domain_kind == "parametric") cfg.domain = Domain2D::parametric(curve, t1, t2);
  else if (!domain_kind.empty())
    throw std::invalid_argument("domain must be box, disk or parametric");

  return cfg;
}

}  // namespace lsrbf
