// SPDX-License-Identifier: Apache-2.0
//
// mimo-aging: achievable-rate and power-scaling simulator for massive MIMO
// under channel aging, channel prediction and pilot-based MMSE estimation.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "mimo/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

namespace mimo {

namespace {

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double log2_1p(double x) { return std::log1p(x) / M_LN2; }

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001B3ULL;
  }
  return h;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string fmt_short(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> items;
  std::string current;
  std::istringstream in(s);
  while (std::getline(in, current, ',')) {
    const std::string item = trim(current);
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

// ---------- config text parsing -------------------------------------------

struct Entry {
  std::string value;
  int line = 0;
  mutable bool used = false;
};

class RawConfig {
 public:
  RawConfig(const std::string& text, std::string origin)
      : origin_(std::move(origin)) {
    std::istringstream in(text);
    std::string line;
    std::string section;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      line = trim(line);
      if (line.empty()) continue;
      if (line.front() == '[') {
        if (line.back() != ']') fail(line_no, "malformed section header '" + line + "'");
        section = trim(line.substr(1, line.size() - 2));
        if (section.empty()) fail(line_no, "empty section name");
        continue;
      }
      const auto eq = line.find('=');
      if (eq == std::string::npos) {
        fail(line_no, "expected 'key = value', got '" + line + "'");
      }
      const std::string key = trim(line.substr(0, eq));
      const std::string value = trim(line.substr(eq + 1));
      if (key.empty()) fail(line_no, "empty key");
      auto& sec = sections_[section];
      if (sec.count(key)) {
        fail(line_no, "duplicate key '" + key + "'" + where(section));
      }
      sec[key] = Entry{value, line_no};
    }
  }

  [[noreturn]] void fail(int line, const std::string& msg) const {
    std::ostringstream out;
    out << origin_;
    if (line > 0) out << ":" << line;
    out << ": " << msg;
    throw std::invalid_argument(out.str());
  }

  const Entry* find(const std::string& section, const std::string& key) const {
    auto sec = sections_.find(section);
    if (sec == sections_.end()) return nullptr;
    auto it = sec->second.find(key);
    if (it == sec->second.end()) return nullptr;
    it->second.used = true;
    return &it->second;
  }

  std::string get_string(const std::string& section, const std::string& key,
                         const std::string& fallback) const {
    const Entry* e = find(section, key);
    return e ? e->value : fallback;
  }

  double get_double(const std::string& section, const std::string& key,
                    double fallback) const {
    const Entry* e = find(section, key);
    if (!e) return fallback;
    return parse_double(e->value, key, e->line);
  }

  long get_long(const std::string& section, const std::string& key,
                long fallback) const {
    const Entry* e = find(section, key);
    if (!e) return fallback;
    return parse_long(e->value, key, e->line);
  }

  std::uint64_t get_u64(const std::string& section, const std::string& key,
                        std::uint64_t fallback) const {
    const Entry* e = find(section, key);
    if (!e) return fallback;
    try {
      std::size_t pos = 0;
      const std::uint64_t v = std::stoull(e->value, &pos);
      if (pos != e->value.size()) throw std::invalid_argument("");
      return v;
    } catch (...) {
      fail(e->line, "invalid value for '" + key + "': '" + e->value + "'");
    }
  }

  bool get_bool(const std::string& section, const std::string& key,
                bool fallback) const {
    const Entry* e = find(section, key);
    if (!e) return fallback;
    if (e->value == "true") return true;
    if (e->value == "false") return false;
    fail(e->line, "invalid value for '" + key + "' (expected true/false): '" +
                      e->value + "'");
  }

  std::vector<double> get_double_list(const std::string& section,
                                      const std::string& key,
                                      std::vector<double> fallback) const {
    const Entry* e = find(section, key);
    if (!e) return fallback;
    std::vector<double> out;
    for (const auto& item : split_list(e->value)) {
      out.push_back(parse_double(item, key, e->line));
    }
    return out;
  }

  std::vector<int> get_int_list(const std::string& section,
                                const std::string& key,
                                std::vector<int> fallback) const {
    const Entry* e = find(section, key);
    if (!e) return fallback;
    std::vector<int> out;
    for (const auto& item : split_list(e->value)) {
      out.push_back(static_cast<int>(parse_long(item, key, e->line)));
    }
    return out;
  }

  double parse_double(const std::string& text, const std::string& key,
                      int line) const {
    try {
      std::size_t pos = 0;
      const double v = std::stod(text, &pos);
      if (pos != text.size() || !std::isfinite(v)) throw std::invalid_argument("");
      return v;
    } catch (...) {
      fail(line, "invalid value for '" + key + "': '" + text + "'");
    }
  }

  long parse_long(const std::string& text, const std::string& key,
                  int line) const {
    try {
      std::size_t pos = 0;
      const long v = std::stol(text, &pos);
      if (pos != text.size()) throw std::invalid_argument("");
      return v;
    } catch (...) {
      fail(line, "invalid value for '" + key + "': '" + text + "'");
    }
  }

  int line_of(const std::string& section, const std::string& key) const {
    auto sec = sections_.find(section);
    if (sec == sections_.end()) return 0;
    auto it = sec->second.find(key);
    return it == sec->second.end() ? 0 : it->second.line;
  }

  void reject_unused() const {
    const Entry* worst = nullptr;
    std::string where_str;
    for (const auto& [section, entries] : sections_) {
      for (const auto& [key, entry] : entries) {
        if (!entry.used && (worst == nullptr || entry.line < worst->line)) {
          worst = &entry;
          where_str = "unknown key '" + key + "'" + where(section);
        }
      }
    }
    if (worst != nullptr) fail(worst->line, where_str);
  }

 private:
  static std::string where(const std::string& section) {
    return section.empty() ? std::string(" at top level")
                           : " in [" + section + "]";
  }

  std::string origin_;
  std::map<std::string, std::map<std::string, Entry>> sections_;
};

const char* kind_name(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::Uplink: return "uplink";
    case ScenarioKind::Downlink: return "downlink";
    case ScenarioKind::Multicell: return "multicell";
  }
  return "?";
}

}  // namespace

ScenarioConfig parse_config_text(const std::string& text,
                                 const std::string& origin) {
  RawConfig raw(text, origin);
  ScenarioConfig config;

  const std::string mode = raw.get_string("", "mode", "");
  if (mode == "uplink") {
    config.kind = ScenarioKind::Uplink;
  } else if (mode == "downlink") {
    config.kind = ScenarioKind::Downlink;
  } else if (mode == "multicell") {
    config.kind = ScenarioKind::Multicell;
  } else {
    raw.fail(raw.line_of("", "mode"),
             "key 'mode' must be one of uplink/downlink/multicell, got '" + mode + "'");
  }

  config.trials = raw.get_long("", "trials", config.trials);
  if (config.trials < 1) {
    raw.fail(raw.line_of("", "trials"), "key 'trials' must be >= 1");
  }
  config.seed = raw.get_u64("", "seed", config.seed);
  config.threads = static_cast<int>(raw.get_long("", "threads", config.threads));
  if (config.threads < 0) {
    raw.fail(raw.line_of("", "threads"), "key 'threads' must be >= 0");
  }
  config.output_path = raw.get_string("", "out", config.output_path);
  config.drop_file = raw.get_string("", "drop_file", config.drop_file);
  config.drop_seed = raw.get_u64("", "drop_seed", config.drop_seed);

  // sweep = <parameter>: v1, v2, ...
  {
    const std::string sweep = raw.get_string("", "sweep", "");
    const int line = raw.line_of("", "sweep");
    if (sweep.empty()) raw.fail(0, "missing required key 'sweep'");
    const auto colon = sweep.find(':');
    if (colon == std::string::npos) {
      raw.fail(line, "key 'sweep' must look like '<parameter>: v1, v2, ...'");
    }
    config.sweep.parameter = trim(sweep.substr(0, colon));
    for (const auto& item : split_list(sweep.substr(colon + 1))) {
      config.sweep.values.push_back(raw.parse_double(item, "sweep", line));
    }
    if (config.sweep.values.empty()) {
      raw.fail(line, "key 'sweep' needs at least one value");
    }
  }

  const auto parse_families = [&](const std::string& section,
                                  const std::vector<std::string>& allowed,
                                  const std::string& fallback) {
    const std::string value = raw.get_string(section, "families", fallback);
    const int line = raw.line_of(section, "families");
    std::vector<std::string> families = split_list(value);
    for (const auto& f : families) {
      if (std::find(allowed.begin(), allowed.end(), f) == allowed.end()) {
        raw.fail(line, "key 'families' has unrecognized entry '" + f + "'");
      }
    }
    return families;
  };
  const auto has = [](const std::vector<std::string>& v, const char* item) {
    return std::find(v.begin(), v.end(), item) != v.end();
  };

  if (config.kind == ScenarioKind::Uplink) {
    auto& up = config.uplink;
    up.num_antennas = static_cast<int>(raw.get_long("uplink", "M", up.num_antennas));
    up.num_users = static_cast<int>(raw.get_long("uplink", "K", up.num_users));
    up.training_len = static_cast<int>(raw.get_long("uplink", "tau", up.num_users));
    up.p_u_db = raw.get_double("uplink", "p_u_db", up.p_u_db);
    up.fd_ts = raw.get_double("uplink", "fd_ts", up.fd_ts);
    up.pred_orders = raw.get_int_list("uplink", "pred_orders", {});
    up.e_u_db = raw.get_double("uplink", "E_u_db", up.e_u_db);
    up.scale_power = raw.get_bool("uplink", "scale_power", up.scale_power);
    up.gamma = raw.get_double("uplink", "gamma", up.gamma);
    up.current_csi = raw.get_bool("uplink", "current_csi", up.current_csi);
    up.perfect_csi = raw.get_bool("uplink", "perfect_csi", up.perfect_csi);
    up.betas = raw.get_double_list("uplink", "betas", {});
    const long frame = raw.get_long("uplink", "T", 0);
    if (frame != 0) up.frame_len = static_cast<int>(frame);

    const std::string detectors = raw.get_string("uplink", "detectors", "mrc, zf");
    up.detectors.clear();
    for (const auto& d : split_list(detectors)) {
      if (d == "mrc") {
        up.detectors.push_back(DetectorKind::Mrc);
      } else if (d == "zf") {
        up.detectors.push_back(DetectorKind::Zf);
      } else {
        raw.fail(raw.line_of("uplink", "detectors"),
                 "key 'detectors' has unrecognized entry '" + d + "'");
      }
    }
    if (up.detectors.empty()) {
      raw.fail(raw.line_of("uplink", "detectors"), "key 'detectors' must not be empty");
    }

    const auto families = parse_families("uplink", {"mc", "bound", "limit"}, "mc, bound");
    up.family_mc = has(families, "mc");
    up.family_bound = has(families, "bound");
    up.family_limit = has(families, "limit");

    if (up.num_antennas < 1) raw.fail(raw.line_of("uplink", "M"), "key 'M' must be >= 1");
    if (up.num_users < 1) raw.fail(raw.line_of("uplink", "K"), "key 'K' must be >= 1");
    if (up.training_len < up.num_users) {
      raw.fail(raw.line_of("uplink", "tau"), "key 'tau' must be >= K");
    }
    if (up.fd_ts < 0.0) raw.fail(raw.line_of("uplink", "fd_ts"), "key 'fd_ts' must be >= 0");
    for (int p : up.pred_orders) {
      if (p < 0) raw.fail(raw.line_of("uplink", "pred_orders"), "key 'pred_orders' must be >= 0");
    }
    if (up.scale_power && !(up.gamma > 0.0)) {
      raw.fail(raw.line_of("uplink", "gamma"), "key 'gamma' must be > 0 when scale_power is set");
    }
    if (!up.betas.empty() && static_cast<int>(up.betas.size()) != up.num_users) {
      raw.fail(raw.line_of("uplink", "betas"), "key 'betas' must list exactly K values");
    }
    for (double b : up.betas) {
      if (!(b > 0.0)) raw.fail(raw.line_of("uplink", "betas"), "key 'betas' entries must be > 0");
    }
    if (up.frame_len && *up.frame_len <= up.training_len) {
      raw.fail(raw.line_of("uplink", "T"), "key 'T' must exceed tau");
    }
    const bool has_zf = std::find(up.detectors.begin(), up.detectors.end(),
                                  DetectorKind::Zf) != up.detectors.end();
    if (has_zf && config.sweep.parameter != "M" && up.num_antennas < up.num_users) {
      raw.fail(raw.line_of("uplink", "M"),
               "key 'M' must be >= K for the zf detector");
    }
    if (config.sweep.parameter != "p_u_db" && config.sweep.parameter != "fd_ts" &&
        config.sweep.parameter != "M") {
      raw.fail(raw.line_of("", "sweep"),
               "sweep parameter '" + config.sweep.parameter +
                   "' is not recognized for uplink (use p_u_db, fd_ts or M)");
    }
    if (config.sweep.parameter == "M") {
      for (double v : config.sweep.values) {
        if (v < 1.0 || v != std::floor(v)) {
          raw.fail(raw.line_of("", "sweep"), "sweep over 'M' needs positive integers");
        }
        if (has_zf && v < up.num_users) {
          raw.fail(raw.line_of("", "sweep"),
                   "sweep over 'M' has a value below K, invalid for the zf detector");
        }
      }
    }
  } else if (config.kind == ScenarioKind::Downlink) {
    auto& dl = config.downlink;
    dl.num_antennas = static_cast<int>(raw.get_long("downlink", "M", dl.num_antennas));
    dl.num_users = static_cast<int>(raw.get_long("downlink", "K", dl.num_users));
    dl.training_len = static_cast<int>(raw.get_long("downlink", "tau", dl.num_users));
    dl.p_p_db = raw.get_double("downlink", "p_p_db", dl.p_p_db);
    dl.p_b_db = raw.get_double("downlink", "p_b_db", dl.p_b_db);
    dl.fd_ts = raw.get_double("downlink", "fd_ts", dl.fd_ts);
    dl.e_b_db = raw.get_double("downlink", "E_b_db", dl.e_b_db);
    dl.e_u_db = raw.get_double("downlink", "E_u_db", dl.e_u_db);
    dl.beta_exp = raw.get_double("downlink", "beta_exp", dl.beta_exp);
    dl.scale_power = raw.get_bool("downlink", "scale_power", dl.scale_power);
    dl.betas = raw.get_double_list("downlink", "betas", {});

    const auto families = parse_families("downlink", {"cf", "mc", "limit"}, "cf");
    dl.family_cf = has(families, "cf");
    dl.family_mc = has(families, "mc");
    dl.family_limit = has(families, "limit");

    if (dl.num_antennas < 1) raw.fail(raw.line_of("downlink", "M"), "key 'M' must be >= 1");
    if (dl.num_users < 1) raw.fail(raw.line_of("downlink", "K"), "key 'K' must be >= 1");
    if (dl.training_len < dl.num_users) {
      raw.fail(raw.line_of("downlink", "tau"), "key 'tau' must be >= K");
    }
    if (dl.fd_ts < 0.0) raw.fail(raw.line_of("downlink", "fd_ts"), "key 'fd_ts' must be >= 0");
    if (!(dl.beta_exp > 0.0)) {
      raw.fail(raw.line_of("downlink", "beta_exp"), "key 'beta_exp' must be > 0");
    }
    if (!dl.betas.empty() && static_cast<int>(dl.betas.size()) != dl.num_users) {
      raw.fail(raw.line_of("downlink", "betas"), "key 'betas' must list exactly K values");
    }
    for (double b : dl.betas) {
      if (!(b > 0.0)) raw.fail(raw.line_of("downlink", "betas"), "key 'betas' entries must be > 0");
    }
    if (config.sweep.parameter != "p_b_db" && config.sweep.parameter != "fd_ts" &&
        config.sweep.parameter != "M") {
      raw.fail(raw.line_of("", "sweep"),
               "sweep parameter '" + config.sweep.parameter +
                   "' is not recognized for downlink (use p_b_db, fd_ts or M)");
    }
    if (config.sweep.parameter == "M") {
      for (double v : config.sweep.values) {
        if (v < 1.0 || v != std::floor(v)) {
          raw.fail(raw.line_of("", "sweep"), "sweep over 'M' needs positive integers");
        }
      }
    }
  } else {
    auto& cell = config.multicell;
    cell.num_cells = static_cast<int>(raw.get_long("multicell", "C", cell.num_cells));
    cell.num_users = static_cast<int>(raw.get_long("multicell", "K", cell.num_users));
    cell.training_len = static_cast<int>(raw.get_long("multicell", "tau", cell.num_users));
    cell.beta_same = raw.get_double("multicell", "beta_same", cell.beta_same);
    cell.beta_cross = raw.get_double("multicell", "beta_cross", cell.beta_cross);
    cell.e_u_db = raw.get_double("multicell", "E_u_db", cell.e_u_db);
    cell.fd_ts = raw.get_double("multicell", "fd_ts", cell.fd_ts);
    cell.gammas = raw.get_double_list("multicell", "gammas", cell.gammas);
    cell.pred_orders = raw.get_int_list("multicell", "pred_orders", {});
    cell.current_csi = raw.get_bool("multicell", "current_csi", cell.current_csi);

    const auto families = parse_families("multicell", {"rate", "limit"}, "rate");
    cell.family_rate = has(families, "rate");
    cell.family_limit = has(families, "limit");

    if (cell.num_cells < 1) raw.fail(raw.line_of("multicell", "C"), "key 'C' must be >= 1");
    if (cell.num_users < 1) raw.fail(raw.line_of("multicell", "K"), "key 'K' must be >= 1");
    if (cell.training_len < cell.num_users) {
      raw.fail(raw.line_of("multicell", "tau"), "key 'tau' must be >= K");
    }
    if (!(cell.beta_same > 0.0) || !(cell.beta_cross > 0.0)) {
      raw.fail(raw.line_of("multicell", "beta_same"),
               "keys 'beta_same'/'beta_cross' must be > 0");
    }
    for (double g : cell.gammas) {
      if (!(g > 0.0)) raw.fail(raw.line_of("multicell", "gammas"), "key 'gammas' entries must be > 0");
    }
    for (int p : cell.pred_orders) {
      if (p < 0) raw.fail(raw.line_of("multicell", "pred_orders"), "key 'pred_orders' must be >= 0");
    }
    if (config.sweep.parameter != "M") {
      raw.fail(raw.line_of("", "sweep"),
               "sweep parameter '" + config.sweep.parameter +
                   "' is not recognized for multicell (use M)");
    }
    for (double v : config.sweep.values) {
      if (v < 1.0 || v != std::floor(v)) {
        raw.fail(raw.line_of("", "sweep"), "sweep over 'M' needs positive integers");
      }
    }
  }

  raw.reject_unused();
  return config;
}

ScenarioConfig parse_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("parse_config: cannot open " + path);
  }
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config_text(text.str(), path);
}

// ---------- serialization ---------------------------------------------------

namespace {

std::string join_doubles(const std::vector<double>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    out += fmt(values[i]);
  }
  return out;
}

std::string join_ints(const std::vector<int>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ", ";
    out += std::to_string(values[i]);
  }
  return out;
}

}  // namespace

std::string scenario_to_text(const ScenarioConfig& config) {
  std::ostringstream out;
  out << "mode = " << kind_name(config.kind) << "\n";
  out << "trials = " << config.trials << "\n";
  out << "seed = " << config.seed << "\n";
  out << "out = " << config.output_path << "\n";
  if (!config.drop_file.empty()) out << "drop_file = " << config.drop_file << "\n";
  out << "drop_seed = " << config.drop_seed << "\n";
  out << "sweep = " << config.sweep.parameter << ": "
      << join_doubles(config.sweep.values) << "\n";
  out << "\n";

  if (config.kind == ScenarioKind::Uplink) {
    const auto& up = config.uplink;
    out << "[uplink]\n";
    out << "M = " << up.num_antennas << "\n";
    out << "K = " << up.num_users << "\n";
    out << "tau = " << up.training_len << "\n";
    out << "p_u_db = " << fmt(up.p_u_db) << "\n";
    out << "fd_ts = " << fmt(up.fd_ts) << "\n";
    std::string detectors;
    for (auto d : up.detectors) {
      if (!detectors.empty()) detectors += ", ";
      detectors += d == DetectorKind::Mrc ? "mrc" : "zf";
    }
    out << "detectors = " << detectors << "\n";
    std::string families;
    if (up.family_mc) families += "mc";
    if (up.family_bound) families += families.empty() ? "bound" : ", bound";
    if (up.family_limit) families += families.empty() ? "limit" : ", limit";
    out << "families = " << families << "\n";
    if (!up.pred_orders.empty()) out << "pred_orders = " << join_ints(up.pred_orders) << "\n";
    if (up.current_csi) out << "current_csi = true\n";
    if (up.perfect_csi) out << "perfect_csi = true\n";
    if (!up.betas.empty()) out << "betas = " << join_doubles(up.betas) << "\n";
    out << "E_u_db = " << fmt(up.e_u_db) << "\n";
    if (up.scale_power) out << "scale_power = true\n";
    out << "gamma = " << fmt(up.gamma) << "\n";
    if (up.frame_len) out << "T = " << *up.frame_len << "\n";
  } else if (config.kind == ScenarioKind::Downlink) {
    const auto& dl = config.downlink;
    out << "[downlink]\n";
    out << "M = " << dl.num_antennas << "\n";
    out << "K = " << dl.num_users << "\n";
    out << "tau = " << dl.training_len << "\n";
    out << "p_p_db = " << fmt(dl.p_p_db) << "\n";
    out << "p_b_db = " << fmt(dl.p_b_db) << "\n";
    out << "fd_ts = " << fmt(dl.fd_ts) << "\n";
    out << "E_b_db = " << fmt(dl.e_b_db) << "\n";
    out << "E_u_db = " << fmt(dl.e_u_db) << "\n";
    out << "beta_exp = " << fmt(dl.beta_exp) << "\n";
    if (dl.scale_power) out << "scale_power = true\n";
    std::string families;
    if (dl.family_cf) families += "cf";
    if (dl.family_mc) families += families.empty() ? "mc" : ", mc";
    if (dl.family_limit) families += families.empty() ? "limit" : ", limit";
    out << "families = " << families << "\n";
    if (!dl.betas.empty()) out << "betas = " << join_doubles(dl.betas) << "\n";
  } else {
    const auto& cell = config.multicell;
    out << "[multicell]\n";
    out << "C = " << cell.num_cells << "\n";
    out << "K = " << cell.num_users << "\n";
    out << "tau = " << cell.training_len << "\n";
    out << "beta_same = " << fmt(cell.beta_same) << "\n";
    out << "beta_cross = " << fmt(cell.beta_cross) << "\n";
    out << "E_u_db = " << fmt(cell.e_u_db) << "\n";
    out << "fd_ts = " << fmt(cell.fd_ts) << "\n";
    out << "gammas = " << join_doubles(cell.gammas) << "\n";
    if (!cell.pred_orders.empty()) {
      out << "pred_orders = " << join_ints(cell.pred_orders) << "\n";
    }
    if (cell.current_csi) out << "current_csi = true\n";
    std::string families;
    if (cell.family_rate) families += "rate";
    if (cell.family_limit) families += families.empty() ? "limit" : ", limit";
    out << "families = " << families << "\n";
  }
  return out.str();
}

// ---------- presets ---------------------------------------------------------

namespace {

struct Preset {
  const char* name;
  const char* description;
  const char* text;
};

const Preset kPresets[] = {
    {"fig1",
     "fig1: uplink sum-rate vs p_u; K=10, M=128, fD Ts=0.1, p_u sweep -10..20 dB; "
     "Monte Carlo + bounds for MRC/ZF, aged CSI and p=1 prediction",
     R"(mode = uplink
trials = 10000
seed = 17011
drop_seed = 101
sweep = p_u_db: -10, -5, 0, 5, 10, 15, 20
out = fig1.csv

[uplink]
M = 128
K = 10
tau = 10
fd_ts = 0.1
detectors = mrc, zf
families = mc, bound
pred_orders = 1
)"},
    {"fig2",
     "fig2: K=10, M=128, p_u=10 dB, fD Ts sweep; sum-rate bounds for current "
     "CSI, aged CSI, prediction (p=1,2) and perfect CSI, MRC/ZF",
     R"(mode = uplink
trials = 1
seed = 17022
drop_seed = 101
sweep = fd_ts: 0.02, 0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45, 0.5
out = fig2.csv

[uplink]
M = 128
K = 10
tau = 10
p_u_db = 10
detectors = mrc, zf
families = bound
pred_orders = 1, 2
current_csi = true
perfect_csi = true
)"},
    {"fig3",
     "fig3: uplink bound sum-rate vs M under p_u=E_u/sqrt(M), E_u=15 dB, K=10, "
     "fD Ts=0.1, beta=1; aged and p=1,2 curves with their large-M limits",
     R"(mode = uplink
trials = 1
seed = 17033
sweep = M: 64, 128, 256, 512, 1024, 2048, 4096, 8192, 16384, 32768, 65536, 131072, 262144, 524288, 1048576
out = fig3.csv

[uplink]
M = 128
K = 10
tau = 10
fd_ts = 0.1
betas = 1, 1, 1, 1, 1, 1, 1, 1, 1, 1
scale_power = true
gamma = 0.5
E_u_db = 15
detectors = mrc, zf
families = bound, limit
pred_orders = 1, 2
)"},
    {"fig4",
     "fig4: downlink, K=10, M=64, p_p=10 dB, fD Ts=0.1; MRT closed-form rate "
     "vs moment-oracle Monte Carlo over a p_b sweep",
     R"(mode = downlink
trials = 20000
seed = 17044
drop_seed = 101
sweep = p_b_db: -10, -5, 0, 5, 10, 15, 20
out = fig4.csv

[downlink]
M = 64
K = 10
tau = 10
p_p_db = 10
fd_ts = 0.1
families = cf, mc
)"},
    {"fig5",
     "fig5: downlink sum-rate vs M, K=5, fD Ts=0.1, p_p=tau*E_u/sqrt(M) with "
     "E_u=3 dB, p_b=E_b/sqrt(M) with E_b=10 dB; closed form + limit",
     R"(mode = downlink
trials = 1
seed = 17055
sweep = M: 64, 128, 256, 512, 1024, 2048, 4096, 8192, 16384, 32768, 65536, 131072, 262144, 524288, 1048576
out = fig5.csv

[downlink]
M = 64
K = 5
tau = 5
fd_ts = 0.1
E_u_db = 3
E_b_db = 10
beta_exp = 0.5
scale_power = true
betas = 1, 1, 1, 1, 1
families = cf, limit
)"},
    {"fig6",
     "fig6: multicell uplink sum-rate vs M, aged CSI, K=10, C=7, fD Ts=0.1, "
     "E_u=15 dB, p_u=E_u/M^gamma for gamma in {0.3, 0.5, 0.7}; with "
     "current-CSI reference and limits",
     R"(mode = multicell
trials = 1
seed = 17066
sweep = M: 64, 256, 1024, 4096, 16384, 65536, 262144, 1048576, 4194304, 16777216
out = fig6.csv

[multicell]
C = 7
K = 10
tau = 10
beta_same = 1.0
beta_cross = 0.32
fd_ts = 0.1
E_u_db = 15
gammas = 0.3, 0.5, 0.7
current_csi = true
families = rate, limit
)"},
    {"fig7",
     "fig7: multicell uplink sum-rate vs M with prediction (p=1,2), K=10, C=7, "
     "fD Ts=0.1, E_u=15 dB, gamma in {0.3, 0.5, 0.7}; with limits",
     R"(mode = multicell
trials = 1
seed = 17077
sweep = M: 64, 256, 1024, 4096, 16384, 65536, 262144, 1048576, 4194304, 16777216
out = fig7.csv

[multicell]
C = 7
K = 10
tau = 10
beta_same = 1.0
beta_cross = 0.32
fd_ts = 0.1
E_u_db = 15
gammas = 0.3, 0.5, 0.7
pred_orders = 1, 2
families = rate, limit
)"},
};

}  // namespace

std::vector<std::string> preset_names() {
  std::vector<std::string> names;
  for (const auto& p : kPresets) names.emplace_back(p.name);
  return names;
}

ScenarioConfig preset(const std::string& name) {
  for (const auto& p : kPresets) {
    if (name == p.name) return parse_config_text(p.text, "preset:" + name);
  }
  throw std::invalid_argument("unknown preset '" + name + "' (see list-presets)");
}

std::string list_presets() {
  std::string out;
  for (const auto& p : kPresets) {
    out += p.description;
    out += "\n";
  }
  return out;
}

// ---------- scenario runner -------------------------------------------------

namespace {

FadingProfile drop_or_load(const ScenarioConfig& config, int num_users) {
  if (!config.drop_file.empty() && std::filesystem::exists(config.drop_file)) {
    FadingProfile profile = FadingProfile::load(config.drop_file);
    if (profile.num_users() != num_users) {
      throw std::runtime_error("drop file " + config.drop_file + " has " +
                               std::to_string(profile.num_users()) +
                               " users, config expects " + std::to_string(num_users));
    }
    return profile;
  }
  Rng rng(config.drop_seed);
  FadingProfile profile = drop_users(num_users, CellGeometry{}, rng);
  if (!config.drop_file.empty()) profile.save(config.drop_file);
  return profile;
}

std::uint64_t curve_seed(const ScenarioConfig& config, std::size_t point,
                         const std::string& curve_id) {
  return mix_seed(config.seed, point, fnv1a(curve_id));
}

double overhead_factor(const UplinkScenario& up) {
  if (!up.frame_len) return 1.0;
  return (*up.frame_len - up.training_len) / static_cast<double>(*up.frame_len);
}

std::vector<double> wiener_thetas(const FadingProfile& profile, int order,
                                  double alpha, double pilot_power) {
  std::vector<double> thetas;
  thetas.reserve(profile.betas.size());
  for (double beta : profile.betas) {
    thetas.push_back(wiener_coefficients(order, alpha, beta, pilot_power).theta);
  }
  return thetas;
}

void run_uplink_point(const ScenarioConfig& config, const FadingProfile& profile,
                      std::size_t point, double value,
                      std::vector<SweepRow>& rows) {
  const auto& up = config.uplink;
  SystemConfig sys;
  sys.num_antennas = up.num_antennas;
  sys.num_users = up.num_users;
  sys.training_len = up.training_len;
  sys.norm_doppler = up.fd_ts;
  sys.user_power = db_to_linear(up.p_u_db);
  sys.scaling_exponent = up.gamma;
  sys.power_budget = db_to_linear(up.e_u_db);
  sys.frame_len = up.frame_len;

  if (config.sweep.parameter == "p_u_db") {
    sys.user_power = db_to_linear(value);
  } else if (config.sweep.parameter == "fd_ts") {
    sys.norm_doppler = value;
  } else if (config.sweep.parameter == "M") {
    sys.num_antennas = static_cast<int>(value);
  }
  if (up.scale_power) {
    sys.user_power = sys.power_budget / std::pow(sys.num_antennas, sys.scaling_exponent);
  }

  const double factor = overhead_factor(up);
  const AgingParams aging = jakes_alpha(sys.norm_doppler);
  SystemConfig current = sys;
  current.norm_doppler = 0.0;  // alpha = 1

  for (DetectorKind det : up.detectors) {
    const std::string det_name = det == DetectorKind::Mrc ? "mrc" : "zf";
    const bool mrc = det == DetectorKind::Mrc;
    const auto bound_aged = mrc ? mrc_bound_aged : zf_bound_aged;
    const auto bound_pred = mrc ? mrc_bound_predicted : zf_bound_predicted;

    if (up.family_mc) {
      const std::string id = det_name + "_aged_mc";
      const RateReport report =
          monte_carlo_rate(sys, profile, det, CsiMode::Aged, config.trials,
                           curve_seed(config, point, id), config.threads);
      rows.push_back({value, id, report.sum_rate, report.sum_rate_std_err});
    }
    if (up.family_bound) {
      double total = 0.0;
      for (int k = 0; k < sys.num_users; ++k) total += bound_aged(sys, profile, k);
      rows.push_back({value, det_name + "_aged_bound", factor * total, 0.0});
    }
    if (up.family_limit) {
      double total = 0.0;
      for (double beta : profile.betas) {
        total += scaling_limit_aged(aging.alpha, sys.training_len,
                                    sys.power_budget, beta);
      }
      rows.push_back({value, det_name + "_aged_limit", factor * total, 0.0});
    }

    for (int order : up.pred_orders) {
      const std::string tag = det_name + "_pred" + std::to_string(order);
      SystemConfig pred_sys = sys;
      pred_sys.pred_order = order;
      if (up.family_mc) {
        const std::string id = tag + "_mc";
        const RateReport report = monte_carlo_rate(
            pred_sys, profile, det, CsiMode::Predicted, config.trials,
            curve_seed(config, point, id), config.threads);
        rows.push_back({value, id, report.sum_rate, report.sum_rate_std_err});
      }
      if (up.family_bound || up.family_limit) {
        const auto thetas =
            wiener_thetas(profile, order, aging.alpha, pred_sys.pilot_power());
        if (up.family_bound) {
          double total = 0.0;
          for (int k = 0; k < sys.num_users; ++k) {
            total += bound_pred(pred_sys, profile, thetas, k);
          }
          rows.push_back({value, tag + "_bound", factor * total, 0.0});
        }
        if (up.family_limit) {
          double total = 0.0;
          for (double beta : profile.betas) {
            total += scaling_limit_predicted(aging.alpha, sys.training_len,
                                             sys.power_budget, beta, order);
          }
          rows.push_back({value, tag + "_limit", factor * total, 0.0});
        }
      }
    }

    if (up.current_csi) {
      double total = 0.0;
      for (int k = 0; k < sys.num_users; ++k) total += bound_aged(current, profile, k);
      rows.push_back({value, det_name + "_current_bound", factor * total, 0.0});
    }
    if (up.perfect_csi) {
      double total = 0.0;
      for (int k = 0; k < sys.num_users; ++k) {
        total += bound_pred(current, profile, profile.betas, k);
      }
      rows.push_back({value, det_name + "_perfect_bound", factor * total, 0.0});
    }
  }
}

void run_downlink_point(const ScenarioConfig& config, const std::vector<double>& betas,
                        const std::vector<DownlinkMoments>* moments,
                        std::size_t point, double value,
                        std::vector<SweepRow>& rows) {
  const auto& dl = config.downlink;
  DownlinkConfig cfg;
  cfg.num_antennas = dl.num_antennas;
  cfg.num_users = dl.num_users;
  cfg.betas = betas;
  cfg.bs_power_budget = db_to_linear(dl.e_b_db);
  cfg.bs_scaling_exponent = dl.beta_exp;
  cfg.pilot_power = db_to_linear(dl.p_p_db);
  cfg.bs_power = db_to_linear(dl.p_b_db);
  double fd_ts = dl.fd_ts;

  if (config.sweep.parameter == "p_b_db") {
    cfg.bs_power = db_to_linear(value);
  } else if (config.sweep.parameter == "fd_ts") {
    fd_ts = value;
  } else if (config.sweep.parameter == "M") {
    cfg.num_antennas = static_cast<int>(value);
  }
  cfg.alpha = jakes_alpha(fd_ts).alpha;
  const double power_budget = db_to_linear(dl.e_u_db);
  if (dl.scale_power) {
    cfg.pilot_power = dl.training_len * power_budget / std::sqrt(cfg.num_antennas);
    cfg.bs_power = cfg.bs_power_budget /
                   std::pow(cfg.num_antennas, cfg.bs_scaling_exponent);
  }

  if (dl.family_cf) {
    double total = 0.0;
    for (int k = 0; k < cfg.num_users; ++k) {
      total += downlink_rate_closed_form(cfg, k);
    }
    rows.push_back({value, "dl_cf", total, 0.0});
  }
  if (dl.family_limit) {
    double total = 0.0;
    for (int k = 0; k < cfg.num_users; ++k) {
      total += downlink_scaling_limit(cfg.bs_power_budget, power_budget,
                                      dl.training_len, cfg.alpha, cfg.betas,
                                      cfg.bs_scaling_exponent, cfg.num_antennas, k);
    }
    rows.push_back({value, "dl_limit", total, 0.0});
  }
  if (dl.family_mc) {
    const double lambda = mrt_lambda(cfg);
    const double noise_term = 1.0 / (cfg.bs_power * lambda * lambda);
    std::vector<DownlinkMoments> local;
    if (moments == nullptr) {
      for (int k = 0; k < cfg.num_users; ++k) {
        local.push_back(downlink_moment_oracle(
            cfg, config.trials, mix_seed(config.seed, point, 0x5000 + k), k,
            config.threads));
      }
      moments = &local;
    }
    double total = 0.0;
    std::size_t batch_count = (*moments)[0].batch_mean.size();
    std::vector<double> batch_totals(batch_count, 0.0);
    for (int k = 0; k < cfg.num_users; ++k) {
      const DownlinkMoments& mom = (*moments)[static_cast<std::size_t>(k)];
      double interference = 0.0;
      for (double v : mom.interference) interference += v;
      const double mean_sq = mom.mean_gain * mom.mean_gain;
      total += log2_1p(mean_sq / (mom.gain_variance + interference + noise_term));
      for (std::size_t b = 0; b < batch_count; ++b) {
        double b_interf = 0.0;
        for (double v : mom.batch_interference[b]) b_interf += v;
        const double b_var = mom.batch_second_moment[b] - std::norm(mom.batch_mean[b]);
        const double b_mean_sq = mom.batch_mean[b].real() * mom.batch_mean[b].real();
        batch_totals[b] += log2_1p(b_mean_sq / (b_var + b_interf + noise_term));
      }
    }
    double se = 0.0;
    if (batch_count > 1) {
      double mean = 0.0;
      for (double v : batch_totals) mean += v;
      mean /= static_cast<double>(batch_count);
      double sq = 0.0;
      for (double v : batch_totals) sq += (v - mean) * (v - mean);
      se = std::sqrt(sq / (batch_count - 1.0) / batch_count);
    }
    rows.push_back({value, "dl_mc", total, se});
  }
}

void run_multicell_point(const ScenarioConfig& config, std::size_t point,
                         double value, std::vector<SweepRow>& rows) {
  (void)point;
  const auto& cell = config.multicell;
  for (double gamma : cell.gammas) {
    MultiCellConfig cfg;
    cfg.num_cells = cell.num_cells;
    cfg.num_users = cell.num_users;
    cfg.training_len = cell.training_len;
    cfg.beta_same = cell.beta_same;
    cfg.beta_cross = cell.beta_cross;
    cfg.scaling_exponent = gamma;
    cfg.power_budget = db_to_linear(cell.e_u_db);
    cfg.alpha = jakes_alpha(cell.fd_ts).alpha;
    const std::string suffix = "_g" + fmt_short(gamma);
    const double users = cfg.num_users;

    const auto limit_of = [&](const MultiCellConfig& c, MultiCellCsi mode) {
      if (gamma > 0.5) return 0.0;  // over-scaled power, rate vanishes
      const MultiCellRegime regime = gamma == 0.5 ? MultiCellRegime::GammaHalf
                                                  : MultiCellRegime::GammaSubHalf;
      return users * multicell_limit(c, regime, mode);
    };

    if (cell.family_rate) {
      rows.push_back({value, "aged" + suffix,
                      users * multicell_rate_aged(cfg, value), 0.0});
    }
    if (cell.family_limit) {
      rows.push_back({value, "aged" + suffix + "_limit",
                      limit_of(cfg, MultiCellCsi::Aged), 0.0});
    }
    if (cell.current_csi) {
      MultiCellConfig current = cfg;
      current.alpha = 1.0;
      if (cell.family_rate) {
        rows.push_back({value, "current" + suffix,
                        users * multicell_rate_aged(current, value), 0.0});
      }
      if (cell.family_limit) {
        rows.push_back({value, "current" + suffix + "_limit",
                        limit_of(current, MultiCellCsi::Aged), 0.0});
      }
    }
    for (int order : cell.pred_orders) {
      MultiCellConfig pred = cfg;
      pred.pred_order = order;
      const std::string tag = "pred" + std::to_string(order) + suffix;
      if (cell.family_rate) {
        rows.push_back({value, tag,
                        users * multicell_rate_predicted(pred, value), 0.0});
      }
      if (cell.family_limit) {
        rows.push_back({value, tag + "_limit",
                        limit_of(pred, MultiCellCsi::Predicted), 0.0});
      }
    }
  }
}

void write_rows_csv(const std::vector<SweepRow>& rows, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("run_scenario: cannot open output file " + path);
  }
  out << "sweep_value,curve_id,value,std_err\n";
  for (const auto& row : rows) {
    out << fmt(row.sweep_value) << "," << row.curve_id << "," << fmt(row.value)
        << "," << fmt(row.std_err) << "\n";
  }
  if (!out) {
    throw std::runtime_error("run_scenario: write failed for " + path);
  }
}

}  // namespace

FadingProfile resolve_profile(const ScenarioConfig& config) {
  if (config.kind == ScenarioKind::Uplink && !config.uplink.betas.empty()) {
    return FadingProfile::from_betas(config.uplink.betas);
  }
  if (config.kind == ScenarioKind::Downlink && !config.downlink.betas.empty()) {
    return FadingProfile::from_betas(config.downlink.betas);
  }
  const int users = config.kind == ScenarioKind::Uplink
                        ? config.uplink.num_users
                        : config.downlink.num_users;
  return drop_or_load(config, users);
}

std::vector<SweepRow> run_scenario(const ScenarioConfig& config) {
  std::vector<SweepRow> rows;

  if (config.kind == ScenarioKind::Uplink) {
    const FadingProfile profile = resolve_profile(config);
    for (std::size_t i = 0; i < config.sweep.values.size(); ++i) {
      const double value = config.sweep.values[i];
      try {
        run_uplink_point(config, profile, i, value, rows);
      } catch (const std::exception& err) {
        throw std::runtime_error("sweep point " + config.sweep.parameter + " = " +
                                 fmt_short(value) + ": " + err.what());
      }
    }
  } else if (config.kind == ScenarioKind::Downlink) {
    const FadingProfile profile = resolve_profile(config);
    // The downlink moments do not depend on the BS power, so a p_b sweep
    // reuses one oracle run per user.
    std::vector<DownlinkMoments> shared;
    const bool hoist = config.downlink.family_mc &&
                       config.sweep.parameter == "p_b_db";
    if (hoist) {
      DownlinkConfig cfg;
      cfg.num_antennas = config.downlink.num_antennas;
      cfg.num_users = config.downlink.num_users;
      cfg.betas = profile.betas;
      cfg.pilot_power = db_to_linear(config.downlink.p_p_db);
      cfg.bs_power = 1.0;
      cfg.alpha = jakes_alpha(config.downlink.fd_ts).alpha;
      for (int k = 0; k < cfg.num_users; ++k) {
        shared.push_back(downlink_moment_oracle(
            cfg, config.trials, mix_seed(config.seed, 0, 0x5000 + k), k,
            config.threads));
      }
    }
    for (std::size_t i = 0; i < config.sweep.values.size(); ++i) {
      const double value = config.sweep.values[i];
      try {
        run_downlink_point(config, profile.betas, hoist ? &shared : nullptr, i,
                           value, rows);
      } catch (const std::exception& err) {
        throw std::runtime_error("sweep point " + config.sweep.parameter + " = " +
                                 fmt_short(value) + ": " + err.what());
      }
    }
  } else {
    for (std::size_t i = 0; i < config.sweep.values.size(); ++i) {
      const double value = config.sweep.values[i];
      try {
        run_multicell_point(config, i, value, rows);
      } catch (const std::exception& err) {
        throw std::runtime_error("sweep point " + config.sweep.parameter + " = " +
                                 fmt_short(value) + ": " + err.what());
      }
    }
  }

  std::stable_sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
    if (a.sweep_value != b.sweep_value) return a.sweep_value < b.sweep_value;
    return a.curve_id < b.curve_id;
  });

  write_rows_csv(rows, config.output_path);
  std::ofstream meta(config.output_path + ".meta", std::ios::binary);
  if (!meta) {
    throw std::runtime_error("run_scenario: cannot open sidecar for " +
                             config.output_path);
  }
  meta << scenario_to_text(config);
  return rows;
}

}  // namespace mimo
