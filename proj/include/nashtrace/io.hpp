#pragma once

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "nashtrace/engine.hpp"
#include "nashtrace/experiments.hpp"
#include "nashtrace/game.hpp"
#include "nashtrace/metrics.hpp"
#include "nashtrace/projection.hpp"
#include "nashtrace/strategy.hpp"

namespace nashtrace {

/// Problem with an input file: missing, malformed, or violating a game or
/// profile invariant. The message names the offending field.
struct GameFileError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

// full-precision decimal form; round-trips bit-exactly through strtod
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline nlohmann::json parse_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw GameFileError("cannot open file \"" + path + "\"");
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw GameFileError("file \"" + path + "\" is not valid JSON: " + e.what());
  }
  return j;
}

inline std::vector<std::vector<double>> read_matrix(const nlohmann::json& j,
                                                    const std::string& field) {
  if (!j.is_array() || j.empty()) {
    throw GameFileError("field \"" + field + "\" must be a non-empty array of rows");
  }
  std::vector<std::vector<double>> m;
  for (const auto& row : j) {
    if (!row.is_array() || row.empty()) {
      throw GameFileError("field \"" + field + "\" has a non-array or empty row");
    }
    std::vector<double> r;
    for (const auto& v : row) {
      if (!v.is_number()) {
        throw GameFileError("field \"" + field + "\" has a non-numeric entry");
      }
      const double x = v.get<double>();
      if (!std::isfinite(x)) {
        throw GameFileError("field \"" + field + "\" has a non-finite entry");
      }
      r.push_back(x);
    }
    m.push_back(std::move(r));
  }
  return m;
}

}  // namespace detail

/// Parses a game from JSON. Two accepted forms:
///   {"shape":[g1,...,gn], "payoffs":[[tensor p1 flattened row-major], ...]}
///   {"A":[[...]], "B":[[...]]}   (two-player bimatrix shortcut)
inline Game parse_game_json(const nlohmann::json& j) {
  if (!j.is_object()) {
    throw GameFileError("game file must contain a JSON object");
  }
  if (j.contains("A") || j.contains("B")) {
    if (!j.contains("A") || !j.contains("B")) {
      throw GameFileError("bimatrix form needs both \"A\" and \"B\"");
    }
    auto a = detail::read_matrix(j.at("A"), "A");
    auto b = detail::read_matrix(j.at("B"), "B");
    try {
      return Game::bimatrix(a, b);
    } catch (const std::invalid_argument& e) {
      throw GameFileError(std::string("bad bimatrix: ") + e.what());
    }
  }
  if (!j.contains("shape")) {
    throw GameFileError("game file is missing field \"shape\"");
  }
  if (!j.contains("payoffs")) {
    throw GameFileError("game file is missing field \"payoffs\"");
  }
  std::vector<std::size_t> shape;
  for (const auto& g : j.at("shape")) {
    if (!g.is_number_unsigned() || g.get<std::size_t>() < 2) {
      throw GameFileError("field \"shape\" entries must be integers >= 2");
    }
    shape.push_back(g.get<std::size_t>());
  }
  const auto& payoffs_json = j.at("payoffs");
  if (!payoffs_json.is_array() || payoffs_json.size() != shape.size()) {
    throw GameFileError(
        "field \"payoffs\" must hold one flattened tensor per player");
  }
  std::vector<std::vector<double>> payoffs;
  for (const auto& tensor : payoffs_json) {
    if (!tensor.is_array()) {
      throw GameFileError("field \"payoffs\" entries must be arrays");
    }
    std::vector<double> t;
    for (const auto& v : tensor) {
      if (!v.is_number()) {
        throw GameFileError("field \"payoffs\" has a non-numeric entry");
      }
      t.push_back(v.get<double>());
    }
    payoffs.push_back(std::move(t));
  }
  try {
    return Game(std::move(shape), std::move(payoffs));
  } catch (const std::invalid_argument& e) {
    throw GameFileError(std::string("bad game: ") + e.what());
  }
}

inline Game parse_game_file(const std::string& path) {
  return parse_game_json(detail::parse_json_file(path));
}

inline nlohmann::json game_to_json(const Game& game) {
  nlohmann::json j;
  j["shape"] = game.shape();
  j["payoffs"] = game.payoffs();
  return j;
}

/// Writes to a temporary file in the target directory, then renames, so a
/// crash never leaves a half-written output behind.
inline void atomic_write(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("cannot write to \"" + tmp.string() + "\"");
    }
    out << content;
    if (!out.flush()) {
      throw std::runtime_error("write failed for \"" + tmp.string() + "\"");
    }
  }
  fs::rename(tmp, target);
}

inline void write_game_file(const Game& game, const std::string& path) {
  atomic_write(path, game_to_json(game).dump(2) + "\n");
}

/// Parses a strategy profile: {"strategies":[[...],...]} or a bare array of
/// weight arrays.
inline StrategyProfile parse_profile_json(const nlohmann::json& j) {
  const nlohmann::json* rows = &j;
  if (j.is_object()) {
    if (!j.contains("strategies")) {
      throw GameFileError("profile file is missing field \"strategies\"");
    }
    rows = &j.at("strategies");
  }
  if (!rows->is_array() || rows->empty()) {
    throw GameFileError("profile must be a non-empty array of weight arrays");
  }
  std::vector<MixedStrategy> strategies;
  for (const auto& row : *rows) {
    if (!row.is_array()) {
      throw GameFileError("profile entries must be arrays of weights");
    }
    std::vector<double> w;
    for (const auto& v : row) {
      if (!v.is_number()) {
        throw GameFileError("profile has a non-numeric weight");
      }
      w.push_back(v.get<double>());
    }
    try {
      strategies.emplace_back(std::move(w));
    } catch (const std::invalid_argument& e) {
      throw GameFileError(std::string("bad profile strategy: ") + e.what());
    }
  }
  return StrategyProfile(std::move(strategies));
}

inline StrategyProfile parse_profile_file(const std::string& path) {
  return parse_profile_json(detail::parse_json_file(path));
}

// ---------------------------------------------------------------------------
// CSV exports. All numbers are written with 17 significant digits so values
// survive a parse round trip bit-exactly.
// ---------------------------------------------------------------------------

/// Header: t,rs_1..rs_n,s1_1..s1_g1,s2_1..  One row per recorded step.
inline std::string trace_to_csv(const Game& game, const IterationTrace& trace) {
  std::ostringstream out;
  out << "t";
  for (std::size_t i = 0; i < game.num_players(); ++i) {
    out << ",rs_" << (i + 1);
  }
  for (std::size_t i = 0; i < game.num_players(); ++i) {
    for (std::size_t j = 0; j < game.shape()[i]; ++j) {
      out << ",s" << (i + 1) << "_" << (j + 1);
    }
  }
  out << "\n";
  for (std::size_t row = 0; row < trace.steps.size(); ++row) {
    out << trace.steps[row];
    for (double rs : trace.regret_sums[row]) {
      out << "," << detail::format_double(rs);
    }
    for (const MixedStrategy& s : trace.profiles[row]) {
      for (double w : s) out << "," << detail::format_double(w);
    }
    out << "\n";
  }
  return out.str();
}

/// Header: t,d_dot,q_dot. Row k > 0 holds d_dot between recorded profiles
/// k-1 and k; q_dot is that row's d_dot over the previous row's, empty on
/// the first row and wherever the previous d_dot is zero.
inline std::string metric_trace_to_csv(const MetricTrace& mt,
                                       const std::vector<std::size_t>& steps) {
  if (steps.size() != mt.d_dot.size() + 1) {
    throw std::invalid_argument("metric_trace_to_csv: step count mismatch");
  }
  std::ostringstream out;
  out << "t,d_dot,q_dot\n";
  for (std::size_t k = 0; k < mt.d_dot.size(); ++k) {
    out << steps[k + 1] << "," << detail::format_double(mt.d_dot[k]) << ",";
    if (k > 0 && !std::isnan(mt.q_dot[k - 1])) {
      out << detail::format_double(mt.q_dot[k - 1]);
    }
    out << "\n";
  }
  return out.str();
}

/// Header: <parameter>,rs_1..rs_n,rs_total,best_step.
inline std::string sweep_to_csv(const SweepResult& sweep) {
  std::ostringstream out;
  out << sweep.parameter_name;
  const std::size_t n = sweep.rows.empty() ? 0 : sweep.rows[0].best_regret_sums.size();
  for (std::size_t i = 0; i < n; ++i) out << ",rs_" << (i + 1);
  out << ",rs_total,best_step\n";
  for (const SweepRow& row : sweep.rows) {
    out << detail::format_double(row.parameter);
    for (double rs : row.best_regret_sums) {
      out << "," << detail::format_double(rs);
    }
    out << "," << detail::format_double(row.best_total) << "," << row.best_step
        << "\n";
  }
  return out.str();
}

/// Header: seed,converged,rs_total,eq_index,eq_distance. The last two are
/// empty when no equilibrium oracle is available for the game.
inline std::string basin_to_csv(const BasinReport& report) {
  std::ostringstream out;
  out << "seed,converged,rs_total,eq_index,eq_distance\n";
  for (const BasinStart& s : report.starts) {
    out << s.stream << "," << (s.converged ? 1 : 0) << ","
        << detail::format_double(s.best_total) << ",";
    if (s.equilibrium_index) {
      out << *s.equilibrium_index << ","
          << detail::format_double(s.final_distance);
    } else {
      out << ",";
    }
    out << "\n";
  }
  return out.str();
}

/// Header: t,x,y[,z]. For PCA projections a leading "#" comment line records
/// the captured-variance ratio; strict readers should skip "#" lines.
inline std::string path_to_csv(const PlanarPath& path,
                               const std::vector<std::size_t>& steps,
                               std::optional<double> captured_variance = {}) {
  if (steps.size() != path.points.size()) {
    throw std::invalid_argument("path_to_csv: step count mismatch");
  }
  std::ostringstream out;
  if (captured_variance) {
    out << "# captured_variance_ratio " << detail::format_double(*captured_variance)
        << "\n";
  }
  out << (path.dims == 3 ? "t,x,y,z" : "t,x,y") << "\n";
  for (std::size_t k = 0; k < path.points.size(); ++k) {
    out << steps[k] << "," << detail::format_double(path.points[k][0]) << ","
        << detail::format_double(path.points[k][1]);
    if (path.dims == 3) {
      out << "," << detail::format_double(path.points[k][2]);
    }
    out << "\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Trace CSV reading (the projection command consumes trace files)
// ---------------------------------------------------------------------------

struct TraceTable {
  std::vector<std::size_t> steps;
  // per player: one weight vector per recorded step
  std::vector<std::vector<std::vector<double>>> player_paths;
  std::vector<std::vector<double>> regret_sums;  // per step, per player
};

inline TraceTable read_trace_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GameFileError("cannot open file \"" + path + "\"");

  std::string line;
  do {
    if (!std::getline(in, line)) {
      throw GameFileError("trace file \"" + path + "\" is empty");
    }
  } while (!line.empty() && line[0] == '#');

  std::vector<std::string> header;
  {
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) header.push_back(cell);
  }
  if (header.empty() || header[0] != "t") {
    throw GameFileError("trace file \"" + path + "\" must start with column t");
  }

  // column layout: t, rs_1..rs_n, then s<i>_<j> blocks
  std::size_t num_players = 0;
  while (num_players + 1 < header.size() &&
         header[num_players + 1] == "rs_" + std::to_string(num_players + 1)) {
    ++num_players;
  }
  if (num_players == 0) {
    throw GameFileError("trace file \"" + path + "\" has no rs_ columns");
  }
  std::vector<std::size_t> shape(num_players, 0);
  for (std::size_t col = 1 + num_players; col < header.size(); ++col) {
    const std::string& name = header[col];
    if (name.size() < 4 || name[0] != 's') {
      throw GameFileError("unexpected trace column \"" + name + "\"");
    }
    const std::size_t underscore = name.find('_');
    if (underscore == std::string::npos) {
      throw GameFileError("unexpected trace column \"" + name + "\"");
    }
    const std::size_t player = std::stoul(name.substr(1, underscore - 1));
    if (player < 1 || player > num_players) {
      throw GameFileError("trace column \"" + name + "\" names a bad player");
    }
    ++shape[player - 1];
  }

  TraceTable table;
  table.player_paths.resize(num_players);
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::stringstream ss(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (cells.size() != header.size()) {
      throw GameFileError("trace row with " + std::to_string(cells.size()) +
                          " cells, expected " + std::to_string(header.size()));
    }
    try {
      table.steps.push_back(std::stoul(cells[0]));
      std::vector<double> rs;
      for (std::size_t i = 0; i < num_players; ++i) {
        rs.push_back(std::stod(cells[1 + i]));
      }
      table.regret_sums.push_back(std::move(rs));
      std::size_t col = 1 + num_players;
      for (std::size_t i = 0; i < num_players; ++i) {
        std::vector<double> w;
        for (std::size_t j = 0; j < shape[i]; ++j) {
          w.push_back(std::stod(cells[col++]));
        }
        table.player_paths[i].push_back(std::move(w));
      }
    } catch (const std::exception&) {
      throw GameFileError("trace file \"" + path + "\" has a non-numeric cell");
    }
  }
  if (table.steps.empty()) {
    throw GameFileError("trace file \"" + path + "\" has no data rows");
  }
  return table;
}

// ---------------------------------------------------------------------------
// JSON exports mirroring the CSV columns
// ---------------------------------------------------------------------------

inline nlohmann::json trace_to_json(const IterationTrace& trace) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t row = 0; row < trace.steps.size(); ++row) {
    nlohmann::json r;
    r["t"] = trace.steps[row];
    r["regret_sums"] = trace.regret_sums[row];
    nlohmann::json strategies = nlohmann::json::array();
    for (const MixedStrategy& s : trace.profiles[row]) {
      strategies.push_back(s.weights());
    }
    r["strategies"] = std::move(strategies);
    rows.push_back(std::move(r));
  }
  nlohmann::json j;
  j["rows"] = std::move(rows);
  j["best"] = {{"t", trace.best_step},
               {"regret_sums", trace.best_regret_sums},
               {"rs_total", trace.best_total}};
  j["stopped_early"] = trace.stopped_early;
  return j;
}

inline nlohmann::json sweep_to_json(const SweepResult& sweep) {
  nlohmann::json rows = nlohmann::json::array();
  for (const SweepRow& row : sweep.rows) {
    rows.push_back({{sweep.parameter_name, row.parameter},
                    {"regret_sums", row.best_regret_sums},
                    {"rs_total", row.best_total},
                    {"best_step", row.best_step}});
  }
  return {{"rows", std::move(rows)}};
}

inline nlohmann::json basin_to_json(const BasinReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const BasinStart& s : report.starts) {
    nlohmann::json r = {{"seed", s.stream},
                        {"converged", s.converged},
                        {"rs_total", s.best_total}};
    if (s.equilibrium_index) {
      r["eq_index"] = *s.equilibrium_index;
      r["eq_distance"] = s.final_distance;
    }
    rows.push_back(std::move(r));
  }
  return {{"rows", std::move(rows)}, {"epsilon_conv", report.epsilon_conv}};
}

}  // namespace nashtrace
