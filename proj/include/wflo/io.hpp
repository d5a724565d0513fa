#pragma once

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "wflo/genome.hpp"
#include "wflo/layout.hpp"
#include "wflo/optimizer.hpp"
#include "wflo/qlearning.hpp"
#include "wflo/scenario.hpp"
#include "wflo/wake.hpp"

namespace wflo {

// ---------------------------------------------------------------------------
// Number formatting: positions and speeds carry 6 significant digits;
// fitness-grade quantities use the shortest round-trip representation so
// comparisons downstream are not rounding-limited.
// ---------------------------------------------------------------------------

inline std::string format_sig6(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", value);
  return buf;
}

inline std::string format_full(double value) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

inline double parse_double(std::string_view text, const char* what) {
  double value = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
    throw std::runtime_error(std::string("malformed number in ") + what + ": '" +
                             std::string(text) + "'");
  return value;
}

namespace detail {

inline std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

inline std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
  return out;
}

inline std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open for reading: " + path.string());
  return in;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Layout files: header `index,x,y`, one row per position, meters.
// ---------------------------------------------------------------------------

inline void write_layout_csv(const std::filesystem::path& path, std::span<const Point> positions,
                             std::span<const std::uint32_t> indices = {}) {
  if (!indices.empty() && indices.size() != positions.size())
    throw std::invalid_argument("write_layout_csv: index column size mismatch");
  std::ofstream out = detail::open_out(path);
  out << "index,x,y\n";
  for (std::size_t i = 0; i < positions.size(); ++i) {
    const std::size_t idx = indices.empty() ? i : indices[i];
    out << idx << ',' << format_sig6(positions[i].x) << ',' << format_sig6(positions[i].y)
        << '\n';
  }
}

/// Rows in file order; the index column is carried through untouched so a
/// selection written from a candidate layout keeps its provenance.
inline std::vector<Point> read_layout_csv(const std::filesystem::path& path) {
  std::ifstream in = detail::open_in(path);
  std::string line;
  if (!std::getline(in, line) || line != "index,x,y")
    throw std::runtime_error("layout csv must start with header 'index,x,y': " + path.string());
  std::vector<Point> out;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = detail::split_csv(line);
    if (fields.size() != 3)
      throw std::runtime_error("layout csv row must have 3 fields: '" + line + "'");
    out.push_back({parse_double(fields[1], "layout x"), parse_double(fields[2], "layout y")});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Wind rose files: header `direction_deg,speed_ms,probability`.
// ---------------------------------------------------------------------------

inline std::vector<WindBin> read_rose_csv(const std::filesystem::path& path) {
  std::ifstream in = detail::open_in(path);
  std::string line;
  if (!std::getline(in, line) || line != "direction_deg,speed_ms,probability")
    throw std::runtime_error("rose csv must start with header "
                             "'direction_deg,speed_ms,probability': " + path.string());
  std::vector<WindBin> bins;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = detail::split_csv(line);
    if (fields.size() != 3)
      throw std::runtime_error("rose csv row must have 3 fields: '" + line + "'");
    bins.push_back({parse_double(fields[0], "rose direction"),
                    parse_double(fields[1], "rose speed"),
                    parse_double(fields[2], "rose probability")});
  }
  return bins;
}

// ---------------------------------------------------------------------------
// Velocity field files: header `x,y,u`, one row per cell center.
// ---------------------------------------------------------------------------

inline void write_field_csv(const std::filesystem::path& path, const VelocityGrid& grid) {
  std::ofstream out = detail::open_out(path);
  out << "x,y,u\n";
  for (int iy = 0; iy < grid.ny; ++iy) {
    for (int ix = 0; ix < grid.nx; ++ix) {
      const Point center = grid.cell_center(ix, iy);
      out << format_sig6(center.x) << ',' << format_sig6(center.y) << ','
          << format_sig6(grid.at(ix, iy)) << '\n';
    }
  }
}

// ---------------------------------------------------------------------------
// Convergence histories: one row per generation, flushed row by row so an
// interrupted run keeps its partial history.
// ---------------------------------------------------------------------------

class ConvergenceWriter {
 public:
  ConvergenceWriter(const std::filesystem::path& path, bool with_agent_columns)
      : out_(detail::open_out(path)), with_agent_(with_agent_columns) {
    out_ << "generation,best_fitness,best_fobj,best_power_kw,n_turbines";
    if (with_agent_) out_ << ",action_index,reward,state";
    out_ << '\n';
    out_.flush();
  }

  void write(const ConvergenceRecord& rec) {
    out_ << rec.generation << ',' << format_full(rec.best_fitness) << ','
         << format_full(rec.best_objective) << ',' << format_full(rec.best_power_kw) << ','
         << rec.turbine_count;
    if (with_agent_) {
      out_ << ',' << rec.action_index << ',' << format_full(rec.reward) << ','
           << rec.agent_state;
    }
    out_ << '\n';
    out_.flush();
  }

 private:
  std::ofstream out_;
  bool with_agent_;
};

// ---------------------------------------------------------------------------
// Q-table snapshots for run forensics.
// ---------------------------------------------------------------------------

inline void write_qtable_csv(const std::filesystem::path& path, const QTable& qtable,
                             const ActionSpace& actions) {
  std::ofstream out = detail::open_out(path);
  out << "state,action_index,parents_mating,crossover,mutation_percent,value\n";
  for (int state = 0; state < QTable::kStates; ++state) {
    for (std::size_t a = 0; a < qtable.n_actions(); ++a) {
      const Action act = actions.action(a);
      out << state << ',' << a << ',' << act.parents_mating << ',' << to_string(act.crossover)
          << ',' << act.mutation_percent << ',' << format_full(qtable.value(state, a)) << '\n';
    }
  }
}

// ---------------------------------------------------------------------------
// Manifests: flat `key=value` lines, sorted by key. A manifest echoes the
// fully-resolved run configuration, and feeding it back through --config
// reproduces the run byte for byte.
// ---------------------------------------------------------------------------

using KeyValueMap = std::map<std::string, std::string>;

inline void write_manifest(const std::filesystem::path& path, const KeyValueMap& entries) {
  std::ofstream out = detail::open_out(path);
  for (const auto& [key, value] : entries) out << key << '=' << value << '\n';
}

inline KeyValueMap read_key_value_file(const std::filesystem::path& path) {
  std::ifstream in = detail::open_in(path);
  KeyValueMap entries;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error(path.string() + ":" + std::to_string(lineno) +
                               ": expected key=value");
    entries[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return entries;
}

}  // namespace wflo
