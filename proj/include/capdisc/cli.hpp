#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "capdisc/geometry.hpp"

namespace capdisc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalidConfig = 2;
inline constexpr int kExitNumerical = 3;

struct RunConfig {
  std::string command;

  std::vector<double> matrix{1.0, 0.0, 0.0, 1.0};
  int k = 8;
  std::vector<double> offset{0.0, 0.0};
  std::string perturbation = "center";
  std::uint64_t seed = 0;
  std::vector<double> custom_offset{0.5, 0.5};
  bool modified = false;

  std::string mode;  // empty: exact up to exact_limit points, estimate above
  std::uint64_t trials = 10000;
  bool trials_set = false;
  std::size_t exact_limit = 600;

  std::string output;  // empty: standard output
  std::string format;  // empty: json, or a text table for paper-suite
  std::string input;           // point CSV used instead of a lattice
  std::string space = "planar";  // generate: planar or sphere CSV

  // intersect: exactly one curve source
  std::vector<double> segment;
  std::vector<double> circle;
  std::vector<double> cap;
  std::string polyline;
  std::optional<int> n;
  std::optional<int> m;
  int samples = 256;

  // clq
  int centers = 64;
  int heights = 16;
  std::optional<double> clq;  // bounds: numeric C_L override
};

// Fills fields from a JSON object whose keys are the long flag names with
// dashes replaced by underscores. Throws InvalidConfig on unknown keys.
void apply_json(RunConfig& cfg, const nlohmann::json& j);

// Checks cross-field consistency; throws InvalidConfig with a message that
// names the offending flag.
void validate(const RunConfig& cfg);

// Full invocation: parse, validate, execute. Error messages go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Runs an already parsed configuration. Exceptions propagate.
void execute(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace capdisc::cli
