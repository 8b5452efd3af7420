#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "capdisc/bounds.hpp"
#include "capdisc/discrepancy.hpp"
#include "capdisc/intersection.hpp"
#include "capdisc/lambert.hpp"
#include "capdisc/lattice.hpp"

namespace capdisc {

inline constexpr const char* kSchema = "capdisc/1";

// Shortest round-trip decimal, dot separator, independent of the locale.
std::string format_double(double v);

// "px,py,ix,iy"
void write_planar_csv(std::ostream& out, const PlanarPointSet& set);
// "x,y,z"
void write_sphere_csv(std::ostream& out, const SpherePointSet& set);
// "component,px,py"
void write_polyline_csv(std::ostream& out, const std::vector<Polyline>& components);

// Reads either a planar "px,py,ix,iy" file (mapped through the Lambert map,
// planar set kept as origin) or a spherical "x,y,z" file. Throws InvalidConfig
// on malformed input.
SpherePointSet read_points_csv(std::istream& in);
PlanarPointSet read_planar_csv(std::istream& in);
std::vector<Polyline> read_polyline_csv(std::istream& in);

nlohmann::json to_json(Vec2 v);
nlohmann::json to_json(Vec3 v);
nlohmann::json to_json(const Mat2& q);
nlohmann::json to_json(const Perturbation& p);
nlohmann::json to_json(const LatticeConfig& cfg);
nlohmann::json to_json(const PlanarPointSet& set);
nlohmann::json to_json(const Cap& cap);
nlohmann::json to_json(const DiscrepancyReport& r);
nlohmann::json to_json(const IntersectionReport& r);
nlohmann::json to_json(const BoundReport& r);

LatticeConfig lattice_config_from_json(const nlohmann::json& j);
Perturbation perturbation_from_name(const std::string& name, std::uint64_t seed, Vec2 offset);

// Writes to a temporary sibling and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

}  // namespace capdisc
