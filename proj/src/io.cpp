#include "capdisc/io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <system_error>

#include "capdisc/error.hpp"

namespace capdisc {

using nlohmann::json;

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return {buf, res.ptr};
}

void write_planar_csv(std::ostream& out, const PlanarPointSet& set) {
  out << "px,py,ix,iy\n";
  for (std::size_t i = 0; i < set.size(); ++i) {
    out << format_double(set.points[i].x) << ',' << format_double(set.points[i].y) << ','
        << set.provenance[i].i << ',' << set.provenance[i].j << '\n';
  }
}

void write_sphere_csv(std::ostream& out, const SpherePointSet& set) {
  out << "x,y,z\n";
  for (const Vec3& p : set.points) {
    out << format_double(p.x) << ',' << format_double(p.y) << ',' << format_double(p.z) << '\n';
  }
}

void write_polyline_csv(std::ostream& out, const std::vector<Polyline>& components) {
  out << "component,px,py\n";
  for (std::size_t c = 0; c < components.size(); ++c) {
    for (Vec2 v : components[c].vertices) {
      out << c << ',' << format_double(v.x) << ',' << format_double(v.y) << '\n';
    }
  }
}

namespace {

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> cells;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
  return cells;
}

template <class T>
T parse_number(const std::string& text, std::size_t line_no) {
  T value{};
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw InvalidConfig("line " + std::to_string(line_no) + ": cannot parse number '" + text + "'");
  }
  return value;
}

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> line_numbers;
};

Table read_table(std::istream& in) {
  Table table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    auto cells = split_row(line);
    if (table.header.empty()) {
      table.header = std::move(cells);
      continue;
    }
    if (cells.size() != table.header.size()) {
      throw InvalidConfig("line " + std::to_string(line_no) + ": expected " +
                          std::to_string(table.header.size()) + " fields");
    }
    table.rows.push_back(std::move(cells));
    table.line_numbers.push_back(line_no);
  }
  if (table.header.empty()) throw InvalidConfig("empty CSV input");
  return table;
}

const std::vector<std::string> kPlanarHeader{"px", "py", "ix", "iy"};
const std::vector<std::string> kSphereHeader{"x", "y", "z"};
const std::vector<std::string> kPolylineHeader{"component", "px", "py"};

PlanarPointSet planar_from_table(const Table& t) {
  PlanarPointSet set;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto& row = t.rows[r];
    const std::size_t ln = t.line_numbers[r];
    set.points.push_back({parse_number<double>(row[0], ln), parse_number<double>(row[1], ln)});
    set.provenance.push_back({parse_number<std::int64_t>(row[2], ln), parse_number<std::int64_t>(row[3], ln)});
  }
  return set;
}

}  // namespace

PlanarPointSet read_planar_csv(std::istream& in) {
  const Table t = read_table(in);
  if (t.header != kPlanarHeader) throw InvalidConfig("expected header px,py,ix,iy");
  return planar_from_table(t);
}

SpherePointSet read_points_csv(std::istream& in) {
  const Table t = read_table(in);
  if (t.header == kPlanarHeader) return lambert_image(planar_from_table(t));
  if (t.header != kSphereHeader) {
    throw InvalidConfig("expected header px,py,ix,iy or x,y,z");
  }
  SpherePointSet set;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto& row = t.rows[r];
    const std::size_t ln = t.line_numbers[r];
    const Vec3 p{parse_number<double>(row[0], ln), parse_number<double>(row[1], ln),
                 parse_number<double>(row[2], ln)};
    if (std::abs(norm(p) - 1.0) > 1e-9) {
      throw InvalidConfig("line " + std::to_string(ln) + ": point is not on the unit sphere");
    }
    set.points.push_back(normalized(p));
  }
  return set;
}

std::vector<Polyline> read_polyline_csv(std::istream& in) {
  const Table t = read_table(in);
  if (t.header != kPolylineHeader) throw InvalidConfig("expected header component,px,py");
  std::vector<Polyline> out;
  long last = -1;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto& row = t.rows[r];
    const std::size_t ln = t.line_numbers[r];
    const long c = parse_number<long>(row[0], ln);
    if (c != last) {
      if (c != last + 1) throw InvalidConfig("components must be numbered 0, 1, 2, ... in order");
      out.emplace_back();
      last = c;
    }
    out.back().vertices.push_back({parse_number<double>(row[1], ln), parse_number<double>(row[2], ln)});
  }
  return out;
}

json to_json(Vec2 v) { return json::array({v.x, v.y}); }

json to_json(Vec3 v) { return json::array({v.x, v.y, v.z}); }

json to_json(const Mat2& q) { return json::array({q.a, q.b, q.c, q.d}); }

json to_json(const Perturbation& p) {
  switch (p.kind) {
    case Perturbation::Kind::CellCenter:
      return {{"rule", "center"}};
    case Perturbation::Kind::LatticePoint:
      return {{"rule", "lattice"}};
    case Perturbation::Kind::UniformRandom:
      return {{"rule", "random"}, {"seed", p.seed}};
    case Perturbation::Kind::CustomOffset:
      return {{"rule", "custom"}, {"offset", to_json(p.offset)}};
  }
  return {};
}

json to_json(const LatticeConfig& cfg) {
  return {{"matrix", to_json(cfg.q)}, {"k", cfg.k}, {"offset", to_json(cfg.v)},
          {"perturbation", to_json(cfg.perturbation)}};
}

json to_json(const PlanarPointSet& set) {
  json pts = json::array();
  for (std::size_t i = 0; i < set.size(); ++i) {
    pts.push_back({set.points[i].x, set.points[i].y, set.provenance[i].i, set.provenance[i].j});
  }
  return {{"schema", kSchema},
          {"config", to_json(set.config)},
          {"modified", set.modified},
          {"n", set.size()},
          {"columns", {"px", "py", "ix", "iy"}},
          {"points", std::move(pts)}};
}

json to_json(const Cap& cap) {
  return {{"w", to_json(cap.w)}, {"t", cap.t}, {"closed", cap.closed}};
}

json to_json(const DiscrepancyReport& r) {
  return {{"value", r.value},
          {"sqrt_n_value", std::sqrt(static_cast<double>(r.n)) * r.value},
          {"witness", to_json(r.witness)},
          {"method", std::string(to_string(r.method))},
          {"points_in_witness", r.points_in_witness},
          {"n", r.n}};
}

json to_json(const IntersectionReport& r) {
  return {{"count", r.count},
          {"bound", r.bound},
          {"transformed_length", r.transformed_length},
          {"n", r.n},
          {"m", r.m},
          {"resolution", r.resolution},
          {"refinement_changed_count", r.refinement_changed_count}};
}

json to_json(const BoundReport& r) {
  return {{"theorem_leading", r.theorem_leading},
          {"theorem_leading_d0", r.theorem_leading_d0},
          {"corollary_leading", r.corollary_leading},
          {"d_value", r.d_value},
          {"d_lemma_bound", r.d_lemma_bound},
          {"d_lemma_bound_weak", r.d_lemma_bound_weak},
          {"clq_used", r.clq_used},
          {"clq_source", std::string(to_string(r.clq_source))},
          {"s_k", r.s_k},
          {"n", r.n},
          {"k", r.k},
          {"det", r.det},
          {"frobenius", r.frobenius}};
}

Perturbation perturbation_from_name(const std::string& name, std::uint64_t seed, Vec2 offset) {
  if (name == "center") return Perturbation::cell_center();
  if (name == "lattice") return Perturbation::lattice_point();
  if (name == "random") return Perturbation::uniform_random(seed);
  if (name == "custom") return Perturbation::custom_offset(offset);
  throw InvalidConfig("unknown perturbation '" + name + "' (center, lattice, random, custom)");
}

LatticeConfig lattice_config_from_json(const json& j) {
  try {
    LatticeConfig cfg;
    const auto m = j.at("matrix").get<std::vector<double>>();
    if (m.size() != 4) throw InvalidConfig("matrix needs 4 entries");
    cfg.q = {m[0], m[1], m[2], m[3]};
    cfg.k = j.at("k").get<int>();
    if (j.contains("offset")) {
      const auto v = j.at("offset").get<std::vector<double>>();
      if (v.size() != 2) throw InvalidConfig("offset needs 2 entries");
      cfg.v = {v[0], v[1]};
    }
    if (j.contains("perturbation")) {
      const json& p = j.at("perturbation");
      Vec2 u{0.5, 0.5};
      if (p.contains("offset")) {
        const auto o = p.at("offset").get<std::vector<double>>();
        if (o.size() != 2) throw InvalidConfig("perturbation offset needs 2 entries");
        u = {o[0], o[1]};
      }
      cfg.perturbation = perturbation_from_name(p.at("rule").get<std::string>(),
                                                p.value("seed", std::uint64_t{0}), u);
    }
    return cfg;
  } catch (const json::exception& e) {
    throw InvalidConfig(std::string("bad lattice config: ") + e.what());
  }
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InvalidConfig("cannot open " + tmp.string() + " for writing");
    out << content;
    if (!out.flush()) throw InvalidConfig("failed writing " + tmp.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw InvalidConfig("cannot move output into place: " + ec.message());
  }
}

}  // namespace capdisc
