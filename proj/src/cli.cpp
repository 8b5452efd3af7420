#include "capdisc/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "capdisc/bounds.hpp"
#include "capdisc/discrepancy.hpp"
#include "capdisc/error.hpp"
#include "capdisc/intersection.hpp"
#include "capdisc/io.hpp"
#include "capdisc/lambert.hpp"
#include "capdisc/lattice.hpp"

namespace capdisc::cli {

using nlohmann::json;

namespace {

const std::vector<std::string> kCommands{"generate",  "discrepancy", "bounds",     "intersect",
                                         "clq",       "separation",  "paper-suite"};

template <class T>
void take(const json& j, const char* key, T& field) {
  if (j.contains(key)) field = j.at(key).get<T>();
}

template <class T>
void take_optional(const json& j, const char* key, std::optional<T>& field) {
  if (j.contains(key)) field = j.at(key).get<T>();
}

void require_size(const std::vector<double>& v, std::size_t n, const char* flag) {
  if (!v.empty() && v.size() != n) {
    throw InvalidConfig(std::string(flag) + " takes " + std::to_string(n) + " numbers");
  }
}

LatticeConfig lattice_of(const RunConfig& cfg) {
  LatticeConfig lc;
  lc.q = {cfg.matrix[0], cfg.matrix[1], cfg.matrix[2], cfg.matrix[3]};
  lc.k = cfg.k;
  lc.v = {cfg.offset[0], cfg.offset[1]};
  lc.perturbation = perturbation_from_name(cfg.perturbation, cfg.seed,
                                           {cfg.custom_offset[0], cfg.custom_offset[1]});
  return lc;
}

PlanarPointSet planar_of(const RunConfig& cfg) {
  const LatticeConfig lc = lattice_of(cfg);
  return cfg.modified ? modified_point_set(lc) : build_point_set(lc);
}

SpherePointSet sphere_of(const RunConfig& cfg) {
  if (!cfg.input.empty()) {
    std::ifstream in(cfg.input);
    if (!in) throw InvalidConfig("--input: cannot open " + cfg.input);
    return read_points_csv(in);
  }
  return lambert_image(planar_of(cfg));
}

void emit(const RunConfig& cfg, const std::string& content, std::ostream& out) {
  if (cfg.output.empty()) {
    out << content;
  } else {
    write_file_atomic(cfg.output, content);
  }
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json header(const RunConfig& cfg) {
  json h{{"schema", kSchema}, {"command", cfg.command}};
  if (cfg.input.empty() && cfg.command != "paper-suite" && cfg.command != "intersect" &&
      cfg.command != "clq") {
    h["config"] = to_json(lattice_of(cfg));
    h["modified"] = cfg.modified;
  }
  return h;
}

// Exact when allowed, otherwise the estimator; warns when falling back.
DiscrepancyReport discrepancy_of(const RunConfig& cfg, const SpherePointSet& pts, std::ostream& err) {
  std::string mode = cfg.mode;
  if (mode.empty()) {
    if (cfg.trials_set) {
      mode = "estimate";
    } else if (pts.size() <= cfg.exact_limit) {
      mode = "exact";
    } else {
      err << "warning: N = " << pts.size() << " exceeds the exact-mode limit of " << cfg.exact_limit
          << " points; using estimate mode with " << cfg.trials << " trials\n";
      mode = "estimate";
    }
  }
  if (mode == "exact") return exact_discrepancy(pts, cfg.exact_limit);
  return estimate_discrepancy(pts, cfg.trials, cfg.seed);
}

void cmd_generate(const RunConfig& cfg, std::ostream& out) {
  const PlanarPointSet planar = planar_of(cfg);
  std::ostringstream s;
  if (cfg.format == "csv") {
    if (cfg.space == "sphere") {
      write_sphere_csv(s, lambert_image(planar));
    } else {
      write_planar_csv(s, planar);
    }
    emit(cfg, s.str(), out);
    return;
  }
  json j = to_json(planar);
  if (cfg.space == "sphere") {
    json pts = json::array();
    for (const Vec3& p : lambert_image(planar).points) pts.push_back(to_json(p));
    j["columns"] = {"x", "y", "z"};
    j["points"] = std::move(pts);
  }
  emit(cfg, dump(j), out);
}

void cmd_discrepancy(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const SpherePointSet pts = sphere_of(cfg);
  const DiscrepancyReport r = discrepancy_of(cfg, pts, err);
  if (cfg.format == "csv") {
    const Cap& w = r.witness;
    std::ostringstream s;
    s << "value,sqrt_n_value,method,n,points_in_witness,wx,wy,wz,t,closed\n"
      << format_double(r.value) << ',' << format_double(std::sqrt(double(r.n)) * r.value) << ','
      << to_string(r.method) << ',' << r.n << ',' << r.points_in_witness << ','
      << format_double(w.w.x) << ',' << format_double(w.w.y) << ',' << format_double(w.w.z) << ','
      << format_double(w.t) << ',' << (w.closed ? 1 : 0) << '\n';
    emit(cfg, s.str(), out);
    return;
  }
  json j = header(cfg);
  if (r.method == DiscrepancyMethod::Estimate) {
    j["trials"] = cfg.trials;
    j["seed"] = cfg.seed;
  }
  j["report"] = to_json(r);
  emit(cfg, dump(j), out);
}

void cmd_bounds(const RunConfig& cfg, std::ostream& out) {
  if (cfg.format != "json") throw InvalidConfig("--format: bounds output is JSON only");
  const PlanarPointSet planar = planar_of(cfg);
  const BoundReport r = bound_report(planar, cfg.clq);
  json j = header(cfg);
  j["report"] = to_json(r);
  j["d_lemma_bound_leading"] = d_lemma_bound_leading(planar.config.q);
  emit(cfg, dump(j), out);
}

std::vector<Polyline> curve_of(const RunConfig& cfg) {
  const int n_set = !cfg.segment.empty() + !cfg.circle.empty() + !cfg.cap.empty() + !cfg.polyline.empty();
  if (n_set != 1) {
    throw InvalidConfig("intersect needs exactly one of --segment, --circle, --cap, --polyline");
  }
  if (!cfg.segment.empty()) {
    Polyline p;
    p.vertices = {{cfg.segment[0], cfg.segment[1]}, {cfg.segment[2], cfg.segment[3]}};
    p.pieces = cfg.n.value_or(1);
    return {p};
  }
  if (!cfg.circle.empty()) {
    const double cx = cfg.circle[0], cy = cfg.circle[1], r = cfg.circle[2];
    if (!(r > 0.0)) throw InvalidConfig("--circle: radius must be positive");
    SampledCurve c;
    c.gamma = [=](double s) {
      return Vec2{cx + r * std::cos(2.0 * std::numbers::pi * s), cy + r * std::sin(2.0 * std::numbers::pi * s)};
    };
    c.closed = true;
    c.n = cfg.n.value_or(1);
    c.m = cfg.m.value_or(0);
    Polyline p = sample_curve(c, std::max(cfg.samples, 16));
    return {p};
  }
  if (!cfg.cap.empty()) {
    const Vec3 w{cfg.cap[0], cfg.cap[1], cfg.cap[2]};
    if (std::abs(norm(w) - 1.0) > 1e-9) throw InvalidConfig("--cap: centre must be a unit vector");
    return cap_preimage({normalized(w), cfg.cap[3], true}, std::max(cfg.samples, 16)).components;
  }
  std::ifstream in(cfg.polyline);
  if (!in) throw InvalidConfig("--polyline: cannot open " + cfg.polyline);
  auto comps = read_polyline_csv(in);
  for (auto& c : comps) {
    if (!c.convex_pieces()) c.pieces = cfg.n;
  }
  return comps;
}

void cmd_intersect(const RunConfig& cfg, std::ostream& out) {
  std::vector<Polyline> comps = curve_of(cfg);
  if (cfg.format == "csv") {
    std::ostringstream s;
    write_polyline_csv(s, comps);
    emit(cfg, s.str(), out);
    return;
  }
  const LatticeConfig lc = lattice_of(cfg);
  capdisc::validate(lc);
  json parts = json::array();
  std::size_t total = 0;
  double bound = 0.0;
  for (Polyline& c : comps) {
    if (cfg.m) c.self_intersections = *cfg.m;
    const IntersectionReport r = intersection_report(c, lc.q, lc.k, lc.v);
    total += r.count;
    bound += r.bound;
    parts.push_back(to_json(r));
  }
  json j{{"schema", kSchema},
         {"command", cfg.command},
         {"matrix", to_json(lc.q)},
         {"k", lc.k},
         {"offset", to_json(lc.v)},
         {"components", std::move(parts)},
         {"count", total},
         {"bound", bound}};
  emit(cfg, dump(j), out);
}

void cmd_clq(const RunConfig& cfg, std::ostream& out) {
  const LatticeConfig lc = lattice_of(cfg);
  const double estimate = clq_estimate(lc.q, cfg.centers, cfg.heights, cfg.samples);
  json j{{"schema", kSchema},
         {"command", cfg.command},
         {"matrix", to_json(lc.q)},
         {"centers", cfg.centers},
         {"heights", cfg.heights},
         {"samples", cfg.samples},
         {"estimate", estimate},
         {"certified_upper", certified_clq(lc.q)}};
  emit(cfg, dump(j), out);
}

void cmd_separation(const RunConfig& cfg, std::ostream& out) {
  const SpherePointSet pts = sphere_of(cfg);
  const double sep = separation_distance(pts);
  json j = header(cfg);
  j["n"] = pts.size();
  j["separation"] = sep;
  j["scaled"] = sep * std::pow(static_cast<double>(pts.size()), 0.75);
  emit(cfg, dump(j), out);
}

struct SuiteRow {
  std::string label;
  std::size_t n = 0;
  double scaled_d = 0.0;
  std::string method;
  std::optional<double> certificate;
  double theorem = 0.0;
  double corollary = 0.0;
};

std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

void cmd_paper_suite(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  std::vector<SuiteRow> rows;
  auto add = [&](const std::string& label, const LatticeConfig& lc, bool modified,
                 std::optional<double> certificate) {
    const PlanarPointSet planar = modified ? modified_point_set(lc) : build_point_set(lc);
    const SpherePointSet pts = lambert_image(planar);
    // exact wherever the size allows unless estimation was asked for
    RunConfig sub = cfg;
    sub.trials_set = false;
    const DiscrepancyReport d = discrepancy_of(sub, pts, err);
    const BoundReport b = bound_report(planar);
    const double rn = std::sqrt(static_cast<double>(pts.size()));
    rows.push_back({label, pts.size(), rn * d.value, std::string(to_string(d.method)), certificate,
                    rn * b.theorem_leading, rn * b.corollary_leading});
  };
  for (int k : {8, 10, 12, 50}) {
    LatticeConfig lc;
    lc.k = k;
    const DiscrepancyReport c = polar_certificate(k);
    add("identity K=" + std::to_string(k), lc, false, std::sqrt(static_cast<double>(c.n)) * c.value);
  }
  {
    LatticeConfig lc;
    lc.q = Mat2::orthogonal_family(std::numbers::phi);
    lc.k = 50;
    add("Q(phi) K=50 modified", lc, true, std::nullopt);
  }

  if (cfg.format == "json") {
    json arr = json::array();
    for (const SuiteRow& r : rows) {
      arr.push_back({{"preset", r.label},
                     {"n", r.n},
                     {"sqrt_n_discrepancy", r.scaled_d},
                     {"method", r.method},
                     {"certificate", r.certificate ? json(*r.certificate) : json(nullptr)},
                     {"theorem_bound", r.theorem},
                     {"corollary_bound", r.corollary}});
    }
    json j{{"schema", kSchema}, {"command", cfg.command}, {"trials", cfg.trials},
           {"seed", cfg.seed}, {"rows", std::move(arr)}};
    emit(cfg, dump(j), out);
    return;
  }
  std::ostringstream s;
  char line[256];
  std::snprintf(line, sizeof line, "%-22s %6s %10s %-9s %11s %9s %10s\n", "preset", "N", "sqrtN*D",
                "method", "certificate", "theorem", "corollary");
  s << line;
  for (const SuiteRow& r : rows) {
    std::snprintf(line, sizeof line, "%-22s %6zu %10s %-9s %11s %9s %10s\n", r.label.c_str(), r.n,
                  fixed(r.scaled_d, 6).c_str(), r.method.c_str(),
                  r.certificate ? fixed(*r.certificate, 6).c_str() : "-", fixed(r.theorem, 4).c_str(),
                  fixed(r.corollary, 4).c_str());
    s << line;
  }
  s << "sqrtN-scaled values; theorem and corollary are leading terms without the O(1/N) remainder\n";
  emit(cfg, s.str(), out);
}

void add_lattice_options(CLI::App* app, RunConfig& cfg) {
  app->add_option("--matrix", cfg.matrix, "lattice matrix Q as a b c d (row-major)")->expected(4);
  app->add_option("--k", cfg.k, "scaling K");
  app->add_option("--offset", cfg.offset, "shift v")->expected(2);
  app->add_option("--perturbation", cfg.perturbation, "center | lattice | random | custom");
  app->add_option("--seed", cfg.seed, "seed for random perturbations and the estimator");
  app->add_option("--custom-offset", cfg.custom_offset, "u in [0,1)^2 for --perturbation custom")->expected(2);
  app->add_flag("--modified", cfg.modified, "rebalance the count to round(K^2/|det Q|)");
}

void add_output_options(CLI::App* app, RunConfig& cfg) {
  app->add_option("--output", cfg.output, "output file (default: standard output)");
  app->add_option("--format", cfg.format, "csv | json (paper-suite also: table)");
}

void add_mode_options(CLI::App* app, RunConfig& cfg) {
  app->add_option("--mode", cfg.mode, "exact | estimate");
  app->add_option("--trials", cfg.trials, "random centres for estimate mode")
      ->each([&cfg](const std::string&) { cfg.trials_set = true; });
  app->add_option("--exact-limit", cfg.exact_limit, "largest N for exact mode");
}

// Removes "--config FILE" (or "--config=FILE") from args and returns the file.
std::optional<std::string> extract_config(std::vector<std::string>& args) {
  std::optional<std::string> path;
  for (std::size_t i = 0; i < args.size();) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw InvalidConfig("--config needs a file");
      path = args[i + 1];
      args.erase(args.begin() + static_cast<long>(i), args.begin() + static_cast<long>(i) + 2);
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + static_cast<long>(i));
    } else {
      ++i;
    }
  }
  return path;
}

RunConfig parse(std::vector<std::string> args, std::ostream& out, std::ostream& err, int& exit_code) {
  RunConfig cfg;
  exit_code = -1;
  if (const auto path = extract_config(args)) {
    std::ifstream in(*path);
    if (!in) throw InvalidConfig("--config: cannot open " + *path);
    json j;
    try {
      j = json::parse(in);
    } catch (const json::exception& e) {
      throw InvalidConfig("--config: " + std::string(e.what()));
    }
    apply_json(cfg, j);
    const bool has_command =
        !args.empty() && std::find(kCommands.begin(), kCommands.end(), args.front()) != kCommands.end();
    if (!has_command && !cfg.command.empty()) args.insert(args.begin(), cfg.command);
  }

  CLI::App app{"Spherical point sets from perturbed lattices and their cap discrepancy", "capdisc"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "capdisc 0.1.0");
  std::string config_doc;
  app.add_option("--config", config_doc, "JSON file with any of the flags (dashes as underscores)");

  auto* gen = app.add_subcommand("generate", "construct a point set and write it as CSV or JSON");
  add_lattice_options(gen, cfg);
  add_output_options(gen, cfg);
  gen->add_option("--space", cfg.space, "planar | sphere");

  auto* disc = app.add_subcommand("discrepancy", "spherical cap discrepancy of a point set");
  add_lattice_options(disc, cfg);
  add_output_options(disc, cfg);
  add_mode_options(disc, cfg);
  disc->add_option("--input", cfg.input, "point CSV (px,py,ix,iy or x,y,z) instead of a lattice");

  auto* bnd = app.add_subcommand("bounds", "evaluate the discrepancy bounds for a lattice set");
  add_lattice_options(bnd, cfg);
  add_output_options(bnd, cfg);
  bnd->add_option("--clq", cfg.clq, "use this numeric value for the curve length constant");

  auto* isect = app.add_subcommand("intersect", "count tiling cells met by a curve");
  add_lattice_options(isect, cfg);
  add_output_options(isect, cfg);
  isect->add_option("--segment", cfg.segment, "x0 y0 x1 y1")->expected(4);
  isect->add_option("--circle", cfg.circle, "cx cy r")->expected(3);
  isect->add_option("--cap", cfg.cap, "wx wy wz t: preimage of a cap boundary")->expected(4);
  isect->add_option("--polyline", cfg.polyline, "polyline CSV (component,px,py)");
  isect->add_option("--n", cfg.n, "number of convex pieces");
  isect->add_option("--m", cfg.m, "number of self-intersections");
  isect->add_option("--samples", cfg.samples, "sampling resolution for circles and caps");

  auto* clq = app.add_subcommand("clq", "estimate the curve length constant for Q");
  add_lattice_options(clq, cfg);
  add_output_options(clq, cfg);
  clq->add_option("--centers", cfg.centers, "cap centres");
  clq->add_option("--heights", cfg.heights, "cap heights");
  clq->add_option("--samples", cfg.samples, "samples per preimage component");

  auto* sep = app.add_subcommand("separation", "minimum pairwise distance of a point set");
  add_lattice_options(sep, cfg);
  add_output_options(sep, cfg);
  sep->add_option("--input", cfg.input, "point CSV instead of a lattice");

  auto* suite = app.add_subcommand("paper-suite", "standard and golden-ratio lattice presets");
  add_output_options(suite, cfg);
  add_mode_options(suite, cfg);
  suite->add_option("--seed", cfg.seed, "estimator seed");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    exit_code = e.get_exit_code() == 0 ? kExitOk : kExitInvalidConfig;
    app.exit(e, out, err);
    return cfg;
  }
  for (CLI::App* sub : app.get_subcommands()) cfg.command = sub->get_name();
  return cfg;
}

}  // namespace

void apply_json(RunConfig& cfg, const json& j) {
  if (!j.is_object()) throw InvalidConfig("--config: expected a JSON object");
  static const std::vector<std::string> known{
      "schema", "command", "matrix", "k", "offset", "perturbation", "seed", "custom_offset",
      "modified", "mode", "trials", "exact_limit", "output", "format", "input", "space",
      "segment", "circle", "cap", "polyline", "n", "m", "samples", "centers", "heights", "clq"};
  for (const auto& [key, _] : j.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw InvalidConfig("--config: unknown key '" + key + "'");
    }
  }
  try {
    take(j, "command", cfg.command);
    take(j, "matrix", cfg.matrix);
    take(j, "k", cfg.k);
    take(j, "offset", cfg.offset);
    take(j, "perturbation", cfg.perturbation);
    take(j, "seed", cfg.seed);
    take(j, "custom_offset", cfg.custom_offset);
    take(j, "modified", cfg.modified);
    take(j, "mode", cfg.mode);
    if (j.contains("trials")) {
      take(j, "trials", cfg.trials);
      cfg.trials_set = true;
    }
    take(j, "exact_limit", cfg.exact_limit);
    take(j, "output", cfg.output);
    take(j, "format", cfg.format);
    take(j, "input", cfg.input);
    take(j, "space", cfg.space);
    take(j, "segment", cfg.segment);
    take(j, "circle", cfg.circle);
    take(j, "cap", cfg.cap);
    take(j, "polyline", cfg.polyline);
    take_optional(j, "n", cfg.n);
    take_optional(j, "m", cfg.m);
    take(j, "samples", cfg.samples);
    take(j, "centers", cfg.centers);
    take(j, "heights", cfg.heights);
    take_optional(j, "clq", cfg.clq);
  } catch (const json::exception& e) {
    throw InvalidConfig("--config: " + std::string(e.what()));
  }
}

void validate(const RunConfig& cfg) {
  if (std::find(kCommands.begin(), kCommands.end(), cfg.command) == kCommands.end()) {
    throw InvalidConfig("unknown command '" + cfg.command + "'");
  }
  if (cfg.matrix.size() != 4) throw InvalidConfig("--matrix takes 4 numbers");
  if (cfg.offset.size() != 2) throw InvalidConfig("--offset takes 2 numbers");
  if (cfg.custom_offset.size() != 2) throw InvalidConfig("--custom-offset takes 2 numbers");
  require_size(cfg.segment, 4, "--segment");
  require_size(cfg.circle, 3, "--circle");
  require_size(cfg.cap, 4, "--cap");
  if (cfg.k < 1) throw InvalidConfig("--k must be a positive integer");
  if (!cfg.format.empty() && cfg.format != "csv" && cfg.format != "json" &&
      !(cfg.command == "paper-suite" && cfg.format == "table")) {
    throw InvalidConfig("--format must be csv or json");
  }
  if (cfg.space != "planar" && cfg.space != "sphere") throw InvalidConfig("--space must be planar or sphere");
  if (!cfg.mode.empty() && cfg.mode != "exact" && cfg.mode != "estimate") {
    throw InvalidConfig("--mode must be exact or estimate");
  }
  if (cfg.mode == "exact" && cfg.trials_set) {
    throw InvalidConfig("--trials only applies to --mode estimate");
  }
  if (cfg.trials_set && cfg.trials == 0) throw InvalidConfig("--trials must be positive");
  if (cfg.perturbation != "custom" && !(cfg.custom_offset[0] == 0.5 && cfg.custom_offset[1] == 0.5)) {
    throw InvalidConfig("--custom-offset requires --perturbation custom");
  }
  if (cfg.modified && !cfg.input.empty()) throw InvalidConfig("--modified cannot be combined with --input");
  if (cfg.n && *cfg.n < 1) throw InvalidConfig("--n must be at least 1");
  if (cfg.m && *cfg.m < 0) throw InvalidConfig("--m must be nonnegative");
  if (cfg.clq && !(*cfg.clq > 0.0)) throw InvalidConfig("--clq must be positive");
}

void execute(const RunConfig& given, std::ostream& out, std::ostream& err) {
  validate(given);
  RunConfig cfg = given;
  if (cfg.format.empty()) cfg.format = cfg.command == "paper-suite" ? "table" : "json";
  if (cfg.command == "generate") {
    cmd_generate(cfg, out);
  } else if (cfg.command == "discrepancy") {
    cmd_discrepancy(cfg, out, err);
  } else if (cfg.command == "bounds") {
    cmd_bounds(cfg, out);
  } else if (cfg.command == "intersect") {
    cmd_intersect(cfg, out);
  } else if (cfg.command == "clq") {
    cmd_clq(cfg, out);
  } else if (cfg.command == "separation") {
    cmd_separation(cfg, out);
  } else {
    cmd_paper_suite(cfg, out, err);
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  try {
    int code = -1;
    const RunConfig cfg = parse(args, out, err, code);
    if (code >= 0) return code;
    execute(cfg, out, err);
    return kExitOk;
  } catch (const SingularMatrix& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const RankError& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
}

}  // namespace capdisc::cli
