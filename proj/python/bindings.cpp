#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "capdisc/bounds.hpp"
#include "capdisc/cli.hpp"
#include "capdisc/discrepancy.hpp"
#include "capdisc/error.hpp"
#include "capdisc/intersection.hpp"
#include "capdisc/io.hpp"
#include "capdisc/lambert.hpp"
#include "capdisc/lattice.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace capdisc;

namespace {

Mat2 mat_of(const std::array<double, 4>& m) { return {m[0], m[1], m[2], m[3]}; }

LatticeConfig config_of(const std::array<double, 4>& matrix, int k, std::array<double, 2> offset,
                        const std::string& perturbation, std::uint64_t seed,
                        std::array<double, 2> custom_offset) {
  LatticeConfig cfg;
  cfg.q = mat_of(matrix);
  cfg.k = k;
  cfg.v = {offset[0], offset[1]};
  cfg.perturbation = perturbation_from_name(perturbation, seed, {custom_offset[0], custom_offset[1]});
  return cfg;
}

py::array_t<double> planar_array(const PlanarPointSet& set) {
  py::array_t<double> a({static_cast<py::ssize_t>(set.size()), py::ssize_t{2}});
  auto r = a.mutable_unchecked<2>();
  for (std::size_t i = 0; i < set.size(); ++i) {
    r(i, 0) = set.points[i].x;
    r(i, 1) = set.points[i].y;
  }
  return a;
}

py::array_t<std::int64_t> provenance_array(const PlanarPointSet& set) {
  py::array_t<std::int64_t> a({static_cast<py::ssize_t>(set.size()), py::ssize_t{2}});
  auto r = a.mutable_unchecked<2>();
  for (std::size_t i = 0; i < set.size(); ++i) {
    r(i, 0) = set.provenance[i].i;
    r(i, 1) = set.provenance[i].j;
  }
  return a;
}

SpherePointSet sphere_of(const py::array_t<double, py::array::c_style | py::array::forcecast>& pts) {
  if (pts.ndim() != 2 || pts.shape(1) != 3) throw InvalidConfig("points must have shape (N, 3)");
  auto r = pts.unchecked<2>();
  SpherePointSet set;
  for (py::ssize_t i = 0; i < r.shape(0); ++i) set.points.push_back({r(i, 0), r(i, 1), r(i, 2)});
  return set;
}

py::array_t<double> sphere_array(const SpherePointSet& set) {
  py::array_t<double> a({static_cast<py::ssize_t>(set.size()), py::ssize_t{3}});
  auto r = a.mutable_unchecked<2>();
  for (std::size_t i = 0; i < set.size(); ++i) {
    r(i, 0) = set.points[i].x;
    r(i, 1) = set.points[i].y;
    r(i, 2) = set.points[i].z;
  }
  return a;
}

py::dict report_dict(const DiscrepancyReport& r) {
  return py::dict("value"_a = r.value, "method"_a = std::string(to_string(r.method)),
                  "points_in_witness"_a = r.points_in_witness, "n"_a = r.n,
                  "w"_a = std::array<double, 3>{r.witness.w.x, r.witness.w.y, r.witness.w.z},
                  "t"_a = r.witness.t, "closed"_a = r.witness.closed);
}

}  // namespace

PYBIND11_MODULE(_capdisc, m) {
  m.doc() = "Spherical point sets from perturbed planar lattices and their cap discrepancy";

  auto base = py::register_exception<Error>(m, "CapdiscError", PyExc_RuntimeError);
  py::register_exception<SingularMatrix>(m, "SingularMatrix", base.ptr());
  py::register_exception<RankError>(m, "RankError", base.ptr());
  py::register_exception<InvalidConfig>(m, "InvalidConfig", base.ptr());
  py::register_exception<DomainError>(m, "DomainError", base.ptr());
  py::register_exception<PoleError>(m, "PoleError", base.ptr());
  py::register_exception<DegenerateCap>(m, "DegenerateCap", base.ptr());
  py::register_exception<MissingConvexityData>(m, "MissingConvexityData", base.ptr());
  py::register_exception<TooLarge>(m, "TooLarge", base.ptr());
  py::register_exception<TooFew>(m, "TooFew", base.ptr());

  m.def(
      "build_point_set",
      [](std::array<double, 4> matrix, int k, std::array<double, 2> offset, const std::string& perturbation,
         std::uint64_t seed, std::array<double, 2> custom_offset, bool modified) {
        const LatticeConfig cfg = config_of(matrix, k, offset, perturbation, seed, custom_offset);
        const PlanarPointSet set = modified ? modified_point_set(cfg) : build_point_set(cfg);
        return py::make_tuple(planar_array(set), provenance_array(set));
      },
      "matrix"_a = std::array<double, 4>{1, 0, 0, 1}, "k"_a, "offset"_a = std::array<double, 2>{0, 0},
      "perturbation"_a = "center", "seed"_a = 0, "custom_offset"_a = std::array<double, 2>{0.5, 0.5},
      "modified"_a = false,
      "Planar points (N, 2) and their lattice indices (N, 2).");

  m.def(
      "lattice_sphere_points",
      [](std::array<double, 4> matrix, int k, std::array<double, 2> offset, const std::string& perturbation,
         std::uint64_t seed, bool modified) {
        const LatticeConfig cfg = config_of(matrix, k, offset, perturbation, seed, {0.5, 0.5});
        return sphere_array(lambert_image(modified ? modified_point_set(cfg) : build_point_set(cfg)));
      },
      "matrix"_a = std::array<double, 4>{1, 0, 0, 1}, "k"_a, "offset"_a = std::array<double, 2>{0, 0},
      "perturbation"_a = "center", "seed"_a = 0, "modified"_a = false);

  m.def(
      "lambert_forward",
      [](double x, double y) {
        const Vec3 s = lambert_forward({x, y});
        return std::array<double, 3>{s.x, s.y, s.z};
      },
      "x"_a, "y"_a);
  m.def(
      "lambert_inverse",
      [](double x, double y, double z) {
        const Vec2 p = lambert_inverse({x, y, z});
        return std::array<double, 2>{p.x, p.y};
      },
      "x"_a, "y"_a, "z"_a);

  m.def(
      "exact_discrepancy",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>& pts, std::size_t max_points) {
        const SpherePointSet set = sphere_of(pts);
        py::gil_scoped_release release;
        const DiscrepancyReport r = exact_discrepancy(set, max_points);
        py::gil_scoped_acquire acquire;
        return report_dict(r);
      },
      "points"_a, "max_points"_a = kDefaultExactLimit);
  m.def(
      "estimate_discrepancy",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>& pts, std::uint64_t trials,
         std::uint64_t seed) {
        const SpherePointSet set = sphere_of(pts);
        py::gil_scoped_release release;
        const DiscrepancyReport r = estimate_discrepancy(set, trials, seed);
        py::gil_scoped_acquire acquire;
        return report_dict(r);
      },
      "points"_a, "trials"_a, "seed"_a = 0);
  m.def("polar_certificate", [](int k) { return report_dict(polar_certificate(k)); }, "k"_a);
  m.def(
      "separation_distance",
      [](const py::array_t<double, py::array::c_style | py::array::forcecast>& pts) {
        return separation_distance(sphere_of(pts));
      },
      "points"_a);

  m.def(
      "intersection_number",
      [](const std::vector<std::array<double, 2>>& vertices, std::array<double, 4> matrix, int k,
         std::array<double, 2> offset, bool closed) {
        Polyline p;
        for (const auto& v : vertices) p.vertices.push_back({v[0], v[1]});
        p.closed = closed;
        return intersection_number(p, mat_of(matrix), k, {offset[0], offset[1]});
      },
      "vertices"_a, "matrix"_a = std::array<double, 4>{1, 0, 0, 1}, "k"_a,
      "offset"_a = std::array<double, 2>{0, 0}, "closed"_a = false);
  m.def(
      "lemma_bound",
      [](const std::vector<std::array<double, 2>>& vertices, std::array<double, 4> matrix, int k, int n, int m_,
         bool closed) {
        Polyline p;
        for (const auto& v : vertices) p.vertices.push_back({v[0], v[1]});
        p.closed = closed;
        p.pieces = n;
        p.self_intersections = m_;
        return lemma_bound(p, mat_of(matrix), k);
      },
      "vertices"_a, "matrix"_a = std::array<double, 4>{1, 0, 0, 1}, "k"_a, "n"_a = 1, "m"_a = 0,
      "closed"_a = false);

  m.def(
      "cap_preimage",
      [](std::array<double, 3> w, double t, int samples) {
        const CapPreimage pre = cap_preimage({{w[0], w[1], w[2]}, t, true}, samples);
        std::vector<std::vector<std::array<double, 2>>> out;
        for (const Polyline& c : pre.components) {
          auto& comp = out.emplace_back();
          for (Vec2 v : c.vertices) comp.push_back({v.x, v.y});
        }
        return out;
      },
      "w"_a, "t"_a, "samples"_a = 256);
  m.def("polar_cap_length", &polar_cap_length, "eps"_a);
  m.def(
      "clq_estimate",
      [](std::array<double, 4> matrix, int centers, int heights, int samples) {
        py::gil_scoped_release release;
        return clq_estimate(mat_of(matrix), centers, heights, samples);
      },
      "matrix"_a = std::array<double, 4>{1, 0, 0, 1}, "centers"_a = 64, "heights"_a = 16, "samples"_a = 256);

  m.def(
      "bound_report",
      [](std::array<double, 4> matrix, int k, bool modified) {
        LatticeConfig cfg;
        cfg.q = mat_of(matrix);
        cfg.k = k;
        const BoundReport r = bound_report(modified ? modified_point_set(cfg) : build_point_set(cfg));
        return py::dict("theorem_leading"_a = r.theorem_leading, "theorem_leading_d0"_a = r.theorem_leading_d0,
                        "corollary_leading"_a = r.corollary_leading, "d_value"_a = r.d_value,
                        "d_lemma_bound"_a = r.d_lemma_bound, "d_lemma_bound_weak"_a = r.d_lemma_bound_weak,
                        "clq_used"_a = r.clq_used, "clq_source"_a = std::string(to_string(r.clq_source)),
                        "s_k"_a = r.s_k, "n"_a = r.n, "k"_a = r.k, "det"_a = r.det, "frobenius"_a = r.frobenius);
      },
      "matrix"_a = std::array<double, 4>{1, 0, 0, 1}, "k"_a, "modified"_a = false);

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      "args"_a, "Runs the command-line front end in-process; returns (exit code, stdout, stderr).");
}
