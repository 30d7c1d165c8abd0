// Copyright 2026 The hlep Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Python bindings for the hlep core.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/stl.h>

#include "hlep/ep_atlas.hpp"
#include "hlep/evolution.hpp"
#include "hlep/validation.hpp"

namespace py = pybind11;
using namespace hlep;

namespace {

GridAxis axis(const std::tuple<double, double, int>& t) {
  return GridAxis{std::get<0>(t), std::get<1>(t), std::get<2>(t)};
}

TrajectoryKind kind_arg(const std::string& name) { return trajectory_kind_from_string(name); }

ProtocolParams protocol_params(double total_time, double t1, double t2, double alpha_i,
                               double alpha_ii, double alpha_max, double omega) {
  return ProtocolParams{total_time, t1, t2, alpha_i, alpha_ii, alpha_max, omega};
}

DensityMatrix state_arg(const Mat2& rho) { return DensityMatrix::from_matrix(rho); }

}  // namespace

PYBIND11_MODULE(_hlep, m) {
  m.doc() = "Hybrid-Liouvillian qubit dynamics and exceptional-point atlas";

  py::register_exception<IntegrationFault>(m, "IntegrationFault", PyExc_RuntimeError);

  py::class_<SystemParams>(m, "SystemParams")
      .def(py::init<double, double, double, double>(), py::arg("omega"), py::arg("theta"),
           py::arg("gamma"), py::arg("q"))
      .def_static("from_alpha", &SystemParams::from_alpha, py::arg("alpha"), py::arg("theta"),
                  py::arg("q"), py::arg("omega") = 1.0)
      .def_property_readonly("omega", &SystemParams::omega)
      .def_property_readonly("theta", &SystemParams::theta)
      .def_property_readonly("gamma", &SystemParams::gamma)
      .def_property_readonly("q", &SystemParams::q)
      .def_property_readonly("alpha", &SystemParams::alpha)
      .def("__repr__", [](const SystemParams& p) {
        return "SystemParams(omega=" + std::to_string(p.omega()) +
               ", theta=" + std::to_string(p.theta()) + ", gamma=" + std::to_string(p.gamma()) +
               ", q=" + std::to_string(p.q()) + ")";
      });

  // Operators and states as numpy arrays.
  m.def("build_hamiltonian", &build_hamiltonian, py::arg("p"));
  m.def("build_nhh", &build_nhh, py::arg("p"));
  m.def("build_hybrid_liouvillian",
        [](const SystemParams& p) { return build_hybrid_liouvillian(p).matrix(); }, py::arg("p"));
  m.def("apply_generator",
        [](const SystemParams& p, const Mat2& rho) { return apply_generator(p, rho); },
        py::arg("p"), py::arg("rho"));
  m.def("vectorize", [](const Mat2& rho) { return vectorize(rho).data(); }, py::arg("rho"));
  m.def("devectorize",
        [](const Vec4& v) { return devectorize(LiouvilleVector(v)).matrix(); }, py::arg("v"));
  m.def("maximally_mixed", [] { return maximally_mixed().matrix(); });
  m.def("projector",
        [](const std::string& name) { return projector(basis_state_from_string(name)).matrix(); },
        py::arg("name"));

  // Spectral analysis.
  m.def("char_poly",
        [](const Mat4& s) {
          const auto c = char_poly(s);
          return std::vector<cplx>(c.begin(), c.end());
        },
        py::arg("s"), "Ascending coefficients of det(lambda I - S).");

  py::class_<EigenCluster>(m, "EigenCluster")
      .def_readonly("mean", &EigenCluster::mean)
      .def_readonly("members", &EigenCluster::members)
      .def_readonly("algebraic", &EigenCluster::algebraic)
      .def_readonly("geometric", &EigenCluster::geometric)
      .def_readonly("jordan_blocks", &EigenCluster::jordan_blocks)
      .def_readonly("rank_sequence", &EigenCluster::rank_sequence)
      .def_readonly("ill_conditioned", &EigenCluster::ill_conditioned);

  py::class_<SpectralData>(m, "SpectralData")
      .def_readonly("eigenvalues", &SpectralData::eigenvalues)
      .def_readonly("eigenvectors", &SpectralData::eigenvectors)
      .def_readonly("clusters", &SpectralData::clusters);

  m.def("eigendecompose",
        [](const Mat4& s, double cluster_tol, double rank_tol) {
          if (cluster_tol <= 0.0) cluster_tol = SpectralTolerances::defaults_for(s).cluster_tol;
          return eigendecompose(Superoperator(s), cluster_tol, rank_tol);
        },
        py::arg("s"), py::arg("cluster_tol") = 0.0, py::arg("rank_tol") = 1e-8);

  py::class_<DegeneracyRecord>(m, "DegeneracyRecord")
      .def_readonly("alpha", &DegeneracyRecord::alpha)
      .def_readonly("theta", &DegeneracyRecord::theta)
      .def_readonly("q", &DegeneracyRecord::q)
      .def_readonly("eigenvalue", &DegeneracyRecord::eigenvalue)
      .def_readonly("order", &DegeneracyRecord::order)
      .def_readonly("geometric", &DegeneracyRecord::geometric)
      .def_readonly("jordan_blocks", &DegeneracyRecord::jordan_blocks)
      .def_readonly("ill_conditioned", &DegeneracyRecord::ill_conditioned)
      .def_property_readonly("ep_order", &DegeneracyRecord::ep_order)
      .def_property_readonly("classification",
                             [](const DegeneracyRecord& r) { return classification_label(r); });

  m.def("classify_degeneracy", &classify_degeneracy, py::arg("p"), py::arg("cluster_tol") = 0.0,
        py::arg("rank_tol") = 1e-8);

  // Closed-form atlas and numeric scan.
  py::class_<AtlasPoint>(m, "AtlasPoint")
      .def_readonly("alpha", &AtlasPoint::alpha)
      .def_readonly("theta", &AtlasPoint::theta)
      .def_readonly("q", &AtlasPoint::q)
      .def_readonly("valid", &AtlasPoint::valid)
      .def_property_readonly("branch", [](const AtlasPoint& p) { return to_string(p.branch); });

  m.def("fourth_order_point", &fourth_order_point);
  m.def("third_order_line", &third_order_line, py::arg("alpha"));
  m.def("eta", &eta, py::arg("alpha"), py::arg("theta"));
  m.def("second_order_surfaces", &second_order_surfaces, py::arg("alpha"), py::arg("theta"));

  py::class_<ScanResult>(m, "ScanResult")
      .def_readonly("records", &ScanResult::records)
      .def_readonly("cells", &ScanResult::cells)
      .def_readonly("converged", &ScanResult::converged)
      .def_readonly("not_converged", &ScanResult::not_converged)
      .def_readonly("out_of_range", &ScanResult::out_of_range);

  m.def(
      "scan_numeric",
      [](std::tuple<double, double, int> alpha, std::tuple<double, double, int> theta,
         std::tuple<double, double, int> q, int order, unsigned threads) {
        ScanOptions opt;
        opt.threads = threads;
        py::gil_scoped_release release;
        return scan_numeric(ScanGrid{axis(alpha), axis(theta), axis(q)}, order, opt);
      },
      py::arg("alpha"), py::arg("theta"), py::arg("q"), py::arg("order"), py::arg("threads") = 0,
      "Grid axes are (start, stop, count) tuples.");

  m.def(
      "validate_atlas",
      [](int samples, double rank_tol) {
        const auto rep = validate_atlas(samples, rank_tol);
        py::list out;
        for (const auto& b : rep.branches) {
          py::dict d;
          d["branch"] = to_string(b.branch);
          d["samples"] = b.samples;
          d["agreeing"] = b.agreeing;
          d["ill_conditioned"] = b.ill_conditioned;
          d["max_residual"] = b.max_residual;
          d["expected"] = b.expected;
          out.append(d);
        }
        return out;
      },
      py::arg("samples") = 100, py::arg("rank_tol") = 1e-8);

  // Protocols.
  py::class_<EvolutionResult>(m, "EvolutionResult")
      .def_property_readonly("final_state",
                             [](const EvolutionResult& r) { return r.final_state.matrix(); })
      .def_property_readonly("probability", &EvolutionResult::probability)
      .def("fidelity",
           [](const EvolutionResult& r, int chi, bool normalized) {
             return fidelity(r, chirality_from_int(chi), normalized);
           },
           py::arg("chi"), py::arg("normalized") = true)
      .def_property_readonly("history",
                             [](const EvolutionResult& r) {
                               Eigen::MatrixXd h(static_cast<Eigen::Index>(r.history.size()), 6);
                               for (std::size_t i = 0; i < r.history.size(); ++i) {
                                 const auto& row = r.history[i];
                                 h.row(static_cast<Eigen::Index>(i)) << row.t, row.trace,
                                     row.rho_uu, row.rho_ud.real(), row.rho_ud.imag(), row.rho_dd;
                               }
                               return h;
                             },
                             "Columns t, trace, rho_uu, re_rho_ud, im_rho_ud, rho_dd.")
      .def_property_readonly("max_hermiticity_deviation",
                             [](const EvolutionResult& r) {
                               return r.diagnostics.max_hermiticity_deviation;
                             })
      .def_property_readonly("min_state_eigenvalue", [](const EvolutionResult& r) {
        return r.diagnostics.min_state_eigenvalue;
      });

  m.def(
      "evolve",
      [](const std::string& kind, double q0, int chi, const Mat2& rho_i, double total_time,
         double t1, double t2, double alpha_i, double alpha_ii, double alpha_max, double omega,
         int steps_per_unit_time) {
        const auto traj =
            make_protocol(kind_arg(kind), q0, chirality_from_int(chi),
                          protocol_params(total_time, t1, t2, alpha_i, alpha_ii, alpha_max, omega));
        IntegrateOptions opt;
        opt.steps_per_unit_time = steps_per_unit_time;
        const DensityMatrix rho = state_arg(rho_i);
        py::gil_scoped_release release;
        return integrate(traj, rho, opt);
      },
      py::arg("kind"), py::arg("q0"), py::arg("chi") = 1,
      py::arg("rho_i") = maximally_mixed().matrix(), py::arg("T") = 100.0, py::arg("T1") = 20.0,
      py::arg("T2") = 60.0, py::arg("alpha_i") = 1e-5, py::arg("alpha_ii") = 10.0,
      py::arg("alpha_max") = 3.0, py::arg("omega") = 1.0, py::arg("steps_per_unit_time") = 1000);

  m.def(
      "sweep_q0",
      [](const std::string& kind, const std::vector<double>& grid, int chi, double total_time,
         double t1, double t2, double alpha_i, double alpha_ii, double alpha_max, double omega,
         int steps_per_unit_time, unsigned threads) {
        IntegrateOptions opt;
        opt.steps_per_unit_time = steps_per_unit_time;
        std::vector<SweepRow> rows;
        {
          py::gil_scoped_release release;
          rows = sweep_q0(kind_arg(kind), grid, chirality_from_int(chi),
                          protocol_params(total_time, t1, t2, alpha_i, alpha_ii, alpha_max, omega),
                          opt, maximally_mixed(), threads);
        }
        py::list out;
        for (const auto& r : rows) {
          py::dict d;
          d["kind"] = to_string(r.kind);
          d["q0"] = r.q0;
          d["chi"] = static_cast<int>(r.chi);
          d["T"] = r.total_time;
          d["F_normalized"] = r.f_normalized;
          d["F_raw"] = r.f_raw;
          d["P"] = r.probability;
          out.append(d);
        }
        return out;
      },
      py::arg("kind"), py::arg("q0_grid"), py::arg("chi") = 1, py::arg("T") = 100.0,
      py::arg("T1") = 20.0, py::arg("T2") = 60.0, py::arg("alpha_i") = 1e-5,
      py::arg("alpha_ii") = 10.0, py::arg("alpha_max") = 3.0, py::arg("omega") = 1.0,
      py::arg("steps_per_unit_time") = 1000, py::arg("threads") = 0);

  m.def(
      "run_validation",
      [](std::uint64_t seed, double rank_tol, bool include_evolution) {
        ValidationOptions opt;
        opt.seed = seed;
        opt.rank_tol = rank_tol;
        opt.include_evolution = include_evolution;
        const auto rep = run_validation(opt);
        py::list out;
        for (const auto& s : rep.suites) {
          out.append(py::make_tuple(s.name, s.passed, s.detail));
        }
        return out;
      },
      py::arg("seed") = 20260101, py::arg("rank_tol") = 1e-8, py::arg("include_evolution") = true);
}
