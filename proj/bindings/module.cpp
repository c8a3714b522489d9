#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "spintriad/bounds.hpp"
#include "spintriad/catalog.hpp"
#include "spintriad/designs.hpp"
#include "spintriad/estimation.hpp"
#include "spintriad/random.hpp"
#include "spintriad/symmetry.hpp"
#include "spintriad/verify.hpp"

namespace py = pybind11;
using namespace spintriad;

namespace {

int infer_qubits(Eigen::Index dim) {
  int n = 0;
  while ((Eigen::Index{1} << n) < dim) ++n;
  if ((Eigen::Index{1} << n) != dim)
    throw std::invalid_argument("dimension must be a power of two");
  return n;
}

Ket to_ket(const Vector& v) { return Ket(v, qubit_shape(infer_qubits(v.size()))); }

Operator to_op(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("operator must be square");
  return Operator(m, qubit_shape(infer_qubits(m.rows())));
}

Povm make_povm(const std::vector<Matrix>& elements, const py::object& space,
               const std::vector<std::string>& labels) {
  if (elements.empty()) throw std::invalid_argument("need at least one element");
  std::vector<Operator> ops;
  for (const Matrix& m : elements) ops.push_back(to_op(m));
  Operator sp = space.is_none() ? identity_op(ops.front().num_subsystems())
                                : to_op(space.cast<Matrix>());
  return Povm::create(std::move(ops), std::move(sp), labels);
}

std::vector<Matrix> povm_elements(const Povm& p) {
  std::vector<Matrix> out;
  for (const Operator& e : p.elements) out.push_back(e.entries);
  return out;
}

std::vector<Vector> estimator_vectors(const Povm& p) {
  std::vector<Vector> out;
  for (const Ket& k : optimal_estimators(p)) out.push_back(k.amplitudes);
  return out;
}

py::dict constants_dict() {
  const BoundConstants b = bound_constants();
  py::dict d;
  d["p"] = b.p;
  d["x0"] = b.x0;
  d["y0"] = b.y0;
  d["alpha"] = b.alpha;
  d["beta"] = b.beta;
  d["gamma"] = b.gamma;
  d["u0"] = b.u0;
  d["u_plus"] = b.u_plus;
  d["u_minus"] = b.u_minus;
  d["zeta_star"] = b.zeta_star;
  d["zeta0"] = b.zeta0;
  d["zeta_plus"] = b.zeta_plus;
  return d;
}

py::dict bound_report_dict(const BoundReport& r) {
  py::dict d;
  d["lemma"] = r.lemma;
  d["max_violation"] = r.max_violation;
  py::list pts;
  for (const auto& p : r.saturation_points) pts.append(py::make_tuple(p[0], p[1]));
  d["saturation_points"] = pts;
  d["grid"] = r.grid;
  d["randoms"] = r.randoms;
  d["seed"] = r.seed;
  return d;
}

py::dict moments_dict(const MomentRecord& m) {
  py::dict d;
  d["sum_w"] = m.sum_w;
  d["aa"] = m.aa;
  d["bb"] = m.bb;
  d["cc"] = m.cc;
  d["ab"] = m.ab;
  d["ac"] = m.ac;
  d["bc"] = m.bc;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Optimal estimation of three parallel qubit spins: collective, biseparable "
            "and adaptive measurement strategies";

  py::class_<Povm>(m, "Povm")
      .def(py::init(&make_povm), py::arg("elements"), py::arg("space") = py::none(),
           py::arg("labels") = std::vector<std::string>{})
      .def_property_readonly("elements", &povm_elements)
      .def_property_readonly("space", [](const Povm& p) { return p.space.entries; })
      .def_readonly("labels", &Povm::labels)
      .def_property_readonly("num_qubits", &Povm::num_qubits)
      .def("__len__", &Povm::size);

  py::class_<Protocol>(m, "Protocol")
      .def_readonly("direction", &Protocol::direction)
      .def_readonly("first_subsystems", &Protocol::first_subsystems)
      .def_property_readonly("first", [](const Protocol& p) { return p.first; })
      .def_property_readonly("branches", [](const Protocol& p) { return p.branches; });

  py::class_<SimResult>(m, "SimResult")
      .def_readonly("counts", &SimResult::counts)
      .def_readonly("probs", &SimResult::probs)
      .def_readonly("shots", &SimResult::shots)
      .def_readonly("seed", &SimResult::seed);

  // Projectors and permutation plumbing.
  m.def("sym_projector", [](int n) { return sym_projector(n).entries; }, py::arg("n"));
  m.def("antisym_projector", [](int n) { return antisym_projector(n).entries; }, py::arg("n"));
  m.def("permutation_operator",
        [](const std::vector<int>& image) {
          return permutation_operator(Permutation(image), static_cast<int>(image.size())).entries;
        },
        py::arg("image"));
  m.def("product_twirl_closed_form",
        [](double a, double b, double c) { return product_twirl_closed_form(a, b, c).entries; },
        py::arg("a"), py::arg("b"), py::arg("c"));

  // Estimation.
  m.def("q_map", [](const Matrix& mat) { return q_map(to_op(mat)).entries; }, py::arg("m"));
  m.def("estimation_fidelity", &estimation_fidelity, py::arg("povm"));
  m.def("optimal_estimators", &estimator_vectors, py::arg("povm"));
  m.def("average_fidelity_mc",
        [](const Povm& p, long long samples, uint64_t seed, int workers) {
          const McEstimate e =
              average_fidelity_mc(p, optimal_estimators(p), samples, seed, workers);
          return py::make_tuple(e.mean, e.std_error);
        },
        py::arg("povm"), py::arg("samples") = 1000000, py::arg("seed") = 0,
        py::arg("workers") = 1);
  m.def("restrict_sym", &restrict_sym, py::arg("povm"));
  m.def("restrict_antisym", &restrict_antisym, py::arg("povm"));
  m.def("coarse_grain", &coarse_grain, py::arg("povm"), py::arg("lambda_"));
  m.def("random_povm",
        [](int n_qubits, int elements, uint64_t seed) {
          auto rng = stream_rng(seed, 0);
          return random_povm(n_qubits, elements, rng);
        },
        py::arg("n_qubits"), py::arg("elements"), py::arg("seed") = 0);

  // Catalog.
  m.def("octahedron_collective", &octahedron_collective);
  m.def("local_xyz", &local_xyz);
  m.def("m2_povm", &m2_povm);
  m.def("m_2to1", &m_2to1);
  m.def("m_1to2", &m_1to2);
  m.def("k0_povm", &k0_povm);
  m.def("k1_povm", &k1_povm);
  m.def("povm_by_name", &povm_by_name, py::arg("name"));
  m.def("catalog_names", &catalog_names);
  m.def("analytic_fidelity",
        [](const std::string& name) -> py::object {
          const auto v = analytic_fidelity(name);
          return v ? py::cast(*v) : py::none();
        },
        py::arg("name"));

  m.def("fiducial_pair_state", [] { return fiducial_pair_state().amplitudes; });
  m.def("fiducial_triple_state", [] { return fiducial_triple_state().amplitudes; });
  m.def("branch_seed_state", [] { return branch_seed_state().amplitudes; });
  m.def("psi_plus", [] { return psi_plus().amplitudes; });

  m.def("concurrence", [](const Vector& v) { return concurrence(to_ket(v)); }, py::arg("psi"));
  m.def("mub_check",
        [](const std::vector<Vector>& b1, const std::vector<Vector>& b2, double tol) {
          std::vector<Ket> k1, k2;
          for (const Vector& v : b1) k1.push_back(to_ket(v));
          for (const Vector& v : b2) k2.push_back(to_ket(v));
          return mub_check(k1, k2, tol);
        },
        py::arg("basis1"), py::arg("basis2"), py::arg("tol") = 1e-9);
  m.def("canonicalize_sym2",
        [](const Vector& v) {
          const CanonicalSym2 c = canonicalize_sym2(to_ket(v));
          return py::make_tuple(c.u.entries, c.xi);
        },
        py::arg("phi"));
  m.def("sym2_povm_moments",
        [](const Povm& p) { return moments_dict(sym2_povm_moments(p)); }, py::arg("povm"));

  // Protocols.
  m.def("protocol_2to1", &protocol_2to1);
  m.def("protocol_1to2", &protocol_1to2);
  m.def("flatten_protocol", &flatten_protocol, py::arg("protocol"));
  m.def("adaptive_compose", &adaptive_compose, py::arg("first"), py::arg("branches"),
        py::arg("first_subsystems"));
  m.def("simulate_protocol",
        [](const Protocol& proto, const Vector& psi, long long shots, uint64_t seed, int workers) {
          return simulate_protocol(proto, to_ket(psi), shots, seed, workers);
        },
        py::arg("protocol"), py::arg("psi"), py::arg("shots"), py::arg("seed") = 0,
        py::arg("workers") = 1);
  m.def("simulate_protocol_haar",
        [](const Protocol& proto, long long shots, uint64_t seed, int workers) {
          const HaarSimResult r = simulate_protocol_haar(proto, shots, seed, workers);
          return py::make_tuple(r.sim, py::make_tuple(r.fidelity.mean, r.fidelity.std_error));
        },
        py::arg("protocol"), py::arg("shots"), py::arg("seed") = 0, py::arg("workers") = 1);

  // Designs.
  m.def("unitary_set",
        [](const std::string& name) { return unitary_set_by_name(name).members; },
        py::arg("name"));
  m.def("frame_potential",
        [](const std::string& name, int t) { return frame_potential(unitary_set_by_name(name), t); },
        py::arg("name"), py::arg("t"));
  m.def("haar_frame_potential", &haar_frame_potential, py::arg("t"));
  m.def("is_t_design",
        [](const std::string& name, int t, double tol) {
          return is_t_design(unitary_set_by_name(name), t, tol);
        },
        py::arg("name"), py::arg("t"), py::arg("tol") = 1e-9);

  // Bounds.
  m.def("q_norm_product", &q_norm_product, py::arg("a"), py::arg("b"), py::arg("c"),
        py::arg("phi"));
  m.def("q_norm_product_max", &q_norm_product_max, py::arg("a"), py::arg("b"), py::arg("c"));
  m.def("q_norm_surplus", &q_norm_surplus, py::arg("x"), py::arg("y"));
  m.def("q_map_product",
        [](double a, double b, double c, double phi) { return q_map_product(a, b, c, phi).entries; },
        py::arg("a"), py::arg("b"), py::arg("c"), py::arg("phi") = 0.0);
  m.def("sym_overlap_product", &sym_overlap_product, py::arg("a"), py::arg("b"), py::arg("c"));
  m.def("pair_norm_excess", &pair_norm_excess, py::arg("xi"), py::arg("theta"));
  m.def("bound_constants", &constants_dict);
  m.def("verify_bound",
        [](const std::string& lemma, long long grid, long long randoms, uint64_t seed) {
          return bound_report_dict(verify_bound(bound_lemma_from_name(lemma), grid, randoms, seed));
        },
        py::arg("lemma"), py::arg("grid") = 1000, py::arg("randoms") = 100000,
        py::arg("seed") = 0);

  // Verification suites.
  m.def("run_suite",
        [](const std::string& suite, double tol, long long samples, uint64_t seed, int workers,
           long long grid, long long randoms) {
          VerifyConfig cfg;
          cfg.tol = tol;
          cfg.samples = samples;
          cfg.seed = seed;
          cfg.workers = workers;
          cfg.grid = grid;
          cfg.randoms = randoms;
          py::list out;
          for (const CheckResult& r : run_suite(suite, cfg)) {
            py::dict d;
            d["name"] = r.name;
            d["passed"] = r.passed;
            d["detail"] = r.detail;
            out.append(d);
          }
          return out;
        },
        py::arg("suite"), py::arg("tol") = 1e-9, py::arg("samples") = 1000000,
        py::arg("seed") = 0, py::arg("workers") = 1, py::arg("grid") = 1000,
        py::arg("randoms") = 100000);
}
