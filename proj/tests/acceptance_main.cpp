// Acceptance suite: runs every criterion at its stated tolerance and prints
// one pass/fail line per criterion.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <string>
#include <vector>

#include "spintriad/bounds.hpp"
#include "spintriad/catalog.hpp"
#include "spintriad/designs.hpp"
#include "spintriad/estimation.hpp"
#include "spintriad/random.hpp"
#include "spintriad/symmetry.hpp"

using namespace spintriad;

namespace {

int g_failures = 0;

void report(int idx, const std::string& name, bool passed, const std::string& detail) {
  std::printf("[%s] criterion %2d: %s%s%s\n", passed ? "PASS" : "FAIL", idx, name.c_str(),
              detail.empty() ? "" : " -- ", detail.c_str());
  if (!passed) ++g_failures;
}

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

Matrix kron_pow(const Matrix& u, int t) {
  Matrix out = u;
  for (int i = 1; i < t; ++i) {
    Matrix next(out.rows() * 2, out.cols() * 2);
    for (Eigen::Index r = 0; r < out.rows(); ++r)
      for (Eigen::Index c = 0; c < out.cols(); ++c) next.block(r * 2, c * 2, 2, 2) = out(r, c) * u;
    out = std::move(next);
  }
  return out;
}

Ket product_state(double a, double b, double c, double phi) {
  const double s = 1.0 / std::sqrt(2.0);
  const Ket pair = make_ket({a, s * b, s * b, c * std::exp(Complex(0, phi))});
  return kron(pair, basis_ket(1, 0));
}

void normalized_triple(std::mt19937_64& rng, double out[4]) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double a = std::abs(g(rng)), b = std::abs(g(rng)), c = std::abs(g(rng));
  const double n = std::sqrt(a * a + b * b + c * c);
  out[0] = a / n; out[1] = b / n; out[2] = c / n;
  out[3] = 2.0 * M_PI * unif(rng);
}

// 1. Table I reproduction at 1e-9.
void criterion_table1() {
  const std::pair<std::string, double> rows[4] = {
      {"collective-octahedron", analytic::collective()},
      {"m-2to1", analytic::biseparable()},
      {"m-1to2", analytic::adaptive_1to2()},
      {"local-xyz", analytic::local_xyz()},
  };
  double worst = 0.0;
  for (const auto& [name, want] : rows)
    worst = std::max(worst, std::abs(estimation_fidelity(povm_by_name(name)) - want));
  report(1, "analytic fidelity table reproduced", worst <= 1e-9,
         "max |computed - exact| = " + num(worst));
}

// 2. Strict hierarchy with gaps > 1e-3 and 5-decimal values.
void criterion_hierarchy() {
  const double fl = estimation_fidelity(povm_by_name("local-xyz"));
  const double f12 = estimation_fidelity(povm_by_name("m-1to2"));
  const double f21 = estimation_fidelity(povm_by_name("m-2to1"));
  const double fc = estimation_fidelity(povm_by_name("collective-octahedron"));
  const bool ordered = (f12 - fl > 1e-3) && (f21 - f12 > 1e-3) && (fc - f21 > 1e-3);
  const bool digits = std::abs(fl - 0.78868) < 5e-6 && std::abs(f12 - 0.79005) < 5e-6 &&
                      std::abs(f21 - 0.79315) < 5e-6 && std::abs(fc - 0.80000) < 5e-6;
  report(2, "strict hierarchy local < 1->2 < 2->1 < collective", ordered && digits,
         num(fl) + " < " + num(f12) + " < " + num(f21) + " < " + num(fc));
}

// 3. Monte Carlo within 3 standard errors at 1e6 samples.
void criterion_mc() {
  bool ok = true;
  std::string detail;
  for (const std::string& name : {std::string("collective-octahedron"), std::string("m-2to1"),
                                  std::string("m-1to2"), std::string("local-xyz")}) {
    const Povm p = povm_by_name(name);
    const double f = estimation_fidelity(p);
    const McEstimate mc = average_fidelity_mc(p, optimal_estimators(p), 1000000, 2024, 4);
    const bool pass = std::abs(mc.mean - f) <= 3.0 * mc.std_error;
    ok = ok && pass;
    detail += name + ": " + num(mc.mean) + "+-" + num(mc.std_error) + " ";
  }
  report(3, "Monte Carlo agrees with analytic values (1e6 samples, 3 sigma)", ok, detail);
}

// 4. Symmetric/antisymmetric restriction identities on 50 random POVMs.
void criterion_restrictions() {
  auto rng = stream_rng(404, 0);
  double worst_sym = 0.0, worst_anti = 0.0;
  for (int i = 0; i < 50; ++i) {
    const Povm p = random_povm(3, 4 + i % 5, rng);
    const double f = estimation_fidelity(p);
    worst_sym = std::max(worst_sym, std::abs(estimation_fidelity(restrict_sym(p)) - f));
    worst_anti = std::max(worst_anti, estimation_fidelity(restrict_antisym(p)));
  }
  report(4, "restriction identities on 50 random POVMs",
         worst_sym <= 1e-9 && worst_anti <= 1e-10,
         "sym dev " + num(worst_sym) + ", antisym fidelity " + num(worst_anti));
}

// 5. Closed-form equivalence on 100 random product states.
void criterion_closed_form() {
  auto rng = stream_rng(505, 0);
  double worst_entry = 0.0, worst_norm = 0.0;
  for (int i = 0; i < 100; ++i) {
    double abcp[4];
    normalized_triple(rng, abcp);
    const Operator closed = q_map_product(abcp[0], abcp[1], abcp[2], abcp[3]);
    const Operator direct = q_map(outer(product_state(abcp[0], abcp[1], abcp[2], abcp[3])));
    worst_entry = std::max(worst_entry, max_abs(closed.entries - direct.entries));
    const double eta = q_norm_product(abcp[0], abcp[1], abcp[2], abcp[3]);
    worst_norm = std::max(worst_norm, std::abs(spectral_norm(closed) - eta));
    worst_norm = std::max(worst_norm, std::abs(spectral_norm(direct) - eta));
  }
  report(5, "closed-form estimator map equals the direct map", worst_entry <= 1e-10 && worst_norm <= 1e-10,
         "entry dev " + num(worst_entry) + ", norm dev " + num(worst_norm));
}

// 6. Clifford 3-design twirl matches the closed form.
void criterion_twirl() {
  auto rng = stream_rng(606, 0);
  const UnitarySet cl = clifford_mod_phase();
  double worst = 0.0, worst_balanced = 0.0;
  for (int i = 0; i < 50; ++i) {
    double abcp[4];
    normalized_triple(rng, abcp);
    const Operator avg = twirl_over_set(outer(product_state(abcp[0], abcp[1], abcp[2], abcp[3])), cl, 3);
    worst = std::max(worst,
                     max_abs(avg.entries - product_twirl_closed_form(abcp[0], abcp[1], abcp[2]).entries));

    // Balanced case a^2 = c^2 collapses to P2 (x) 1 / 6.
    const double b = std::sqrt(std::max(0.0, 1.0 - 2.0 * abcp[0] * abcp[0] * 0.5));
    const double ac = std::sqrt((1.0 - b * b) / 2.0);
    const Operator bal =
        twirl_over_set(outer(product_state(ac, b, ac, abcp[3])), cl, 3);
    worst_balanced = std::max(
        worst_balanced,
        max_abs(bal.entries - kron(sym_projector(2), identity_op(1)).entries / 6.0));
  }
  report(6, "3-design twirl matches the closed form", worst <= 1e-10 && worst_balanced <= 1e-10,
         "dev " + num(worst) + ", balanced dev " + num(worst_balanced));
}

// 7. Bound lemmas on 1e6-point grids with saturation points located.
void criterion_bounds() {
  const BoundConstants bc = bound_constants();
  const long long grid = 1000, randoms = 100000;
  const double res = 2.0 / grid;

  const BoundReport a2 = verify_bound(BoundLemma::A2, grid, randoms, 7);
  const bool a2_ok = a2.max_violation <= 1e-9 && a2.saturation_points.size() == 1 &&
                     std::abs(a2.saturation_points[0][0] - 9.0 / 16.0) < res &&
                     std::abs(a2.saturation_points[0][1]) < res;

  const BoundReport b2 = verify_bound(BoundLemma::B2, grid, randoms, 7);
  const bool b2_ok = b2.max_violation <= 1e-9 && b2.saturation_points.size() == 1 &&
                     std::abs(b2.saturation_points[0][0] - std::asin(1.0 / 8.0)) < M_PI * res &&
                     std::abs(b2.saturation_points[0][1] - M_PI_2) < M_PI * res;

  const BoundReport c1 = verify_bound(BoundLemma::C1, grid, randoms, 7);
  const bool c1_ok = c1.max_violation <= 1e-9 && c1.saturation_points.size() == 2 &&
                     std::abs(c1.saturation_points[0][0] - bc.x0) < res &&
                     std::abs(c1.saturation_points[0][1] - bc.y0) < res &&
                     std::abs(c1.saturation_points[1][0] - 1.0) < res &&
                     std::abs(c1.saturation_points[1][1] - 1.0) < res;

  report(7, "bound scans find no violation and the advertised saturation points",
         a2_ok && b2_ok && c1_ok,
         "violations " + num(a2.max_violation) + ", " + num(b2.max_violation) + ", " +
             num(c1.max_violation));
}

// 8. Constants and identities of the tangent bound.
void criterion_constants() {
  const BoundConstants bc = bound_constants();
  const bool printed = std::abs(bc.zeta_star - 0.12988) < 1e-4 &&
                       std::abs(bc.zeta0 - 1.81228) < 1e-4 &&
                       std::abs(bc.zeta_plus - 0.07235) < 1e-4 &&
                       std::abs(std::cos(bc.zeta_star) - 0.99158) < 1e-4;
  const bool sums = std::abs(bc.alpha + bc.beta + bc.gamma - 9.0) <= 1e-12 &&
                    std::abs(0.5 + bc.alpha / 30.0 + bc.gamma / 20.0 -
                             analytic::adaptive_1to2()) <= 1e-12;
  report(8, "tangent-bound constants and identities", printed && sums,
         "zeta* " + num(bc.zeta_star) + ", zeta0 " + num(bc.zeta0) + ", zeta+ " +
             num(bc.zeta_plus));
}

// 9. Design suite.
void criterion_designs() {
  const UnitarySet cl = clifford_mod_phase();
  const UnitarySet gb = g_bar();
  const UnitarySet gb2 = g_bar2();
  const bool booleans = is_t_design(cl, 3) && is_t_design(gb, 2) && !is_t_design(gb2, 2) &&
                        !is_t_design(gb, 3);
  const bool potentials = std::abs(frame_potential(pauli_set(), 1) - 1.0) <= 1e-9 &&
                          std::abs(frame_potential(cl, 2) - 2.0) <= 1e-9 &&
                          std::abs(frame_potential(cl, 3) - 5.0) <= 1e-9 &&
                          std::abs(frame_potential(gb, 2) - 2.0) <= 1e-9;

  auto orbit_sum = [](const UnitarySet& us, const Ket& seed, int t, double weight) {
    Matrix acc = Matrix::Zero(seed.dim(), seed.dim());
    for (const Matrix& u : us.members) {
      const Vector w = kron_pow(u, t) * seed.amplitudes;
      acc += weight / us.size() * (w * w.adjoint());
    }
    return acc;
  };
  const double orbit2 =
      max_abs(orbit_sum(gb, fiducial_pair_state(), 2, 3.0) - sym_projector(2).entries);
  const double orbit3 = max_abs(orbit_sum(cl, fiducial_triple_state(), 3, 6.0) -
                                kron(sym_projector(2), identity_op(1)).entries);
  report(9, "t-design detection, frame potentials and orbit completeness",
         booleans && potentials && orbit2 <= 1e-10 && orbit3 <= 1e-10,
         "orbit deviations " + num(orbit2) + ", " + num(orbit3));
}

// 10. Structure of the restricted optima.
void criterion_structure() {
  bool ok = true;
  std::string detail;
  const Povm r21 = restrict_sym(m_2to1());
  double worst_conc = 0.0;
  for (const Operator& e : r21.elements) {
    const Operator rho(e.entries / e.trace().real(), e.shape);
    const EigResult pe = herm_eig(partial_trace(rho, {0, 1}));
    if (pe.eigenvalues[0] < 1.0 - 1e-9) { ok = false; continue; }
    worst_conc = std::max(worst_conc, std::abs(concurrence(pe.eigenvectors[0]) - 0.125));

    Matrix schmidt(2, 2);
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) schmidt(r, c) = pe.eigenvectors[0].amplitudes(r * 2 + c);
    Eigen::JacobiSVD<Matrix> svd(schmidt, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const std::vector<Ket> ba = {Ket(svd.matrixU().col(0), {2}), Ket(svd.matrixU().col(1), {2})};
    const std::vector<Ket> bb = {Ket(svd.matrixV().col(0).conjugate(), {2}),
                                 Ket(svd.matrixV().col(1).conjugate(), {2})};
    const EigResult se = herm_eig(partial_trace(rho, {2}));
    const std::vector<Ket> bcb = {se.eigenvectors[0], se.eigenvectors[1]};
    ok = ok && mub_check(ba, bcb) && mub_check(bb, bcb);
  }
  ok = ok && worst_conc <= 1e-9;
  detail = "max |concurrence - 1/8| = " + num(worst_conc);

  // The 1->2 optimum fails this uniformity.
  std::set<long long> xis;
  for (const Operator& e : restrict_sym(m_1to2().first).elements) {
    const Operator rho(e.entries / e.trace().real(), e.shape);
    const EigResult pe = herm_eig(partial_trace(rho, {0, 1}));
    xis.insert(std::llround(canonicalize_sym2(pe.eigenvectors[0]).xi * 1e6));
  }
  ok = ok && xis.size() >= 2;
  detail += ", distinct 1->2 canonical angles: " + std::to_string(xis.size());
  report(10, "restricted optimum structure (concurrence 1/8 + unbiased bases; 1->2 contrast)",
         ok, detail);
}

// 11. Protocol simulation against the flat Born distribution.
void criterion_simulation() {
  auto rng = stream_rng(111, 0);
  bool ok = true;
  std::string detail;
  const long long shots = 100000;
  int idx = 0;
  for (const Protocol& proto : {protocol_2to1(), protocol_1to2()}) {
    const Ket psi = random_haar_ket(1, rng);
    const SimResult sim = simulate_protocol(proto, psi, shots, 2025 + idx, 4);
    double tv = 0.0, sigma = 0.0;
    for (size_t j = 0; j < sim.probs.size(); ++j)
      for (size_t k = 0; k < sim.probs[j].size(); ++k) {
        const double pr = std::max(sim.probs[j][k], 0.0);
        tv += 0.5 * std::abs(static_cast<double>(sim.counts[j][k]) / shots - pr);
        sigma += 0.5 * std::sqrt(pr * (1.0 - pr) / shots);
      }
    ok = ok && tv <= 4.0 * sigma;
    detail += (idx == 0 ? "2to1 TV " : "1to2 TV ") + num(tv) + " (bound " + num(4.0 * sigma) + ") ";
    ++idx;
  }

  const Protocol p21 = protocol_2to1();
  long long singlet_hits = 0;
  for (int i = 0; i < 3; ++i) {
    const Ket psi = random_haar_ket(1, rng);
    const SimResult sim = simulate_protocol(p21, psi, shots, 31 + i, 4);
    for (long long c : sim.counts.back()) singlet_hits += c;
  }
  ok = ok && singlet_hits == 0;
  detail += "singlet hits " + std::to_string(singlet_hits);
  report(11, "sequential sampling matches the Born distribution", ok, detail);
}

// 12. Moment constraints of the restricted 1->2 optimum.
void criterion_moments() {
  const MomentRecord mom = sym2_povm_moments(restrict_sym(m_1to2().first));
  const double quad = std::max({std::abs(mom.aa - 2.0), std::abs(mom.bb - 2.0),
                                std::abs(mom.cc - 2.0)});
  const double cross = std::max({std::abs(mom.ab), std::abs(mom.ac), std::abs(mom.bc)});
  report(12, "canonical moment constraints of the restricted 1->2 optimum",
         quad <= 1e-9 && cross <= 1e-9,
         "quad dev " + num(quad) + ", cross " + num(cross) + ", sum_w " + num(mom.sum_w));
}

}  // namespace

int main() {
  criterion_table1();
  criterion_hierarchy();
  criterion_mc();
  criterion_restrictions();
  criterion_closed_form();
  criterion_twirl();
  criterion_bounds();
  criterion_constants();
  criterion_designs();
  criterion_structure();
  criterion_simulation();
  criterion_moments();
  if (g_failures == 0) {
    std::printf("all 12 acceptance criteria passed\n");
    return 0;
  }
  std::printf("%d acceptance criteria FAILED\n", g_failures);
  return 1;
}
