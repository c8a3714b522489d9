#include "spintriad/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "spintriad/bounds.hpp"
#include "spintriad/catalog.hpp"
#include "spintriad/designs.hpp"
#include "spintriad/estimation.hpp"
#include "spintriad/random.hpp"
#include "spintriad/symmetry.hpp"

namespace spintriad {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

void check(std::vector<CheckResult>& out, const std::string& name, bool passed,
           const std::string& detail) {
  out.push_back({name, passed, detail});
}

void check_close(std::vector<CheckResult>& out, const std::string& name, double got,
                 double want, double tol) {
  const double err = std::abs(got - want);
  check(out, name, err <= tol, "got " + fmt(got) + ", want " + fmt(want) + " (|err| " + fmt(err) + ")");
}

Ket random_product_sym_state(std::mt19937_64& rng, double* coeffs = nullptr) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double a = std::abs(g(rng)), b = std::abs(g(rng)), c = std::abs(g(rng));
  const double n = std::sqrt(a * a + b * b + c * c);
  a /= n; b /= n; c /= n;
  const double phi = 2.0 * M_PI * unif(rng);
  if (coeffs) { coeffs[0] = a; coeffs[1] = b; coeffs[2] = c; coeffs[3] = phi; }
  const double s = 1.0 / std::sqrt(2.0);
  const Complex cph = std::exp(Complex(0, phi));
  Ket pair = make_ket({a, s * b, s * b, c * cph});
  return kron(pair, basis_ket(1, 0));
}

std::vector<CheckResult> suite_table1(const VerifyConfig& cfg) {
  std::vector<CheckResult> out;
  const std::pair<std::string, double> rows[4] = {
      {"local-xyz", analytic::local_xyz()},
      {"m-1to2", analytic::adaptive_1to2()},
      {"m-2to1", analytic::biseparable()},
      {"collective-octahedron", analytic::collective()},
  };
  for (const auto& [name, want] : rows)
    check_close(out, "fidelity " + name, estimation_fidelity(povm_by_name(name)), want, cfg.tol);
  return out;
}

std::vector<CheckResult> suite_appendix_a(const VerifyConfig& cfg) {
  std::vector<CheckResult> out;
  auto rng = stream_rng(cfg.seed, 11);

  double worst_q = 0.0, worst_norm = 0.0;
  for (int i = 0; i < 100; ++i) {
    double abcp[4];
    const Ket psi = random_product_sym_state(rng, abcp);
    const Operator direct = q_map(outer(psi));
    const Operator closed = q_map_product(abcp[0], abcp[1], abcp[2], abcp[3]);
    worst_q = std::max(worst_q, max_abs(direct.entries - closed.entries));
    const double eta = q_norm_product(abcp[0], abcp[1], abcp[2], abcp[3]);
    worst_norm = std::max(worst_norm, std::abs(spectral_norm(direct) - eta));
    worst_norm = std::max(worst_norm, std::abs(spectral_norm(closed) - eta));
  }
  check(out, "closed-form Q equals q_map (100 random states)", worst_q <= 1e-10,
        "max entry deviation " + fmt(worst_q));
  check(out, "closed-form norm equals spectral norm", worst_norm <= 1e-10,
        "max deviation " + fmt(worst_norm));

  double worst_gap = 0.0, worst_eq = 0.0, worst_red = 0.0;
  for (int i = 0; i < 1000; ++i) {
    double abcp[4];
    random_product_sym_state(rng, abcp);
    const double with_phase = q_norm_product(abcp[0], abcp[1], abcp[2], abcp[3]);
    const double maxed = q_norm_product_max(abcp[0], abcp[1], abcp[2]);
    worst_gap = std::min(worst_gap, maxed - with_phase);
    worst_eq = std::max(worst_eq, std::abs(q_norm_product(abcp[0], abcp[1], abcp[2], 0.0) - maxed));
    const double x = abcp[0] * abcp[0] + abcp[2] * abcp[2];
    const double y = abcp[0] * abcp[0] - abcp[2] * abcp[2];
    const double lin = 15.0 * abcp[0] * abcp[0] + 10.0 * abcp[1] * abcp[1] + 5.0 * abcp[2] * abcp[2];
    worst_red = std::max(worst_red, std::abs(maxed - lin - q_norm_surplus(x, y)));
  }
  check(out, "phase-maximized norm dominates (1000 random states)", worst_gap >= -1e-12,
        "min slack " + fmt(worst_gap));
  check(out, "saturation at phi = 0", worst_eq <= 1e-12, "max deviation " + fmt(worst_eq));
  check(out, "reduced-coordinate identity", worst_red <= 1e-10, "max deviation " + fmt(worst_red));

  const BoundReport a2 = verify_bound(BoundLemma::A2, cfg.grid, cfg.randoms, cfg.seed);
  check(out, "surplus bound scan", a2.max_violation <= 1e-9,
        "max violation " + fmt(a2.max_violation));
  bool sat_ok = a2.saturation_points.size() == 1;
  if (sat_ok) {
    sat_ok = std::abs(a2.saturation_points[0][0] - 9.0 / 16.0) < 2.0 / cfg.grid &&
             std::abs(a2.saturation_points[0][1]) < 2.0 / cfg.grid;
  }
  check(out, "surplus bound saturation at (9/16, 0)", sat_ok,
        a2.saturation_points.empty() ? "no saturation point found"
                                     : "found (" + fmt(a2.saturation_points[0][0]) + ", " +
                                           fmt(a2.saturation_points[0][1]) + ")");

  // Aggregate norm of the optimal restricted two-copy strategy.
  const auto decomp = sym2_decompose(restrict_sym(m_2to1()));
  double agg = 0.0, worst_coeff = 0.0;
  const double a_t = 3.0 * std::sqrt(2.0) / 8.0, b_t = std::sqrt(7.0) / 4.0;
  for (const auto& e : decomp) {
    agg += e.weight * q_norm_product(e.a, e.b, e.c, e.phi);
    worst_coeff = std::max({worst_coeff, std::abs(e.a - a_t), std::abs(e.b - b_t),
                            std::abs(e.c - a_t), std::min(e.phi, 2.0 * M_PI - e.phi)});
  }
  check_close(out, "aggregate norm of restricted optimum", agg,
              60.0 + 7.5 * std::sqrt(22.0), 1e-8);
  check(out, "all elements share the optimal coefficients", worst_coeff <= 1e-9,
        "max coefficient deviation " + fmt(worst_coeff));

  const UnitarySet cl = clifford_mod_phase();
  double worst_twirl = 0.0, worst_phase_dep = 0.0;
  for (int i = 0; i < 50; ++i) {
    double abcp[4];
    const Ket psi = random_product_sym_state(rng, abcp);
    const Operator avg = twirl_over_set(outer(psi), cl, 3);
    const Operator closed = product_twirl_closed_form(abcp[0], abcp[1], abcp[2]);
    worst_twirl = std::max(worst_twirl, max_abs(avg.entries - closed.entries));
    const double s = 1.0 / std::sqrt(2.0);
    const Ket zero_phase = kron(
        make_ket({abcp[0], s * abcp[1], s * abcp[1], abcp[2]}), basis_ket(1, 0));
    worst_phase_dep = std::max(
        worst_phase_dep, max_abs(avg.entries - twirl_over_set(outer(zero_phase), cl, 3).entries));
  }
  check(out, "3-design twirl matches closed form (50 random states)", worst_twirl <= 1e-10,
        "max entry deviation " + fmt(worst_twirl));
  check(out, "twirl is phase independent", worst_phase_dep <= 1e-10,
        "max entry deviation " + fmt(worst_phase_dep));
  return out;
}

std::vector<CheckResult> suite_appendix_b(const VerifyConfig& cfg) {
  std::vector<CheckResult> out;
  auto rng = stream_rng(cfg.seed, 13);

  double worst_fid = 0.0, worst_conc = 0.0;
  bool range_ok = true;
  for (int i = 0; i < 100; ++i) {
    const Ket phi = random_sym2_ket(rng);
    const CanonicalSym2 canon = canonicalize_sym2(phi);
    range_ok = range_ok && canon.xi >= -1e-12 && canon.xi <= M_PI_2 + 1e-12;
    Matrix u2(4, 4);
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c)
        u2.block(r * 2, c * 2, 2, 2) = canon.u.entries(r, c) * canon.u.entries;
    Vector target = Vector::Zero(4);
    target(0) = std::cos(canon.xi / 2.0);
    target(3) = std::sin(canon.xi / 2.0);
    worst_fid = std::max(worst_fid, 1.0 - std::norm(target.dot(u2 * phi.amplitudes)));
    worst_conc = std::max(worst_conc, std::abs(std::sin(canon.xi) - concurrence(phi)));
  }
  check(out, "canonical form reached (100 random symmetric states)", worst_fid <= 1e-10,
        "max infidelity " + fmt(worst_fid));
  check(out, "canonical angle in range", range_ok, "");
  check(out, "sin(xi) equals concurrence", worst_conc <= 1e-9,
        "max deviation " + fmt(worst_conc));

  check_close(out, "canonical angle of the fiducial pair",
              canonicalize_sym2(fiducial_pair_state()).xi, std::asin(1.0 / 8.0), 1e-10);

  const BoundReport b2 = verify_bound(BoundLemma::B2, cfg.grid, cfg.randoms, cfg.seed);
  check(out, "pair-excess bound scan", b2.max_violation <= 1e-9,
        "max violation " + fmt(b2.max_violation));
  bool sat_ok = b2.saturation_points.size() == 1;
  if (sat_ok) {
    sat_ok = std::abs(b2.saturation_points[0][0] - std::asin(1.0 / 8.0)) < 4.0 / cfg.grid &&
             std::abs(b2.saturation_points[0][1] - M_PI_2) < 4.0 / cfg.grid;
  }
  check(out, "pair-excess saturation at (arcsin(1/8), pi/2)", sat_ok,
        b2.saturation_points.empty() ? "no saturation point found"
                                     : "found (" + fmt(b2.saturation_points[0][0]) + ", " +
                                           fmt(b2.saturation_points[0][1]) + ")");

  double worst_edge = 0.0;
  bool pole_ok = true;
  for (int i = 0; i <= 100; ++i) {
    const double theta = M_PI * i / 100.0;
    worst_edge = std::max(worst_edge, std::abs(pair_norm_excess(M_PI_2, theta) - 8.0));
    const double xi = M_PI_2 * i / 100.0;
    const double pole = std::abs(5.0 * std::cos(xi) + 4.0) + std::abs(5.0 * std::cos(xi) - 4.0);
    pole_ok = pole_ok && std::abs(pair_norm_excess(xi, 0.0) - pole) <= 1e-12 && pole <= 10.0 + 1e-12;
  }
  check(out, "maximally entangled edge value 8", worst_edge <= 1e-12,
        "max deviation " + fmt(worst_edge));
  check(out, "poles bounded by 10", pole_ok, "");

  std::uniform_real_distribution<double> unif(0.0, 1.0);
  double worst_full = 0.0;
  for (int i = 0; i < 50; ++i) {
    const double xi = M_PI_2 * unif(rng);
    const double theta = M_PI * unif(rng);
    const double phi = 2.0 * M_PI * unif(rng);
    Ket pair = make_ket({std::cos(xi / 2.0), 0.0, 0.0, std::sin(xi / 2.0)});
    const Complex eip = std::exp(Complex(0, phi));
    Ket up = make_ket({std::cos(theta / 2.0), std::sin(theta / 2.0) * eip});
    Ket dn = make_ket({std::sin(theta / 2.0), -std::cos(theta / 2.0) * eip});
    const double direct = spectral_norm(q_map(outer(kron(pair, up)))) +
                          spectral_norm(q_map(outer(kron(pair, dn))));
    worst_full = std::max(worst_full,
                          std::abs(direct - pair_norm_sum_full(xi, theta, phi)));
  }
  check(out, "azimuth expression matches q_map (50 random settings)", worst_full <= 1e-9,
        "max deviation " + fmt(worst_full));
  return out;
}

std::vector<CheckResult> suite_appendix_c(const VerifyConfig& cfg) {
  std::vector<CheckResult> out;
  const BoundConstants bc = bound_constants();

  check_close(out, "alpha + beta + gamma = 9", bc.alpha + bc.beta + bc.gamma, 9.0, 1e-12);
  check_close(out, "x0 from p", (2.0 / 3.0 - bc.p) / (1.0 - bc.p), bc.x0, 1e-14);
  check_close(out, "y0 from p", -bc.p / (1.0 - bc.p), bc.y0, 1e-14);
  check_close(out, "fidelity bridge", 0.5 + bc.alpha / 30.0 + bc.gamma / 20.0,
              analytic::adaptive_1to2(), 1e-12);

  check_close(out, "zeta_star printed value", bc.zeta_star, 0.12988, 1e-4);
  check_close(out, "cos(zeta_star) printed value", std::cos(bc.zeta_star), 0.99158, 1e-4);
  check_close(out, "zeta0 printed value", bc.zeta0, 1.81228, 1e-4);
  check_close(out, "zeta_plus printed value", bc.zeta_plus, 0.07235, 1e-4);

  check(out, "l(zeta_star) = 0", std::abs(zero_locator_l(bc.zeta_star)) <= 1e-9,
        "residual " + fmt(zero_locator_l(bc.zeta_star)));
  check(out, "h(zeta0) = 0", std::abs(zero_locator_h(bc.zeta0)) <= 1e-9,
        "residual " + fmt(zero_locator_h(bc.zeta0)));
  check(out, "h(zeta_plus) = 0", std::abs(zero_locator_h(bc.zeta_plus)) <= 1e-9,
        "residual " + fmt(zero_locator_h(bc.zeta_plus)));

  check_close(out, "tangency at (x0, y0)", q_norm_surplus(bc.x0, bc.y0),
              bc.alpha * bc.x0 + bc.beta * bc.y0 + bc.gamma, 1e-10);
  const double h = 1e-6;
  const double fx = (q_norm_surplus(bc.x0 + h, bc.y0) - q_norm_surplus(bc.x0 - h, bc.y0)) / (2 * h);
  const double fy = (q_norm_surplus(bc.x0, bc.y0 + h) - q_norm_surplus(bc.x0, bc.y0 - h)) / (2 * h);
  check_close(out, "alpha is the x-slope at (x0, y0)", fx, bc.alpha, 1e-5);
  check_close(out, "beta is the y-slope at (x0, y0)", fy, bc.beta, 1e-5);

  const BoundReport c1 = verify_bound(BoundLemma::C1, cfg.grid, cfg.randoms, cfg.seed);
  check(out, "tangent bound scan", c1.max_violation <= 1e-9,
        "max violation " + fmt(c1.max_violation));
  bool sat_ok = c1.saturation_points.size() == 2;
  if (sat_ok) {
    const auto& p0 = c1.saturation_points[0];
    const auto& p1 = c1.saturation_points[1];
    sat_ok = std::abs(p0[0] - bc.x0) < 2.0 / cfg.grid && std::abs(p0[1] - bc.y0) < 4.0 / cfg.grid &&
             std::abs(p1[0] - 1.0) < 2.0 / cfg.grid && std::abs(p1[1] - 1.0) < 4.0 / cfg.grid;
  }
  std::string detail = "found";
  for (const auto& p : c1.saturation_points) detail += " (" + fmt(p[0]) + ", " + fmt(p[1]) + ")";
  check(out, "tangent bound saturation at (x0, y0) and (1, 1)", sat_ok, detail);

  const MomentRecord mom = sym2_povm_moments(restrict_sym(m_1to2().first));
  check_close(out, "moment sum of weights", mom.sum_w, 6.0, 1e-9);
  check_close(out, "quadratic moment |00>", mom.aa, 2.0, 1e-9);
  check_close(out, "quadratic moment |S>", mom.bb, 2.0, 1e-9);
  check_close(out, "quadratic moment |11>", mom.cc, 2.0, 1e-9);
  const double cross = std::max({std::abs(mom.ab), std::abs(mom.ac), std::abs(mom.bc)});
  check(out, "cross moments vanish", cross <= 1e-9, "max |cross| " + fmt(cross));
  return out;
}

std::vector<CheckResult> suite_designs(const VerifyConfig& cfg) {
  std::vector<CheckResult> out;
  const UnitarySet cl = clifford_mod_phase();
  const UnitarySet gb = g_bar();
  const UnitarySet gb2 = g_bar2();
  const UnitarySet pl = pauli_set();

  check(out, "clifford phase classes", cl.size() == 24, "size " + std::to_string(cl.size()));
  const Matrix v = hadamard() * phase_gate();
  const bool members_ok = cl.contains_phase_class(pauli_x()) && cl.contains_phase_class(pauli_y()) &&
                          cl.contains_phase_class(pauli_z()) && cl.contains_phase_class(hadamard()) &&
                          cl.contains_phase_class(phase_gate()) && cl.contains_phase_class(v);
  check(out, "clifford contains X, Y, Z, H, S, V", members_ok, "");
  check(out, "group sizes", gb.size() == 12 && gb2.size() == 6,
        std::to_string(gb.size()) + ", " + std::to_string(gb2.size()));

  check_close(out, "pauli frame potential t=1", frame_potential(pl, 1), 1.0, 1e-12);
  check_close(out, "clifford frame potential t=2", frame_potential(cl, 2), 2.0, 1e-9);
  check_close(out, "clifford frame potential t=3", frame_potential(cl, 3), 5.0, 1e-9);
  check_close(out, "gbar frame potential t=2", frame_potential(gb, 2), 2.0, 1e-9);

  check(out, "clifford is a 3-design", is_t_design(cl, 3), "");
  check(out, "gbar is a 2-design", is_t_design(gb, 2), "");
  check(out, "gbar2 is not a 2-design", !is_t_design(gb2, 2),
        "frame potential " + fmt(frame_potential(gb2, 2)));
  check(out, "gbar is not a 3-design", !is_t_design(gb, 3),
        "frame potential " + fmt(frame_potential(gb, 3)));

  bool lower = true;
  for (const UnitarySet* s : {&cl, &gb, &gb2, &pl})
    for (int t = 1; t <= 3; ++t)
      lower = lower && frame_potential(*s, t) >= haar_frame_potential(t) - 1e-10;
  check(out, "frame potential never below the Haar value", lower, "");

  const long long mc_samples = std::min<long long>(cfg.samples, 1000000);
  const HaarMoment hm = haar_frame_potential_mc(3, mc_samples, cfg.seed);
  check(out, "Haar moment t=3 Monte Carlo cross-check",
        std::abs(hm.mean - 5.0) <= 3.0 * hm.std_error,
        "mc " + fmt(hm.mean) + " +- " + fmt(hm.std_error));

  auto orbit_sum = [](const UnitarySet& us, const Ket& seed, int t, double weight) {
    Matrix acc = Matrix::Zero(seed.dim(), seed.dim());
    for (const Matrix& u : us.members) {
      Matrix ut = u;
      for (int i = 1; i < t; ++i) {
        Matrix next(ut.rows() * 2, ut.cols() * 2);
        for (Eigen::Index r = 0; r < ut.rows(); ++r)
          for (Eigen::Index c = 0; c < ut.cols(); ++c)
            next.block(r * 2, c * 2, 2, 2) = ut(r, c) * u;
        ut = std::move(next);
      }
      const Vector w = ut * seed.amplitudes;
      acc += weight / us.size() * (w * w.adjoint());
    }
    return acc;
  };
  const Matrix p2 = sym_projector(2).entries;
  const Matrix p2x1 = kron(sym_projector(2), identity_op(1)).entries;
  const double orbit2_gbar = max_abs(orbit_sum(gb, fiducial_pair_state(), 2, 3.0) - p2);
  const double orbit2_cl = max_abs(orbit_sum(cl, fiducial_pair_state(), 2, 3.0) - p2);
  const double orbit3_cl = max_abs(orbit_sum(cl, fiducial_triple_state(), 3, 6.0) - p2x1);
  check(out, "2-design orbit of the pair state resolves P2",
        orbit2_gbar <= 1e-10 && orbit2_cl <= 1e-10,
        "deviations " + fmt(orbit2_gbar) + ", " + fmt(orbit2_cl));
  check(out, "3-design orbit of the triple state resolves P2 (x) 1", orbit3_cl <= 1e-10,
        "deviation " + fmt(orbit3_cl));

  auto rng = stream_rng(cfg.seed, 17);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const Operator o = random_hermitian(2, rng);
    worst = std::max(worst,
                     max_abs(twirl_over_set(o, gb, 2).entries - twirl_over_set(o, cl, 2).entries));
  }
  check(out, "2-design twirls agree on random operators", worst <= 1e-9,
        "max entry deviation " + fmt(worst));
  return out;
}

std::vector<CheckResult> suite_invariants(const VerifyConfig& cfg) {
  std::vector<CheckResult> out;
  auto rng = stream_rng(cfg.seed, 19);

  double worst_lin = 0.0, worst_pos = 0.0;
  for (int i = 0; i < 20; ++i) {
    const Operator a = random_hermitian(3, rng);
    const Operator b = random_hermitian(3, rng);
    std::uniform_real_distribution<double> unif(-2.0, 2.0);
    const double al = unif(rng), be = unif(rng);
    const Matrix lhs = q_map(Operator(al * a.entries + be * b.entries, a.shape)).entries;
    const Matrix rhs = al * q_map(a).entries + be * q_map(b).entries;
    worst_lin = std::max(worst_lin, max_abs(lhs - rhs));

    const Matrix g = a.entries * a.entries;  // PSD
    const EigResult eig = herm_eig(q_map(Operator(g, a.shape)));
    worst_pos = std::max(worst_pos, -eig.eigenvalues.back());
  }
  check(out, "Q is linear", worst_lin <= 1e-9, "max deviation " + fmt(worst_lin));
  check(out, "Q preserves positivity", worst_pos <= 1e-10, "min eigenvalue -" + fmt(worst_pos));

  double worst_norm = 0.0, worst_bound = 0.0;
  for (int i = 0; i < 10; ++i) {
    const Povm p = random_povm(3, 5 + i % 4, rng);
    Matrix qsum = Matrix::Zero(2, 2);
    for (const Operator& e : p.elements) qsum += q_map(e).entries;
    worst_norm = std::max(worst_norm, max_abs(qsum - 60.0 * Matrix::Identity(2, 2)));
  }
  check(out, "Q normalization over complete POVMs", worst_norm <= 1e-9,
        "max deviation " + fmt(worst_norm));

  for (int i = 0; i < 200; ++i)
    worst_bound = std::max(worst_bound,
                           estimation_fidelity(random_povm(3, 4 + i % 5, rng)) - 0.8);
  check(out, "global fidelity cap 4/5 (200 random POVMs)", worst_bound <= 1e-10,
        "max excess " + fmt(worst_bound));

  double worst_sym = 0.0, worst_anti = 0.0;
  for (int i = 0; i < 50; ++i) {
    const Povm p = random_povm(3, 4 + i % 5, rng);
    const double f = estimation_fidelity(p);
    worst_sym = std::max(worst_sym, std::abs(estimation_fidelity(restrict_sym(p)) - f));
    worst_anti = std::max(worst_anti, estimation_fidelity(restrict_antisym(p)));
  }
  check(out, "symmetric restriction preserves fidelity (50 random POVMs)", worst_sym <= 1e-9,
        "max deviation " + fmt(worst_sym));
  check(out, "antisymmetric restriction has zero fidelity", worst_anti <= 1e-10,
        "max fidelity " + fmt(worst_anti));

  double worst_inv = 0.0;
  for (int i = 0; i < 20; ++i) {
    const Povm p = random_povm(3, 5, rng);
    const Matrix u = random_unitary(2, rng);
    Matrix u3 = u;
    for (int k = 1; k < 3; ++k) {
      Matrix next(u3.rows() * 2, u3.cols() * 2);
      for (Eigen::Index r = 0; r < u3.rows(); ++r)
        for (Eigen::Index c = 0; c < u3.cols(); ++c) next.block(r * 2, c * 2, 2, 2) = u3(r, c) * u;
      u3 = std::move(next);
    }
    std::vector<Operator> rot;
    for (const Operator& e : p.elements) {
      Matrix m = u3 * e.entries * u3.adjoint();
      m = 0.5 * (m + Matrix(m.adjoint()));
      rot.emplace_back(std::move(m), e.shape);
    }
    const Povm q = Povm::create(std::move(rot), identity_op(3));
    worst_inv = std::max(worst_inv, std::abs(estimation_fidelity(q) - estimation_fidelity(p)));
  }
  check(out, "symmetric local unitary invariance (20 random POVMs)", worst_inv <= 1e-10,
        "max deviation " + fmt(worst_inv));

  double worst_mono = 0.0;
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    const Povm p = random_povm(3, 6, rng);
    const int rows = 2 + i % 4;
    Eigen::MatrixXd lambda(rows, p.size());
    for (int c = 0; c < p.size(); ++c) {
      double col = 0.0;
      for (int r = 0; r < rows; ++r) { lambda(r, c) = unif(rng); col += lambda(r, c); }
      for (int r = 0; r < rows; ++r) lambda(r, c) /= col;
    }
    worst_mono = std::max(
        worst_mono, estimation_fidelity(coarse_grain(p, lambda)) - estimation_fidelity(p));
  }
  check(out, "coarse graining never increases fidelity (50 random)", worst_mono <= 1e-10,
        "max increase " + fmt(worst_mono));

  for (const std::string& name :
       {std::string("collective-octahedron"), std::string("local-xyz"), std::string("m-2to1"),
        std::string("m-1to2")}) {
    const Povm p = povm_by_name(name);
    const double f = estimation_fidelity(p);
    const McEstimate mc =
        average_fidelity_mc(p, optimal_estimators(p), cfg.samples, cfg.seed, cfg.workers);
    check(out, "Monte Carlo consistency " + name,
          std::abs(mc.mean - f) <= 3.0 * mc.std_error,
          "mc " + fmt(mc.mean) + " +- " + fmt(mc.std_error) + ", exact " + fmt(f));
  }

  const long long shots = 100000;
  int proto_idx = 0;
  for (const Protocol& proto : {protocol_2to1(), protocol_1to2()}) {
    const Ket psi = random_haar_ket(1, rng);
    const SimResult sim = simulate_protocol(proto, psi, shots, cfg.seed, cfg.workers);
    double tv = 0.0, sigma = 0.0;
    for (size_t j = 0; j < sim.probs.size(); ++j)
      for (size_t k = 0; k < sim.probs[j].size(); ++k) {
        const double pr = std::max(sim.probs[j][k], 0.0);
        const double emp = static_cast<double>(sim.counts[j][k]) / shots;
        tv += 0.5 * std::abs(emp - pr);
        sigma += 0.5 * std::sqrt(pr * (1.0 - pr) / shots);
      }
    const std::string pname = proto_idx++ == 0 ? "2to1" : "1to2";
    check(out, "sequential sampling matches Born distribution (" + pname + ")",
          tv <= 4.0 * sigma, "TV " + fmt(tv) + ", bound " + fmt(4.0 * sigma));
  }

  bool never = true;
  const Protocol p21 = protocol_2to1();
  for (int i = 0; i < 3; ++i) {
    const Ket psi = random_haar_ket(1, rng);
    const SimResult sim = simulate_protocol(p21, psi, 20000, cfg.seed + i, cfg.workers);
    for (long long cnt : sim.counts.back()) never = never && cnt == 0;
  }
  check(out, "singlet outcome never occurs on parallel spins", never, "");
  return out;
}

}  // namespace

std::vector<std::string> suite_names() {
  return {"table1", "appendixA", "appendixB", "appendixC", "designs", "invariants", "all"};
}

std::vector<CheckResult> run_suite(const std::string& suite, const VerifyConfig& cfg) {
  if (suite == "table1") return suite_table1(cfg);
  if (suite == "appendixA") return suite_appendix_a(cfg);
  if (suite == "appendixB") return suite_appendix_b(cfg);
  if (suite == "appendixC") return suite_appendix_c(cfg);
  if (suite == "designs") return suite_designs(cfg);
  if (suite == "invariants") return suite_invariants(cfg);
  if (suite == "all") {
    std::vector<CheckResult> out;
    for (const std::string& s : {std::string("table1"), std::string("appendixA"),
                                 std::string("appendixB"), std::string("appendixC"),
                                 std::string("designs"), std::string("invariants")}) {
      auto part = run_suite(s, cfg);
      out.insert(out.end(), part.begin(), part.end());
    }
    return out;
  }
  throw std::invalid_argument("unknown suite: " + suite);
}

}  // namespace spintriad
