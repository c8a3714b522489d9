#include <doctest.h>

#include <set>

#include "spintriad/bounds.hpp"
#include "spintriad/catalog.hpp"
#include "spintriad/designs.hpp"
#include "spintriad/estimation.hpp"
#include "spintriad/random.hpp"
#include "spintriad/symmetry.hpp"
#include "test_util.hpp"

using namespace spintriad;
using testutil::diff;

TEST_CASE("named states") {
  CHECK(fiducial_pair_state().norm() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(fiducial_triple_state().norm() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(branch_seed_state().norm() == doctest::Approx(1.0).epsilon(1e-14));

  CHECK(concurrence(fiducial_pair_state()) == doctest::Approx(1.0 / 8.0).epsilon(1e-12));

  // Hadamard rotation of the fiducial pair in the symmetric basis.
  const Matrix h2 = testutil::kron_pow(hadamard(), 2);
  const Vector rot = h2 * fiducial_pair_state().amplitudes;
  const double a = 3.0 * std::sqrt(2.0) / 8.0, b = std::sqrt(7.0) / 4.0;
  const double s = 1.0 / std::sqrt(2.0);
  Vector expected(4);
  expected << a, s * b, s * b, a;
  CHECK(diff(rot, expected) < 1e-12);

  // Norm of the estimator map output fixes the biseparable optimum.
  CHECK(spectral_norm(q_map(outer(fiducial_triple_state()))) / 20.0 ==
        doctest::Approx(analytic::biseparable()).epsilon(1e-12));
  CHECK(spectral_norm(q_map(outer(fiducial_triple_state()))) ==
        doctest::Approx(10.0 + 5.0 * std::sqrt(22.0) / 4.0).epsilon(1e-12));
}

TEST_CASE("octahedron POVM") {
  const Povm oct = octahedron_collective();
  REQUIRE(oct.size() == 7);
  CHECK(estimation_fidelity(oct) == doctest::Approx(0.8).epsilon(1e-12));

  Matrix rank1_sum = Matrix::Zero(8, 8);
  for (int j = 0; j < 6; ++j) rank1_sum += oct.elements[static_cast<size_t>(j)].entries;
  CHECK(diff(rank1_sum, sym_projector(3).entries) < 1e-12);

  // The remainder element decomposes into cyclic rotations of the
  // antisymmetric-pair projector.
  const Operator pi = kron(antisym_projector(2), identity_op(1));
  const Matrix w = permutation_operator(Permutation({1, 2, 0}), 3).entries;
  const Matrix decomp = (2.0 / 3.0) * (pi.entries + w * pi.entries * w.adjoint() +
                                       w.adjoint() * pi.entries * w);
  CHECK(diff(oct.elements.back().entries, decomp) < 1e-12);
}

TEST_CASE("local XYZ POVM") {
  const Povm p = local_xyz();
  REQUIRE(p.size() == 8);
  CHECK(estimation_fidelity(p) == doctest::Approx(analytic::local_xyz()).epsilon(1e-12));
  CHECK(estimation_fidelity(p) == doctest::Approx((3.0 + std::sqrt(3.0)) / 6.0).epsilon(1e-12));

  // Measurement bases of the three parties are pairwise mutually unbiased.
  const double s = 1.0 / std::sqrt(2.0);
  const std::vector<Ket> xb = {make_ket({s, s}), make_ket({s, -s})};
  const std::vector<Ket> yb = {make_ket({s, Complex(0, s)}), make_ket({s, Complex(0, -s)})};
  const std::vector<Ket> zb = {basis_ket(1, 0), basis_ket(1, 1)};
  CHECK(mub_check(xb, yb));
  CHECK(mub_check(yb, zb));
  CHECK(mub_check(xb, zb));
}

TEST_CASE("two-copy POVM") {
  const Povm p = m2_povm();
  REQUIRE(p.size() == 7);
  Matrix sum = Matrix::Zero(4, 4);
  for (const Operator& e : p.elements) sum += e.entries;
  CHECK(diff(sum, Matrix::Identity(4, 4)) < 1e-12);

  // The singlet outcome has probability zero on any two parallel spins.
  auto rng = stream_rng(21, 0);
  for (int trial = 0; trial < 10; ++trial) {
    const Ket psi = random_haar_ket(1, rng);
    const Ket pair = kron(psi, psi);
    const double prob =
        std::real(pair.amplitudes.dot(p.elements.back().entries * pair.amplitudes));
    CHECK(std::abs(prob) < 1e-14);
  }
}

TEST_CASE("2->1 adaptive POVM") {
  const Povm p = m_2to1();
  REQUIRE(p.size() == 13);
  CHECK(estimation_fidelity(p) == doctest::Approx(analytic::biseparable()).epsilon(1e-12));

  const Povm restricted = restrict_sym(p);
  CHECK(restricted.size() == 12);  // the antisymmetric remainder dies
  CHECK(std::abs(estimation_fidelity(restricted) - analytic::biseparable()) < 1e-12);
}

TEST_CASE("1->2 adaptive POVM") {
  const auto [flat, proto] = m_1to2();
  REQUIRE(flat.size() == 12);
  CHECK(estimation_fidelity(flat) == doctest::Approx(analytic::adaptive_1to2()).epsilon(1e-12));

  // Branch completeness.
  Matrix k0sum = Matrix::Zero(4, 4);
  for (const Operator& e : k0_povm().elements) k0sum += e.entries;
  CHECK(diff(k0sum, Matrix::Identity(4, 4)) < 1e-12);

  const double p_weight = (47.0 - 3.0 * std::sqrt(41.0)) / 216.0;
  CHECK(p_weight == doctest::Approx(0.12866).epsilon(1e-4));

  // The protocol measures the single copy first.
  CHECK(proto.direction == "1to2");
  CHECK(proto.first_subsystems == std::vector<int>{2});
  CHECK(proto.first.size() == 2);
}

TEST_CASE("adaptive composition") {
  // Composing the two-copy POVM with the steered single-copy bases
  // reproduces the 13-element adaptive POVM as a multiset.
  const Povm composed = flatten_protocol(protocol_2to1());
  const Povm target = m_2to1();
  REQUIRE(composed.size() == 13);
  for (const Operator& e : composed.elements) {
    double best = 1e9;
    for (const Operator& t : target.elements) best = std::min(best, diff(e.entries, t.entries));
    CHECK(best < 1e-12);
  }

  // Trivial branches reproduce first (x) identity.
  const Povm first = m2_povm();
  std::vector<Povm> trivial;
  for (int j = 0; j < first.size(); ++j) {
    std::vector<Operator> one;
    one.push_back(identity_op(1));
    trivial.push_back(Povm::create(std::move(one), identity_op(1)));
  }
  const Povm padded = adaptive_compose(first, trivial, {0, 1});
  REQUIRE(padded.size() == first.size());
  for (int j = 0; j < first.size(); ++j)
    CHECK(diff(padded.elements[static_cast<size_t>(j)].entries,
               kron(first.elements[static_cast<size_t>(j)], identity_op(1)).entries) < 1e-13);

  // Branch count mismatch.
  std::vector<Povm> short_branches(trivial.begin(), trivial.end() - 1);
  CHECK_THROWS_AS(adaptive_compose(first, short_branches, {0, 1}), std::invalid_argument);
}

TEST_CASE("protocol simulation statistics") {
  auto rng = stream_rng(22, 0);
  const Ket psi = random_haar_ket(1, rng);

  for (const Protocol& proto : {protocol_2to1(), protocol_1to2()}) {
    const long long shots = 20000;
    const SimResult sim = simulate_protocol(proto, psi, shots, 5);
    long long total = 0;
    double tv = 0.0, sigma = 0.0;
    for (size_t j = 0; j < sim.counts.size(); ++j) {
      for (size_t k = 0; k < sim.counts[j].size(); ++k) {
        total += sim.counts[j][k];
        const double pr = std::max(sim.probs[j][k], 0.0);
        tv += 0.5 * std::abs(static_cast<double>(sim.counts[j][k]) / shots - pr);
        sigma += 0.5 * std::sqrt(pr * (1.0 - pr) / shots);
      }
    }
    CHECK(total == shots);
    CHECK(tv <= 4.0 * sigma);
  }

  // Reproducibility.
  const SimResult a = simulate_protocol(protocol_2to1(), psi, 5000, 9);
  const SimResult b = simulate_protocol(protocol_2to1(), psi, 5000, 9);
  CHECK(a.counts == b.counts);
}

TEST_CASE("protocol simulation edge cases") {
  // The singlet first-stage outcome never occurs on parallel spins.
  auto rng = stream_rng(23, 0);
  const Protocol p21 = protocol_2to1();
  for (int trial = 0; trial < 3; ++trial) {
    const Ket psi = random_haar_ket(1, rng);
    const SimResult sim = simulate_protocol(p21, psi, 20000, 77 + trial);
    for (long long c : sim.counts.back()) CHECK(c == 0);
  }

  // Z-eigenstate input pins the first stage of the 1->2 protocol.
  const SimResult sim = simulate_protocol(protocol_1to2(), basis_ket(1, 0), 20000, 3);
  long long wrong = 0;
  for (long long c : sim.counts[1]) wrong += c;
  CHECK(wrong == 0);

  Vector bad(2);
  bad << 2.0, 0.0;
  CHECK_THROWS_AS(simulate_protocol(p21, Ket(bad, {2}), 10, 0), std::invalid_argument);
}

TEST_CASE("haar-input protocol run") {
  const HaarSimResult res = simulate_protocol_haar(protocol_2to1(), 50000, 11);
  CHECK(std::abs(res.fidelity.mean - analytic::biseparable()) < 3.0 * res.fidelity.std_error);
  double psum = 0.0;
  long long total = 0;
  for (size_t j = 0; j < res.sim.probs.size(); ++j)
    for (size_t k = 0; k < res.sim.probs[j].size(); ++k) {
      psum += res.sim.probs[j][k];
      total += res.sim.counts[j][k];
    }
  CHECK(psum == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(total == 50000);
}

TEST_CASE("concurrence") {
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(concurrence(make_ket({s, 0.0, 0.0, s})) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(concurrence(basis_ket(2, 0)) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(concurrence(fiducial_pair_state()) == doctest::Approx(0.125).epsilon(1e-12));
  CHECK_THROWS_AS(concurrence(basis_ket(1, 0)), std::invalid_argument);
}

TEST_CASE("mutually unbiased bases") {
  const double s = 1.0 / std::sqrt(2.0);
  const std::vector<Ket> zb = {basis_ket(1, 0), basis_ket(1, 1)};
  const std::vector<Ket> xb = {make_ket({s, s}), make_ket({s, -s})};
  CHECK(mub_check(zb, xb));
  CHECK_FALSE(mub_check(zb, zb));

  // Schmidt basis of the fiducial pair (computational) against the X basis.
  CHECK(mub_check(zb, xb));

  const std::vector<Ket> skew = {make_ket({1.0, 0.0}), make_ket({s, s})};
  CHECK_THROWS_AS(mub_check(zb, skew), std::invalid_argument);
}

TEST_CASE("canonical symmetric form") {
  CHECK(canonicalize_sym2(basis_ket(2, 0)).xi == doctest::Approx(0.0));
  CHECK(canonicalize_sym2(psi_plus()).xi == doctest::Approx(M_PI_2).epsilon(1e-12));
  CHECK(canonicalize_sym2(fiducial_pair_state()).xi ==
        doctest::Approx(std::asin(1.0 / 8.0)).epsilon(1e-12));

  auto rng = stream_rng(24, 0);
  for (int trial = 0; trial < 50; ++trial) {
    const Ket phi = random_sym2_ket(rng);
    const CanonicalSym2 canon = canonicalize_sym2(phi);
    CHECK(canon.xi >= -1e-12);
    CHECK(canon.xi <= M_PI_2 + 1e-12);
    const Matrix u2 = testutil::kron_pow(canon.u.entries, 2);
    Vector target = Vector::Zero(4);
    target(0) = std::cos(canon.xi / 2.0);
    target(3) = std::sin(canon.xi / 2.0);
    CHECK(std::norm(target.dot(u2 * phi.amplitudes)) > 1.0 - 1e-12);
    CHECK(std::abs(std::sin(canon.xi) - concurrence(phi)) < 1e-10);
  }

  const double s = 1.0 / std::sqrt(2.0);
  CHECK_THROWS_AS(canonicalize_sym2(make_ket({0.0, s, -s, 0.0})), std::invalid_argument);
}

TEST_CASE("rank-1 element factorization and moments") {
  const Povm restricted = restrict_sym(m_2to1());
  const auto decomp = sym2_decompose(restricted);
  REQUIRE(decomp.size() == 12);
  const double at = 3.0 * std::sqrt(2.0) / 8.0, bt = std::sqrt(7.0) / 4.0;
  for (const auto& e : decomp) {
    CHECK(e.weight == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(e.a == doctest::Approx(at).epsilon(1e-9));
    CHECK(e.b == doctest::Approx(bt).epsilon(1e-9));
    CHECK(e.c == doctest::Approx(at).epsilon(1e-9));
    CHECK(std::min(e.phi, 2.0 * M_PI - e.phi) < 1e-9);
  }

  const MomentRecord mom = sym2_povm_moments(restrict_sym(m_1to2().first));
  CHECK(mom.sum_w == doctest::Approx(6.0).epsilon(1e-12));
  CHECK(mom.aa == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(mom.bb == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(mom.cc == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(std::abs(mom.ab) < 1e-9);
  CHECK(std::abs(mom.ac) < 1e-9);
  CHECK(std::abs(mom.bc) < 1e-9);

  // A rank-2 element does not factor.
  const Povm oct_restricted = restrict_sym(octahedron_collective());
  CHECK_THROWS_AS(sym2_factor_element(oct_restricted.elements.back()), std::invalid_argument);
}

TEST_CASE("structure of the restricted optima") {
  // Every rank-1 element of the restricted 2->1 POVM: pair marginal has
  // concurrence 1/8 and the single-copy eigenbasis is unbiased with the pair
  // Schmidt basis on both parties.
  const Povm restricted = restrict_sym(m_2to1());
  for (const Operator& e : restricted.elements) {
    const double w = e.trace().real();
    const Operator rho(e.entries / w, e.shape);

    const Operator pair = partial_trace(rho, {0, 1});
    const EigResult pe = herm_eig(pair);
    REQUIRE(pe.eigenvalues[0] == doctest::Approx(1.0).epsilon(1e-9));  // pure
    CHECK(concurrence(pe.eigenvectors[0]) == doctest::Approx(0.125).epsilon(1e-9));

    Matrix schmidt(2, 2);
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) schmidt(r, c) = pe.eigenvectors[0].amplitudes(r * 2 + c);
    Eigen::JacobiSVD<Matrix> svd(schmidt, Eigen::ComputeFullU | Eigen::ComputeFullV);
    const std::vector<Ket> basis_a = {Ket(svd.matrixU().col(0), {2}), Ket(svd.matrixU().col(1), {2})};
    const std::vector<Ket> basis_b = {Ket(svd.matrixV().col(0).conjugate(), {2}),
                                      Ket(svd.matrixV().col(1).conjugate(), {2})};

    const Operator single = partial_trace(rho, {2});
    const EigResult se = herm_eig(single);
    const std::vector<Ket> basis_c = {se.eigenvectors[0], se.eigenvectors[1]};
    CHECK(mub_check(basis_a, basis_c));
    CHECK(mub_check(basis_b, basis_c));
  }

  // The restricted 1->2 POVM is not uniform: canonical angles differ.
  const Povm r12 = restrict_sym(m_1to2().first);
  std::set<long long> xis;
  for (const Operator& e : r12.elements) {
    const double w = e.trace().real();
    const Operator rho(e.entries / w, e.shape);
    const EigResult pe = herm_eig(partial_trace(rho, {0, 1}));
    const double xi = canonicalize_sym2(pe.eigenvectors[0]).xi;
    xis.insert(static_cast<long long>(std::llround(xi * 1e6)));
  }
  CHECK(xis.size() >= 2);
}

TEST_CASE("catalog lookup") {
  for (const std::string& name : catalog_names()) CHECK(povm_by_name(name).size() > 0);
  CHECK_THROWS_AS(povm_by_name("nonsense"), std::invalid_argument);
  CHECK(analytic_fidelity("collective-octahedron").value() == doctest::Approx(0.8));
  CHECK_FALSE(analytic_fidelity("m2").has_value());
}
