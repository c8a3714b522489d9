#include <doctest.h>

#include "spintriad/random.hpp"
#include "spintriad/tensor.hpp"
#include "test_util.hpp"

using namespace spintriad;
using testutil::diff;

TEST_CASE("kron basics") {
  const Operator i2 = identity_op(1);
  CHECK(diff(kron(i2, i2).entries, Matrix::Identity(4, 4)) == 0.0);

  const Operator z(pauli_z(), {2});
  Matrix zz = Matrix::Zero(4, 4);
  zz(0, 0) = 1; zz(1, 1) = -1; zz(2, 2) = -1; zz(3, 3) = 1;
  CHECK(diff(kron(z, z).entries, zz) == 0.0);

  // Bit flip on subsystem 0 (the leftmost, most significant factor).
  const Operator x1 = kron(Operator(pauli_x(), {2}), i2);
  const Vector v = x1.entries * basis_ket(2, 0).amplitudes;
  CHECK(diff(v, basis_ket(2, 2).amplitudes) == 0.0);  // |00> -> |10>
}

TEST_CASE("kron associativity is entrywise exact") {
  auto rng = stream_rng(1, 0);
  for (int trial = 0; trial < 10; ++trial) {
    const Operator a(testutil::dyadic_matrix(2, rng), {2});
    const Operator b(testutil::dyadic_matrix(2, rng), {2});
    const Operator c(testutil::dyadic_matrix(2, rng), {2});
    CHECK(diff(kron(kron(a, b), c).entries, kron(a, kron(b, c)).entries) == 0.0);
  }
}

TEST_CASE("partial trace on product and entangled states") {
  const Operator rho00 = outer(basis_ket(2, 0));
  CHECK(diff(partial_trace(rho00, {1}).entries, outer(basis_ket(1, 0)).entries) < 1e-15);

  const double s = 1.0 / std::sqrt(2.0);
  const Ket bell = make_ket({s, 0.0, 0.0, s});
  CHECK(diff(partial_trace(outer(bell), {0}).entries, 0.5 * Matrix::Identity(2, 2)) < 1e-15);
}

TEST_CASE("partial trace of the four-qubit symmetric projector") {
  const Operator p4 = testutil::dicke_sym4();
  const Operator marginal = partial_trace(p4, {3});
  CHECK(diff(marginal.entries, 2.5 * Matrix::Identity(2, 2)) < 1e-12);
  CHECK(std::abs(marginal.trace().real() - p4.trace().real()) < 1e-12);
}

TEST_CASE("partial trace of a product factorizes") {
  auto rng = stream_rng(2, 0);
  for (int trial = 0; trial < 5; ++trial) {
    const Operator a = random_hermitian(2, rng);
    const Operator b = random_hermitian(1, rng);
    const Operator traced = partial_trace(kron(a, b), {0, 1});
    CHECK(diff(traced.entries, b.trace() * a.entries) < 1e-12);
  }
}

TEST_CASE("partial trace rejects invalid index sets") {
  const Operator rho = outer(basis_ket(2, 0));
  CHECK_THROWS_AS(partial_trace(rho, {2}), std::invalid_argument);
  CHECK_THROWS_AS(partial_trace(rho, {0, 0}), std::invalid_argument);
}

TEST_CASE("herm_eig on fixed gates") {
  const EigResult ez = herm_eig(Operator(pauli_z(), {2}));
  CHECK(ez.eigenvalues[0] == doctest::Approx(1.0));
  CHECK(ez.eigenvalues[1] == doctest::Approx(-1.0));
  CHECK(diff(ez.eigenvectors[0].amplitudes, basis_ket(1, 0).amplitudes) < 1e-12);
  CHECK(diff(ez.eigenvectors[1].amplitudes, basis_ket(1, 1).amplitudes) < 1e-12);

  const double s = 1.0 / std::sqrt(2.0);
  const EigResult ex = herm_eig(Operator(pauli_x(), {2}));
  CHECK(diff(ex.eigenvectors[0].amplitudes, make_ket({s, s}).amplitudes) < 1e-12);
  CHECK(diff(ex.eigenvectors[1].amplitudes, make_ket({s, -s}).amplitudes) < 1e-12);
}

TEST_CASE("herm_eig reconstruction on random Hermitian matrices") {
  auto rng = stream_rng(3, 0);
  for (int n = 1; n <= 4; ++n) {
    const Operator a = random_hermitian(n, rng);
    const EigResult eig = herm_eig(a);
    Matrix rec = Matrix::Zero(a.dim(), a.dim());
    for (int k = 0; k < a.dim(); ++k) {
      const Vector& v = eig.eigenvectors[static_cast<size_t>(k)].amplitudes;
      rec += eig.eigenvalues[static_cast<size_t>(k)] * (v * v.adjoint());
    }
    CHECK(diff(rec, a.entries) < 1e-10);
    for (int k = 0; k + 1 < a.dim(); ++k)
      CHECK(eig.eigenvalues[static_cast<size_t>(k)] >= eig.eigenvalues[static_cast<size_t>(k + 1)]);
  }
}

TEST_CASE("herm_eig rejects non-Hermitian input") {
  Matrix m(2, 2);
  m << 0, 1, 0, 0;
  CHECK_THROWS_AS(herm_eig(Operator(m, {2})), std::invalid_argument);
}

TEST_CASE("spectral norm") {
  CHECK(spectral_norm(Operator(pauli_z(), {2})) == doctest::Approx(1.0));
  auto rng = stream_rng(4, 0);
  const Operator a = random_hermitian(3, rng);
  const Matrix u = random_unitary(8, rng);
  const Operator rotated(u * a.entries * u.adjoint(), a.shape);
  CHECK(std::abs(spectral_norm(rotated) - spectral_norm(a)) < 1e-10);
}

TEST_CASE("shape validation") {
  CHECK_THROWS_AS(Ket(Vector::Zero(3), {2, 2}), std::invalid_argument);
  CHECK_THROWS_AS(Operator(Matrix::Zero(2, 3), {2}), std::invalid_argument);
  CHECK_THROWS_AS(Operator(Matrix::Zero(32, 32), qubit_shape(5)), std::invalid_argument);
}
