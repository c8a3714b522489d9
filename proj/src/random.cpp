#include "spintriad/random.hpp"

#include <cmath>

namespace spintriad {

uint64_t splitmix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::mt19937_64 stream_rng(uint64_t seed, uint64_t stream) {
  return std::mt19937_64(splitmix64(splitmix64(seed) + 0x9E3779B97F4A7C15ULL * (stream + 1)));
}

Ket random_haar_ket(int n_qubits, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  const int d = 1 << n_qubits;
  Vector v(d);
  for (int i = 0; i < d; ++i) v(i) = Complex(g(rng), g(rng));
  v /= v.norm();
  return Ket(std::move(v), qubit_shape(n_qubits));
}

Matrix random_unitary(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix a(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) a(i, j) = Complex(g(rng), g(rng));
  Eigen::HouseholderQR<Matrix> qr(a);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR();
  for (int i = 0; i < dim; ++i) {
    const Complex d = r(i, i);
    if (std::abs(d) > 0.0) q.col(i) *= d / std::abs(d);
  }
  return q;
}

Operator random_hermitian(int n_qubits, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  const int d = 1 << n_qubits;
  Matrix a(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) a(i, j) = Complex(g(rng), g(rng));
  Matrix h = 0.5 * (a + a.adjoint());
  return Operator(std::move(h), qubit_shape(n_qubits));
}

Ket random_sym2_ket(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Complex ca(g(rng), g(rng)), cb(g(rng), g(rng)), cc(g(rng), g(rng));
  const double s = 1.0 / std::sqrt(2.0);
  Vector v(4);
  v << ca, s * cb, s * cb, cc;
  v /= v.norm();
  return Ket(std::move(v), qubit_shape(2));
}

}  // namespace spintriad
