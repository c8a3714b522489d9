#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "spintriad/tensor.hpp"

namespace spintriad {

uint64_t splitmix64(uint64_t x);

/// Independent generator for worker `stream` derived from a base seed.
std::mt19937_64 stream_rng(uint64_t seed, uint64_t stream);

/// Streaming mean/variance accumulator with a deterministic merge, so
/// worker-split Monte Carlo results are independent of the split up to
/// floating-point reassociation.
struct RunningStats {
  long long n = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++n;
    const double delta = x - mean;
    mean += delta / static_cast<double>(n);
    m2 += delta * (x - mean);
  }

  void merge(const RunningStats& o) {
    if (o.n == 0) return;
    if (n == 0) {
      *this = o;
      return;
    }
    const double delta = o.mean - mean;
    const long long tot = n + o.n;
    mean += delta * static_cast<double>(o.n) / static_cast<double>(tot);
    m2 += o.m2 + delta * delta * static_cast<double>(n) * static_cast<double>(o.n) /
                     static_cast<double>(tot);
    n = tot;
  }

  double std_error() const {
    if (n < 2) return 0.0;
    return std::sqrt(m2 / static_cast<double>(n - 1) / static_cast<double>(n));
  }
};

/// Haar-random pure state: i.i.d. complex Gaussian amplitudes, normalized.
Ket random_haar_ket(int n_qubits, std::mt19937_64& rng);

/// Haar-random unitary via QR of a complex Gaussian matrix.
Matrix random_unitary(int dim, std::mt19937_64& rng);

Operator random_hermitian(int n_qubits, std::mt19937_64& rng);

/// Random state in the two-qubit symmetric subspace.
Ket random_sym2_ket(std::mt19937_64& rng);

}  // namespace spintriad
