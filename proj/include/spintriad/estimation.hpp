#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "spintriad/tensor.hpp"

namespace spintriad {

// POVM validity tolerances.
inline constexpr double kPsdTol = 1e-10;          // min eigenvalue >= -kPsdTol
inline constexpr double kCompletenessTol = 1e-10; // max entry of |sum - space|
inline constexpr double kPruneTol = 1e-12;        // elements below this trace are dropped

/// Measurement with a declared completeness target: the elements are positive
/// and sum to `space`, which is the full identity or a projector such as
/// P2 (x) 1. Zero elements are pruned at construction.
struct Povm {
  std::vector<Operator> elements;
  Operator space;
  std::vector<std::string> labels;  // empty, or one label per element

  static Povm create(std::vector<Operator> elements, Operator space,
                     std::vector<std::string> labels = {});

  int size() const { return static_cast<int>(elements.size()); }
  int num_qubits() const { return space.num_subsystems(); }
};

/// The estimator map: M on n qubits -> (n+1)! tr_{0..n-1}[P_{n+1} (M (x) 1)],
/// a single-qubit operator. The input need not be Hermitian.
Operator q_map(const Operator& m);

/// sum_j ||q_map(M_j)|| / (d (d+1) ... (d+N)) with d = 2. Equals the best
/// average fidelity achievable with any estimator assignment.
double estimation_fidelity(const Povm& p);

/// One single-qubit pure state per element: the top eigenvector of q_map(M_j)
/// under the fixed phase/tie-break convention.
std::vector<Ket> optimal_estimators(const Povm& p);

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  long long samples = 0;
  uint64_t seed = 0;
};

/// Haar-averaged fidelity by Monte Carlo: draws |psi>, accumulates
/// sum_j tr[(|psi><psi|)^{xN} M_j] <psi|rho_j|psi>. Workers get independent
/// seed-derived streams and results merge by streaming mean/variance, so the
/// output depends only on (seed, workers) and is bit-exact for workers = 1.
McEstimate average_fidelity_mc(const Povm& p, const std::vector<Ket>& estimators,
                               long long samples, uint64_t seed, int workers = 1);

/// Conjugate every element by P_{N-1} (x) 1 (symmetric restriction); the
/// completeness target becomes the conjugated space. Fidelity is unchanged.
Povm restrict_sym(const Povm& p);

/// Antisymmetric counterpart; the result always has zero estimation fidelity.
Povm restrict_antisym(const Povm& p);

/// Post-process outcomes by a stochastic matrix (columns sum to 1, one column
/// per input element): A_j = sum_k Lambda_{jk} B_k.
Povm coarse_grain(const Povm& p, const Eigen::MatrixXd& lambda);

/// Random complete POVM: Gaussian Gram operators renormalized by the inverse
/// square root of their sum.
Povm random_povm(int n_qubits, int n_elements, std::mt19937_64& rng);

struct FidelityReport {
  std::string strategy;
  std::optional<std::string> analytic_expr;
  std::optional<double> analytic;
  double computed = 0.0;
  std::optional<double> mc_mean;
  std::optional<double> mc_std_error;
  long long samples = 0;
  uint64_t seed = 0;
};

}  // namespace spintriad
