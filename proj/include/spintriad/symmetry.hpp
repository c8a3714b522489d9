#pragma once

#include <vector>

#include "spintriad/designs.hpp"
#include "spintriad/tensor.hpp"

namespace spintriad {

/// Permutation of party indices {0..n-1}. Composition convention:
/// (sigma * tau)(i) = sigma(tau(i)).
struct Permutation {
  std::vector<int> image;
  int parity = 1;

  explicit Permutation(std::vector<int> img);
  static Permutation identity(int n);
  int size() const { return static_cast<int>(image.size()); }
  int operator()(int i) const { return image[static_cast<size_t>(i)]; }
  Permutation compose(const Permutation& other) const;
};

std::vector<Permutation> all_permutations(int n);

/// Unitary that permutes tensor factors: the factor at position i moves to
/// position sigma(i), so W_sigma W_tau = W_{sigma*tau}.
Operator permutation_operator(const Permutation& sigma, int n);

/// Projector onto the symmetric subspace of n qubits (trace n+1).
Operator sym_projector(int n);

/// Projector onto the antisymmetric subspace of n qubits.
Operator antisym_projector(int n);

/// Conjugate an operator on subsystems currently ordered by `current_labels`
/// into canonical label order 0..n-1.
Operator reorder_subsystems(const Operator& a, const std::vector<int>& current_labels);

/// Closed form of the Haar average of U^{x3} rho U^{dag x3} for the product
/// state (a|00> + b|S> + c e^{i phi}|11>) x |0>; the phase drops out.
/// Requires a^2 + b^2 + c^2 = 1.
Operator product_twirl_closed_form(double a, double b, double c);

/// (1/|U|) sum_j U_j^{xt} O U_j^{dag xt}; equals the Haar twirl when the set
/// is a t-design.
Operator twirl_over_set(const Operator& o, const UnitarySet& us, int t);

}  // namespace spintriad
