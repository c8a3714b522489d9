#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spintriad/estimation.hpp"
#include "spintriad/tensor.hpp"

namespace spintriad {

// Named states.
Ket psi_plus();               // (|01> + |10>)/sqrt(2)
Ket fiducial_pair_state();    // concurrence-1/8 symmetric two-qubit seed state
Ket fiducial_triple_state();  // fiducial pair (x) |+>
Ket branch_seed_state();      // two-qubit seed of the 1->2 branch measurements

// Exact fidelity values of the four strategies.
namespace analytic {
double collective();
double biseparable();  // also the 2->1 adaptive value
double adaptive_1to2();
double local_xyz();
}  // namespace analytic

/// Seven-outcome collective measurement built on the six Pauli eigenstates;
/// optimal without restrictions.
Povm octahedron_collective();

/// Product of X, Y, Z projective measurements on the three parties.
Povm local_xyz();

/// Two-copy measurement: orbit of the fiducial pair under {1,V,V^2}x{1,X}
/// with weight 1/2, completed by the singlet projector.
Povm m2_povm();

/// Optimal 2->1 adaptive measurement: orbit of the fiducial triple under
/// {1,V,V^2}x{1,X,Y,Z} with weight 1/2, plus the antisymmetric remainder.
Povm m_2to1();

/// Branch measurements of the 1->2 strategy.
Povm k0_povm();
Povm k1_povm();

/// Measurement tree with classical branching: a first-stage POVM on the
/// declared subsystems steers a per-outcome second stage on the complement.
struct Protocol {
  Povm first;
  std::vector<int> first_subsystems;  // 0-based qubit indices of the first stage
  std::vector<Povm> branches;         // one per first-stage element
  std::string direction;              // "2to1" or "1to2"
};

Protocol protocol_2to1();
Protocol protocol_1to2();

/// Optimal 1->2 adaptive measurement plus its protocol form (single-copy Z
/// measurement first, branch measurement on the remaining pair).
std::pair<Povm, Protocol> m_1to2();

/// Flatten first (x) branch elements into one POVM in canonical subsystem
/// order A,B,C.
Povm adaptive_compose(const Povm& first, const std::vector<Povm>& branches,
                      const std::vector<int>& first_subsystems);
Povm flatten_protocol(const Protocol& proto);

struct SimResult {
  std::vector<std::vector<long long>> counts;  // [first outcome][branch outcome]
  std::vector<std::vector<double>> probs;      // exact joint Born probabilities
  long long shots = 0;
  uint64_t seed = 0;
};

/// Shot-by-shot simulation of the protocol on psi^{x3}. Joint probabilities
/// are exact (all stages are destructive measurements on disjoint
/// subsystems); sampling is sequential: first-stage outcome, then branch.
SimResult simulate_protocol(const Protocol& proto, const Ket& psi, long long shots,
                            uint64_t seed, int workers = 1);

/// Protocol run on a fresh Haar-random input per shot: outcome histogram
/// (probs holds the exact Haar-averaged distribution) plus the Monte Carlo
/// estimate of the average fidelity with optimal estimators.
struct HaarSimResult {
  SimResult sim;
  McEstimate fidelity;
};
HaarSimResult simulate_protocol_haar(const Protocol& proto, long long shots, uint64_t seed,
                                     int workers = 1);

/// Pure-state concurrence |<psi| Y(x)Y |psi*>| of a two-qubit state.
double concurrence(const Ket& psi);

/// True iff all cross overlaps |<psi_j|phi_k>|^2 equal 1/2. Both inputs must
/// be orthonormal qubit bases.
bool mub_check(const std::vector<Ket>& basis1, const std::vector<Ket>& basis2,
               double tol = 1e-9);

struct CanonicalSym2 {
  Operator u;  // single-qubit unitary; u^{x2} maps the input to canonical form
  double xi;   // canonical angle in [0, pi/2]; sin(xi) is the concurrence
};

/// Bring a symmetric two-qubit state to the form
/// cos(xi/2)|00> + sin(xi/2)|11> (up to global phase).
CanonicalSym2 canonicalize_sym2(const Ket& phi);

/// Canonical data of one rank-1 element w |Phi><Phi| (x) |phi_C><phi_C| on
/// Sym2 (x) H: the aligned complex coefficients (ca, cb, cc) of the pair
/// factor in the symmetric basis, and their phase-canonical real form
/// (a, b, c, phi).
struct Sym2Element {
  double weight;
  Complex ca, cb, cc;
  double a, b, c, phi;
  Matrix align_u;  // maps |0> to the single-copy factor
};

Sym2Element sym2_factor_element(const Operator& element);
std::vector<Sym2Element> sym2_decompose(const Povm& p);

/// Moment sums of the aligned coefficients over a rank-1 POVM on Sym2 (x) H:
/// quadratic moments sum_j w |ca|^2 etc. and cross moments sum_j w ca cb*.
/// For any POVM of this kind the quadratic moments equal 2 and the cross
/// moments vanish.
struct MomentRecord {
  double sum_w = 0.0;
  double aa = 0.0, bb = 0.0, cc = 0.0;
  Complex ab, ac, bc;
};
MomentRecord sym2_povm_moments(const Povm& p);

/// Catalog lookup by CLI-facing name: "collective-octahedron", "local-xyz",
/// "m2", "m-2to1", "m-1to2", "k0", "k1". Throws on unknown names.
Povm povm_by_name(const std::string& name);
std::optional<double> analytic_fidelity(const std::string& name);
std::optional<std::string> analytic_expression(const std::string& name);
std::vector<std::string> catalog_names();

}  // namespace spintriad
