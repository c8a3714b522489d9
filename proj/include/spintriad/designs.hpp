#pragma once

#include <string>
#include <vector>

#include "spintriad/tensor.hpp"

namespace spintriad {

/// Finite set of single-qubit unitaries, one representative per phase class.
struct UnitarySet {
  std::string name;
  std::vector<Matrix> members;

  int size() const { return static_cast<int>(members.size()); }
  bool contains_phase_class(const Matrix& u, double tol = 1e-9) const;
};

/// Scale a unitary so its first nonzero entry (row-major) is real positive.
Matrix canonical_phase(const Matrix& u);

UnitarySet pauli_set();            // {1, X, Y, Z}
UnitarySet clifford_mod_phase();   // closure of <H, S>, 24 phase classes
UnitarySet g_bar();                // {1, V, V^2} x {1, X, Y, Z}, V = HS
UnitarySet g_bar2();               // {1, V, V^2} x {1, X}

/// Lookup by CLI-facing name: "pauli", "clifford", "gbar", "gbar2".
UnitarySet unitary_set_by_name(const std::string& name);

/// (1/|U|^2) sum_{j,k} |tr(U_j^dag U_k)|^{2t}
double frame_potential(const UnitarySet& us, int t);

/// Haar moment of |tr U|^{2t} for qubits: 1, 2, 5 for t = 1, 2, 3.
double haar_frame_potential(int t);

/// Monte Carlo estimate of the Haar moment, for cross-validation.
struct HaarMoment {
  double mean;
  double std_error;
};
HaarMoment haar_frame_potential_mc(int t, long long samples, uint64_t seed);

/// Frame-potential criterion: the potential is always >= the Haar value, with
/// equality exactly for t-designs.
bool is_t_design(const UnitarySet& us, int t, double tol = 1e-9);

}  // namespace spintriad
