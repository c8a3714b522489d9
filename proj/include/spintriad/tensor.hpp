#pragma once

#include <Eigen/Dense>
#include <complex>
#include <string>
#include <vector>

namespace spintriad {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Hermiticity is checked against the max entrywise deviation |A - A^dag|.
inline constexpr double kHermTol = 1e-10;
// Dense storage only; registers are capped at 4 qubits (side <= 16).
inline constexpr int kMaxDim = 16;

/// Pure state on a register of qubit subsystems. Subsystem 0 is the leftmost
/// tensor factor and the most significant digit of the basis index.
struct Ket {
  Vector amplitudes;
  std::vector<int> shape;

  Ket() = default;
  Ket(Vector amps, std::vector<int> shp);

  int dim() const { return static_cast<int>(amplitudes.size()); }
  int num_subsystems() const { return static_cast<int>(shape.size()); }
  double norm() const { return amplitudes.norm(); }
  Ket normalized() const;
};

/// Square operator on a register of qubit subsystems, same index convention
/// as Ket.
struct Operator {
  Matrix entries;
  std::vector<int> shape;

  Operator() = default;
  Operator(Matrix m, std::vector<int> shp);

  int dim() const { return static_cast<int>(entries.rows()); }
  int num_subsystems() const { return static_cast<int>(shape.size()); }
  Complex trace() const { return entries.trace(); }
  bool is_hermitian(double tol = kHermTol) const;
};

int shape_dim(const std::vector<int>& shape);
std::vector<int> qubit_shape(int n);

Operator identity_op(int n_qubits);
Operator zero_op(int n_qubits);
Operator outer(const Ket& k);
Operator outer(const Ket& a, const Ket& b);  // |a><b|

Ket kron(const Ket& a, const Ket& b);
Operator kron(const Operator& a, const Operator& b);
Ket ket_power(const Ket& a, int n);

/// Trace out every subsystem not listed in `keep` (0-based indices, kept in
/// their original order). Throws on an invalid index set.
Operator partial_trace(const Operator& a, const std::vector<int>& keep);

struct EigResult {
  std::vector<double> eigenvalues;  // descending
  std::vector<Ket> eigenvectors;    // orthonormal, phase-fixed
};

/// Eigendecomposition of a Hermitian operator. Eigenvalues come out in
/// descending order (ties keep the solver order for reproducibility) and each
/// eigenvector is rotated so its first component of largest magnitude is real
/// nonnegative. Throws if the input fails the Hermiticity tolerance.
EigResult herm_eig(const Operator& a);

/// Largest |eigenvalue| of a Hermitian operator.
double spectral_norm(const Operator& a);

double max_abs(const Matrix& m);

// Fixed single-qubit gates.
Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();
Matrix hadamard();
Matrix phase_gate();  // diag(1, i)

Ket basis_ket(int n_qubits, int index);
Ket make_ket(std::vector<Complex> amps);

}  // namespace spintriad
