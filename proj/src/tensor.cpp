#include "spintriad/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include <unsupported/Eigen/KroneckerProduct>

namespace spintriad {

int shape_dim(const std::vector<int>& shape) {
  int prod = 1;
  for (int d : shape) {
    if (d < 1) throw std::invalid_argument("shape entries must be positive");
    prod *= d;
  }
  return prod;
}

std::vector<int> qubit_shape(int n) { return std::vector<int>(static_cast<size_t>(n), 2); }

Ket::Ket(Vector amps, std::vector<int> shp) : amplitudes(std::move(amps)), shape(std::move(shp)) {
  if (shape_dim(shape) != amplitudes.size())
    throw std::invalid_argument("Ket: amplitude length does not match shape");
  if (amplitudes.size() > kMaxDim) throw std::invalid_argument("Ket: register exceeds 4-qubit cap");
}

Ket Ket::normalized() const {
  double n = norm();
  if (n <= 0.0) throw std::invalid_argument("Ket: cannot normalize zero vector");
  return Ket(amplitudes / n, shape);
}

Operator::Operator(Matrix m, std::vector<int> shp) : entries(std::move(m)), shape(std::move(shp)) {
  if (entries.rows() != entries.cols()) throw std::invalid_argument("Operator: matrix must be square");
  if (shape_dim(shape) != entries.rows())
    throw std::invalid_argument("Operator: matrix side does not match shape");
  if (entries.rows() > kMaxDim) throw std::invalid_argument("Operator: register exceeds 4-qubit cap");
}

bool Operator::is_hermitian(double tol) const {
  return max_abs(entries - entries.adjoint()) <= tol;
}

double max_abs(const Matrix& m) {
  double v = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) v = std::max(v, std::abs(m(i, j)));
  return v;
}

Operator identity_op(int n_qubits) {
  int d = 1 << n_qubits;
  return Operator(Matrix::Identity(d, d), qubit_shape(n_qubits));
}

Operator zero_op(int n_qubits) {
  int d = 1 << n_qubits;
  return Operator(Matrix::Zero(d, d), qubit_shape(n_qubits));
}

Operator outer(const Ket& k) {
  return Operator(k.amplitudes * k.amplitudes.adjoint(), k.shape);
}

Operator outer(const Ket& a, const Ket& b) {
  if (a.shape != b.shape) throw std::invalid_argument("outer: shape mismatch");
  return Operator(a.amplitudes * b.amplitudes.adjoint(), a.shape);
}

Ket kron(const Ket& a, const Ket& b) {
  std::vector<int> shape = a.shape;
  shape.insert(shape.end(), b.shape.begin(), b.shape.end());
  Vector amps = Eigen::kroneckerProduct(a.amplitudes, b.amplitudes);
  return Ket(std::move(amps), std::move(shape));
}

Operator kron(const Operator& a, const Operator& b) {
  std::vector<int> shape = a.shape;
  shape.insert(shape.end(), b.shape.begin(), b.shape.end());
  Matrix m = Eigen::kroneckerProduct(a.entries, b.entries);
  return Operator(std::move(m), std::move(shape));
}

Ket ket_power(const Ket& a, int n) {
  if (n < 1) throw std::invalid_argument("ket_power: n must be >= 1");
  Ket out = a;
  for (int i = 1; i < n; ++i) out = kron(out, a);
  return out;
}

namespace {

// Mixed-radix digit strides, subsystem 0 most significant.
std::vector<int> strides_for(const std::vector<int>& shape) {
  std::vector<int> st(shape.size(), 1);
  for (int i = static_cast<int>(shape.size()) - 2; i >= 0; --i) st[i] = st[i + 1] * shape[i + 1];
  return st;
}

}  // namespace

Operator partial_trace(const Operator& a, const std::vector<int>& keep) {
  const int n = a.num_subsystems();
  std::vector<bool> kept(static_cast<size_t>(n), false);
  for (int k : keep) {
    if (k < 0 || k >= n) throw std::invalid_argument("partial_trace: subsystem index out of range");
    if (kept[static_cast<size_t>(k)]) throw std::invalid_argument("partial_trace: duplicate subsystem index");
    kept[static_cast<size_t>(k)] = true;
  }

  std::vector<int> keep_sorted;
  std::vector<int> traced;
  for (int i = 0; i < n; ++i) (kept[static_cast<size_t>(i)] ? keep_sorted : traced).push_back(i);

  std::vector<int> out_shape;
  for (int i : keep_sorted) out_shape.push_back(a.shape[static_cast<size_t>(i)]);
  const int dk = shape_dim(out_shape);
  int dt = 1;
  for (int i : traced) dt *= a.shape[static_cast<size_t>(i)];

  const std::vector<int> st = strides_for(a.shape);
  std::vector<int> kst, tst, kdim, tdim;
  for (int i : keep_sorted) { kst.push_back(st[static_cast<size_t>(i)]); kdim.push_back(a.shape[static_cast<size_t>(i)]); }
  for (int i : traced) { tst.push_back(st[static_cast<size_t>(i)]); tdim.push_back(a.shape[static_cast<size_t>(i)]); }

  auto expand = [](int idx, const std::vector<int>& dims, const std::vector<int>& strides) {
    int full = 0;
    for (int i = static_cast<int>(dims.size()) - 1; i >= 0; --i) {
      full += (idx % dims[static_cast<size_t>(i)]) * strides[static_cast<size_t>(i)];
      idx /= dims[static_cast<size_t>(i)];
    }
    return full;
  };

  Matrix out = Matrix::Zero(dk, dk);
  for (int ik = 0; ik < dk; ++ik) {
    const int ibase = expand(ik, kdim, kst);
    for (int jk = 0; jk < dk; ++jk) {
      const int jbase = expand(jk, kdim, kst);
      Complex sum = 0.0;
      for (int it = 0; it < dt; ++it) {
        const int t = expand(it, tdim, tst);
        sum += a.entries(ibase + t, jbase + t);
      }
      out(ik, jk) = sum;
    }
  }
  if (out_shape.empty()) out_shape = {1};
  return Operator(std::move(out), std::move(out_shape));
}

EigResult herm_eig(const Operator& a) {
  if (!a.is_hermitian())
    throw std::invalid_argument("herm_eig: input is not Hermitian within tolerance");
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a.entries);
  if (solver.info() != Eigen::Success) throw std::runtime_error("herm_eig: eigensolver failed");

  const int d = a.dim();
  std::vector<int> order(static_cast<size_t>(d));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
    return solver.eigenvalues()(i) > solver.eigenvalues()(j);
  });

  EigResult res;
  res.eigenvalues.reserve(static_cast<size_t>(d));
  res.eigenvectors.reserve(static_cast<size_t>(d));
  for (int idx : order) {
    res.eigenvalues.push_back(solver.eigenvalues()(idx));
    Vector v = solver.eigenvectors().col(idx);
    // Phase convention: first component of largest magnitude made real >= 0.
    int arg = 0;
    double best = 0.0;
    for (int i = 0; i < d; ++i) {
      double m = std::abs(v(i));
      if (m > best + 1e-12) { best = m; arg = i; }
    }
    if (best > 0.0) v *= std::conj(v(arg)) / std::abs(v(arg));
    res.eigenvectors.emplace_back(std::move(v), a.shape);
  }
  return res;
}

double spectral_norm(const Operator& a) {
  EigResult e = herm_eig(a);
  return std::max(std::abs(e.eigenvalues.front()), std::abs(e.eigenvalues.back()));
}

Matrix pauli_x() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

Matrix pauli_y() {
  Matrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

Matrix pauli_z() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

Matrix hadamard() {
  Matrix m(2, 2);
  const double s = 1.0 / std::sqrt(2.0);
  m << s, s, s, -s;
  return m;
}

Matrix phase_gate() {
  Matrix m(2, 2);
  m << 1, 0, 0, Complex(0, 1);
  return m;
}

Ket basis_ket(int n_qubits, int index) {
  int d = 1 << n_qubits;
  if (index < 0 || index >= d) throw std::invalid_argument("basis_ket: index out of range");
  Vector v = Vector::Zero(d);
  v(index) = 1.0;
  return Ket(std::move(v), qubit_shape(n_qubits));
}

Ket make_ket(std::vector<Complex> amps) {
  int n = 0;
  while ((1 << n) < static_cast<int>(amps.size())) ++n;
  if ((1 << n) != static_cast<int>(amps.size()))
    throw std::invalid_argument("make_ket: length must be a power of two");
  Vector v(static_cast<Eigen::Index>(amps.size()));
  for (size_t i = 0; i < amps.size(); ++i) v(static_cast<Eigen::Index>(i)) = amps[i];
  return Ket(std::move(v), qubit_shape(n));
}

}  // namespace spintriad
