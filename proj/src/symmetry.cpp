#include "spintriad/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace spintriad {

Permutation::Permutation(std::vector<int> img) : image(std::move(img)) {
  const int n = static_cast<int>(image.size());
  std::vector<bool> seen(static_cast<size_t>(n), false);
  for (int v : image) {
    if (v < 0 || v >= n || seen[static_cast<size_t>(v)])
      throw std::invalid_argument("Permutation: image is not a bijection");
    seen[static_cast<size_t>(v)] = true;
  }
  // Parity from inversion count.
  int inv = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (image[static_cast<size_t>(i)] > image[static_cast<size_t>(j)]) ++inv;
  parity = (inv % 2 == 0) ? 1 : -1;
}

Permutation Permutation::identity(int n) {
  std::vector<int> img(static_cast<size_t>(n));
  std::iota(img.begin(), img.end(), 0);
  return Permutation(std::move(img));
}

Permutation Permutation::compose(const Permutation& other) const {
  if (size() != other.size()) throw std::invalid_argument("Permutation: size mismatch");
  std::vector<int> img(image.size());
  for (size_t i = 0; i < image.size(); ++i)
    img[i] = image[static_cast<size_t>(other.image[i])];
  return Permutation(std::move(img));
}

std::vector<Permutation> all_permutations(int n) {
  std::vector<int> img(static_cast<size_t>(n));
  std::iota(img.begin(), img.end(), 0);
  std::vector<Permutation> out;
  do {
    out.emplace_back(img);
  } while (std::next_permutation(img.begin(), img.end()));
  return out;
}

Operator permutation_operator(const Permutation& sigma, int n) {
  if (sigma.size() != n) throw std::invalid_argument("permutation_operator: size mismatch");
  const int d = 1 << n;
  Matrix w = Matrix::Zero(d, d);
  for (int idx = 0; idx < d; ++idx) {
    int nidx = 0;
    for (int i = 0; i < n; ++i) {
      const int bit = (idx >> (n - 1 - i)) & 1;
      nidx |= bit << (n - 1 - sigma(i));
    }
    w(nidx, idx) = 1.0;
  }
  return Operator(std::move(w), qubit_shape(n));
}

Operator sym_projector(int n) {
  if (n < 1 || n > 4) throw std::invalid_argument("sym_projector: n must be in [1,4]");
  const int d = 1 << n;
  Matrix acc = Matrix::Zero(d, d);
  const auto perms = all_permutations(n);
  for (const auto& p : perms) acc += permutation_operator(p, n).entries;
  acc /= static_cast<double>(perms.size());
  return Operator(std::move(acc), qubit_shape(n));
}

Operator antisym_projector(int n) {
  if (n < 1 || n > 4) throw std::invalid_argument("antisym_projector: n must be in [1,4]");
  const int d = 1 << n;
  Matrix acc = Matrix::Zero(d, d);
  const auto perms = all_permutations(n);
  for (const auto& p : perms)
    acc += static_cast<double>(p.parity) * permutation_operator(p, n).entries;
  acc /= static_cast<double>(perms.size());
  return Operator(std::move(acc), qubit_shape(n));
}

Operator reorder_subsystems(const Operator& a, const std::vector<int>& current_labels) {
  const int n = a.num_subsystems();
  if (static_cast<int>(current_labels.size()) != n)
    throw std::invalid_argument("reorder_subsystems: label count mismatch");
  Permutation sigma(current_labels);
  Operator w = permutation_operator(sigma, n);
  return Operator(w.entries * a.entries * w.entries.adjoint(), a.shape);
}

Operator product_twirl_closed_form(double a, double b, double c) {
  const double nrm = a * a + b * b + c * c;
  if (std::abs(nrm - 1.0) > 1e-9)
    throw std::invalid_argument("product_twirl_closed_form: coefficients must be normalized");
  const Operator p3 = sym_projector(3);
  const Operator p2x1 = kron(sym_projector(2), identity_op(1));
  const double w_sym = (3.0 * a * a + 2.0 * b * b + c * c) / 12.0;
  const double w_rest = (b * b + 2.0 * c * c) / 6.0;
  return Operator(w_sym * p3.entries + w_rest * (p2x1.entries - p3.entries), qubit_shape(3));
}

Operator twirl_over_set(const Operator& o, const UnitarySet& us, int t) {
  if (o.dim() != (1 << t)) throw std::invalid_argument("twirl_over_set: operator is not on t qubits");
  if (us.members.empty()) throw std::invalid_argument("twirl_over_set: empty unitary set");
  Matrix acc = Matrix::Zero(o.dim(), o.dim());
  for (const Matrix& u : us.members) {
    Matrix ut = u;
    for (int i = 1; i < t; ++i) {
      Matrix next(ut.rows() * 2, ut.cols() * 2);
      for (Eigen::Index r = 0; r < ut.rows(); ++r)
        for (Eigen::Index c = 0; c < ut.cols(); ++c) next.block(r * 2, c * 2, 2, 2) = ut(r, c) * u;
      ut = std::move(next);
    }
    acc += ut * o.entries * ut.adjoint();
  }
  acc /= static_cast<double>(us.members.size());
  return Operator(std::move(acc), o.shape);
}

}  // namespace spintriad
