#include "spintriad/designs.hpp"

#include <cmath>
#include <stdexcept>

#include "spintriad/random.hpp"

namespace spintriad {

Matrix canonical_phase(const Matrix& u) {
  for (Eigen::Index i = 0; i < u.rows(); ++i) {
    for (Eigen::Index j = 0; j < u.cols(); ++j) {
      if (std::abs(u(i, j)) > 1e-9) {
        return u * (std::conj(u(i, j)) / std::abs(u(i, j)));
      }
    }
  }
  return u;
}

bool UnitarySet::contains_phase_class(const Matrix& u, double tol) const {
  const Matrix cu = canonical_phase(u);
  for (const Matrix& m : members)
    if (max_abs(m - cu) < tol) return true;
  return false;
}

namespace {

void insert_unique(std::vector<Matrix>& set, const Matrix& u, double tol = 1e-9) {
  const Matrix cu = canonical_phase(u);
  for (const Matrix& m : set)
    if (max_abs(m - cu) < tol) return;
  set.push_back(cu);
}

}  // namespace

UnitarySet pauli_set() {
  UnitarySet s;
  s.name = "pauli";
  insert_unique(s.members, Matrix::Identity(2, 2));
  insert_unique(s.members, pauli_x());
  insert_unique(s.members, pauli_y());
  insert_unique(s.members, pauli_z());
  return s;
}

UnitarySet clifford_mod_phase() {
  UnitarySet s;
  s.name = "clifford";
  const Matrix gens[2] = {hadamard(), phase_gate()};
  s.members.push_back(canonical_phase(Matrix::Identity(2, 2)));
  // Closure under right multiplication by the generators.
  for (size_t i = 0; i < s.members.size(); ++i) {
    const Matrix cur = s.members[i];
    for (const Matrix& g : gens) insert_unique(s.members, cur * g);
  }
  if (s.size() != 24) throw std::runtime_error("clifford_mod_phase: closure has unexpected size");
  return s;
}

UnitarySet g_bar() {
  UnitarySet s;
  s.name = "gbar";
  const Matrix v = hadamard() * phase_gate();
  const Matrix left[3] = {Matrix::Identity(2, 2), v, v * v};
  const Matrix right[4] = {Matrix::Identity(2, 2), pauli_x(), pauli_y(), pauli_z()};
  for (const Matrix& a : left)
    for (const Matrix& b : right) insert_unique(s.members, a * b);
  if (s.size() != 12) throw std::runtime_error("g_bar: unexpected size");
  return s;
}

UnitarySet g_bar2() {
  UnitarySet s;
  s.name = "gbar2";
  const Matrix v = hadamard() * phase_gate();
  const Matrix left[3] = {Matrix::Identity(2, 2), v, v * v};
  const Matrix right[2] = {Matrix::Identity(2, 2), pauli_x()};
  for (const Matrix& a : left)
    for (const Matrix& b : right) insert_unique(s.members, a * b);
  if (s.size() != 6) throw std::runtime_error("g_bar2: unexpected size");
  return s;
}

UnitarySet unitary_set_by_name(const std::string& name) {
  if (name == "pauli") return pauli_set();
  if (name == "clifford") return clifford_mod_phase();
  if (name == "gbar") return g_bar();
  if (name == "gbar2") return g_bar2();
  throw std::invalid_argument("unknown unitary set: " + name);
}

double frame_potential(const UnitarySet& us, int t) {
  if (t < 1 || t > 3) throw std::invalid_argument("frame_potential: t must be in {1,2,3}");
  const int m = us.size();
  if (m == 0) throw std::invalid_argument("frame_potential: empty set");
  double acc = 0.0;
  for (int j = 0; j < m; ++j) {
    for (int k = 0; k < m; ++k) {
      const double a = std::abs((us.members[static_cast<size_t>(j)].adjoint() *
                                 us.members[static_cast<size_t>(k)])
                                    .trace());
      double p = a * a;
      double v = p;
      for (int i = 1; i < t; ++i) v *= p;
      acc += v;
    }
  }
  return acc / (static_cast<double>(m) * static_cast<double>(m));
}

double haar_frame_potential(int t) {
  switch (t) {
    case 1: return 1.0;
    case 2: return 2.0;
    case 3: return 5.0;
    default: throw std::invalid_argument("haar_frame_potential: t must be in {1,2,3}");
  }
}

HaarMoment haar_frame_potential_mc(int t, long long samples, uint64_t seed) {
  if (t < 1 || t > 3) throw std::invalid_argument("haar_frame_potential_mc: t must be in {1,2,3}");
  if (samples < 2) throw std::invalid_argument("haar_frame_potential_mc: need at least 2 samples");
  auto rng = stream_rng(seed, 0);
  double mean = 0.0, m2 = 0.0;
  for (long long i = 0; i < samples; ++i) {
    const Matrix u = random_unitary(2, rng);
    const double a = std::abs(u.trace());
    double p = a * a;
    double v = p;
    for (int k = 1; k < t; ++k) v *= p;
    const double delta = v - mean;
    mean += delta / static_cast<double>(i + 1);
    m2 += delta * (v - mean);
  }
  const double var = m2 / static_cast<double>(samples - 1);
  return {mean, std::sqrt(var / static_cast<double>(samples))};
}

bool is_t_design(const UnitarySet& us, int t, double tol) {
  return frame_potential(us, t) <= haar_frame_potential(t) + tol;
}

}  // namespace spintriad
