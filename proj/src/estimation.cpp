#include "spintriad/estimation.hpp"

#include <cmath>
#include <stdexcept>
#include <thread>

#include "spintriad/random.hpp"
#include "spintriad/symmetry.hpp"

namespace spintriad {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

const Operator& cached_sym_projector(int n) {
  static const Operator p2 = sym_projector(2);
  static const Operator p3 = sym_projector(3);
  static const Operator p4 = sym_projector(4);
  static const Operator p1 = sym_projector(1);
  switch (n) {
    case 1: return p1;
    case 2: return p2;
    case 3: return p3;
    case 4: return p4;
    default: throw std::invalid_argument("sym projector cache: n out of range");
  }
}

}  // namespace

Povm Povm::create(std::vector<Operator> elements, Operator space, std::vector<std::string> labels) {
  const bool labeled = !labels.empty();
  if (labeled && labels.size() != elements.size())
    throw std::invalid_argument("Povm: label count must match element count");

  Povm p;
  p.space = std::move(space);
  for (size_t i = 0; i < elements.size(); ++i) {
    Operator& e = elements[i];
    if (e.shape != p.space.shape) throw std::invalid_argument("Povm: element shape mismatch");
    if (std::abs(e.trace().imag()) > kPsdTol || e.trace().real() < -kPsdTol)
      throw std::invalid_argument("Povm: element has invalid trace");
    if (e.trace().real() < kPruneTol) continue;  // zero elements are deleted
    EigResult eig = herm_eig(e);                 // also enforces Hermiticity
    if (eig.eigenvalues.back() < -kPsdTol)
      throw std::invalid_argument("Povm: element is not positive semidefinite");
    p.elements.push_back(std::move(e));
    if (labeled) p.labels.push_back(labels[i]);
  }

  Matrix sum = Matrix::Zero(p.space.dim(), p.space.dim());
  for (const Operator& e : p.elements) sum += e.entries;
  if (max_abs(sum - p.space.entries) > kCompletenessTol)
    throw std::invalid_argument("Povm: elements do not sum to the declared space");
  return p;
}

Operator q_map(const Operator& m) {
  const int n = m.num_subsystems();
  if (n < 1 || n > 3) throw std::invalid_argument("q_map: operator must act on 1..3 qubits");
  for (int d : m.shape)
    if (d != 2) throw std::invalid_argument("q_map: subsystems must be qubits");
  const Operator& p = cached_sym_projector(n + 1);
  const Operator big = kron(m, identity_op(1));
  Operator traced = partial_trace(Operator(p.entries * big.entries, p.shape), {n});
  traced.entries *= factorial(n + 1);
  return traced;
}

double estimation_fidelity(const Povm& p) {
  const int n = p.num_qubits();
  double divisor = 1.0;
  for (int k = 0; k <= n; ++k) divisor *= static_cast<double>(2 + k);
  double acc = 0.0;
  for (const Operator& e : p.elements) acc += spectral_norm(q_map(e));
  return acc / divisor;
}

std::vector<Ket> optimal_estimators(const Povm& p) {
  std::vector<Ket> out;
  out.reserve(p.elements.size());
  for (const Operator& e : p.elements) out.push_back(herm_eig(q_map(e)).eigenvectors.front());
  return out;
}

namespace {

RunningStats mc_worker(const Povm& p, const std::vector<Ket>& estimators, long long samples,
                       uint64_t seed, uint64_t stream) {
  const int n = p.num_qubits();
  auto rng = stream_rng(seed, stream);
  RunningStats stats;
  for (long long s = 0; s < samples; ++s) {
    const Ket psi = random_haar_ket(1, rng);
    const Ket psin = ket_power(psi, n);
    double fs = 0.0;
    for (size_t j = 0; j < p.elements.size(); ++j) {
      const double prob =
          std::real(psin.amplitudes.dot(p.elements[j].entries * psin.amplitudes));
      const double overlap = std::norm(estimators[j].amplitudes.dot(psi.amplitudes));
      fs += prob * overlap;
    }
    stats.add(fs);
  }
  return stats;
}

}  // namespace

McEstimate average_fidelity_mc(const Povm& p, const std::vector<Ket>& estimators,
                               long long samples, uint64_t seed, int workers) {
  if (estimators.size() != p.elements.size())
    throw std::invalid_argument("average_fidelity_mc: estimator count must match element count");
  if (samples < 1) throw std::invalid_argument("average_fidelity_mc: samples must be >= 1");
  for (const Ket& e : estimators)
    if (e.dim() != 2 || std::abs(e.norm() - 1.0) > 1e-8)
      throw std::invalid_argument("average_fidelity_mc: estimators must be normalized qubit states");
  if (workers < 1) workers = 1;
  if (static_cast<long long>(workers) > samples) workers = static_cast<int>(samples);

  std::vector<RunningStats> parts(static_cast<size_t>(workers));
  if (workers == 1) {
    parts[0] = mc_worker(p, estimators, samples, seed, 0);
  } else {
    std::vector<std::thread> pool;
    const long long chunk = samples / workers;
    const long long rem = samples % workers;
    for (int w = 0; w < workers; ++w) {
      const long long mine = chunk + (w < rem ? 1 : 0);
      pool.emplace_back([&, w, mine] {
        parts[static_cast<size_t>(w)] =
            mc_worker(p, estimators, mine, seed, static_cast<uint64_t>(w));
      });
    }
    for (auto& t : pool) t.join();
  }

  RunningStats total;
  for (const auto& part : parts) total.merge(part);

  McEstimate est;
  est.mean = total.mean;
  est.samples = total.n;
  est.seed = seed;
  est.std_error = total.std_error();
  return est;
}

namespace {

Povm conjugate_povm(const Povm& p, const Operator& proj) {
  std::vector<Operator> elems;
  std::vector<std::string> labels;
  for (size_t i = 0; i < p.elements.size(); ++i) {
    Matrix m = proj.entries * p.elements[i].entries * proj.entries;
    // Symmetrize away conjugation roundoff so validity checks stay exact.
    m = 0.5 * (m + Matrix(m.adjoint()));
    elems.emplace_back(std::move(m), p.space.shape);
    if (!p.labels.empty()) labels.push_back(p.labels[i]);
  }
  Operator space(proj.entries * p.space.entries * proj.entries, p.space.shape);
  space.entries = 0.5 * (space.entries + Matrix(space.entries.adjoint()));
  return Povm::create(std::move(elems), std::move(space), std::move(labels));
}

}  // namespace

Povm restrict_sym(const Povm& p) {
  const int n = p.num_qubits();
  if (n < 2) throw std::invalid_argument("restrict_sym: need at least 2 qubits");
  return conjugate_povm(p, kron(cached_sym_projector(n - 1), identity_op(1)));
}

Povm restrict_antisym(const Povm& p) {
  const int n = p.num_qubits();
  if (n < 2) throw std::invalid_argument("restrict_antisym: need at least 2 qubits");
  return conjugate_povm(p, kron(antisym_projector(n - 1), identity_op(1)));
}

Povm random_povm(int n_qubits, int n_elements, std::mt19937_64& rng) {
  if (n_elements < 1) throw std::invalid_argument("random_povm: need at least one element");
  const int d = 1 << n_qubits;
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<Matrix> gram;
  Matrix sum = Matrix::Zero(d, d);
  for (int e = 0; e < n_elements; ++e) {
    Matrix a(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) a(i, j) = Complex(g(rng), g(rng));
    Matrix gm = a * a.adjoint();
    sum += gm;
    gram.push_back(std::move(gm));
  }
  const EigResult eig = herm_eig(Operator(sum, qubit_shape(n_qubits)));
  Matrix inv_sqrt = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i) {
    const Vector& v = eig.eigenvectors[static_cast<size_t>(i)].amplitudes;
    inv_sqrt += (1.0 / std::sqrt(eig.eigenvalues[static_cast<size_t>(i)])) * (v * v.adjoint());
  }
  std::vector<Operator> elems;
  for (Matrix& gm : gram) {
    Matrix m = inv_sqrt * gm * inv_sqrt;
    m = 0.5 * (m + Matrix(m.adjoint()));
    elems.emplace_back(std::move(m), qubit_shape(n_qubits));
  }
  return Povm::create(std::move(elems), identity_op(n_qubits));
}

Povm coarse_grain(const Povm& p, const Eigen::MatrixXd& lambda) {
  if (lambda.cols() != p.size())
    throw std::invalid_argument("coarse_grain: column count must match element count");
  for (Eigen::Index k = 0; k < lambda.cols(); ++k) {
    double col = 0.0;
    for (Eigen::Index j = 0; j < lambda.rows(); ++j) {
      if (lambda(j, k) < -1e-12)
        throw std::invalid_argument("coarse_grain: matrix is not stochastic");
      col += lambda(j, k);
    }
    if (std::abs(col - 1.0) > 1e-9)
      throw std::invalid_argument("coarse_grain: matrix is not stochastic");
  }
  std::vector<Operator> out;
  for (Eigen::Index j = 0; j < lambda.rows(); ++j) {
    Matrix acc = Matrix::Zero(p.space.dim(), p.space.dim());
    for (Eigen::Index k = 0; k < lambda.cols(); ++k)
      acc += lambda(j, k) * p.elements[static_cast<size_t>(k)].entries;
    out.emplace_back(std::move(acc), p.space.shape);
  }
  return Povm::create(std::move(out), p.space);
}

}  // namespace spintriad
