#include "spintriad/catalog.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "spintriad/designs.hpp"
#include "spintriad/random.hpp"
#include "spintriad/symmetry.hpp"

namespace spintriad {

Ket psi_plus() {
  const double s = 1.0 / std::sqrt(2.0);
  return make_ket({0.0, s, s, 0.0});
}

Ket fiducial_pair_state() {
  const double r7 = std::sqrt(7.0);
  return make_ket({std::sqrt(8.0 + 3.0 * r7) / 4.0, 0.0, 0.0, std::sqrt(8.0 - 3.0 * r7) / 4.0});
}

Ket fiducial_triple_state() {
  const double s = 1.0 / std::sqrt(2.0);
  return kron(fiducial_pair_state(), make_ket({s, s}));
}

Ket branch_seed_state() {
  const double p = (47.0 - 3.0 * std::sqrt(41.0)) / 216.0;
  const double a = std::sqrt((1.0 - 3.0 * p) / (3.0 - 3.0 * p));
  const double bc = std::sqrt(1.0 / (3.0 - 3.0 * p));
  const double s = 1.0 / std::sqrt(2.0);
  return make_ket({a, s * bc, s * bc, bc});
}

namespace analytic {
double collective() { return 4.0 / 5.0; }
double biseparable() { return 0.5 + std::sqrt(22.0) / 16.0; }
double adaptive_1to2() { return 0.5 + (11.0 + std::sqrt(41.0)) / 60.0; }
double local_xyz() { return 0.5 + std::sqrt(3.0) / 6.0; }
}  // namespace analytic

namespace {

std::vector<Ket> pauli_eigenbasis(char axis) {
  const double s = 1.0 / std::sqrt(2.0);
  switch (axis) {
    case 'x': return {make_ket({s, s}), make_ket({s, -s})};
    case 'y': return {make_ket({s, Complex(0, s)}), make_ket({s, Complex(0, -s)})};
    case 'z': return {make_ket({1.0, 0.0}), make_ket({0.0, 1.0})};
    default: throw std::invalid_argument("unknown axis");
  }
}

Matrix kron2(const Matrix& u) {
  Matrix out(4, 4);
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) out.block(r * 2, c * 2, 2, 2) = u(r, c) * u;
  return out;
}

Matrix kron3(const Matrix& u) {
  const Matrix u2 = kron2(u);
  Matrix out(8, 8);
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) out.block(r * 4, c * 4, 4, 4) = u(r, c) * u2;
  return out;
}

}  // namespace

Povm octahedron_collective() {
  std::vector<Operator> elems;
  std::vector<std::string> labels;
  const char axes[3] = {'x', 'y', 'z'};
  Matrix sum = Matrix::Zero(8, 8);
  for (char ax : axes) {
    const auto basis = pauli_eigenbasis(ax);
    for (int s = 0; s < 2; ++s) {
      Operator e = outer(ket_power(basis[static_cast<size_t>(s)], 3));
      e.entries *= 2.0 / 3.0;
      sum += e.entries;
      elems.push_back(std::move(e));
      labels.push_back(std::string(1, ax) + (s == 0 ? "+" : "-"));
    }
  }
  elems.emplace_back(Matrix::Identity(8, 8) - sum, qubit_shape(3));
  labels.push_back("rest");
  return Povm::create(std::move(elems), identity_op(3), std::move(labels));
}

Povm local_xyz() {
  const auto xb = pauli_eigenbasis('x');
  const auto yb = pauli_eigenbasis('y');
  const auto zb = pauli_eigenbasis('z');
  std::vector<Operator> elems;
  std::vector<std::string> labels;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k) {
        elems.push_back(outer(kron(kron(xb[static_cast<size_t>(i)], yb[static_cast<size_t>(j)]),
                                   zb[static_cast<size_t>(k)])));
        labels.push_back(std::string("x") + (i == 0 ? "+" : "-") + "y" + (j == 0 ? "+" : "-") +
                         "z" + (k == 0 ? "+" : "-"));
      }
  return Povm::create(std::move(elems), identity_op(3), std::move(labels));
}

Povm m2_povm() {
  const UnitarySet g2 = g_bar2();
  const Ket pair = fiducial_pair_state();
  std::vector<Operator> elems;
  std::vector<std::string> labels;
  for (int j = 0; j < g2.size(); ++j) {
    const Matrix u2 = kron2(g2.members[static_cast<size_t>(j)]);
    Vector v = u2 * pair.amplitudes;
    elems.emplace_back(0.5 * (v * v.adjoint()), qubit_shape(2));
    labels.push_back("u" + std::to_string(j));
  }
  elems.push_back(antisym_projector(2));
  labels.push_back("singlet");
  return Povm::create(std::move(elems), identity_op(2), std::move(labels));
}

Povm m_2to1() {
  const UnitarySet g = g_bar();
  const Ket triple = fiducial_triple_state();
  std::vector<Operator> elems;
  std::vector<std::string> labels;
  for (int j = 0; j < g.size(); ++j) {
    const Matrix u3 = kron3(g.members[static_cast<size_t>(j)]);
    Vector v = u3 * triple.amplitudes;
    elems.emplace_back(0.5 * (v * v.adjoint()), qubit_shape(3));
    labels.push_back("g" + std::to_string(j));
  }
  elems.push_back(kron(antisym_projector(2), identity_op(1)));
  labels.push_back("antisym");
  return Povm::create(std::move(elems), identity_op(3), std::move(labels));
}

namespace {

Povm branch_povm(bool flipped) {
  const double p = (47.0 - 3.0 * std::sqrt(41.0)) / 216.0;
  const Ket seed = branch_seed_state();
  const Matrix ss = kron2(phase_gate());
  const Matrix xx = kron2(pauli_x());

  std::vector<Operator> elems;
  std::vector<std::string> labels;
  Matrix w = Matrix::Identity(4, 4);
  for (int j = 0; j < 4; ++j) {
    Vector v = w * seed.amplitudes;
    elems.emplace_back(((3.0 - 3.0 * p) / 4.0) * (v * v.adjoint()), qubit_shape(2));
    labels.push_back("w" + std::to_string(j));
    w = ss * w;
  }
  Vector zz = basis_ket(2, 0).amplitudes;
  elems.emplace_back(3.0 * p * (zz * zz.adjoint()), qubit_shape(2));
  labels.push_back("00");
  elems.push_back(antisym_projector(2));
  labels.push_back("singlet");

  if (flipped) {
    for (auto& e : elems) e.entries = xx * e.entries * xx;
  }
  return Povm::create(std::move(elems), identity_op(2), std::move(labels));
}

}  // namespace

Povm k0_povm() { return branch_povm(false); }
Povm k1_povm() { return branch_povm(true); }

Protocol protocol_2to1() {
  Protocol proto;
  proto.direction = "2to1";
  proto.first = m2_povm();
  proto.first_subsystems = {0, 1};
  const UnitarySet g2 = g_bar2();
  const double s = 1.0 / std::sqrt(2.0);
  const Vector plus = make_ket({s, s}).amplitudes;
  const Vector minus = make_ket({s, -s}).amplitudes;
  for (const Matrix& u : g2.members) {
    const Vector up = u * plus;
    const Vector um = u * minus;
    std::vector<Operator> elems;
    elems.emplace_back(Matrix(up * up.adjoint()), qubit_shape(1));
    elems.emplace_back(Matrix(um * um.adjoint()), qubit_shape(1));
    proto.branches.push_back(
        Povm::create(std::move(elems), identity_op(1), {"+", "-"}));
  }
  // The singlet outcome never occurs on parallel spins; its branch is trivial.
  std::vector<Operator> trivial;
  trivial.push_back(identity_op(1));
  proto.branches.push_back(Povm::create(std::move(trivial), identity_op(1), {"any"}));
  return proto;
}

Protocol protocol_1to2() {
  Protocol proto;
  proto.direction = "1to2";
  std::vector<Operator> zmeas;
  zmeas.push_back(outer(basis_ket(1, 0)));
  zmeas.push_back(outer(basis_ket(1, 1)));
  proto.first = Povm::create(std::move(zmeas), identity_op(1), {"z0", "z1"});
  proto.first_subsystems = {2};
  proto.branches = {k0_povm(), k1_povm()};
  return proto;
}

std::pair<Povm, Protocol> m_1to2() {
  Protocol proto = protocol_1to2();
  return {flatten_protocol(proto), std::move(proto)};
}

Povm adaptive_compose(const Povm& first, const std::vector<Povm>& branches,
                      const std::vector<int>& first_subsystems) {
  if (branches.size() != first.elements.size())
    throw std::invalid_argument("adaptive_compose: one branch POVM per first-stage element");
  if (static_cast<int>(first_subsystems.size()) != first.num_qubits())
    throw std::invalid_argument("adaptive_compose: placement does not match first stage");
  const int nb = branches.front().num_qubits();
  const int n = first.num_qubits() + nb;

  std::vector<bool> used(static_cast<size_t>(n), false);
  for (int i : first_subsystems) {
    if (i < 0 || i >= n || used[static_cast<size_t>(i)])
      throw std::invalid_argument("adaptive_compose: invalid placement");
    used[static_cast<size_t>(i)] = true;
  }
  std::vector<int> labels_order = first_subsystems;
  for (int i = 0; i < n; ++i)
    if (!used[static_cast<size_t>(i)]) labels_order.push_back(i);

  const Operator& branch_space = branches.front().space;
  for (const Povm& b : branches) {
    if (b.num_qubits() != nb || max_abs(b.space.entries - branch_space.entries) > 1e-12)
      throw std::invalid_argument("adaptive_compose: branches must share one space");
  }

  std::vector<Operator> elems;
  std::vector<std::string> labels;
  const bool labeled = !first.labels.empty();
  for (size_t j = 0; j < first.elements.size(); ++j) {
    const Povm& b = branches[j];
    for (size_t k = 0; k < b.elements.size(); ++k) {
      elems.push_back(
          reorder_subsystems(kron(first.elements[j], b.elements[k]), labels_order));
      if (labeled && !b.labels.empty())
        labels.push_back(first.labels[j] + "|" + b.labels[k]);
    }
  }
  if (labels.size() != elems.size()) labels.clear();
  Operator space = reorder_subsystems(kron(first.space, branch_space), labels_order);
  return Povm::create(std::move(elems), std::move(space), std::move(labels));
}

Povm flatten_protocol(const Protocol& proto) {
  return adaptive_compose(proto.first, proto.branches, proto.first_subsystems);
}

namespace {

// Joint outcome probabilities of the protocol on a fixed product input.
std::vector<std::vector<double>> joint_probs(const Protocol& proto, const Povm& flat,
                                             const Vector& psi3) {
  std::vector<std::vector<double>> probs;
  size_t flat_idx = 0;
  for (size_t j = 0; j < proto.first.elements.size(); ++j) {
    std::vector<double> row;
    for (size_t k = 0; k < proto.branches[j].elements.size(); ++k, ++flat_idx) {
      const double v = std::real(psi3.dot(flat.elements[flat_idx].entries * psi3));
      row.push_back(v);
    }
    probs.push_back(std::move(row));
  }
  return probs;
}

std::vector<double> row_sums_of(const std::vector<std::vector<double>>& probs) {
  std::vector<double> row_sums(probs.size(), 0.0);
  for (size_t r = 0; r < probs.size(); ++r)
    for (double v : probs[r]) row_sums[r] += std::max(v, 0.0);
  return row_sums;
}

std::pair<size_t, size_t> sample_joint(const std::vector<std::vector<double>>& probs,
                                       const std::vector<double>& row_sums, double total,
                                       std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double u1 = unif(rng) * total;
  double acc = 0.0;
  size_t j = 0;
  for (; j + 1 < probs.size(); ++j) {
    acc += row_sums[j];
    if (u1 < acc) break;
  }
  const double u2 = unif(rng) * row_sums[j];
  double acc2 = 0.0;
  size_t k = 0;
  for (; k + 1 < probs[j].size(); ++k) {
    acc2 += std::max(probs[j][k], 0.0);
    if (u2 < acc2) break;
  }
  return {j, k};
}

}  // namespace

SimResult simulate_protocol(const Protocol& proto, const Ket& psi, long long shots,
                            uint64_t seed, int workers) {
  if (psi.dim() != 2 || std::abs(psi.norm() - 1.0) > 1e-8)
    throw std::invalid_argument("simulate_protocol: input must be a normalized qubit state");
  if (shots < 1) throw std::invalid_argument("simulate_protocol: shots must be >= 1");

  const Povm flat = flatten_protocol(proto);
  const Vector psi3 = ket_power(psi, 3).amplitudes;
  const auto probs = joint_probs(proto, flat, psi3);
  const auto row_sums = row_sums_of(probs);
  double total = 0.0;
  for (double v : row_sums) total += v;

  SimResult res;
  res.shots = shots;
  res.seed = seed;
  res.probs = probs;
  res.counts.resize(probs.size());
  for (size_t j = 0; j < probs.size(); ++j) res.counts[j].assign(probs[j].size(), 0);

  if (workers < 1) workers = 1;
  if (static_cast<long long>(workers) > shots) workers = static_cast<int>(shots);
  std::vector<SimResult> parts(static_cast<size_t>(workers));
  auto run = [&](int w, long long mine, SimResult& out) {
    out.counts.resize(probs.size());
    for (size_t j = 0; j < probs.size(); ++j) out.counts[j].assign(probs[j].size(), 0);
    auto rng = stream_rng(seed, static_cast<uint64_t>(w));
    for (long long s = 0; s < mine; ++s) {
      const auto [j, k] = sample_joint(probs, row_sums, total, rng);
      ++out.counts[j][k];
    }
  };
  if (workers == 1) {
    run(0, shots, parts[0]);
  } else {
    std::vector<std::thread> pool;
    const long long chunk = shots / workers;
    const long long rem = shots % workers;
    for (int w = 0; w < workers; ++w) {
      const long long mine = chunk + (w < rem ? 1 : 0);
      pool.emplace_back(run, w, mine, std::ref(parts[static_cast<size_t>(w)]));
    }
    for (auto& t : pool) t.join();
  }
  for (const auto& part : parts)
    for (size_t j = 0; j < res.counts.size(); ++j)
      for (size_t k = 0; k < res.counts[j].size(); ++k) res.counts[j][k] += part.counts[j][k];
  return res;
}

HaarSimResult simulate_protocol_haar(const Protocol& proto, long long shots, uint64_t seed,
                                     int workers) {
  if (shots < 1) throw std::invalid_argument("simulate_protocol_haar: shots must be >= 1");
  const Povm flat = flatten_protocol(proto);
  const std::vector<Ket> estimators = optimal_estimators(flat);

  // Row layout of the flat POVM, matching (first outcome, branch outcome).
  std::vector<size_t> row_len;
  for (const Povm& b : proto.branches) row_len.push_back(b.elements.size());

  if (workers < 1) workers = 1;
  if (static_cast<long long>(workers) > shots) workers = static_cast<int>(shots);

  struct Part {
    std::vector<std::vector<long long>> counts;
    RunningStats stats;
  };
  std::vector<Part> parts(static_cast<size_t>(workers));
  auto run = [&](int w, long long mine, Part& out) {
    out.counts.resize(row_len.size());
    for (size_t j = 0; j < row_len.size(); ++j) out.counts[j].assign(row_len[j], 0);
    auto rng = stream_rng(seed, static_cast<uint64_t>(w));
    std::vector<std::vector<double>> probs(row_len.size());
    for (size_t j = 0; j < row_len.size(); ++j) probs[j].resize(row_len[j]);
    for (long long s = 0; s < mine; ++s) {
      const Ket psi = random_haar_ket(1, rng);
      const Vector psi3 = ket_power(psi, 3).amplitudes;
      double fs = 0.0;
      size_t idx = 0;
      for (size_t j = 0; j < row_len.size(); ++j) {
        for (size_t k = 0; k < row_len[j]; ++k, ++idx) {
          const double pr = std::real(psi3.dot(flat.elements[idx].entries * psi3));
          probs[j][k] = pr;
          fs += pr * std::norm(estimators[idx].amplitudes.dot(psi.amplitudes));
        }
      }
      out.stats.add(fs);
      const auto row_sums = row_sums_of(probs);
      double total = 0.0;
      for (double v : row_sums) total += v;
      const auto [j, k] = sample_joint(probs, row_sums, total, rng);
      ++out.counts[j][k];
    }
  };
  if (workers == 1) {
    run(0, shots, parts[0]);
  } else {
    std::vector<std::thread> pool;
    const long long chunk = shots / workers;
    const long long rem = shots % workers;
    for (int w = 0; w < workers; ++w) {
      const long long mine = chunk + (w < rem ? 1 : 0);
      pool.emplace_back(run, w, mine, std::ref(parts[static_cast<size_t>(w)]));
    }
    for (auto& t : pool) t.join();
  }

  HaarSimResult res;
  res.sim.shots = shots;
  res.sim.seed = seed;
  res.sim.counts.resize(row_len.size());
  for (size_t j = 0; j < row_len.size(); ++j) res.sim.counts[j].assign(row_len[j], 0);
  RunningStats total_stats;
  for (const Part& part : parts) {
    total_stats.merge(part.stats);
    for (size_t j = 0; j < res.sim.counts.size(); ++j)
      for (size_t k = 0; k < res.sim.counts[j].size(); ++k)
        res.sim.counts[j][k] += part.counts[j][k];
  }
  // Exact Haar-averaged outcome probabilities: tr(E P3)/4.
  const Operator p3 = sym_projector(3);
  size_t idx = 0;
  for (size_t j = 0; j < row_len.size(); ++j) {
    std::vector<double> row;
    for (size_t k = 0; k < row_len[j]; ++k, ++idx)
      row.push_back(std::real((flat.elements[idx].entries * p3.entries).trace()) / 4.0);
    res.sim.probs.push_back(std::move(row));
  }
  res.fidelity.mean = total_stats.mean;
  res.fidelity.std_error = total_stats.std_error();
  res.fidelity.samples = total_stats.n;
  res.fidelity.seed = seed;
  return res;
}

double concurrence(const Ket& psi) {
  if (psi.dim() != 4 || psi.num_subsystems() != 2)
    throw std::invalid_argument("concurrence: need a two-qubit state");
  if (std::abs(psi.norm() - 1.0) > 1e-8)
    throw std::invalid_argument("concurrence: state must be normalized");
  const Matrix yy = kron2(pauli_y());
  const Vector v = psi.amplitudes.conjugate();
  const Complex val = (psi.amplitudes.adjoint() * yy * v)(0, 0);
  return std::abs(val);
}

bool mub_check(const std::vector<Ket>& basis1, const std::vector<Ket>& basis2, double tol) {
  auto check_basis = [](const std::vector<Ket>& b) {
    if (b.size() != 2) throw std::invalid_argument("mub_check: need two-element qubit bases");
    for (size_t i = 0; i < b.size(); ++i) {
      if (b[i].dim() != 2) throw std::invalid_argument("mub_check: need qubit states");
      for (size_t j = 0; j < b.size(); ++j) {
        const Complex ov = b[i].amplitudes.dot(b[j].amplitudes);
        if (std::abs(ov - (i == j ? 1.0 : 0.0)) > 1e-9)
          throw std::invalid_argument("mub_check: basis is not orthonormal");
      }
    }
  };
  check_basis(basis1);
  check_basis(basis2);
  for (const Ket& a : basis1)
    for (const Ket& b : basis2)
      if (std::abs(std::norm(a.amplitudes.dot(b.amplitudes)) - 0.5) > tol) return false;
  return true;
}

namespace {

double wrap_angle(double phi) {
  const double two_pi = 2.0 * M_PI;
  phi = std::fmod(phi, two_pi);
  if (phi < 0.0) phi += two_pi;
  if (two_pi - phi < 1e-9) phi = 0.0;
  return phi;
}

struct PairCoeffs {
  Complex ca, cb, cc;
};

PairCoeffs sym2_coeffs(const Vector& amps) {
  const double s = 1.0 / std::sqrt(2.0);
  return {amps(0), s * (amps(1) + amps(2)), amps(3)};
}

}  // namespace

CanonicalSym2 canonicalize_sym2(const Ket& phi_in) {
  if (phi_in.dim() != 4 || phi_in.num_subsystems() != 2)
    throw std::invalid_argument("canonicalize_sym2: need a two-qubit state");
  const Ket phi = phi_in.normalized();
  const double s = 1.0 / std::sqrt(2.0);
  const Complex antisym = s * (phi.amplitudes(1) - phi.amplitudes(2));
  if (std::abs(antisym) > 1e-10)
    throw std::invalid_argument("canonicalize_sym2: state is not symmetric");

  const PairCoeffs raw = sym2_coeffs(phi.amplitudes);
  constexpr double eps = 1e-12;

  // Diagonal phase reduction: make the |00> and |S> coefficients real >= 0.
  double mu = 0.0, chi = 0.0;
  if (std::abs(raw.ca) > eps && std::abs(raw.cb) > eps) {
    mu = -std::arg(raw.ca);
    chi = std::arg(raw.ca) - std::arg(raw.cb);
  } else if (std::abs(raw.ca) > eps) {
    mu = -std::arg(raw.ca);
    if (std::abs(raw.cc) > eps) chi = -(std::arg(raw.cc) + mu) / 2.0;
  } else if (std::abs(raw.cb) > eps) {
    if (std::abs(raw.cc) > eps) {
      chi = std::arg(raw.cb) - std::arg(raw.cc);
      mu = -std::arg(raw.cb) - chi;
    } else {
      mu = -std::arg(raw.cb);
    }
  } else if (std::abs(raw.cc) > eps) {
    chi = -std::arg(raw.cc) / 2.0;
  }
  Matrix d(2, 2);
  d << std::exp(Complex(0, mu / 2.0)), 0, 0, std::exp(Complex(0, mu / 2.0 + chi));

  const Vector reduced = kron2(d) * phi.amplitudes;
  const PairCoeffs rc = sym2_coeffs(reduced);
  const double a = std::abs(rc.ca), b = std::abs(rc.cb), c = std::abs(rc.cc);
  const double chi_r = (c > eps) ? std::arg(rc.cc) : 0.0;

  const double phi0_base = std::atan2(-c * std::sin(chi_r), a + c * std::cos(chi_r));
  Matrix best_u;
  double best_v = std::numeric_limits<double>::infinity();
  Complex best_amp0, best_amp3;
  for (int pshift = 0; pshift < 2; ++pshift) {
    const double phi0 = phi0_base + pshift * M_PI;
    const double denom = c * std::cos(phi0 + chi_r) - a * std::cos(phi0);
    const double theta_base = 0.5 * std::atan2(-std::sqrt(2.0) * b, denom);
    for (int tshift = 0; tshift < 2; ++tshift) {
      const double theta = theta_base + tshift * M_PI_2;
      Matrix u1(2, 2);
      u1 << std::cos(theta), std::sin(theta) * std::exp(Complex(0, phi0)),
          -std::sin(theta) * std::exp(Complex(0, -phi0)), std::cos(theta);
      const Matrix u = u1 * d;
      const Vector out = kron2(u) * phi.amplitudes;
      const PairCoeffs oc = sym2_coeffs(out);
      const double vres = std::abs(oc.cb);
      // Root selection: the |S> component must vanish and the |00> weight
      // must dominate so that xi lands in [0, pi/2].
      if (vres < 1e-9 && std::abs(oc.ca) >= std::abs(oc.cc) - 1e-12 && vres < best_v) {
        best_v = vres;
        best_u = u;
        best_amp0 = oc.ca;
        best_amp3 = oc.cc;
      }
    }
  }
  if (!std::isfinite(best_v) || best_v > 1e-9)
    throw std::runtime_error("canonicalize_sym2: root selection failed");

  const double aa = std::abs(best_amp0), cc = std::abs(best_amp3);
  Matrix u2(2, 2);
  const double arg0 = (aa > eps) ? std::arg(best_amp0) : 0.0;
  const double arg3 = (cc > eps) ? std::arg(best_amp3) : 0.0;
  u2 << std::exp(Complex(0, -arg0 / 2.0)), 0, 0, std::exp(Complex(0, -arg3 / 2.0));
  const Matrix u = u2 * best_u;
  const double xi = 2.0 * std::atan2(cc, aa);

  Vector target = Vector::Zero(4);
  target(0) = std::cos(xi / 2.0);
  target(3) = std::sin(xi / 2.0);
  const double fid = std::norm(target.dot(kron2(u) * phi.amplitudes));
  if (fid < 1.0 - 1e-10)
    throw std::runtime_error("canonicalize_sym2: canonical form check failed");
  return {Operator(u, {2}), xi};
}

Sym2Element sym2_factor_element(const Operator& element) {
  if (element.dim() != 8)
    throw std::invalid_argument("sym2_factor_element: need a three-qubit operator");
  const double w = element.trace().real();
  if (w <= kPruneTol) throw std::invalid_argument("sym2_factor_element: zero element");
  const EigResult eig = herm_eig(element);
  if (eig.eigenvalues[0] < w - 1e-8 || eig.eigenvalues[1] > 1e-8)
    throw std::invalid_argument("sym2_factor_element: element is not rank-1");
  const Vector psi = eig.eigenvectors[0].amplitudes;

  Matrix m(4, 2);
  for (int ab = 0; ab < 4; ++ab)
    for (int q = 0; q < 2; ++q) m(ab, q) = psi(ab * 2 + q);
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (svd.singularValues()(1) > 1e-10)
    throw std::invalid_argument("sym2_factor_element: element does not factor across (AB)|C");

  Vector pair = svd.matrixU().col(0);
  Vector single = svd.matrixV().col(0).conjugate();
  // Deterministic phase for the single-copy factor; the leftover goes to the pair.
  const int arg_idx = (std::abs(single(0)) >= std::abs(single(1))) ? 0 : 1;
  const Complex ph = std::conj(single(arg_idx)) / std::abs(single(arg_idx));
  single *= ph;
  pair *= std::conj(ph) * svd.singularValues()(0);

  const double s = 1.0 / std::sqrt(2.0);
  if (std::abs(s * (pair(1) - pair(2))) > 1e-9)
    throw std::invalid_argument("sym2_factor_element: pair factor is not symmetric");

  Matrix align(2, 2);
  align << single(0), -std::conj(single(1)), single(1), std::conj(single(0));
  const Vector tphi = kron2(align.adjoint().eval()) * pair;
  const PairCoeffs cfs = sym2_coeffs(tphi);

  Sym2Element out;
  out.weight = w;
  out.ca = cfs.ca;
  out.cb = cfs.cb;
  out.cc = cfs.cc;
  out.a = std::abs(cfs.ca);
  out.b = std::abs(cfs.cb);
  out.c = std::abs(cfs.cc);
  constexpr double eps = 1e-9;
  out.phi = (out.a > eps && out.b > eps && out.c > eps)
                ? wrap_angle(std::arg(cfs.cc) + std::arg(cfs.ca) - 2.0 * std::arg(cfs.cb))
                : 0.0;
  out.align_u = align;
  return out;
}

std::vector<Sym2Element> sym2_decompose(const Povm& p) {
  if (p.num_qubits() != 3)
    throw std::invalid_argument("sym2_decompose: need a POVM on Sym2 (x) H");
  const Operator target = kron(sym_projector(2), identity_op(1));
  if (max_abs(p.space.entries - target.entries) > 1e-8)
    throw std::invalid_argument("sym2_decompose: completeness target must be P2 (x) 1");
  std::vector<Sym2Element> out;
  out.reserve(p.elements.size());
  for (const Operator& e : p.elements) out.push_back(sym2_factor_element(e));
  return out;
}

MomentRecord sym2_povm_moments(const Povm& p) {
  MomentRecord rec;
  for (const Sym2Element& e : sym2_decompose(p)) {
    rec.sum_w += e.weight;
    rec.aa += e.weight * std::norm(e.ca);
    rec.bb += e.weight * std::norm(e.cb);
    rec.cc += e.weight * std::norm(e.cc);
    rec.ab += e.weight * e.ca * std::conj(e.cb);
    rec.ac += e.weight * e.ca * std::conj(e.cc);
    rec.bc += e.weight * e.cb * std::conj(e.cc);
  }
  return rec;
}

Povm povm_by_name(const std::string& name) {
  if (name == "collective-octahedron") return octahedron_collective();
  if (name == "local-xyz") return local_xyz();
  if (name == "m2") return m2_povm();
  if (name == "m-2to1") return m_2to1();
  if (name == "m-1to2") return m_1to2().first;
  if (name == "k0") return k0_povm();
  if (name == "k1") return k1_povm();
  throw std::invalid_argument("unknown catalog name: " + name);
}

std::optional<double> analytic_fidelity(const std::string& name) {
  if (name == "collective-octahedron") return analytic::collective();
  if (name == "local-xyz") return analytic::local_xyz();
  if (name == "m-2to1") return analytic::biseparable();
  if (name == "m-1to2") return analytic::adaptive_1to2();
  return std::nullopt;
}

std::optional<std::string> analytic_expression(const std::string& name) {
  if (name == "collective-octahedron") return "4/5";
  if (name == "local-xyz") return "1/2 + √3/6";
  if (name == "m-2to1") return "1/2 + √22/16";
  if (name == "m-1to2") return "1/2 + (11+√41)/60";
  return std::nullopt;
}

std::vector<std::string> catalog_names() {
  return {"collective-octahedron", "local-xyz", "m2", "m-2to1", "m-1to2", "k0", "k1"};
}

}  // namespace spintriad
