#include "spintriad/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include "spintriad/random.hpp"

namespace spintriad {

namespace {

constexpr double kDomainTol = 1e-12;

double clamped_sqrt(double v) {
  if (v < 0.0) {
    if (v < -kDomainTol) throw std::invalid_argument("negative radicand");
    v = 0.0;
  }
  return std::sqrt(v);
}

}  // namespace

double q_norm_product(double a, double b, double c, double phi) {
  const double linear = 15.0 * a * a + 10.0 * b * b + 5.0 * c * c;
  const double amp2 = 9.0 * a * a + 12.0 * a * c * std::cos(phi) + 4.0 * c * c;
  const double zterm = 9.0 * a * a + 2.0 * b * b - c * c;
  return linear + std::sqrt(8.0 * b * b * amp2 + zterm * zterm);
}

double q_norm_product_max(double a, double b, double c) {
  const double linear = 15.0 * a * a + 10.0 * b * b + 5.0 * c * c;
  const double amp = 3.0 * std::abs(a) + 2.0 * std::abs(c);
  const double zterm = 9.0 * a * a + 2.0 * b * b - c * c;
  return linear + std::sqrt(8.0 * b * b * amp * amp + zterm * zterm);
}

double q_norm_surplus(double x, double y) {
  if (x < -kDomainTol || x > 1.0 + kDomainTol || std::abs(y) > x + kDomainTol)
    throw std::invalid_argument("q_norm_surplus: (x, y) outside domain");
  const double sp = clamped_sqrt(x + y);
  const double sm = clamped_sqrt(x - y);
  const double one_minus_x = std::max(0.0, 1.0 - x);
  const double amp = 3.0 * sp + 2.0 * sm;
  const double lin = 2.0 * x + 5.0 * y + 2.0;
  return std::sqrt(4.0 * one_minus_x * amp * amp + lin * lin);
}

Operator q_map_product(double a, double b, double c, double phi) {
  if (std::abs(a * a + b * b + c * c - 1.0) > 1e-9)
    throw std::invalid_argument("q_map_product: coefficients must be normalized");
  Matrix m = (15.0 * a * a + 10.0 * b * b + 5.0 * c * c) * Matrix::Identity(2, 2);
  m += 2.0 * std::sqrt(2.0) * b * (3.0 * a + 2.0 * c * std::cos(phi)) * pauli_x();
  m += 4.0 * std::sqrt(2.0) * b * c * std::sin(phi) * pauli_y();
  m += (9.0 * a * a + 2.0 * b * b - c * c) * pauli_z();
  return Operator(std::move(m), {2});
}

double sym_overlap_product(double a, double b, double c) {
  return (6.0 * a * a + 4.0 * b * b + 2.0 * c * c) / 6.0;
}

double pair_norm_excess(double xi, double theta) {
  if (xi < -kDomainTol || xi > M_PI_2 + kDomainTol || theta < -kDomainTol ||
      theta > M_PI + kDomainTol)
    throw std::invalid_argument("pair_norm_excess: (xi, theta) outside domain");
  const double st = std::sin(theta), ct = std::cos(theta);
  const double sx = std::sin(xi), cx = std::cos(xi);
  const double wing = st * st * (3.0 + sx) * (3.0 + sx);
  const double hp = wing + (5.0 * cx + 4.0 * ct) * (5.0 * cx + 4.0 * ct);
  const double hm = wing + (5.0 * cx - 4.0 * ct) * (5.0 * cx - 4.0 * ct);
  return std::sqrt(hp) + std::sqrt(hm);
}

double pair_norm_sum_full(double xi, double theta, double phi) {
  const double st = std::sin(theta), ct = std::cos(theta);
  const double sx = std::sin(xi), cx = std::cos(xi);
  const double wing = st * st * (9.0 + sx * sx + 6.0 * sx * std::cos(2.0 * phi));
  const double hp = wing + (5.0 * cx + 4.0 * ct) * (5.0 * cx + 4.0 * ct);
  const double hm = wing + (5.0 * cx - 4.0 * ct) * (5.0 * cx - 4.0 * ct);
  return 20.0 + std::sqrt(hp) + std::sqrt(hm);
}

namespace {

struct TangentConstants {
  double p, x0, y0, alpha, beta, gamma;
};

TangentConstants tangent_constants() {
  const double r41 = std::sqrt(41.0);
  TangentConstants t;
  t.p = (47.0 - 3.0 * r41) / 216.0;
  t.x0 = (2003.0 + 27.0 * r41) / 3524.0;
  t.y0 = (-1039.0 + 81.0 * r41) / 3524.0;
  t.alpha = 2.5 - 43.0 / (2.0 * r41);
  t.beta = 4.5 - 13.0 / (2.0 * r41);
  t.gamma = 2.0 + 28.0 / r41;
  return t;
}

}  // namespace

double zero_locator_l(double zeta) {
  const TangentConstants t = tangent_constants();
  const double cz = std::cos(zeta), sz = std::sin(zeta);
  return 18.0 + t.alpha * t.alpha + t.alpha * t.gamma -
         (20.0 - t.beta * t.gamma - 2.0 * t.alpha * t.beta) * cz -
         (25.0 - t.beta * t.beta) * cz * cz + 24.0 * sz;
}

double zero_locator_h(double zeta) {
  const double r41 = std::sqrt(41.0);
  const double c0 = -4197.0 + 977.0 * r41;
  const double c1 = 24.0 * (-633.0 + 113.0 * r41);
  const double c2 = 4.0 * (-14667.0 + 2191.0 * r41);
  const double c3 = 48.0 * (-843.0 + 139.0 * r41);
  const double c4 = -53775.0 + 8403.0 * r41;
  return c0 * std::cos(2.0 * zeta) + c1 * std::sin(2.0 * zeta) + c2 * std::cos(zeta) +
         c3 * std::sin(zeta) + c4;
}

namespace {

double bisect(const std::function<double(double)>& fn, double lo, double hi) {
  double flo = fn(lo);
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = fn(mid);
    if ((flo < 0.0) == (fm < 0.0)) { lo = mid; flo = fm; } else { hi = mid; }
    if (hi - lo < 1e-15) break;
  }
  return 0.5 * (lo + hi);
}

double newton_polish(const std::function<double(double)>& fn, double x) {
  for (int i = 0; i < 6; ++i) {
    const double h = 1e-7;
    const double d = (fn(x + h) - fn(x - h)) / (2.0 * h);
    if (std::abs(d) < 1e-12) break;
    x -= fn(x) / d;
  }
  return x;
}

}  // namespace

BoundConstants bound_constants() {
  const double r41 = std::sqrt(41.0);
  const TangentConstants t = tangent_constants();
  BoundConstants b;
  b.p = t.p;
  b.x0 = t.x0;
  b.y0 = t.y0;
  b.alpha = t.alpha;
  b.beta = t.beta;
  b.gamma = t.gamma;
  b.u0 = (-308.0 + 27.0 * r41) / 565.0;
  const double inner = std::sqrt(-35743460158.0 + 5587351798.0 * r41);
  const double denom = 294550033.0 - 45301173.0 * r41;
  b.u_plus = (37529139.0 * r41 - 239145719.0 + 576.0 * inner) / denom;
  b.u_minus = (37529139.0 * r41 - 239145719.0 - 576.0 * inner) / denom;
  b.zeta_star = bisect(zero_locator_l, 0.0, M_PI_2);
  b.zeta0 = newton_polish(zero_locator_h, std::acos(b.u0));
  b.zeta_plus = newton_polish(zero_locator_h, std::acos(b.u_plus));
  return b;
}

std::string bound_lemma_name(BoundLemma lemma) {
  switch (lemma) {
    case BoundLemma::A2: return "A2";
    case BoundLemma::B2: return "B2";
    case BoundLemma::C1: return "C1";
  }
  throw std::invalid_argument("unknown bound lemma");
}

BoundLemma bound_lemma_from_name(const std::string& name) {
  if (name == "A2") return BoundLemma::A2;
  if (name == "B2") return BoundLemma::B2;
  if (name == "C1") return BoundLemma::C1;
  throw std::invalid_argument("unknown bound lemma: " + name);
}

namespace {

// Deficiency scan in a 2-d domain: rectangle, or the triangle |y| <= x.
struct ScanDomain {
  bool triangle = false;
  double xlo = 0.0, xhi = 1.0, ylo = -1.0, yhi = 1.0;

  std::pair<double, double> clamp(double x, double y) const {
    x = std::clamp(x, xlo, xhi);
    if (triangle) {
      y = std::clamp(y, -x, x);
    } else {
      y = std::clamp(y, ylo, yhi);
    }
    return {x, y};
  }
};

struct ScanResult {
  double max_violation;
  std::vector<std::array<double, 2>> saturation_points;
};

std::array<double, 2> refine_minimum(const std::function<double(double, double)>& deficiency,
                                     const ScanDomain& dom, std::array<double, 2> start,
                                     double half_width) {
  std::array<double, 2> best = start;
  double best_val = deficiency(best[0], best[1]);
  for (int iter = 0; iter < 40; ++iter) {
    const int m = 9;
    for (int i = -m; i <= m; ++i) {
      for (int j = -m; j <= m; ++j) {
        auto [x, y] = dom.clamp(best[0] + half_width * i / m, best[1] + half_width * j / m);
        const double v = deficiency(x, y);
        if (v < best_val) { best_val = v; best = {x, y}; }
      }
    }
    half_width *= 0.5;
    if (half_width < 1e-12) break;
  }
  return best;
}

ScanResult scan_bound(const std::function<double(double, double)>& deficiency,
                      const ScanDomain& dom, long long grid, long long randoms,
                      std::mt19937_64& rng, int expected_points) {
  double max_violation = -std::numeric_limits<double>::infinity();
  std::vector<std::array<double, 2>> minima;  // candidate saturation points
  std::vector<double> minima_vals;

  auto consider = [&](double x, double y) {
    const double d = deficiency(x, y);
    max_violation = std::max(max_violation, -d);
    // Track up to expected_points + 1 well-separated lowest-deficiency points.
    const double sep = 0.05;
    for (size_t k = 0; k < minima.size(); ++k) {
      const double dx = minima[k][0] - x, dy = minima[k][1] - y;
      if (dx * dx + dy * dy < sep * sep) {
        if (d < minima_vals[k]) { minima[k] = {x, y}; minima_vals[k] = d; }
        return;
      }
    }
    if (static_cast<int>(minima.size()) < expected_points + 1) {
      minima.push_back({x, y});
      minima_vals.push_back(d);
      return;
    }
    size_t worst = 0;
    for (size_t k = 1; k < minima.size(); ++k)
      if (minima_vals[k] > minima_vals[worst]) worst = k;
    if (d < minima_vals[worst]) { minima[worst] = {x, y}; minima_vals[worst] = d; }
  };

  for (long long i = 0; i < grid; ++i) {
    const double x = dom.xlo + (dom.xhi - dom.xlo) * static_cast<double>(i) /
                                   static_cast<double>(grid - 1);
    const double ylo = dom.triangle ? -x : dom.ylo;
    const double yhi = dom.triangle ? x : dom.yhi;
    for (long long j = 0; j < grid; ++j) {
      const double y = grid > 1 ? ylo + (yhi - ylo) * static_cast<double>(j) /
                                            static_cast<double>(grid - 1)
                                : ylo;
      consider(x, y);
    }
  }
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (long long r = 0; r < randoms; ++r) {
    const double x = dom.xlo + (dom.xhi - dom.xlo) * unif(rng);
    const double ylo = dom.triangle ? -x : dom.ylo;
    const double yhi = dom.triangle ? x : dom.yhi;
    consider(x, ylo + (yhi - ylo) * unif(rng));
  }

  ScanResult res;
  res.max_violation = max_violation;
  const double step = (dom.xhi - dom.xlo) / static_cast<double>(grid - 1);
  for (const auto& cand : minima) {
    const auto refined = refine_minimum(deficiency, dom, cand, 4.0 * step);
    const double d = deficiency(refined[0], refined[1]);
    res.max_violation = std::max(res.max_violation, -d);
    if (d <= 1e-7) res.saturation_points.push_back(refined);
  }
  std::sort(res.saturation_points.begin(), res.saturation_points.end());
  // Merge refined duplicates that converged to the same point.
  auto near = [](const std::array<double, 2>& a, const std::array<double, 2>& b) {
    return std::abs(a[0] - b[0]) < 1e-6 && std::abs(a[1] - b[1]) < 1e-6;
  };
  res.saturation_points.erase(
      std::unique(res.saturation_points.begin(), res.saturation_points.end(), near),
      res.saturation_points.end());
  return res;
}

}  // namespace

BoundReport verify_bound(BoundLemma lemma, long long grid, long long randoms, uint64_t seed) {
  if (grid < 100) throw std::invalid_argument("verify_bound: grid resolution must be >= 100");
  auto rng = stream_rng(seed, 0);

  BoundReport report;
  report.lemma = bound_lemma_name(lemma);
  report.grid = grid;
  report.randoms = randoms;
  report.seed = seed;

  if (lemma == BoundLemma::A2) {
    const double c0 = 2.5 * std::sqrt(5.5);
    const double slope = 8.0 * std::sqrt(2.0 / 11.0);
    auto deficiency = [&](double x, double y) { return c0 + slope * y - q_norm_surplus(x, y); };
    ScanDomain dom;
    dom.triangle = true;
    const auto res = scan_bound(deficiency, dom, grid, randoms, rng, 1);
    report.max_violation = res.max_violation;
    report.saturation_points = res.saturation_points;
  } else if (lemma == BoundLemma::C1) {
    const TangentConstants t = tangent_constants();
    auto deficiency = [&](double x, double y) {
      return t.alpha * x + t.beta * y + t.gamma - q_norm_surplus(x, y);
    };
    ScanDomain dom;
    dom.triangle = true;
    const auto res = scan_bound(deficiency, dom, grid, randoms, rng, 2);
    report.max_violation = res.max_violation;
    report.saturation_points = res.saturation_points;
  } else {
    const double cap = 2.5 * std::sqrt(22.0);
    auto deficiency = [&](double xi, double theta) { return cap - pair_norm_excess(xi, theta); };
    ScanDomain dom;
    dom.triangle = false;
    dom.xlo = 0.0;
    dom.xhi = M_PI_2;
    dom.ylo = 0.0;
    dom.yhi = M_PI;
    const auto res = scan_bound(deficiency, dom, grid, randoms, rng, 1);
    report.max_violation = res.max_violation;
    report.saturation_points = res.saturation_points;
    // Spot-check the azimuth dependence against the global bound.
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (long long r = 0; r < std::max<long long>(randoms, 1000); ++r) {
      const double xi = M_PI_2 * unif(rng);
      const double theta = M_PI * unif(rng);
      const double phi = 2.0 * M_PI * unif(rng);
      report.max_violation = std::max(
          report.max_violation, pair_norm_sum_full(xi, theta, phi) - (20.0 + cap));
    }
  }
  return report;
}

}  // namespace spintriad
