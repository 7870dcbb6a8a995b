#include "cliffstab/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

namespace cliffstab {

namespace {

// Pulls a requested scan endpoint just inside the chart.
double clamp_scan_end(double t_max) {
  return std::min(t_max, chart_t_limit - 1e-9);
}

}  // namespace

double RicciEigenvalues::min() const { return std::min({t, theta, phi}); }

HessianDiagonal hessian_w(double w1, double w2, double t) {
  require_in_chart(t);
  const double c = std::cos(2.0 * t);
  return HessianDiagonal{w2, c * w1, -c * w1};
}

HessianDiagonal hessian_w(const ConformalProfile& p, double t) {
  return hessian_w(p.w1(t), p.w2(t), t);
}

double laplacian_w(double w1, double w2, double t) {
  require_in_chart(t);
  return w2 - 2.0 * std::tan(2.0 * t) * w1;
}

double laplacian_w(const ConformalProfile& p, double t) {
  return laplacian_w(p.w1(t), p.w2(t), t);
}

// Diagonal components of Ric(e^{2w} g) for a radial w. Derived from the
// conformal transformation law in dimension three,
//   Ric-bar = Ric - (Hess w - dw (x) dw) - (Lap w + |grad w|^2) g,
// with Ric = 2g, |grad w|^2 = w'^2 and the Hessian/Laplacian above. The
// conformal factor w itself cancels from the coordinate components.
RicciDiagonal ricci_components(double w1, double w2, double t) {
  require_in_chart(t);
  const double s = std::sin(2.0 * t);
  const double c = std::cos(2.0 * t);
  const double tan2t = std::tan(2.0 * t);

  const double tt = 2.0 * (1.0 - w2) + 2.0 * tan2t * w1;
  const double common = 2.0 - w2 + 2.0 * tan2t * w1 - w1 * w1;
  const double thth = (1.0 + s) * common - w1 * c;
  const double phph = (1.0 - s) * common + w1 * c;
  return RicciDiagonal{tt, thth, phph};
}

RicciDiagonal ricci_components(const ConformalProfile& p, double t) {
  return ricci_components(p.w1(t), p.w2(t), t);
}

RicciEigenvalues ricci_eigenvalues(double w, double w1, double w2, double t) {
  require_in_chart(t);
  // Dividing the components by 1 +- sin(2t) cancels catastrophically near
  // the chart edge (sin(2t) rounds to 1 and the phi term becomes 0/0).
  // Substitute the exact half-angle forms
  //   cos(2t)/(1 + sin 2t) = cot(t + pi/4),
  //   cos(2t)/(1 - sin 2t) = tan(t + pi/4),
  // which stay finite and fully accurate on the whole chart.
  const double tan2t = std::tan(2.0 * t);
  const double tanp = std::tan(t + 0.25 * std::numbers::pi);
  const double conf = std::exp(2.0 * w);
  const double tt = 2.0 * (1.0 - w2) + 2.0 * tan2t * w1;
  const double common = 2.0 - w2 + 2.0 * tan2t * w1 - w1 * w1;
  return RicciEigenvalues{tt / conf, (common - w1 / tanp) / conf,
                          (common + w1 * tanp) / conf};
}

RicciEigenvalues ricci_eigenvalues(const ConformalProfile& p, double t) {
  return ricci_eigenvalues(p.w(t), p.w1(t), p.w2(t), t);
}

double scalar_curvature(const ConformalProfile& p, double t) {
  const RicciEigenvalues eig = ricci_eigenvalues(p, t);
  return eig.t + eig.theta + eig.phi;
}

std::vector<RicciScanRow> ricci_scan(const ConformalProfile& p,
                                     std::size_t samples, double t_max) {
  if (samples < 2) throw std::invalid_argument("ricci scan needs >= 2 samples");
  const double end = clamp_scan_end(t_max);
  if (!(end > 0.0)) throw std::invalid_argument("ricci scan needs t_max > 0");

  std::vector<RicciScanRow> rows;
  rows.reserve(samples);
  for (std::size_t k = 0; k < samples; ++k) {
    const double t =
        end * static_cast<double>(k) / static_cast<double>(samples - 1);
    rows.push_back({t, ricci_eigenvalues(p, t)});
  }
  return rows;
}

RicciScanMinimum min_eigenvalue(const std::vector<RicciScanRow>& scan) {
  if (scan.empty()) throw std::invalid_argument("empty ricci scan");
  RicciScanMinimum best{scan.front().t, scan.front().eig.min()};
  for (const auto& row : scan) {
    const double v = row.eig.min();
    if (v < best.value) best = {row.t, v};
  }
  return best;
}

RicciScanMinimum scan_nonnegativity(const ConformalProfile& p,
                                    std::size_t resolution) {
  if (resolution < 64) {
    throw std::invalid_argument("nonnegativity scan needs resolution >= 64");
  }
  const double r = p.bump().r;
  RicciScanMinimum best{-2.0 * r, ricci_eigenvalues(p, -2.0 * r).min()};
  for (std::size_t k = 1; k < resolution; ++k) {
    const double t = -2.0 * r + 4.0 * r * static_cast<double>(k) /
                                    static_cast<double>(resolution - 1);
    const double v = ricci_eigenvalues(p, t).min();
    if (v < best.value) best = {t, v};
  }
  // Beyond 2r the metric is C g, so every normalized eigenvalue is 2/C.
  const double tail = 2.0 / tail_constant(p);
  if (tail < best.value) best = {2.0 * r, tail};
  return best;
}

double tail_eigenvalue_residual(const ConformalProfile& p,
                                std::size_t samples) {
  const double lo = 2.0 * p.bump().r;
  const double hi = chart_t_limit - 1e-9;
  const double target = 2.0 / tail_constant(p);
  double worst = 0.0;
  for (std::size_t k = 0; k < samples; ++k) {
    const double t = lo + (hi - lo) * static_cast<double>(k) /
                              static_cast<double>(samples - 1);
    const RicciEigenvalues eig = ricci_eigenvalues(p, t);
    worst = std::max({worst, std::abs(eig.t - target),
                      std::abs(eig.theta - target),
                      std::abs(eig.phi - target)});
  }
  return worst;
}

void write_ricci_scan_csv(const std::vector<RicciScanRow>& scan,
                          std::ostream& os) {
  os.precision(17);
  os << "t,eig_t,eig_theta,eig_phi\n";
  for (const auto& row : scan) {
    os << row.t << ',' << row.eig.t << ',' << row.eig.theta << ','
       << row.eig.phi << '\n';
  }
}

FeasibleRadius max_feasible_r(std::size_t scan_resolution, double r_tol) {
  if (!(r_tol > 0.0)) throw std::invalid_argument("bisection tol must be > 0");
  constexpr double slack = 1e-9;
  const auto scan_min = [scan_resolution](double r) {
    const ConformalProfile p(make_bump(r));
    return scan_nonnegativity(p, scan_resolution).value;
  };
  const auto feasible = [&](double m) { return m >= -slack; };

  const double r_cap = 0.125 * std::numbers::pi - 1e-9;
  const double m_cap = scan_min(r_cap);
  if (feasible(m_cap)) {
    // The entire admissible family passes; report the domain edge rather
    // than pretending a crossing exists.
    return FeasibleRadius{r_cap, m_cap, true};
  }

  // Descending probe until the first feasible radius brackets the boundary.
  constexpr int probes = 16;
  double hi = r_cap;
  double lo = 0.0;
  double m_lo = 0.0;
  bool bracketed = false;
  for (int k = probes - 1; k >= 1; --k) {
    const double rk = r_cap * static_cast<double>(k) / probes;
    const double mk = scan_min(rk);
    if (feasible(mk)) {
      lo = rk;
      m_lo = mk;
      bracketed = true;
      break;
    }
    hi = rk;
  }
  if (!bracketed) {
    const double r_floor = 1e-4;
    const double m_floor = scan_min(r_floor);
    if (!feasible(m_floor)) {
      throw std::runtime_error(
          "empty feasible set: even r = 1e-4 fails the nonnegativity scan "
          "(implementation bug)");
    }
    lo = r_floor;
    m_lo = m_floor;
  }

  while (hi - lo > r_tol) {
    const double mid = 0.5 * (lo + hi);
    const double m_mid = scan_min(mid);
    if (feasible(m_mid)) {
      lo = mid;
      m_lo = m_mid;
    } else {
      hi = mid;
    }
  }
  return FeasibleRadius{lo, m_lo, false};
}

}  // namespace cliffstab
