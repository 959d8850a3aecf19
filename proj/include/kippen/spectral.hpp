#pragma once

// Numeric side: Hermitian eigendecomposition, Kippenhahn curve sampling,
// disc detection, the eigenvector-overlap probe for rotational invariance,
// PSD square roots, and CSV/SVG curve output.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <limits>
#include <tuple>
#include <cmath>
#include <complex>
#include <numeric>
#include <optional>
#include <queue>
#include <ostream>
#include <string>
#include <vector>

#include "kippen/errors.hpp"
#include "kippen/matrix.hpp"
#include "kippen/scalar.hpp"

namespace kippen {

using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

constexpr double kPi = 3.14159265358979323846;

template <class K>
CMat to_eigen(const Matrix<K>& m) {
  CMat r(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      r(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = to_complex(m(i, j));
  return r;
}

/// Re(e^{-i theta} A) = (e^{-i theta} A + e^{i theta} A*)/2.
inline CMat phase_hermitian(const CMat& A, double theta) {
  cplx w = std::polar(1.0, -theta);
  return (w * A + std::conj(w) * A.adjoint()) * 0.5;
}

struct EigenPair {
  double value;
  CVec vector;
  double residual;
};

/// Full Hermitian decomposition, values descending.
inline std::vector<EigenPair> herm_eig(const CMat& H, double tol = 1e-12) {
  if (H.rows() != H.cols()) throw Error("herm_eig needs a square matrix");
  double nrm = std::max(H.norm(), 1e-300);
  if ((H - H.adjoint()).norm() > tol * nrm * 10) throw Error("herm_eig: matrix is not Hermitian");
  Eigen::SelfAdjointEigenSolver<CMat> es(H);
  if (es.info() != Eigen::Success) throw ConvergenceFailure("Hermitian eigensolver did not converge");
  std::vector<EigenPair> out;
  for (Eigen::Index k = H.rows() - 1; k >= 0; --k) {
    CVec v = es.eigenvectors().col(k);
    double lam = es.eigenvalues()(k);
    out.push_back({lam, v, (H * v - lam * v).norm()});
  }
  return out;
}

inline std::vector<double> eigenvalues_desc(const CMat& H) {
  std::vector<double> v;
  for (const auto& e : herm_eig(H)) v.push_back(e.value);
  return v;
}

// ---------------------------------------------------------------------------
// Kippenhahn curves.

struct CurveSample {
  double theta;
  double lambda;
  cplx z;
};

struct CurveBranch {
  std::size_t index;
  std::vector<CurveSample> samples;
  double gap_floor;  ///< smallest distance to another eigenvalue along the branch
};

/// Samples every eigenvalue branch of H_A(theta) on a uniform grid; branches
/// are stitched by maximal eigenvector overlap between neighbouring angles
/// and each point is z = <A y, y>.
inline std::vector<CurveBranch> kippenhahn_sample(const CMat& A, std::size_t grid_size, double tol = 1e-12) {
  if (grid_size < 8) throw Error("grid_size must be >= 8");
  std::size_t n = static_cast<std::size_t>(A.rows());
  std::vector<CurveBranch> br(n);
  for (std::size_t j = 0; j < n; ++j) br[j] = {j, {}, std::numeric_limits<double>::infinity()};
  std::vector<CVec> prev;
  for (std::size_t g = 0; g < grid_size; ++g) {
    double th = 2 * kPi * static_cast<double>(g) / static_cast<double>(grid_size);
    auto eig = herm_eig(phase_hermitian(A, th), tol);
    std::vector<std::size_t> assign(n);
    std::iota(assign.begin(), assign.end(), 0);
    if (!prev.empty()) {
      // greedy assignment by decreasing overlap
      std::vector<std::tuple<double, std::size_t, std::size_t>> ov;
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) ov.emplace_back(std::abs(prev[j].dot(eig[k].vector)), j, k);
      std::sort(ov.begin(), ov.end(), [](const auto& a, const auto& b) { return std::get<0>(a) > std::get<0>(b); });
      std::vector<bool> used_j(n, false), used_k(n, false);
      for (const auto& [o, j, k] : ov) {
        if (used_j[j] || used_k[k]) continue;
        used_j[j] = used_k[k] = true;
        assign[j] = k;
      }
    }
    prev.assign(n, CVec());
    for (std::size_t j = 0; j < n; ++j) {
      const auto& e = eig[assign[j]];
      cplx z = e.vector.dot(A * e.vector);
      br[j].samples.push_back({th, e.value, z});
      for (std::size_t k = 0; k < n; ++k)
        if (k != assign[j]) br[j].gap_floor = std::min(br[j].gap_floor, std::abs(eig[k].value - e.value));
      prev[j] = e.vector;
    }
  }
  return br;
}

struct DiscResult {
  bool is_disc;
  double radius;
  double spread;  ///< max - min of the largest eigenvalue over the grid
};

/// W(A) is an origin-centred disc iff the largest eigenvalue of H_A(theta)
/// is constant in theta.
inline DiscResult is_disc(const CMat& A, std::size_t grid_size = 720, double tol = 1e-9) {
  double lo = std::numeric_limits<double>::infinity(), hi = -lo, sum = 0;
  for (std::size_t g = 0; g < grid_size; ++g) {
    double th = 2 * kPi * static_cast<double>(g) / static_cast<double>(grid_size);
    Eigen::SelfAdjointEigenSolver<CMat> es(phase_hermitian(A, th), Eigen::EigenvaluesOnly);
    double m = es.eigenvalues()(A.rows() - 1);
    lo = std::min(lo, m);
    hi = std::max(hi, m);
    sum += m;
  }
  double r = sum / static_cast<double>(grid_size);
  return {hi - lo <= tol * std::max(std::abs(r), 1e-300), r, hi - lo};
}

/// Largest deviation of a branch from the origin-centred circle through its mean radius.
inline double origin_circle_deviation(const CurveBranch& b) {
  double mean = 0;
  for (const auto& s : b.samples) mean += std::abs(s.z);
  mean /= static_cast<double>(b.samples.size());
  double dev = 0;
  for (const auto& s : b.samples) dev = std::max(dev, std::abs(std::abs(s.z) - mean));
  return dev;
}

/// Smallest max-deviation of the sampled points from any circle, searched
/// over centres by Nelder-Mead from several starts. For a centre c the best
/// radius is the annulus midpoint, so the objective is half the annulus width.
/// The result is attained, hence an upper bound on the true minimum.
inline double best_circle_deviation(const std::vector<cplx>& pts) {
  auto f = [&](cplx c) {
    double lo = std::numeric_limits<double>::infinity(), hi = 0;
    for (const auto& p : pts) {
      double d = std::abs(p - c);
      lo = std::min(lo, d);
      hi = std::max(hi, d);
    }
    return (hi - lo) / 2;
  };
  cplx centroid = std::accumulate(pts.begin(), pts.end(), cplx(0)) / static_cast<double>(pts.size());
  double scale = 0;
  for (const auto& p : pts) scale = std::max(scale, std::abs(p - centroid));
  if (scale == 0) return 0;
  double best = f(centroid);
  std::vector<cplx> starts{centroid, 0.0};
  for (int k = 0; k < 8; ++k) starts.push_back(centroid + 0.5 * scale * std::polar(1.0, k * kPi / 4));
  for (const cplx& s : starts) {
    std::array<cplx, 3> v{s, s + cplx(0.1 * scale, 0), s + cplx(0, 0.1 * scale)};
    std::array<double, 3> fv{f(v[0]), f(v[1]), f(v[2])};
    for (int it = 0; it < 400; ++it) {
      std::array<int, 3> o{0, 1, 2};
      std::sort(o.begin(), o.end(), [&](int a, int b) { return fv[a] < fv[b]; });
      cplx mid = (v[o[0]] + v[o[1]]) / 2.0;
      cplx xr = mid + (mid - v[o[2]]);
      double fr = f(xr);
      if (fr < fv[o[0]]) {
        cplx xe = mid + 2.0 * (mid - v[o[2]]);
        double fe = f(xe);
        if (fe < fr) v[o[2]] = xe, fv[o[2]] = fe;
        else v[o[2]] = xr, fv[o[2]] = fr;
      } else if (fr < fv[o[1]]) {
        v[o[2]] = xr, fv[o[2]] = fr;
      } else {
        cplx xc = mid + 0.5 * (v[o[2]] - mid);
        double fc = f(xc);
        if (fc < fv[o[2]]) {
          v[o[2]] = xc, fv[o[2]] = fc;
        } else {
          for (int k : {o[1], o[2]}) v[k] = (v[k] + v[o[0]]) / 2.0, fv[k] = f(v[k]);
        }
      }
      if (std::abs(v[0] - v[1]) + std::abs(v[0] - v[2]) < 1e-14 * scale) break;
    }
    best = std::min(best, *std::min_element(fv.begin(), fv.end()));
  }
  return best;
}

struct CircleBounds {
  double lower;  ///< no circle comes closer than this to every point
  double upper;  ///< attained by `centre`
  cplx centre;
  bool certified;  ///< false when the points do not surround their centroid
  std::size_t cells;
};

/// Bounds on min over centres c of f(c) = (max |p - c| - min |p - c|)/2, the
/// smallest max-deviation of the points from a circle (up to rounding).
/// f is 1-Lipschitz in c, so best-first subdivision of a square around the
/// centroid m gives a lower bound there. Outside the square, with rho =
/// min|p - m| cos(gap/2) for the largest angular gap seen from m and
/// D = max|p - m|, every c at distance d from m has
/// f(c) >= (4 d rho - (D^2 - min|p - m|^2)) / (4 (d + D)).
inline CircleBounds circle_deviation_bounds(const std::vector<cplx>& pts, double rel_gap = 0.05,
                                            std::size_t max_cells = 200000) {
  if (pts.empty()) throw Error("circle_deviation_bounds needs points");
  auto f = [&](cplx c) {
    double lo = std::numeric_limits<double>::infinity(), hi = 0;
    for (const auto& p : pts) {
      double d = std::abs(p - c);
      lo = std::min(lo, d);
      hi = std::max(hi, d);
    }
    return (hi - lo) / 2;
  };
  cplx m = std::accumulate(pts.begin(), pts.end(), cplx(0)) / static_cast<double>(pts.size());
  double rmin = std::numeric_limits<double>::infinity(), D = 0;
  std::vector<double> ang;
  for (const auto& p : pts) {
    double r = std::abs(p - m);
    rmin = std::min(rmin, r);
    D = std::max(D, r);
    ang.push_back(std::arg(p - m));
  }
  std::sort(ang.begin(), ang.end());
  double gap = ang.front() + 2 * kPi - ang.back();
  for (std::size_t k = 1; k < ang.size(); ++k) gap = std::max(gap, ang[k] - ang[k - 1]);
  CircleBounds out{0, f(m), m, false, 1};
  if (out.upper == 0) return {0, 0, m, true, 1};
  double rho = gap < kPi ? rmin * std::cos(gap / 2) : 0;
  double K = D * D - rmin * rmin;
  double U = best_circle_deviation(pts);
  out.upper = std::min(out.upper, U);
  if (rho <= U) return out;
  double L = 1.01 * (K + 4 * U * D) / (4 * (rho - U)) + 1e-12;
  double outside = (4 * L * rho - K) / (4 * (L + D));
  struct Cell {
    double lb;
    cplx c;
    double h;
    bool operator>(const Cell& o) const { return lb > o.lb; }
  };
  std::priority_queue<Cell, std::vector<Cell>, std::greater<Cell>> queue;
  auto push = [&](cplx c, double h) {
    double v = f(c);
    if (v < out.upper) out.upper = v, out.centre = c;
    queue.push({v - h * std::sqrt(2.0), c, h});
    ++out.cells;
  };
  push(m, L);
  while (!queue.empty() && out.cells < max_cells) {
    Cell top = queue.top();
    if (out.upper - top.lb <= rel_gap * out.upper) break;
    queue.pop();
    double h = top.h / 2;
    for (cplx d : {cplx(-h, -h), cplx(-h, h), cplx(h, -h), cplx(h, h)}) push(top.c + d, h);
  }
  double inside = queue.empty() ? out.upper : queue.top().lb;
  out.lower = std::max(0.0, std::min(inside, outside));
  out.certified = true;
  return out;
}

inline std::vector<cplx> branch_points(const CurveBranch& b) {
  std::vector<cplx> p;
  for (const auto& s : b.samples) p.push_back(s.z);
  return p;
}

// ---------------------------------------------------------------------------
// Overlap probe.

enum class ProbeVerdict { NotCircular, NotRotationallyInvariant, ConsistentUpToTolerance, Inconclusive };

inline const char* to_string(ProbeVerdict v) {
  switch (v) {
    case ProbeVerdict::NotCircular: return "NotCircular";
    case ProbeVerdict::NotRotationallyInvariant: return "NotRotationallyInvariant";
    case ProbeVerdict::ConsistentUpToTolerance: return "ConsistentUpToTolerance";
    default: return "Inconclusive";
  }
}

struct ProbeOptions {
  std::size_t branch = 0;  ///< 0 = largest eigenvalue
  double tol = 1e-8;
  double gap_tol = 1e-6;  ///< relative to ||H||
};

struct OverlapReport {
  double delta;
  std::vector<double> thetas;   ///< theta1, theta2
  std::vector<double> values;   ///< overlap magnitudes at theta1, theta2
  ProbeVerdict verdict;
  std::string witness;
  double min_gap = 0;
};

namespace detail {
inline double branch_gap(const std::vector<EigenPair>& e, std::size_t j) {
  double g = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < e.size(); ++k)
    if (k != j) g = std::min(g, std::abs(e[k].value - e[j].value));
  return g;
}
}  // namespace detail

/// Eigenpairs at theta1, theta1 + delta, theta2, theta2 + delta; compares the
/// spectra, then the overlap magnitudes of the chosen branch.
inline OverlapReport rotinv_probe(const CMat& X, double delta, double theta1, double theta2, ProbeOptions opt = {}) {
  if (std::abs(std::remainder(delta, 2 * kPi)) < 1e-15) throw Error("delta must be nonzero mod 2 pi");
  if (theta1 == theta2) throw Error("theta1 and theta2 must differ");
  std::size_t n = static_cast<std::size_t>(X.rows());
  if (opt.branch >= n) throw Error("branch index out of range");
  OverlapReport rep{delta, {theta1, theta2}, {}, ProbeVerdict::ConsistentUpToTolerance, "", 0};
  std::array<double, 4> th{theta1, theta1 + delta, theta2, theta2 + delta};
  std::array<std::vector<EigenPair>, 4> eig;
  double scale = 0;
  for (int k = 0; k < 4; ++k) {
    CMat H = phase_hermitian(X, th[k]);
    scale = std::max(scale, H.norm());
    eig[k] = herm_eig(H);
  }
  if (scale == 0) {
    rep.verdict = ProbeVerdict::Inconclusive;
    rep.witness = "zero matrix: every eigenvalue is degenerate";
    return rep;
  }
  for (int k = 1; k < 4; ++k)
    for (std::size_t j = 0; j < n; ++j)
      if (std::abs(eig[k][j].value - eig[0][j].value) > opt.tol * scale) {
        rep.verdict = ProbeVerdict::NotCircular;
        rep.witness = "eigenvalue " + std::to_string(j) + " is " + std::to_string(eig[0][j].value) + " at theta=" +
                      std::to_string(th[0]) + " but " + std::to_string(eig[k][j].value) + " at theta=" +
                      std::to_string(th[k]);
        return rep;
      }
  rep.min_gap = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 4; ++k) rep.min_gap = std::min(rep.min_gap, detail::branch_gap(eig[k], opt.branch));
  if (rep.min_gap < opt.gap_tol * scale) {
    rep.verdict = ProbeVerdict::Inconclusive;
    rep.witness = "spectral gap " + std::to_string(rep.min_gap) + " below tolerance at the probed branch";
    return rep;
  }
  double m1 = std::abs(eig[0][opt.branch].vector.dot(eig[1][opt.branch].vector));
  double m2 = std::abs(eig[2][opt.branch].vector.dot(eig[3][opt.branch].vector));
  rep.values = {m1, m2};
  if (std::abs(m1 - m2) > opt.tol) {
    rep.verdict = ProbeVerdict::NotRotationallyInvariant;
    rep.witness = "overlap magnitudes " + std::to_string(m1) + " and " + std::to_string(m2) + " differ";
  }
  return rep;
}

struct OverlapFit {
  std::vector<cplx> coeffs;  ///< c_1..c_n, frequencies 0..n-1 after the gauge shift
  double residual;           ///< max fit error on the grid
  double min_real;           ///< smallest real part among the coefficients
  double max_imag;           ///< largest |imaginary part|
  double sum_error;          ///< |sum c_m - 1|
  double base_spread = 0;    ///< largest coefficient change between base angles
  std::vector<double> base_angles;
  bool consistent;           ///< nonnegative, summing to 1, fitting within tol, base independent
};

namespace detail {

/// Fit of theta -> <y(theta0), y(theta0 + theta)> for one base angle.
inline OverlapFit overlap_fit_at(const CMat& X, std::size_t branch, std::size_t grid_size, double tol, double gap_tol,
                                 double theta0) {
  std::size_t n = static_cast<std::size_t>(X.rows());
  std::vector<CVec> ys;
  std::vector<double> th;
  for (std::size_t g = 0; g < grid_size; ++g) {
    double t = 2 * kPi * static_cast<double>(g) / static_cast<double>(grid_size);
    CMat H = phase_hermitian(X, theta0 + t);
    auto e = herm_eig(H);
    double nrm = H.norm();
    if (nrm == 0 || branch_gap(e, branch) < gap_tol * nrm)
      throw DegenerateBranch("eigenvalue branch is not simple on the grid");
    ys.push_back(e[branch].vector);
    th.push_back(t);
  }
  // gauge coordinate: largest smallest-magnitude over the sweep
  std::size_t p = 0;
  double best = -1;
  for (std::size_t i = 0; i < n; ++i) {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& y : ys) m = std::min(m, std::abs(y(static_cast<Eigen::Index>(i))));
    if (m > best) best = m, p = i;
  }
  if (best < 1e-8) throw DegenerateBranch("no coordinate stays away from zero along the branch");
  for (auto& y : ys) {
    cplx c = y(static_cast<Eigen::Index>(p));
    y *= std::abs(c) / c;
  }
  std::vector<cplx> f;
  for (const auto& y : ys) f.push_back(ys[0].dot(y));
  // DFT coefficients for frequencies -(n-1)..(n-1)
  int N = static_cast<int>(n) - 1;
  std::vector<cplx> c(2 * N + 1);
  for (int k = -N; k <= N; ++k) {
    cplx s = 0;
    for (std::size_t g = 0; g < grid_size; ++g) s += f[g] * std::polar(1.0, -k * th[g]);
    c[k + N] = s / static_cast<double>(grid_size);
  }
  OverlapFit fit{};
  fit.residual = 0;
  for (std::size_t g = 0; g < grid_size; ++g) {
    cplx s = 0;
    for (int k = -N; k <= N; ++k) s += c[k + N] * std::polar(1.0, k * th[g]);
    fit.residual = std::max(fit.residual, std::abs(s - f[g]));
  }
  int lo = 0;
  while (lo < 2 * N && std::abs(c[lo]) <= tol) ++lo;
  fit.coeffs.assign(c.begin() + lo, c.begin() + std::min<int>(lo + static_cast<int>(n), 2 * N + 1));
  fit.coeffs.resize(n, cplx(0));
  bool spill = false;
  for (int k = lo + static_cast<int>(n); k <= 2 * N; ++k) spill = spill || std::abs(c[k]) > tol;
  fit.min_real = std::numeric_limits<double>::infinity();
  fit.max_imag = 0;
  cplx sum = 0;
  for (const auto& x : fit.coeffs) {
    fit.min_real = std::min(fit.min_real, x.real());
    fit.max_imag = std::max(fit.max_imag, std::abs(x.imag()));
    sum += x;
  }
  fit.sum_error = std::abs(sum - 1.0);
  fit.base_angles = {theta0};
  fit.consistent = !spill && fit.residual <= tol && fit.min_real >= -tol && fit.max_imag <= tol && fit.sum_error <= tol;
  return fit;
}

}  // namespace detail

/// Fits theta -> <y(theta0), y(theta0 + theta)> by a trigonometric
/// polynomial on the grid, for each base angle. The eigenvector phase is
/// fixed by making one coordinate real positive along the whole sweep; this
/// gauge is periodic, so the fit uses integer frequencies, which are then
/// shifted to start at 0. For a rotationally invariant X the coefficients
/// are the block weights of the eigenvector and do not depend on theta0;
/// a single real base angle can miss the asymmetry of a real matrix.
inline OverlapFit overlap_poly_fit(const CMat& X, std::size_t branch = 0, std::size_t grid_size = 64, double tol = 1e-8,
                                   double gap_tol = 1e-6, std::vector<double> base_angles = {0.0, 1.0, 2.0}) {
  if (branch >= static_cast<std::size_t>(X.rows())) throw Error("branch index out of range");
  if (base_angles.empty()) throw Error("overlap_poly_fit needs at least one base angle");
  OverlapFit out = detail::overlap_fit_at(X, branch, grid_size, tol, gap_tol, base_angles[0]);
  for (std::size_t b = 1; b < base_angles.size(); ++b) {
    OverlapFit f = detail::overlap_fit_at(X, branch, grid_size, tol, gap_tol, base_angles[b]);
    for (std::size_t k = 0; k < out.coeffs.size(); ++k)
      out.base_spread = std::max(out.base_spread, std::abs(f.coeffs[k] - out.coeffs[k]));
    out.residual = std::max(out.residual, f.residual);
    out.min_real = std::min(out.min_real, f.min_real);
    out.max_imag = std::max(out.max_imag, f.max_imag);
    out.sum_error = std::max(out.sum_error, f.sum_error);
    out.consistent = out.consistent && f.consistent;
  }
  out.base_angles = base_angles;
  out.consistent = out.consistent && out.base_spread <= tol;
  return out;
}

// ---------------------------------------------------------------------------
// PSD square root.

struct PsdSqrt {
  CMat B;  ///< rank x n with B* B = D
  std::size_t rank;
};

/// Rows sqrt(lambda_k) v_k* for eigenvalues above rank_tol * lambda_max; each
/// row is phased so its largest entry is real positive.
inline PsdSqrt psd_sqrt(const CMat& D, double rank_tol = 1e-10) {
  auto e = herm_eig(D);
  std::size_t n = static_cast<std::size_t>(D.rows());
  double lmax = e.empty() ? 0 : std::max(e.front().value, 0.0);
  if (lmax == 0) return {CMat(0, D.cols()), 0};
  for (const auto& p : e) {
    if (p.value < -rank_tol * lmax) throw NotAContraction("defect operator has a negative eigenvalue");
    double r = p.value / lmax;
    if (r >= rank_tol / 10 && r <= rank_tol * 10)
      throw RankDeficiencyAmbiguous("eigenvalue " + std::to_string(p.value) + " is too close to the rank threshold");
  }
  std::vector<Eigen::RowVectorXcd> rows;
  for (const auto& p : e) {
    if (p.value <= rank_tol * lmax) continue;
    Eigen::RowVectorXcd row = std::sqrt(p.value) * p.vector.adjoint();
    Eigen::Index arg;
    row.cwiseAbs().maxCoeff(&arg);
    row *= std::abs(row(arg)) / row(arg);
    rows.push_back(row);
  }
  CMat B(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < rows.size(); ++i) B.row(static_cast<Eigen::Index>(i)) = rows[i];
  return {B, rows.size()};
}

/// Real dimension of the Hermitian commutant of {A, A*}, numerically.
inline std::size_t commutant_dimension_numeric(const CMat& A, double tol = 1e-9) {
  Eigen::Index n = A.rows();
  CMat As = A.adjoint();
  CMat sys = CMat::Zero(2 * n * n, n * n);
  Eigen::Index row = 0;
  for (const CMat* M : std::array<const CMat*, 2>{&A, &As})
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j, ++row)
        for (Eigen::Index k = 0; k < n; ++k) {
          sys(row, i * n + k) += (*M)(k, j);
          sys(row, k * n + j) -= (*M)(i, k);
        }
  Eigen::JacobiSVD<CMat> svd(sys);
  auto s = svd.singularValues();
  std::size_t null = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k)
    if (s(k) <= tol * std::max(s(0), 1.0)) ++null;
  return null + static_cast<std::size_t>(n * n - s.size());
}

// ---------------------------------------------------------------------------
// Output.

inline void write_csv(std::ostream& os, const std::vector<CurveBranch>& branches) {
  os << "theta,branch,lambda,re_z,im_z\n";
  os.precision(17);
  for (const auto& b : branches)
    for (const auto& s : b.samples)
      os << s.theta << ',' << b.index << ',' << s.lambda << ',' << s.z.real() << ',' << s.z.imag() << '\n';
}

inline void write_svg(std::ostream& os, const std::vector<CurveBranch>& branches, const std::vector<double>& circles = {}) {
  double x0 = std::numeric_limits<double>::infinity(), y0 = x0, x1 = -x0, y1 = -x0;
  auto grow = [&](double x, double y) {
    x0 = std::min(x0, x);
    x1 = std::max(x1, x);
    y0 = std::min(y0, y);
    y1 = std::max(y1, y);
  };
  for (const auto& b : branches)
    for (const auto& s : b.samples) grow(s.z.real(), -s.z.imag());
  for (double r : circles) grow(-r, -r), grow(r, r);
  if (!(x1 >= x0)) x0 = y0 = -1, x1 = y1 = 1;
  double w = std::max(x1 - x0, 1e-9), h = std::max(y1 - y0, 1e-9);
  double mx = 0.05 * w, my = 0.05 * h;
  static const char* colors[] = {"#1f77b4", "#2ca02c", "#d62728", "#9467bd", "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};
  double stroke = std::max(w, h) / 400;
  os.precision(10);
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << x0 - mx << ' ' << y0 - my << ' ' << w + 2 * mx << ' '
     << h + 2 * my << "\">\n";
  for (double r : circles)
    os << "  <circle cx=\"0\" cy=\"0\" r=\"" << r << "\" fill=\"none\" stroke=\"#999\" stroke-dasharray=\"" << 4 * stroke
       << "\" stroke-width=\"" << stroke << "\"/>\n";
  for (const auto& b : branches) {
    os << "  <polyline fill=\"none\" stroke=\"" << colors[b.index % 8] << "\" stroke-width=\"" << stroke << "\" points=\"";
    for (const auto& s : b.samples) os << s.z.real() << ',' << -s.z.imag() << ' ';
    if (!b.samples.empty()) os << b.samples.front().z.real() << ',' << -b.samples.front().z.imag();
    os << "\"/>\n";
  }
  os << "</svg>\n";
}

}  // namespace kippen
