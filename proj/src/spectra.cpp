#include "imex/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "imex/errors.hpp"
#include "imex/parallel.hpp"

namespace imex {

using cd = std::complex<double>;

namespace {

double cross(cd o, cd a, cd b) {
  return (a.real() - o.real()) * (b.imag() - o.imag()) - (a.imag() - o.imag()) * (b.real() - o.real());
}

double segment_distance(cd q, cd a, cd b) {
  const cd d = b - a;
  const double len2 = std::norm(d);
  if (len2 == 0.0) return std::abs(q - a);
  const double t = std::clamp(((q - a) * std::conj(d)).real() / len2, 0.0, 1.0);
  return std::abs(q - (a + t * d));
}

double max_abs_entry(const ComplexMatrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

void check_square(const SplittingPair& s) {
  const auto n = s.A.rows();
  if (s.A.cols() != n || s.B.rows() != n || s.B.cols() != n)
    throw DimensionError("splitting pair: A and B must be square of equal size");
  if (n == 0) throw DimensionError("splitting pair: empty matrices");
  if (s.null_basis) {
    const auto& z = *s.null_basis;
    if (z.rows() != n || z.cols() >= n) throw DimensionError("null basis has wrong shape");
    const ComplexMatrix gram = z.adjoint() * z;
    if ((gram - ComplexMatrix::Identity(z.cols(), z.cols())).cwiseAbs().maxCoeff() > 1e-8)
      throw ParameterError("null basis columns must be orthonormal");
  }
}

struct Compressed {
  ComplexMatrix A, B;
  bool restricted = false;
};

Compressed compress(const SplittingPair& s) {
  check_square(s);
  if (!s.null_basis) return {s.A, s.B, false};
  const ComplexMatrix q = complement_basis(*s.null_basis, s.dim());
  return {q.adjoint() * s.A * q, q.adjoint() * s.B * q, true};
}

}  // namespace

ComplexMatrix complement_basis(const ComplexMatrix& null_basis, Eigen::Index n) {
  const Eigen::Index m = null_basis.cols();
  const ComplexMatrix proj = ComplexMatrix::Identity(n, n) - null_basis * null_basis.adjoint();
  Eigen::ColPivHouseholderQR<ComplexMatrix> qr(proj);
  const ComplexMatrix q = qr.householderQ();
  return q.leftCols(n - m);
}

ComplexMatrix hermitian_power(const ComplexMatrix& m, double exponent) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(m);
  const Eigen::VectorXd lam = es.eigenvalues();
  if (lam.minCoeff() <= 0.0) throw DefinitenessError("hermitian_power: matrix not positive definite");
  const Eigen::VectorXd pw = lam.array().pow(exponent);
  return es.eigenvectors() * pw.asDiagonal() * es.eigenvectors().adjoint();
}

SpectralSet generalized_eigenvalues(const SplittingPair& s) {
  const Compressed c = compress(s);
  Eigen::JacobiSVD<ComplexMatrix> svd(c.A);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(sv.size() - 1) <= 1e-12 * std::max(sv(0), 1e-300)) {
    throw SingularityError(c.restricted ? "A is singular on the working subspace"
                                        : "A is singular; supply a null basis");
  }
  const ComplexMatrix m = (-c.A).partialPivLu().solve(c.B);
  Eigen::ComplexEigenSolver<ComplexMatrix> es(m, false);
  if (es.info() != Eigen::Success) throw std::runtime_error("generalized_eigenvalues: eigensolver failed");
  SpectralSet out;
  out.kind = SetKind::eigenvalues;
  out.restricted = c.restricted;
  out.points.assign(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
  std::sort(out.points.begin(), out.points.end(),
            [](cd x, cd y) { return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag(); });
  return out;
}

SpectralSet numerical_range(const ComplexMatrix& x, int n_angles) {
  if (x.rows() != x.cols() || x.rows() == 0) throw DimensionError("numerical_range: square matrix required");
  if (n_angles < 4) throw ParameterError("numerical_range: need at least 4 angles");
  const ComplexMatrix herm = (x + x.adjoint()) / 2.0;
  const ComplexMatrix skew = cd(0.0, 0.5) * (x - x.adjoint());

  std::vector<cd> raw(n_angles);
  std::vector<SupportSample> support(n_angles);
  parallel_for(static_cast<std::size_t>(n_angles), [&](std::size_t k) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / n_angles;
    const ComplexMatrix h = std::cos(theta) * herm + std::sin(theta) * skew;
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
    const Eigen::Index top = h.rows() - 1;
    const Eigen::VectorXcd v = es.eigenvectors().col(top);
    raw[k] = v.dot(x * v);  // v^* X v
    support[k] = {theta, es.eigenvalues()(top)};
  });

  SpectralSet out;
  out.kind = SetKind::numerical_range;
  out.points = convex_hull(raw);
  out.support = std::move(support);
  return out;
}

ComplexMatrix w_p_matrix(const SplittingPair& s, double p, bool* restricted) {
  const Compressed c = compress(s);
  const double scale = std::max(max_abs_entry(c.A), 1e-300);
  if ((c.A - c.A.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale)
    throw DefinitenessError("A is not Hermitian on the working subspace");
  const ComplexMatrix neg_a = -(c.A + c.A.adjoint()) / 2.0;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(neg_a);
  const Eigen::VectorXd lam = es.eigenvalues();
  if (std::abs(lam.minCoeff()) <= 1e-12 * std::abs(lam.maxCoeff()))
    throw SingularityError("A is singular on the working subspace");
  if (lam.minCoeff() <= 0.0) throw DefinitenessError("A is not negative definite on the working subspace");
  if (restricted) *restricted = c.restricted;

  // W is unitarily invariant, so work in the eigenbasis of -A.
  const ComplexMatrix bt = es.eigenvectors().adjoint() * c.B * es.eigenvectors();
  const Eigen::VectorXd left = lam.array().pow(p / 2.0 - 1.0);
  const Eigen::VectorXd right = lam.array().pow(-p / 2.0);
  return left.asDiagonal() * bt * right.asDiagonal();
}

SpectralSet w_p_set(const SplittingPair& s, double p, int n_angles) {
  bool restricted = false;
  const ComplexMatrix x = w_p_matrix(s, p, &restricted);
  SpectralSet out = numerical_range(x, n_angles);
  out.p = p;
  out.restricted = restricted;
  return out;
}

std::pair<double, double> w_p_real_range(const SplittingPair& s, double p) {
  const ComplexMatrix x = w_p_matrix(s, p);
  const ComplexMatrix h = (x + x.adjoint()) / 2.0;
  const Eigen::VectorXd ev = Eigen::SelfAdjointEigenSolver<ComplexMatrix>(h, Eigen::EigenvaluesOnly).eigenvalues();
  return {ev.minCoeff(), ev.maxCoeff()};
}

SpectralSet rescale(const SpectralSet& set, double sigma) {
  if (!(sigma > 0.0)) throw ParameterError("rescale: sigma must be positive");
  SpectralSet out = set;
  for (auto& w : out.points) w = 1.0 + w / sigma;
  for (auto& s : out.support) s.value = std::cos(s.theta) + s.value / sigma;
  return out;
}

std::vector<cd> convex_hull(std::vector<cd> pts) {
  if (pts.empty()) return {};
  std::sort(pts.begin(), pts.end(),
            [](cd x, cd y) { return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag(); });
  double extent = 0.0;
  for (const auto& p : pts) extent = std::max(extent, std::abs(p - pts.front()));
  const double dup_tol = 1e-13 * std::max(extent, 1e-300);
  std::vector<cd> uniq;
  for (const auto& p : pts)
    if (uniq.empty() || std::abs(p - uniq.back()) > dup_tol) uniq.push_back(p);
  if (uniq.size() <= 2) return uniq;

  // Monotone chain; a turn counts only if it exceeds a relative tolerance.
  auto left_turn = [&](cd o, cd a, cd b) {
    return cross(o, a, b) > 1e-12 * std::abs(a - o) * std::abs(b - o);
  };
  std::vector<cd> hull(2 * uniq.size());
  std::size_t k = 0;
  for (const auto& p : uniq) {
    while (k >= 2 && !left_turn(hull[k - 2], hull[k - 1], p)) --k;
    hull[k++] = p;
  }
  for (std::size_t i = uniq.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && !left_turn(hull[k - 2], hull[k - 1], uniq[i])) --k;
    hull[k++] = uniq[i];
  }
  hull.resize(k - 1);
  return hull;
}

double SpectralSet::outside_distance(cd q) const {
  if (kind == SetKind::numerical_range && !support.empty()) {
    double worst = -std::numeric_limits<double>::infinity();
    for (const auto& s : support) worst = std::max(worst, (std::polar(1.0, s.theta) * q).real() - s.value);
    return worst;
  }
  const auto hull = convex_hull(points);
  if (hull.empty()) throw std::logic_error("outside_distance on empty set");
  if (hull.size() == 1) return std::abs(q - hull[0]);
  if (hull.size() == 2) return segment_distance(q, hull[0], hull[1]);
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const cd a = hull[i], b = hull[(i + 1) % hull.size()];
    worst = std::max(worst, -cross(a, b, q) / std::abs(b - a));
  }
  return worst;
}

std::vector<cd> SpectralSet::boundary_samples(std::size_t n) const {
  const auto hull = convex_hull(points);
  if (hull.size() <= 1) return hull;
  const bool closed = hull.size() > 2;
  const std::size_t edges = closed ? hull.size() : 1;
  double perimeter = 0.0;
  for (std::size_t i = 0; i < edges; ++i) perimeter += std::abs(hull[(i + 1) % hull.size()] - hull[i]);
  std::vector<cd> out;
  out.reserve(n + hull.size() + 1);
  for (std::size_t i = 0; i < edges; ++i) {
    const cd a = hull[i], b = hull[(i + 1) % hull.size()];
    const auto m = static_cast<std::size_t>(std::ceil(n * std::abs(b - a) / perimeter));
    for (std::size_t j = 0; j < std::max<std::size_t>(m, 1); ++j)
      out.push_back(a + (b - a) * (static_cast<double>(j) / std::max<std::size_t>(m, 1)));
  }
  if (!closed) out.push_back(hull[1]);
  return out;
}

double SpectralSet::max_real() const {
  if (kind == SetKind::numerical_range)
    for (const auto& s : support)
      if (s.theta == 0.0) return s.value;
  double out = -std::numeric_limits<double>::infinity();
  for (const auto& w : points) out = std::max(out, w.real());
  return out;
}

double SpectralSet::min_real() const {
  if (kind == SetKind::numerical_range)
    for (const auto& s : support)
      if (std::abs(s.theta - std::numbers::pi) < 1e-14) return -s.value;
  double out = std::numeric_limits<double>::infinity();
  for (const auto& w : points) out = std::min(out, w.real());
  return out;
}

double SpectralSet::max_abs_imag() const {
  double out = 0.0;
  for (const auto& w : points) out = std::max(out, std::abs(w.imag()));
  return out;
}

}  // namespace imex
