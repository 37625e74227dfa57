#include "comp/linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace comp {

namespace {
constexpr double kPdTol = 1e-12;
const double kLn2 = std::log(2.0);
}  // namespace

CMat hermitize(const CMat& a) { return 0.5 * (a + a.adjoint()); }

double log2_det_rate(const CMat& noise_cov, const CMat& sig_cov) {
  if (noise_cov.rows() != noise_cov.cols() || sig_cov.rows() != sig_cov.cols())
    throw std::invalid_argument("log2_det_rate: covariance not square");
  if (noise_cov.rows() != sig_cov.rows())
    throw std::invalid_argument("log2_det_rate: dimension mismatch");
  const CMat n = hermitize(noise_cov);
  {
    Eigen::SelfAdjointEigenSolver<CMat> es(n, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() <= kPdTol)
      throw std::runtime_error("log2_det_rate: noise covariance not PD");
  }
  if (sig_cov.isZero(0.0)) return 0.0;
  Eigen::LLT<CMat> llt(n);
  // Whiten: B = L^-1 S L^-H, then rate = sum log2(1 + eig(B)).
  CMat s = hermitize(sig_cov);
  CMat ls = llt.matrixL().solve(s);
  CMat b = llt.matrixL().solve(CMat(ls.adjoint()));
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitize(b), Eigen::EigenvaluesOnly);
  double rate = 0.0;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    rate += std::log1p(std::max(es.eigenvalues()[i], 0.0));
  return rate / kLn2;
}

CMat conditional_covariance(const CMat& joint_a, const CMat& cross_ab,
                            const CMat& joint_b) {
  if (cross_ab.rows() != joint_a.rows() || cross_ab.cols() != joint_b.rows())
    throw std::invalid_argument("conditional_covariance: dimension mismatch");
  Eigen::LLT<CMat> llt(hermitize(joint_b));
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("conditional_covariance: joint_b not PD");
  return joint_a - cross_ab * llt.solve(CMat(cross_ab.adjoint()));
}

RVec herm_eigenvalues(const CMat& a) {
  Eigen::SelfAdjointEigenSolver<CMat> es(hermitize(a), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

std::vector<double> upper_concave_envelope(const std::vector<double>& x,
                                           const std::vector<double>& y) {
  const size_t n = x.size();
  std::vector<std::pair<double, double>> hull;
  for (size_t i = 0; i < n; ++i) {
    std::pair<double, double> p{x[i], y[i]};
    while (hull.size() >= 2) {
      auto [x1, y1] = hull[hull.size() - 2];
      auto [x2, y2] = hull[hull.size() - 1];
      // Keep the middle point while it sits on or above the chord to p.
      if ((y2 - y1) * (p.first - x1) >= (p.second - y1) * (x2 - x1) - 1e-12)
        break;
      hull.pop_back();
    }
    hull.push_back(p);
  }
  std::vector<double> out(n);
  size_t hi = 0;
  for (size_t i = 0; i < n; ++i) {
    while (hi + 1 < hull.size() && hull[hi + 1].first <= x[i]) ++hi;
    double ev;
    if (hi + 1 < hull.size() && hull[hi + 1].first > hull[hi].first) {
      auto [x1, y1] = hull[hi];
      auto [x2, y2] = hull[hi + 1];
      ev = x[i] > x1 ? y1 + (y2 - y1) * (x[i] - x1) / (x2 - x1) : y1;
    } else {
      ev = hull[hi].second;
    }
    out[i] = std::max(y[i], ev);
  }
  return out;
}

std::vector<double> running_max(std::vector<double> v) {
  for (size_t i = 1; i < v.size(); ++i) v[i] = std::max(v[i], v[i - 1]);
  return v;
}

}  // namespace comp
