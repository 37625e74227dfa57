// Numeric kernels: log-det rates, conditional covariance, envelopes.
#include <doctest.h>

#include <cmath>

#include "comp/linalg.hpp"
#include "comp/rng.hpp"
#include "test_util.hpp"

using namespace comp;

namespace {

CMat random_psd(int n, uint64_t seed, double ridge) {
  GaussianStream g(seed);
  CMat a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = cxd(g.next(), g.next());
  CMat m = a * a.adjoint();
  return hermitize(m) + ridge * CMat::Identity(n, n);
}

}  // namespace

TEST_SUITE("core") {

TEST_CASE("hermitize symmetrizes and preserves hermitian input") {
  const CMat a = random_psd(3, 7, 0.0);
  CHECK((hermitize(a) - a).norm() == doctest::Approx(0.0).epsilon(1e-14));

  CMat skew(2, 2);
  skew << cxd(1, 0), cxd(2, 3), cxd(0, 0), cxd(4, 0);
  const CMat h = hermitize(skew);
  CHECK((h - h.adjoint()).norm() < 1e-14);
  CHECK(h(0, 1) == cxd(1.0, 1.5));
}

TEST_CASE("log2_det_rate basics") {
  const CMat eye = CMat::Identity(2, 2);

  SUBCASE("zero signal gives exactly zero") {
    CHECK(log2_det_rate(eye, CMat::Zero(2, 2)) == 0.0);
  }
  SUBCASE("scalar case matches log2(1 + snr)") {
    CMat n(1, 1), s(1, 1);
    n(0, 0) = 0.5;
    s(0, 0) = 2.0;
    CHECK(log2_det_rate(n, s) == doctest::Approx(std::log2(5.0)).epsilon(1e-14));
  }
  SUBCASE("additivity over independent blocks") {
    const CMat s1 = random_psd(2, 11, 0.0);
    const CMat s2 = random_psd(2, 12, 0.0);
    CMat n4 = CMat::Identity(4, 4), s4 = CMat::Zero(4, 4);
    s4.topLeftCorner(2, 2) = s1;
    s4.bottomRightCorner(2, 2) = s2;
    const double whole = log2_det_rate(n4, s4);
    const double parts = log2_det_rate(eye, s1) + log2_det_rate(eye, s2);
    CHECK(whole == doctest::Approx(parts).epsilon(1e-12));
  }
  SUBCASE("chain rule: joint = first-in-sic + remainder") {
    const CMat noise = random_psd(3, 21, 0.2);
    const CMat sa = random_psd(3, 22, 0.0);
    const CMat sb = random_psd(3, 23, 0.0);
    const double joint = log2_det_rate(noise, sa + sb);
    const double chain =
        log2_det_rate(noise + sb, sa) + log2_det_rate(noise, sb);
    CHECK(joint == doctest::Approx(chain).epsilon(1e-12));
  }
  SUBCASE("non-pd noise throws") {
    CHECK_THROWS_AS(log2_det_rate(CMat::Zero(2, 2), eye), std::runtime_error);
  }
  SUBCASE("shape mismatch throws") {
    CHECK_THROWS_AS(log2_det_rate(eye, CMat::Identity(3, 3)),
                    std::invalid_argument);
  }
}

TEST_CASE("conditional covariance matches frozen case to 1e-10") {
  const auto& c = testutil::golden().at("cond_cov_case");
  const CMat a = testutil::cmat(c, "A");
  const CMat x = testutil::cmat(c, "C");
  const CMat b = testutil::cmat(c, "B");
  const CMat want = testutil::cmat(c, "res");
  const CMat got = conditional_covariance(a, x, b);
  CHECK((got - want).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("conditional covariance equals joint-matrix block inversion") {
  // Schur complement of the (A,B) joint covariance: condition A on B two
  // ways and compare entrywise.
  for (uint64_t seed : {101u, 102u, 103u, 104u}) {
    GaussianStream g(seed);
    CMat f(4, 6);
    for (int i = 0; i < f.rows(); ++i)
      for (int j = 0; j < f.cols(); ++j) f(i, j) = cxd(g.next(), g.next());
    const CMat joint = hermitize(f * f.adjoint()) + 0.3 * CMat::Identity(4, 4);
    const CMat ja = joint.topLeftCorner(2, 2);
    const CMat cross = joint.topRightCorner(2, 2);
    const CMat jb = joint.bottomRightCorner(2, 2);

    const CMat direct = conditional_covariance(ja, cross, jb);
    const CMat whole_inv = joint.inverse();
    const CMat via_block = whole_inv.topLeftCorner(2, 2).inverse();
    CHECK((direct - via_block).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("herm_eigenvalues ascending and trace-consistent") {
  const CMat a = random_psd(3, 31, 0.1);
  const RVec ev = herm_eigenvalues(a);
  REQUIRE(ev.size() == 3);
  CHECK(ev(0) <= ev(1));
  CHECK(ev(1) <= ev(2));
  CHECK(ev.sum() == doctest::Approx(a.trace().real()).epsilon(1e-12));
}

TEST_CASE("upper_concave_envelope") {
  SUBCASE("concave input is unchanged") {
    const std::vector<double> x{0, 1, 2, 3, 4};
    const std::vector<double> y{0, 3, 5, 6, 6.5};
    const auto env = upper_concave_envelope(x, y);
    for (size_t i = 0; i < y.size(); ++i)
      CHECK(env[i] == doctest::Approx(y[i]).epsilon(1e-12));
  }
  SUBCASE("dip is bridged by the chord") {
    const std::vector<double> x{0, 1, 2};
    const std::vector<double> y{0, 0, 4};
    const auto env = upper_concave_envelope(x, y);
    CHECK(env[1] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(env[0] == 0.0);
    CHECK(env[2] == 4.0);
  }
  SUBCASE("result dominates input and is concave") {
    const std::vector<double> x{0, 1, 2, 3, 4, 5};
    const std::vector<double> y{1.0, 0.2, 2.7, 2.1, 3.9, 3.2};
    const auto env = upper_concave_envelope(x, y);
    for (size_t i = 0; i < y.size(); ++i) CHECK(env[i] >= y[i] - 1e-12);
    for (size_t i = 1; i + 1 < env.size(); ++i) {
      const double chord = 0.5 * (env[i - 1] + env[i + 1]);
      CHECK(env[i] >= chord - 1e-9);
    }
  }
}

TEST_CASE("running_max absorbs grid noise") {
  const auto out = running_max({1.0, 0.5, 2.0, 1.9, 2.0});
  const std::vector<double> want{1.0, 1.0, 2.0, 2.0, 2.0};
  CHECK(out == want);
}

TEST_CASE("gaussian stream is deterministic with sane moments") {
  GaussianStream a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());

  GaussianStream g(7);
  const int n = 200000;
  double s = 0, s2 = 0;
  for (int i = 0; i < n; ++i) {
    const double v = g.next();
    s += v;
    s2 += v * v;
  }
  const double mean = s / n;
  const double var = s2 / n - mean * mean;
  CHECK(std::abs(mean) < 0.01);
  CHECK(var == doctest::Approx(1.0).epsilon(0.02));
}

}  // TEST_SUITE
