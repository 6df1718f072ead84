#include <cmath>
#include <random>

#include "doctest.h"
#include "oneleg/errors.hpp"
#include "oneleg/skt.hpp"
#include "test_util.hpp"

using namespace oneleg;

namespace {

History constant_history(const SchemeCoefficients& s, const GridState& v) {
  return History(std::vector<GridState>(static_cast<size_t>(s.p), v));
}

}  // namespace

TEST_CASE("skt residual vanishes on constant states") {
  const SktParams par{1.0, 1.0, 1.0, 1.0};
  for (const SchemeCoefficients& s : {bdf2(), implicit_midpoint(), gamma_method(0.2)}) {
    GridState v(2, 16, 2.0);
    const Eigen::VectorXd r =
        skt_residual(constant_history(s, v), v, s, par, 1.5, 1e-5);
    CHECK(r.lpNorm<Eigen::Infinity>() < 1e-13);
  }
}

TEST_CASE("alpha = 2 reduces to the untransformed one-leg scheme") {
  // time weight sigma^{2/alpha-1} = 1 and w = sigma: the residual is
  // rho(E)v - (tau/h^2) dd[potentials(sigma)]
  std::mt19937 rng(2024);
  const SktParams par{1.0, 2.0, 0.5, 0.25};
  const SchemeCoefficients s = bdf2();
  const int n = 12;
  const double tau = 1e-4;
  const GridState a = testing::random_state(rng, 2, n, 1.0, 2.0);
  const GridState b = testing::random_state(rng, 2, n, 1.0, 2.0);
  const GridState c = testing::random_state(rng, 2, n, 1.0, 2.0);
  const History hist({a, b});
  const Eigen::VectorXd r = skt_residual(hist, c, s, par, 2.0, tau);

  const GridState sig = apply_sigma(s, hist, c);
  const GridState rho = apply_rho(s, hist, c);
  const double h2 = 1.0 / (n * n);
  for (int i = 0; i < n; ++i) {
    auto phi1 = [&](int j) {
      const double w1 = sig.at(0, j), w2 = sig.at(1, j);
      return par.d1 * w1 + 0.5 * par.a1 * w1 * w1 + w1 * w2;
    };
    const double dd = phi1((i + 1) % n) - 2.0 * phi1(i) + phi1((i + n - 1) % n);
    CHECK(r(i) == doctest::Approx(rho.at(0, i) - tau / h2 * dd).epsilon(1e-12));
  }
  // paper-literal powers coincide at alpha = 2
  const Eigen::VectorXd rlit = skt_residual(hist, c, s, par, 2.0, tau, true);
  CHECK((r - rlit).lpNorm<Eigen::Infinity>() < 1e-12);
}

TEST_CASE("spatial operator hits the exact discrete Fourier symbol") {
  // On a time-constant window with w2 == 1 and negligible self-diffusion,
  // the species-1 residual is (tau/h^2)(d1 + 1) 4 sin^2(pi h) sin(2 pi x_i).
  const int n = 64;
  const double alpha = 1.5;
  const double tau = 1e-5;
  const SktParams par{1.0, 1.0, 1e-14, 1e-14};
  GridState v(2, n);
  for (int i = 0; i < n; ++i) {
    v.at(0, i) = std::pow(2.0 + std::sin(2.0 * M_PI * i / n), alpha / 2.0);
    v.at(1, i) = 1.0;
  }
  const SchemeCoefficients s = bdf2();
  const Eigen::VectorXd r = skt_residual(constant_history(s, v), v, s, par, alpha, tau);
  const double h = 1.0 / n;
  const double sym = 4.0 * std::pow(std::sin(M_PI * h), 2);
  for (int i = 0; i < n; ++i) {
    const double x = static_cast<double>(i) / n;
    const double expected1 = tau / (h * h) * (par.d1 + 1.0) * sym * std::sin(2.0 * M_PI * x);
    CHECK(r(i) == doctest::Approx(expected1).epsilon(1e-8));
    // species 2 sees only the cross potential w1 * 1
    const double expected2 = tau / (h * h) * sym * std::sin(2.0 * M_PI * x);
    CHECK(r(n + i) == doctest::Approx(expected2).epsilon(1e-8));
  }
}

TEST_CASE("conservation: spatial part sums to zero per species") {
  std::mt19937 rng(555);
  const SktParams par{1.3, 0.7, 0.9, 1.1};
  const SchemeCoefficients s = gamma_method(0.2);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 32;
    const GridState a = testing::random_state(rng, 2, n, 0.8, 2.5);
    const GridState b = testing::random_state(rng, 2, n, 0.8, 2.5);
    const GridState c = testing::random_state(rng, 2, n, 0.8, 2.5);
    const History hist({a, b});
    const double alpha = 1.4;
    const Eigen::VectorXd with_tau = skt_residual(hist, c, s, par, alpha, 1e-3);
    const Eigen::VectorXd no_tau = skt_residual(hist, c, s, par, alpha, 0.0);
    const Eigen::VectorXd spatial = with_tau - no_tau;
    double s1 = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i) {
      s1 += spatial(i);
      s2 += spatial(n + i);
    }
    const double scale = spatial.cwiseAbs().maxCoeff() * n;
    CHECK(std::fabs(s1) <= 1e-13 * scale);
    CHECK(std::fabs(s2) <= 1e-13 * scale);
  }
}

TEST_CASE("species swap symmetry") {
  std::mt19937 rng(808);
  const int n = 16;
  const GridState a = testing::random_state(rng, 2, n, 0.7, 2.0);
  const GridState b = testing::random_state(rng, 2, n, 0.7, 2.0);
  const GridState c = testing::random_state(rng, 2, n, 0.7, 2.0);
  auto swapped = [&](const GridState& g) {
    GridState out(2, n);
    for (int i = 0; i < n; ++i) {
      out.at(0, i) = g.at(1, i);
      out.at(1, i) = g.at(0, i);
    }
    return out;
  };
  const SktParams par{1.0, 2.0, 0.5, 0.8};
  const SktParams par_swapped{2.0, 1.0, 0.8, 0.5};
  const SchemeCoefficients s = bdf2();
  const Eigen::VectorXd r = skt_residual(History({a, b}), c, s, par, 1.5, 1e-4);
  const Eigen::VectorXd rs = skt_residual(History({swapped(a), swapped(b)}), swapped(c), s,
                                          par_swapped, 1.5, 1e-4);
  for (int i = 0; i < n; ++i) {
    CHECK(rs(i) == doctest::Approx(r(n + i)).epsilon(1e-14));
    CHECK(rs(n + i) == doctest::Approx(r(i)).epsilon(1e-14));
  }
}

TEST_CASE("analytic jacobian matches the central-difference oracle") {
  std::mt19937 rng(4242);
  const SktParams par{1.0, 1.0, 1.0, 1.0};
  const int n = 10;
  for (int trial = 0; trial < 50; ++trial) {
    const double alpha = (trial % 3 == 0) ? 1.0 : (trial % 3 == 1 ? 1.5 : 2.0);
    const bool literal = trial % 5 == 0;
    const SchemeCoefficients s = (trial % 2 == 0) ? bdf2() : gamma_method(0.2);
    const GridState a = testing::random_state(rng, 2, n, 0.8, 2.5);
    const GridState b = testing::random_state(rng, 2, n, 0.8, 2.5);
    const GridState c = testing::random_state(rng, 2, n, 0.8, 2.5);
    const History hist({a, b});
    const double tau = 1e-4;
    const Eigen::MatrixXd analytic =
        Eigen::MatrixXd(skt_jacobian(hist, c, s, par, alpha, tau, literal));
    const Eigen::MatrixXd fd = testing::dense_fd_jacobian(
        [&](const GridState& v) { return skt_residual(hist, v, s, par, alpha, tau, literal); }, c);
    CHECK(testing::rel_max_diff(analytic, fd) <= 1e-6);
  }
}

TEST_CASE("jacobian structure") {
  std::mt19937 rng(11);
  const SktParams par{1.0, 1.0, 1.0, 1.0};
  const SchemeCoefficients s = bdf2();
  const int n = 12;
  SUBCASE("constant state: spatial block rows sum to zero") {
    GridState v(2, n, 1.7);
    const History hist = constant_history(s, v);
    const Eigen::MatrixXd with_tau = Eigen::MatrixXd(skt_jacobian(hist, v, s, par, 1.5, 1e-3));
    const Eigen::MatrixXd no_tau = Eigen::MatrixXd(skt_jacobian(hist, v, s, par, 1.5, 0.0));
    const Eigen::MatrixXd spatial = with_tau - no_tau;
    for (int row = 0; row < 2 * n; ++row)
      CHECK(std::fabs(spatial.row(row).sum()) <= 1e-12 * spatial.cwiseAbs().maxCoeff());
  }
  SUBCASE("alpha=2, tau=0: jacobian is alpha_p I") {
    const GridState a = testing::random_state(rng, 2, n);
    const GridState b = testing::random_state(rng, 2, n);
    const GridState c = testing::random_state(rng, 2, n);
    const Eigen::MatrixXd jac = Eigen::MatrixXd(skt_jacobian(History({a, b}), c, s, par, 2.0, 0.0));
    CHECK((jac - 1.5 * Eigen::MatrixXd::Identity(2 * n, 2 * n)).cwiseAbs().maxCoeff() < 1e-14);
  }
  SUBCASE("couplings only within one node of distance") {
    const GridState a = testing::random_state(rng, 2, n);
    const GridState b = testing::random_state(rng, 2, n);
    const GridState c = testing::random_state(rng, 2, n);
    const Eigen::MatrixXd jac =
        Eigen::MatrixXd(skt_jacobian(History({a, b}), c, s, par, 1.5, 1e-4));
    for (int i = 0; i < 2 * n; ++i)
      for (int j = 0; j < 2 * n; ++j) {
        const int ni = i % n, nj = j % n;
        const int d = std::abs(ni - nj);
        if (std::min(d, n - d) > 1) CHECK(jac(i, j) == 0.0);
      }
  }
}

TEST_CASE("positivity guard") {
  const SktParams par{1.0, 1.0, 1.0, 1.0};
  const SchemeCoefficients s = bdf2();
  GridState v(2, 8, 1.0);
  GridState bad(2, 8, 1.0);
  bad.at(0, 3) = -2.0;  // sigma = v_new for bdf2
  CHECK_THROWS_AS(skt_residual(constant_history(s, v), bad, s, par, 1.5, 1e-5),
                  positivity_error);
  CHECK_THROWS_AS(skt_jacobian(constant_history(s, v), bad, s, par, 1.5, 1e-5),
                  positivity_error);
}

TEST_CASE("initial data") {
  auto [u, parA] = skt_initial_data(SktTest::A, 200);
  CHECK(parA.d1 == 1.0);
  CHECK(parA.a1 == 0.01);
  CHECK(parA.a2 == 0.01);
  CHECK(!parA.entropy_condition_met());  // 4*0.0001 < 1.01
  auto [uB, parB] = skt_initial_data(SktTest::B, 200);
  CHECK(parB.a1 == 1.0);
  CHECK(parB.entropy_condition_met());
  CHECK(u.at(0, 0) == doctest::Approx(10.0));
  CHECK(u.at(1, 0) == doctest::Approx(10.0));
  CHECK(u.at(0, 50) == doctest::Approx(2.0 * std::exp(-0.25) + 10.0).epsilon(1e-12));  // x = 1/4
  CHECK(u.at(1, 50) == doctest::Approx(-4.0 * std::exp(-0.25) + 10.0).epsilon(1e-12));
  CHECK(min_value(u) > 0.0);
  CHECK_THROWS_AS(skt_initial_data(SktTest::A, 3), invalid_parameter);
}
