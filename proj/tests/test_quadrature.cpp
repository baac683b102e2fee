#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <tielab/gauss_legendre.hpp>

#include <cmath>

using namespace tielab;

namespace {
template <class F>
double integrate(const Quadrature& q, F&& f) {
  double s = 0;
  for (size_t i = 0; i < q.x.size(); ++i) s += q.w[i] * f(q.x[i]);
  return s;
}
}  // namespace

TEST_CASE("weights sum to the interval length and nodes are interior") {
  for (int m : {1, 2, 5, 12, 40, 80}) {
    auto q = gauss_legendre(m);
    double sw = 0;
    for (double w : q.w) {
      CHECK(w > 0);
      sw += w;
    }
    CHECK(sw == doctest::Approx(2.0).epsilon(1e-13));
    for (double x : q.x) {
      CHECK(x > -1.0);
      CHECK(x < 1.0);
    }
  }
}

TEST_CASE("degree 2m-1 exactness") {
  for (int m : {1, 2, 3, 5, 8}) {
    auto q = gauss_legendre(m);
    for (int d = 0; d <= 2 * m - 1; ++d) {
      double got = integrate(q, [d](double x) { return std::pow(x, d); });
      double want = (d % 2 == 1) ? 0.0 : 2.0 / (d + 1);
      CHECK(std::abs(got - want) < 1e-13);
    }
    // degree 2m fails for the even moment (not exact any more)
    double got = integrate(q, [m](double x) { return std::pow(x, 2 * m); });
    CHECK(std::abs(got - 2.0 / (2 * m + 1)) > 1e-9);
  }
}

TEST_CASE("known anchors for small rules") {
  auto q2 = gauss_legendre(2);
  // nodes +-1/sqrt(3), weights 1 (order within the rule unspecified)
  CHECK(std::abs(std::abs(q2.x[0]) - 1 / std::sqrt(3.0)) < 1e-14);
  CHECK(std::abs(std::abs(q2.x[1]) - 1 / std::sqrt(3.0)) < 1e-14);
  CHECK(q2.w[0] == doctest::Approx(1.0).epsilon(1e-14));
  auto q3 = gauss_legendre(3);
  double found_zero = 1;
  for (double x : q3.x) found_zero = std::min(found_zero, std::abs(x));
  CHECK(found_zero < 1e-14);
}

TEST_CASE("smooth integrals on mapped intervals") {
  auto q = gauss_legendre_on(0.0, 1.0, 24);
  CHECK(integrate(q, [](double x) { return std::exp(x); }) ==
        doctest::Approx(std::exp(1.0) - 1).epsilon(1e-13));
  double sw = 0;
  for (double w : q.w) sw += w;
  CHECK(sw == doctest::Approx(1.0).epsilon(1e-13));

  auto q2 = gauss_legendre_on(-2.0, 3.0, 40);
  CHECK(integrate(q2, [](double x) { return x * x * x - 2 * x + 1; }) ==
        doctest::Approx(65.0 / 4).epsilon(1e-12));
}

TEST_CASE("composite rule handles ragged last panel") {
  auto q = composite_gauss_legendre(0.0, 10.3, 1.0, 12);
  CHECK(q.x.size() == 11u * 12u);
  double sw = 0;
  for (double w : q.w) sw += w;
  CHECK(sw == doctest::Approx(10.3).epsilon(1e-12));
  CHECK(integrate(q, [](double x) { return std::sin(x); }) ==
        doctest::Approx(1 - std::cos(10.3)).epsilon(1e-12));
  // oscillatory + decaying, long window
  auto q2 = composite_gauss_legendre(0.0, 30.0, 1.0, 12);
  double got = integrate(q2, [](double x) { return std::exp(-x) * std::cos(3 * x); });
  CHECK(got == doctest::Approx(0.1).epsilon(1e-10));  // 1/(1+9) up to e^{-30} tail
}
