#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <tielab/errors.hpp>
#include <tielab/pfaffian.hpp>
#include <tielab/rng.hpp>

#include <cmath>

using namespace tielab;

namespace {

DenseMatrix<double> random_skew(int n, std::mt19937_64& eng) {
  DenseMatrix<double> A = DenseMatrix<double>::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double v = 2 * uniform01(eng) - 1;
      A(i, j) = v;
      A(j, i) = -v;
    }
  return A;
}

}  // namespace

TEST_CASE("tiny cases") {
  DenseMatrix<double> empty(0, 0);
  CHECK(pfaffian(empty) == doctest::Approx(1.0));
  DenseMatrix<double> two(2, 2);
  two << 0, 3.5, -3.5, 0;
  CHECK(pfaffian(two) == doctest::Approx(3.5));
  DenseMatrix<double> odd(3, 3);
  odd.setZero();
  CHECK_THROWS_AS((void)pfaffian(odd), ValidationError);
}

TEST_CASE("4x4 closed form") {
  // pf = a12 a34 - a13 a24 + a14 a23
  auto eng = make_engine(404, 0);
  for (int rep = 0; rep < 50; ++rep) {
    auto A = random_skew(4, eng);
    double want = A(0, 1) * A(2, 3) - A(0, 2) * A(1, 3) + A(0, 3) * A(1, 2);
    CHECK(pfaffian(A) == doctest::Approx(want).epsilon(1e-12));
  }
}

TEST_CASE("pf^2 = det across sizes") {
  auto eng = make_engine(808, 0);
  for (int n = 2; n <= 20; n += 2) {
    for (int rep = 0; rep < 20; ++rep) {
      auto A = random_skew(n, eng);
      double pf = pfaffian(A);
      double det = A.determinant();
      CHECK(std::abs(pf * pf - det) < 1e-10 * std::max(1.0, std::abs(det)));
    }
  }
}

TEST_CASE("congruence transform scales by the determinant") {
  // pf(P A P^T) = det(P) pf(A)
  auto eng = make_engine(513, 0);
  for (int rep = 0; rep < 10; ++rep) {
    auto A = random_skew(6, eng);
    DenseMatrix<double> P(6, 6);
    for (int i = 0; i < 6; ++i)
      for (int j = 0; j < 6; ++j) P(i, j) = 2 * uniform01(eng) - 1;
    DenseMatrix<double> B = P * A * P.transpose();
    double want = P.determinant() * pfaffian(A);
    CHECK(std::abs(pfaffian(B) - want) < 1e-9 * std::max(1.0, std::abs(want)));
  }
}

TEST_CASE("symmetrization and defect reporting") {
  DenseMatrix<double> A(2, 2);
  A << 0.0, 1.0, -1.0, 0.0;
  A(0, 0) = 0.2;  // deliberate non-skew contamination
  double defect = -1;
  double pf = pfaffian(A, &defect);
  CHECK(defect == doctest::Approx(0.2));
  CHECK(pf == doctest::Approx(1.0));  // diagonal is killed by symmetrization
}

TEST_CASE("singular skew matrices give zero") {
  DenseMatrix<double> A = DenseMatrix<double>::Zero(4, 4);
  A(0, 1) = 1;
  A(1, 0) = -1;  // rows 2,3 identically zero -> pf = 0
  CHECK(pfaffian(A) == doctest::Approx(0.0));
}

TEST_CASE("block assembly: zero kernel gives pf(J) = 1") {
  auto zero = [](int, int, int, int) { return 0.0; };
  std::vector<double> sw(7, 1.0);
  CHECK(pfaffian_of_j_minus(7, sw, zero) == doctest::Approx(1.0));
  CHECK(fredholm_pfaffian_lattice(zero, 0) == doctest::Approx(1.0));
  CHECK(fredholm_pfaffian_lattice(zero, -3) == doctest::Approx(1.0));
}

TEST_CASE("rank-one antisymmetric block kernel has an explicit gap value") {
  // A_{12}(x,y) = f(x) f(y) with A_{11} = A_{22} = 0:
  // the 12-block of J - A is I - f f^T on the weighted nodes, so
  // pf(J - A) = det(I - sqrt(w) f f^T sqrt(w)) = 1 - sum w_i f(x_i)^2.
  auto f = [](double x) { return std::exp(-x * x); };
  auto kernel = [&](int a, int b, double x, double y) {
    if (a == 0 && b == 1) return f(x) * f(y);
    if (a == 1 && b == 0) return -f(x) * f(y);
    return 0.0;
  };
  double s = -1.0, window = 2.0;
  int m = 24;
  auto q = gauss_legendre_on(s, s + window, m);
  double dot = 0;
  for (int i = 0; i < m; ++i) dot += q.w[i] * f(q.x[i]) * f(q.x[i]);
  double defect = -1;
  double pf = fredholm_pfaffian_continuum(kernel, s, window, m, &defect);
  CHECK(pf == doctest::Approx(1.0 - dot).epsilon(1e-10));
  CHECK(defect < 1e-14);
}
