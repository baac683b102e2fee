#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <vector>

#include "tielab/errors.hpp"
#include "tielab/gauss_legendre.hpp"

namespace tielab {

template <class Scalar>
using DenseMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

// Largest |A + A^T|/2 entry: how far the input is from exactly skew.
template <class Scalar>
double skew_defect(const DenseMatrix<Scalar>& A) {
  return ((A + A.transpose()) / 2.0).cwiseAbs().maxCoeff();
}

// Pfaffian by skew-symmetric elimination with partial pivoting.
// The input is symmetrized first; pass `defect` to learn how non-skew it was.
template <class Scalar>
Scalar pfaffian(DenseMatrix<Scalar> A, double* defect = nullptr) {
  const Eigen::Index n = A.rows();
  require(A.cols() == n, "pfaffian needs a square matrix");
  require(n % 2 == 0, "pfaffian needs even dimension");
  if (defect) *defect = n == 0 ? 0.0 : skew_defect(A);
  A = ((A - DenseMatrix<Scalar>(A.transpose())) / 2.0).eval();
  if (n == 0) return Scalar(1);

  Scalar pf(1);
  for (Eigen::Index k = 0; k + 1 < n; k += 2) {
    // pivot: bring the largest |A(k, j)|, j > k, into position (k, k+1)
    Eigen::Index best = k + 1;
    double mx = std::abs(A(k, k + 1));
    for (Eigen::Index j = k + 2; j < n; ++j) {
      double v = std::abs(A(k, j));
      if (v > mx) {
        mx = v;
        best = j;
      }
    }
    if (mx == 0.0) return Scalar(0);
    if (best != k + 1) {
      A.row(best).swap(A.row(k + 1));
      A.col(best).swap(A.col(k + 1));
      pf = -pf;
    }
    Scalar a = A(k, k + 1);
    pf *= a;
    for (Eigen::Index i = k + 2; i < n; ++i) {
      for (Eigen::Index j = i + 1; j < n; ++j) {
        Scalar upd = (A(k, j) * A(k + 1, i) - A(k, i) * A(k + 1, j)) / a;
        A(i, j) += upd;
        A(j, i) = -A(i, j);
      }
    }
  }
  return pf;
}

// pf(J - S) where S interleaves a 2x2-block kernel at the given nodes:
// S[(2i+a), (2j+b)] = sw[i] * sw[j] * entry(a, b, i, j), and J is the
// block-diagonal [[0,1],[-1,0]].  `entry` should satisfy the antisymmetry
// entry(b, a, j, i) = -entry(a, b, i, j) up to roundoff; the full matrix is
// assembled and symmetrized so the defect reported is the true residual.
template <class Entry>
double pfaffian_of_j_minus(int nodes, const std::vector<double>& sw, Entry&& entry,
                           double* defect = nullptr) {
  DenseMatrix<double> M = DenseMatrix<double>::Zero(2 * nodes, 2 * nodes);
  for (int i = 0; i < nodes; ++i)
    for (int j = 0; j < nodes; ++j)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          M(2 * i + a, 2 * j + b) = -sw[i] * sw[j] * entry(a, b, i, j);
  for (int i = 0; i < nodes; ++i) {
    M(2 * i, 2 * i + 1) += 1.0;
    M(2 * i + 1, 2 * i) -= 1.0;
  }
  return pfaffian(std::move(M), defect);
}

// Gap probability of a continuum pfaffian process on (s, s + window]:
// pf(J - sqrt(w) A sqrt(w)) over m Gauss-Legendre nodes.
// kernel(a, b, x, y) returns the real 2x2-block entries A_{a+1,b+1}(x, y).
template <class Kernel>
double fredholm_pfaffian_continuum(Kernel&& kernel, double s, double window, int m,
                                   double* defect = nullptr) {
  Quadrature q = gauss_legendre_on(s, s + window, m);
  std::vector<double> sw(m);
  for (int i = 0; i < m; ++i) sw[i] = std::sqrt(q.w[i]);
  return pfaffian_of_j_minus(
      m, sw, [&](int a, int b, int i, int j) { return kernel(a, b, q.x[i], q.x[j]); }, defect);
}

// Same on a lattice window of W points (unit weights); kernel indexed by
// window offsets 0..W-1 (caller closes over the left endpoint).
template <class Kernel>
double fredholm_pfaffian_lattice(Kernel&& kernel, int W, double* defect = nullptr) {
  if (W <= 0) return 1.0;
  std::vector<double> sw(W, 1.0);
  return pfaffian_of_j_minus(W, sw, kernel, defect);
}

}  // namespace tielab
