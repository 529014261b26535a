#pragma once

#include <Eigen/Core>
#include <stdexcept>
#include <vector>

#include "k3trc/poly.hpp"

namespace k3trc {

template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using QMatrix = Matrix<Rational>;
using QVector = Vector<Rational>;

// Reduced row echelon form over a field; returns the pivot columns.
template <class Scalar>
std::vector<int> rref_in_place(Matrix<Scalar>& a) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < a.cols() && r < a.rows(); ++c) {
    int piv = -1;
    for (int i = r; i < a.rows(); ++i)
      if (a(i, c) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    a.row(piv).swap(a.row(r));
    Scalar inv = Scalar(1) / a(r, c);
    for (int j = c; j < a.cols(); ++j) a(r, j) *= inv;
    for (int i = 0; i < a.rows(); ++i) {
      if (i == r || a(i, c) == 0) continue;
      Scalar f = a(i, c);
      for (int j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

template <class Derived>
int rank(const Eigen::MatrixBase<Derived>& m) {
  Matrix<typename Derived::Scalar> a = m;
  return static_cast<int>(rref_in_place(a).size());
}

// Columns form a basis of the right kernel.
template <class Derived>
Matrix<typename Derived::Scalar> kernel(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  Matrix<Scalar> a = m;
  auto piv = rref_in_place(a);
  std::vector<bool> is_piv(a.cols(), false);
  for (int c : piv) is_piv[c] = true;
  Matrix<Scalar> k(a.cols(), a.cols() - static_cast<int>(piv.size()));
  k.setZero();
  int col = 0;
  for (int f = 0; f < a.cols(); ++f) {
    if (is_piv[f]) continue;
    k(f, col) = Scalar(1);
    for (std::size_t r = 0; r < piv.size(); ++r) k(piv[r], col) = -a(static_cast<int>(r), f);
    ++col;
  }
  return k;
}

template <class Derived>
typename Derived::Scalar determinant(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  Matrix<Scalar> a = m;
  int n = static_cast<int>(a.rows());
  Scalar det(1);
  for (int k = 0; k < n; ++k) {
    int piv = -1;
    for (int i = k; i < n; ++i)
      if (a(i, k) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) return Scalar(0);
    if (piv != k) {
      a.row(piv).swap(a.row(k));
      det = -det;
    }
    det *= a(k, k);
    for (int i = k + 1; i < n; ++i) {
      if (a(i, k) == 0) continue;
      Scalar f = a(i, k) / a(k, k);
      for (int j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return det;
}

// Inverse over a field; throws when singular.
template <class Derived>
Matrix<typename Derived::Scalar> inverse(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  int n = static_cast<int>(m.rows());
  Matrix<Scalar> a(n, 2 * n);
  a.setZero();
  a.leftCols(n) = m;
  for (int i = 0; i < n; ++i) a(i, n + i) = Scalar(1);
  auto piv = rref_in_place(a);
  if (static_cast<int>(piv.size()) < n || piv.back() >= n) throw std::domain_error("singular matrix");
  return a.rightCols(n);
}

// Determinants of the leading principal submatrices, by exact elimination.
template <class Derived>
std::vector<typename Derived::Scalar> leading_principal_minors(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  Matrix<Scalar> a = m;
  int n = static_cast<int>(a.rows());
  std::vector<Scalar> out;
  Scalar det(1);
  // Without pivoting, the k-th pivot equals minor_k / minor_{k-1}.
  for (int k = 0; k < n; ++k) {
    if (a(k, k) == 0) {
      for (int j = k; j < n; ++j) out.push_back(determinant(Matrix<Scalar>(m.topLeftCorner(j + 1, j + 1))));
      return out;
    }
    det *= a(k, k);
    out.push_back(det);
    for (int i = k + 1; i < n; ++i) {
      if (a(i, k) == 0) continue;
      Scalar f = a(i, k) / a(k, k);
      for (int j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return out;
}

// det(x I - A) through an exact Hessenberg reduction.
template <class Derived>
Polynomial<typename Derived::Scalar> charpoly(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  using P = Polynomial<Scalar>;
  Matrix<Scalar> h = m;
  int n = static_cast<int>(h.rows());
  for (int k = 1; k + 1 < n; ++k) {
    int piv = -1;
    for (int i = k; i < n; ++i)
      if (h(i, k - 1) != 0) {
        piv = i;
        break;
      }
    if (piv < 0) continue;
    if (piv != k) {
      h.row(piv).swap(h.row(k));
      h.col(piv).swap(h.col(k));
    }
    for (int i = k + 1; i < n; ++i) {
      if (h(i, k - 1) == 0) continue;
      Scalar f = h(i, k - 1) / h(k, k - 1);
      for (int j = 0; j < n; ++j) h(i, j) -= f * h(k, j);
      for (int j = 0; j < n; ++j) h(j, k) += f * h(j, i);
    }
  }
  std::vector<P> p(n + 1);
  p[0] = P::constant(Scalar(1));
  for (int k = 1; k <= n; ++k) {
    p[k] = P{-h(k - 1, k - 1), Scalar(1)} * p[k - 1];
    Scalar t(1);
    for (int i = 1; i < k; ++i) {
      t *= h(k - i, k - i - 1);
      p[k] -= p[k - i - 1] * (t * h(k - i - 1, k - 1));
    }
  }
  return p[n];
}

}  // namespace k3trc
