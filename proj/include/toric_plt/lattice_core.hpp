#pragma once

#include "toric_plt/numeric.hpp"

#include <utility>

namespace toric_plt {

/// Bezout data: theta1 * a + theta2 * b = g with g = gcd(a, b) > 0.
struct ExtGcd {
  Integer g;
  Integer theta1;
  Integer theta2;
};

/// Extended gcd with a canonical Bezout pair: among all solutions the one
/// with the smallest |theta2|, then the smallest |theta1|, then theta1 > 0.
/// Throws DomainError when a = b = 0.
ExtGcd ext_gcd(const Integer& a, const Integer& b);

/// gcd of all coordinates (0 for the zero vector).
template <typename Derived>
Integer content(const Eigen::MatrixBase<Derived>& v) {
  Integer g = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) g = gcd(g, v(i));
  return g;
}

template <typename Derived>
bool is_primitive(const Eigen::MatrixBase<Derived>& v) {
  return content(v) == 1;
}

/// v / content(v). Throws on the zero vector.
LatticeVector primitive_part(const LatticeVector& v);

/// Exact determinant by fraction-free (Bareiss) elimination.
template <typename Derived>
Integer determinant(const Eigen::MatrixBase<Derived>& m) {
  using Eigen::Index;
  if (m.rows() != m.cols()) throw DomainError("determinant of non-square matrix");
  const Index n = m.rows();
  if (n == 0) return 1;
  LatticeMatrix a = m;
  Integer sign = 1;
  Integer prev = 1;
  for (Index k = 0; k + 1 < n; ++k) {
    if (a(k, k) == 0) {
      Index swap = k + 1;
      while (swap < n && a(swap, k) == 0) ++swap;
      if (swap == n) return 0;
      a.row(k).swap(a.row(swap));
      sign = -sign;
    }
    for (Index i = k + 1; i < n; ++i) {
      for (Index j = k + 1; j < n; ++j) {
        a(i, j) = exact_div(a(i, j) * a(k, k) - a(i, k) * a(k, j), prev);
      }
    }
    prev = a(k, k);
  }
  return sign * a(n - 1, n - 1);
}

template <typename Derived>
bool is_unimodular(const Eigen::MatrixBase<Derived>& m) {
  return m.rows() == m.cols() && abs(determinant(m)) == 1;
}

/// Integer adjugate, so that m * adjugate(m) = det(m) * I.
LatticeMatrix adjugate(const LatticeMatrix& m);

/// Exact inverse over Q. Throws on singular input.
RationalMatrix rational_inverse(const LatticeMatrix& m);

/// Inverse of a unimodular matrix, as an integer matrix.
LatticeMatrix unimodular_inverse(const LatticeMatrix& m);

RationalVector to_rational(const LatticeVector& v);

/// Smith normal form u * m * v = d with d diagonal, d_1 | d_2 | ..., d_i >= 0.
struct SmithForm {
  LatticeMatrix d;
  LatticeMatrix u;
  LatticeMatrix v;

  /// Nonzero-or-zero diagonal entries in order.
  LatticeVector invariant_factors() const;
};

SmithForm smith_normal_form(const LatticeMatrix& m);

/// The unimodular matrix with rows (1, -t1, -t2), (0, t1, t2), (0, r, -q),
/// where t1 * q + t2 * r = 1. It sends (1, q, r) to (0, 1, 0) and fixes
/// (1, 0, 0); its determinant is -1.
LatticeMatrix cyclic_chart_change_of_basis(const Integer& q, const Integer& r);

/// Unimodular matrix whose first column is the primitive vector v.
LatticeMatrix complete_to_basis(const LatticeVector& v);

}  // namespace toric_plt
