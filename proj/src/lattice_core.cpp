#include "toric_plt/lattice_core.hpp"

#include <algorithm>

namespace toric_plt {

namespace {

// Lexicographic key used to pick the canonical Bezout pair.
bool better_pair(const Integer& t1, const Integer& t2, const Integer& best1,
                 const Integer& best2) {
  if (abs(t2) != abs(best2)) return abs(t2) < abs(best2);
  if (abs(t1) != abs(best1)) return abs(t1) < abs(best1);
  return t1 > best1;
}

}  // namespace

ExtGcd ext_gcd(const Integer& a, const Integer& b) {
  if (a == 0 && b == 0) throw DomainError("ext_gcd: both arguments are zero");

  Integer g, s, t;
  mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(),
             b.get_mpz_t());

  if (b == 0) return {g, a > 0 ? Integer(1) : Integer(-1), 0};
  if (a == 0) return {g, 0, b > 0 ? Integer(1) : Integer(-1)};

  // All solutions: (s + k * b/g, t - k * a/g). Minimise |t| first.
  const Integer step1 = exact_div(b, g);
  const Integer step2 = exact_div(a, g);
  Integer k;
  // k close to t / step2
  mpz_fdiv_q(k.get_mpz_t(), t.get_mpz_t(), step2.get_mpz_t());
  Integer best1 = s + k * step1;
  Integer best2 = t - k * step2;
  for (int delta = -2; delta <= 2; ++delta) {
    const Integer kk = k + delta;
    const Integer c1 = s + kk * step1;
    const Integer c2 = t - kk * step2;
    if (better_pair(c1, c2, best1, best2)) {
      best1 = c1;
      best2 = c2;
    }
  }
  return {g, best1, best2};
}

LatticeVector primitive_part(const LatticeVector& v) {
  const Integer c = content(v);
  if (c == 0) throw DomainError("primitive_part of the zero vector");
  LatticeVector p(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) p(i) = exact_div(v(i), c);
  return p;
}

LatticeMatrix adjugate(const LatticeMatrix& m) {
  const Eigen::Index n = m.rows();
  if (m.cols() != n) throw DomainError("adjugate of non-square matrix");
  LatticeMatrix adj(n, n);
  if (n == 1) {
    adj(0, 0) = 1;
    return adj;
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      LatticeMatrix minor(n - 1, n - 1);
      for (Eigen::Index r = 0, mr = 0; r < n; ++r) {
        if (r == i) continue;
        for (Eigen::Index c = 0, mc = 0; c < n; ++c) {
          if (c == j) continue;
          minor(mr, mc++) = m(r, c);
        }
        ++mr;
      }
      const Integer cof = determinant(minor);
      adj(j, i) = ((i + j) % 2 == 0) ? cof : Integer(-cof);
    }
  }
  return adj;
}

RationalMatrix rational_inverse(const LatticeMatrix& m) {
  const Integer det = determinant(m);
  if (det == 0) throw DomainError("inverse of singular matrix");
  const LatticeMatrix adj = adjugate(m);
  RationalMatrix inv(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      inv(i, j) = make_rational(adj(i, j), det);
  return inv;
}

LatticeMatrix unimodular_inverse(const LatticeMatrix& m) {
  const Integer det = determinant(m);
  if (abs(det) != 1) throw DomainError("matrix is not unimodular");
  LatticeMatrix adj = adjugate(m);
  if (det == -1) adj = -adj;
  return adj;
}

RationalVector to_rational(const LatticeVector& v) {
  RationalVector out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = Rational(v(i));
  return out;
}

LatticeVector SmithForm::invariant_factors() const {
  const Eigen::Index k = std::min(d.rows(), d.cols());
  LatticeVector f(k);
  for (Eigen::Index i = 0; i < k; ++i) f(i) = d(i, i);
  return f;
}

namespace {

// Row operation on (a, u): row_i <- x*row_i + y*row_j, row_j <- z*row_i + w*row_j
// with xw - yz = +-1.
template <typename Mat>
void mix_rows(Mat& a, Eigen::Index i, Eigen::Index j, const Integer& x,
              const Integer& y, const Integer& z, const Integer& w) {
  for (Eigen::Index c = 0; c < a.cols(); ++c) {
    const Integer ai = a(i, c);
    const Integer aj = a(j, c);
    a(i, c) = x * ai + y * aj;
    a(j, c) = z * ai + w * aj;
  }
}

template <typename Mat>
void mix_cols(Mat& a, Eigen::Index i, Eigen::Index j, const Integer& x,
              const Integer& y, const Integer& z, const Integer& w) {
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    const Integer ai = a(r, i);
    const Integer aj = a(r, j);
    a(r, i) = x * ai + y * aj;
    a(r, j) = z * ai + w * aj;
  }
}

}  // namespace

SmithForm smith_normal_form(const LatticeMatrix& m) {
  using Eigen::Index;
  const Index rows = m.rows();
  const Index cols = m.cols();
  LatticeMatrix a = m;
  LatticeMatrix u = LatticeMatrix::Identity(rows, rows);
  LatticeMatrix v = LatticeMatrix::Identity(cols, cols);

  const Index k = std::min(rows, cols);
  for (Index t = 0; t < k; ++t) {
    // pivot: smallest nonzero absolute value in the trailing block
    Index pr = -1, pc = -1;
    for (Index i = t; i < rows; ++i)
      for (Index j = t; j < cols; ++j)
        if (a(i, j) != 0 && (pr < 0 || abs(a(i, j)) < abs(a(pr, pc)))) {
          pr = i;
          pc = j;
        }
    if (pr < 0) break;
    a.row(t).swap(a.row(pr));
    u.row(t).swap(u.row(pr));
    a.col(t).swap(a.col(pc));
    v.col(t).swap(v.col(pc));

    bool clean = false;
    while (!clean) {
      clean = true;
      // clear column t below the pivot
      for (Index i = t + 1; i < rows; ++i) {
        if (a(i, t) == 0) continue;
        const ExtGcd e = ext_gcd(a(t, t), a(i, t));
        const Integer p = exact_div(a(t, t), e.g);
        const Integer q = exact_div(a(i, t), e.g);
        mix_rows(a, t, i, e.theta1, e.theta2, -q, p);
        mix_rows(u, t, i, e.theta1, e.theta2, -q, p);
      }
      // clear row t right of the pivot
      for (Index j = t + 1; j < cols; ++j) {
        if (a(t, j) == 0) continue;
        const ExtGcd e = ext_gcd(a(t, t), a(t, j));
        const Integer p = exact_div(a(t, t), e.g);
        const Integer q = exact_div(a(t, j), e.g);
        mix_cols(a, t, j, e.theta1, e.theta2, -q, p);
        mix_cols(v, t, j, e.theta1, e.theta2, -q, p);
        clean = false;
      }
      if (!clean) continue;
      // divisibility: pivot must divide the trailing block
      for (Index i = t + 1; i < rows && clean; ++i)
        for (Index j = t + 1; j < cols; ++j)
          if (!divides(a(t, t), a(i, j))) {
            // add row i to row t, then re-clear
            a.row(t) += a.row(i);
            u.row(t) += u.row(i);
            clean = false;
            break;
          }
    }
    if (a(t, t) < 0) {
      a.row(t) = -a.row(t);
      u.row(t) = -u.row(t);
    }
  }
  return {a, u, v};
}

LatticeMatrix cyclic_chart_change_of_basis(const Integer& q, const Integer& r) {
  if (r < 1) throw DomainError("cyclic_chart_change_of_basis: r must be >= 1");
  if (gcd(q, r) != 1) throw DomainError("cyclic_chart_change_of_basis: gcd(q, r) != 1");
  const ExtGcd e = ext_gcd(q, r);
  LatticeMatrix m(3, 3);
  m << Integer(1), Integer(-e.theta1), Integer(-e.theta2),  //
      Integer(0), e.theta1, e.theta2,                        //
      Integer(0), r, Integer(-q);
  return m;
}

LatticeMatrix complete_to_basis(const LatticeVector& v) {
  if (!is_primitive(v)) throw DomainError("complete_to_basis: vector is not primitive");
  // A unimodular u with u * v = e_1 (Smith form of the column v); then
  // u^{-1} has first column v.
  LatticeMatrix col(v.size(), 1);
  col.col(0) = v;
  const SmithForm s = smith_normal_form(col);
  LatticeMatrix inv = unimodular_inverse(s.u);
  // u * col * v1 = e_1 with v1 = [+-1]
  if (s.v(0, 0) == -1) inv.col(0) = -inv.col(0);
  return inv;
}

}  // namespace toric_plt
