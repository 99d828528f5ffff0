#pragma once

#include "toric_plt/exceptional_surfaces.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace toric_plt {

using Exponent = std::array<Integer, 3>;

/// Exponent vectors of a polynomial with generic nonzero coefficients.
class MonomialSupport {
 public:
  /// Throws DomainError on an empty list, a repeated vector or a negative
  /// exponent.
  explicit MonomialSupport(std::vector<Exponent> monomials);

  const std::vector<Exponent>& monomials() const { return monomials_; }
  std::size_t size() const { return monomials_.size(); }
  /// Equality as sets; the listed order is kept only for printing.
  bool operator==(const MonomialSupport& other) const;
  /// "x1^2 + x2^3 + x3^5"
  std::string to_string() const;

 private:
  std::vector<Exponent> monomials_;
};

struct DuValType {
  DuValKind kind = DuValKind::A;
  Integer n = 1;  // index; 6, 7, 8 for E

  static DuValType a(const Integer& n);
  static DuValType d(const Integer& n);
  static DuValType e(int n);
  bool operator==(const DuValType& other) const = default;
  /// "A3", "D5", "E8"
  std::string to_string() const;
};

/// (l1, l2, l3) -> (d1 l1, d2 l2, d3 l3).
MonomialSupport lift_curve(const MonomialSupport& support, const std::array<Integer, 3>& d);

/// Every monomial of weighted degree m on P(a1, a2, a3): the support of a
/// general member of |O(m)|.
MonomialSupport curve_support(const std::array<Integer, 3>& a, const Integer& m);

/// Support of the lifted equation of the general curve of a family;
/// quasihomogeneous under f.weights().
MonomialSupport family_equation(const SmoothBlowup& f);

struct WeightFamilyMatch {
  SmoothBlowup family;
  /// beta[order[i]] is the i-th weight of family.weights().
  std::array<int, 3> order{0, 1, 2};
  /// The singularity of the general lifted equation; none when it is
  /// smooth (type A with k d1 = 1).
  std::optional<DuValType> type;
};

/// Which of the six weight families beta belongs to, up to permutation.
/// E and D are tried first; among several A readings the one with the
/// smallest (a2+a3)/k wins, and a2 <= a3. None also when gcd(beta) != 1 or a
/// weight is not positive.
std::optional<WeightFamilyMatch> recognize_weight_family(const std::array<Integer, 3>& beta);

bool newton_interior_contains_one(const MonomialSupport& support);

/// Common weighted degree of the support; throws DomainError naming two
/// monomials of different degree.
Integer weighted_degree(const MonomialSupport& support, const std::array<Integer, 3>& beta);

enum class DuValFailure {
  None,
  Smooth,             // a linear monomial
  NotIsolated,        // includes x1^2 + x2^2 x3
  MissingVariable,    // independent of some variable
  NewtonBound,        // 1 not in the interior of the Newton polyhedron
};

struct DuValVerdict {
  std::optional<DuValType> type;
  DuValFailure failure = DuValFailure::None;
};

DuValVerdict classify_support(const MonomialSupport& support, const std::array<Integer, 3>& beta);

/// Type of the generic member, or none in the failing cases.
std::optional<DuValType> is_duval(const MonomialSupport& support,
                                  const std::array<Integer, 3>& beta);

std::string to_string(DuValFailure f);

/// Thrown by the text parsers; line and column are 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line, std::size_t column);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_, column_;
};

/// One monomial per line, "x1^a x2^b x3^c", exponent 1 when omitted,
/// "#" starts a comment. A lone "1" is the constant monomial.
MonomialSupport parse_monomials(const std::string& text);

}  // namespace toric_plt
