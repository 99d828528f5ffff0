#pragma once

#include "toric_plt/exceptional_surfaces.hpp"
#include "toric_plt/singularity_classifier.hpp"
#include "toric_plt/toric_fans.hpp"

#include <optional>
#include <string>
#include <vector>

namespace toric_plt {

enum class FamilyKind { A, DEven, DOdd, E6, E7, E8, Odp };

std::string to_string(FamilyKind kind);

/// Parameters of one non-toric plt blow-up. Only the fields of the chosen
/// kind are read. The ambient is Smooth, CyclicQuotient (type A only) or,
/// for Odp, OrdinaryDoublePoint.
struct FamilySpec {
  FamilyKind kind = FamilyKind::E8;
  Integer k = 1, a2 = 1, a3 = 1, d1 = 1;  // A; D uses k
  Integer a1 = 1, d13 = 1, d14 = 1, a4 = 1;  // Odp, with k and a3
  Integer alpha1 = 1, alpha2 = 1;
  TerminalToricType ambient;

  static FamilySpec type_a(const Integer& k, const Integer& a2, const Integer& a3,
                           const Integer& d1, const Integer& alpha1, const Integer& alpha2);
  static FamilySpec type_d_even(const Integer& k, const Integer& alpha1, const Integer& alpha2);
  static FamilySpec type_d_odd(const Integer& k, const Integer& alpha1, const Integer& alpha2);
  static FamilySpec type_e(int n, const Integer& alpha1, const Integer& alpha2);
  static FamilySpec type_odp(const Integer& a1, const Integer& k, const Integer& d13,
                             const Integer& d14, const Integer& a3, const Integer& a4,
                             const Integer& alpha1, const Integer& alpha2);
  /// Type A over 1/r(b1, b2, b3); b1 + b3 = 0 mod r is required.
  FamilySpec over_quotient(const Integer& r) const;

  /// Throws DomainError naming the first violated constraint.
  void validate() const;
  /// (b1, b2, b3), or (b1, b2, b3, b4) for Odp.
  std::vector<Integer> weights() const;
  /// D_n index n = 2k + 2 or 2k + 1.
  Integer n() const;
  std::string name() const;
};

struct FiberData {
  std::string id;                // f1, f2, f3
  CyclicQuotientType on_section;  // at f meet the section, weights (fiber, section)
  CyclicQuotientType other;       // at the opposite point, weights (fiber, E0)
  Integer k;                     // f appears in Diff with (k-1)/k
  Rational coefficient;
};

struct ConicBundleDescription {
  FamilySpec spec;
  std::vector<FiberData> fibers;
  /// Self-intersection of the minimal section. For a quotient ambient this
  /// is the value on the index-r cover.
  Rational section_self_intersection;
  bool section_on_cover = false;
  CyclicQuotientType transversal{1, {0, 0}};  // along E0
  Rational e0_coefficient;
  bool toric_log_surface = false;
};

ConicBundleDescription build_family(const FamilySpec& spec);

struct ChartMismatch {
  std::string where;  // e.g. "f1 on_section"
  std::string claimed;
  std::string computed;
};

struct ChartReport {
  bool ok = true;
  std::size_t charts_checked = 0;
  std::vector<ChartMismatch> mismatches;
  /// Quotient ambient: det of the matrix taking each chart to the standard
  /// vertex, in chart order (-1 for M, 1 for the identity).
  std::vector<Integer> vertex_basis_dets;
};

/// Rebuild every fiber chart with toric_fans and compare with build_family.
ChartReport verify_fiber_charts(const FamilySpec& spec);

/// Diff_E(0): fibers with (k_i-1)/k_i, then E0 with (alpha1-1)/alpha1.
BoundaryDivisor diff_e(const FamilySpec& spec);
/// True for A and Odp, where (E, Diff_E(0)) is toric.
bool diff_e_is_toric(const FamilySpec& spec);

/// Coefficients below 1 and every listed point a genuine 2-dimensional
/// cyclic quotient. Throws on an order 0 quotient.
bool klt_check(const ConicBundleDescription& desc);

/// Closed form for the toric surface point cut out near the vertex
/// <(1,0,0), (0,1,0), *> by a new ray t: 1/g3(g1, g2) in the order
/// ((1,0,0), (0,1,0)), and the multiplicities of the two orbit curves
/// through it.
struct VertexFormula {
  CyclicQuotientType other;       // weights (s, g)
  CyclicQuotientType on_section;  // weights (s, v), second weight negated
  Integer fiber_multiplicity;     // gcd(t2, t3)
  Integer e0_multiplicity;        // gcd(t1, t3)
};
VertexFormula vertex_formula(const LatticeVector& t);

}  // namespace toric_plt
