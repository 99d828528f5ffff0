#pragma once

#include "toric_plt/numeric.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace toric_plt {

struct BoundaryComponent {
  std::string curve;  // "x1=0" on a weighted plane, "x1=x3=0" on the quadric
  Rational coefficient;
};

using BoundaryDivisor = std::vector<BoundaryComponent>;

/// Class of O(m). On the quadric m is the degree in the grading of the
/// ambient P(b1, b2, b3, b4).
struct DivisorClass {
  Integer degree = 0;
};

enum class SurfaceKind { Wps, OdpQuadric };

class WeightedSurface {
 public:
  SurfaceKind kind() const { return kind_; }
  /// Weights of the blow-up that produced the surface.
  const std::vector<Integer>& blowup_weights() const { return beta_; }
  /// Wps only: weights (a1, a2, a3) of the weighted plane.
  const std::vector<Integer>& weights() const { return a_; }
  /// Wps: (d1, d2, d3). Quadric: d13, d14, d23, d24.
  const std::vector<Integer>& multiplicities() const { return d_; }
  bool pairwise_coprime() const;
  BoundaryDivisor boundary() const;
  std::string to_string() const;

  friend WeightedSurface surface_from_smooth_weights(const std::array<Integer, 3>& beta);
  friend WeightedSurface odp_surface_from_weights(const std::array<Integer, 4>& beta);

 private:
  SurfaceKind kind_ = SurfaceKind::Wps;
  std::vector<Integer> beta_, a_, d_;
};

WeightedSurface surface_from_smooth_weights(const std::array<Integer, 3>& beta);
WeightedSurface odp_surface_from_weights(const std::array<Integer, 4>& beta);

/// The coefficient (k-1)/k of a standard boundary.
bool is_standard_coefficient(const Rational& c);

Rational pairing(const WeightedSurface& s, const Rational& m_a, const Rational& m_b);
Rational pairing(const WeightedSurface& s, const DivisorClass& a, const DivisorClass& b);

/// Degree of K_S + Diff_S(0) (+ gamma) as a class in the grading of s.
Rational log_degree(const WeightedSurface& s, const std::optional<DivisorClass>& gamma = {});

/// Ray of the weighted blow-up with weights beta on the model square cone
/// of ConeGerm::reference_odp(). The coordinates x1, x2, x3, x4 are the
/// inward facet normals (0,0,1), (1,1,-1), (1,0,0), (0,1,0).
LatticeVector odp_blowup_ray(const std::array<Integer, 4>& beta);

/// a(S, 0) + 1 for the toric blow-up producing s, read off the cone.
Rational blowup_log_discrepancy(const WeightedSurface& s);

enum class DuValKind { A, D, E6, E7, E8 };

/// Weighted blow-up of a smooth point shaped after a Du Val singularity.
/// A: k | a2 + a3, gcd(a2, a3) = 1, weights ((a2+a3)/k, a2 d1, a3 d1).
/// D: n >= 4. E: no parameters.
struct SmoothBlowup {
  DuValKind kind = DuValKind::E8;
  Integer k = 1, a2 = 1, a3 = 1, d1 = 1;
  Integer n = 4;

  static SmoothBlowup type_a(const Integer& k, const Integer& a2, const Integer& a3,
                             const Integer& d1);
  static SmoothBlowup type_d(const Integer& n);
  static SmoothBlowup type_e(int n);

  std::array<Integer, 3> weights() const;
  /// The surface weights the family promises: P(l, a2, a3), P(1, k, 2k+1), ...
  std::array<Integer, 3> expected_surface_weights() const;
  DivisorClass gamma() const;
  std::string name() const;
};

/// (G~^2) on the new exceptional divisor, from the general adjunction formula.
Rational minimal_section_sq(const SmoothBlowup& f, const Integer& alpha1, const Integer& alpha2);

/// The per-family closed forms, kept separate so each can be checked
/// against the general formula.
Rational minimal_section_sq_closed_form(const SmoothBlowup& f, const Integer& alpha1,
                                        const Integer& alpha2);

/// General formula on the quadric.
Rational odp_minimal_section_sq_general(const std::array<Integer, 4>& beta, const Integer& alpha1,
                                        const Integer& alpha2);
/// -a2 (1/b1)(1/b3 + 1/b4) - a1 (b2/b1)(1/b3 + 1/b4).
Rational odp_minimal_section_sq(const std::array<Integer, 4>& beta, const Integer& alpha1,
                                const Integer& alpha2);

}  // namespace toric_plt
