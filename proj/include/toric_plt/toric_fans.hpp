#pragma once

#include "toric_plt/lattice_core.hpp"

#include <optional>
#include <string>
#include <vector>

namespace toric_plt {

/// A cyclic quotient singularity C^n / mu_r where mu_r acts with the given
/// weights. Weights are stored reduced mod r in the order they were given,
/// so that the coordinate a weight belongs to is never lost; use
/// canonical() when comparing up to isomorphism.
class CyclicQuotientType {
 public:
  CyclicQuotientType(Integer order, std::vector<Integer> weights);

  const Integer& order() const { return order_; }
  const std::vector<Integer>& weights() const { return weights_; }
  std::size_t dimension() const { return weights_.size(); }
  bool is_smooth() const { return order_ == 1; }

  /// The representative minimising the lexicographic tuple over multiplier
  /// changes w -> u*w (gcd(u, r) = 1) and coordinate permutations.
  CyclicQuotientType canonical() const;

  /// The same type with the weights multiplied by a unit u mod r.
  CyclicQuotientType scaled(const Integer& unit) const;

  /// Every weight coprime to the order (the action is free off the origin).
  bool is_isolated() const;

  std::string to_string() const;

  friend bool operator==(const CyclicQuotientType& a, const CyclicQuotientType& b) {
    return a.order_ == b.order_ && a.weights_ == b.weights_;
  }

 private:
  Integer order_;
  std::vector<Integer> weights_;
};

/// Isomorphic as quotient singularities (multipliers and permutations).
bool equivalent(const CyclicQuotientType& a, const CyclicQuotientType& b);

/// Equal up to a common unit multiplier, keeping the coordinate order.
/// This is the right notion when each weight is attached to a named curve.
bool equivalent_ordered(const CyclicQuotientType& a, const CyclicQuotientType& b);

enum class ConeKind { Simplicial3, OdpSquare };

/// Affine toric germ (X, P): a simplicial 3-cone or the square cone of the
/// three-dimensional ordinary double point.
class ConeGerm {
 public:
  static ConeGerm simplicial(LatticeVector v1, LatticeVector v2, LatticeVector v3);
  /// Generators ordered so that v1 + v2 = v3 + v4 (v1, v2 opposite).
  static ConeGerm odp_square(LatticeVector v1, LatticeVector v2, LatticeVector v3,
                             LatticeVector v4);
  /// The model square cone <(1,0,0), (0,1,1), (0,1,0), (1,0,1)>.
  static ConeGerm reference_odp();
  static ConeGerm smooth();

  /// Arbitrary 3-dimensional cone with 3 or 4 generators; kind inferred.
  static ConeGerm from_generators(std::vector<LatticeVector> gens);

  ConeKind kind() const { return kind_; }
  const std::vector<LatticeVector>& generators() const { return gens_; }

  /// Inward normals of the facets, each paired with the indices of the two
  /// generators spanning the facet.
  struct Facet {
    LatticeVector normal;
    std::size_t a;
    std::size_t b;
  };
  const std::vector<Facet>& facets() const { return facets_; }

  bool contains(const LatticeVector& v) const;
  bool contains_in_interior(const LatticeVector& v) const;

  /// The rational functional m with <m, v_i> = 1 on every generator.
  RationalVector gorenstein_functional() const;

 private:
  ConeGerm(ConeKind kind, std::vector<LatticeVector> gens);

  ConeKind kind_;
  std::vector<LatticeVector> gens_;
  std::vector<Facet> facets_;
};

/// A fan of three-dimensional cones in one lattice; pairwise intersections
/// are checked to be common faces when the fan is built.
class Fan {
 public:
  explicit Fan(std::vector<ConeGerm> cones);
  const std::vector<ConeGerm>& cones() const { return cones_; }

 private:
  std::vector<ConeGerm> cones_;
};

/// True iff cone(a) and cone(b) meet along cone(shared generators).
bool meet_along_common_face(const ConeGerm& a, const ConeGerm& b);

/// Quotient type of the affine chart of a simplicial cone, with weights in
/// generator order. Works for rank 2 and rank 3 lattices.
CyclicQuotientType simplicial_quotient_type(const std::vector<LatticeVector>& gens);

CyclicQuotientType cone_quotient_type(const ConeGerm& c);

/// Type of the toric surface V(<e>) at the point V(<e, a, c>), with the
/// first weight attached to the curve of a and the second to the curve of c.
CyclicQuotientType surface_point_type(const LatticeVector& e, const LatticeVector& a,
                                      const LatticeVector& c);

/// Transversal type of the threefold along the curve V(<a, c>).
CyclicQuotientType transversal_type(const LatticeVector& a, const LatticeVector& c);

/// Star subdivision: every cone containing the ray is replaced by the joins
/// of the ray with its facets not containing it.
Fan star_subdivide(const Fan& f, const LatticeVector& ray);

/// a(E, 0) for the toric divisor of the ray: <m, ray> - 1.
Rational discrepancy(const ConeGerm& germ, const LatticeVector& ray);

enum class TerminalityReason { Terminal, PseudoReflection, SumAtMostOne };

struct TerminalityVerdict {
  bool terminal = false;
  TerminalityReason reason = TerminalityReason::SumAtMostOne;
  /// The failing group element j (1 <= j < r) when not terminal.
  std::optional<Integer> witness;
};

/// Reid-Tai: 1/r(w1,w2,w3) is terminal iff sum_i frac(j*w_i/r) > 1 for all
/// j = 1, ..., r-1. Elements fixing a divisor are reported separately.
TerminalityVerdict reid_tai(const CyclicQuotientType& q);

inline bool reid_tai_is_terminal(const CyclicQuotientType& q) { return reid_tai(q).terminal; }

std::string to_string(TerminalityReason reason);

}  // namespace toric_plt
