#include "toric_plt/toric_fans.hpp"

#include <algorithm>
#include <sstream>

namespace toric_plt {

namespace {

LatticeVector cross(const LatticeVector& a, const LatticeVector& b) {
  LatticeVector c(3);
  c(0) = a(1) * b(2) - a(2) * b(1);
  c(1) = a(2) * b(0) - a(0) * b(2);
  c(2) = a(0) * b(1) - a(1) * b(0);
  return c;
}

Integer dot(const LatticeVector& a, const LatticeVector& b) {
  Integer s = 0;
  for (Eigen::Index i = 0; i < a.size(); ++i) s += a(i) * b(i);
  return s;
}

bool is_zero(const LatticeVector& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i)
    if (v(i) != 0) return false;
  return true;
}

bool same(const LatticeVector& a, const LatticeVector& b) {
  return a.size() == b.size() && is_zero(LatticeVector(a - b));
}

LatticeMatrix columns(const std::vector<LatticeVector>& gens) {
  const Eigen::Index n = gens.front().size();
  LatticeMatrix g(n, static_cast<Eigen::Index>(gens.size()));
  for (std::size_t j = 0; j < gens.size(); ++j) g.col(static_cast<Eigen::Index>(j)) = gens[j];
  return g;
}

void require_rank3_primitive(const std::vector<LatticeVector>& gens) {
  for (const auto& v : gens) {
    if (v.size() != 3) throw DomainError("cone generators must lie in a rank 3 lattice");
    if (!is_primitive(v)) throw DomainError("cone generators must be primitive");
  }
}

// v in the two-dimensional cone spanned by a and b (a, b independent).
bool in_plane_cone(const LatticeVector& v, const LatticeVector& a, const LatticeVector& b) {
  const LatticeVector n = cross(a, b);
  if (dot(n, v) != 0) return false;
  return dot(cross(v, b), n) >= 0 && dot(cross(a, v), n) >= 0;
}

// Coordinates of the vectors in a basis of the saturation of their span,
// which must be two-dimensional.
std::vector<LatticeVector> saturated_plane_coords(const LatticeVector& a,
                                                  const LatticeVector& c) {
  const LatticeMatrix g = columns({a, c});
  const SmithForm s = smith_normal_form(g);
  if (s.d(1, 1) == 0) throw DomainError("vectors do not span a plane");
  // u * g has zero rows below the second one; its top block gives
  // coordinates in the basis of u^{-1} restricted to the plane.
  const LatticeMatrix ug = s.u * g;
  std::vector<LatticeVector> out;
  for (int j = 0; j < 2; ++j) {
    LatticeVector v(2);
    v(0) = ug(0, j);
    v(1) = ug(1, j);
    out.push_back(primitive_part(v));
  }
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// CyclicQuotientType

CyclicQuotientType::CyclicQuotientType(Integer order, std::vector<Integer> weights)
    : order_(std::move(order)), weights_(std::move(weights)) {
  if (order_ < 1) throw DomainError("quotient order must be positive");
  for (auto& w : weights_) w = mod(w, order_);
}

CyclicQuotientType CyclicQuotientType::scaled(const Integer& unit) const {
  std::vector<Integer> w = weights_;
  for (auto& x : w) x = mod(x * unit, order_);
  return {order_, std::move(w)};
}

CyclicQuotientType CyclicQuotientType::canonical() const {
  if (order_ == 1) return {1, std::vector<Integer>(weights_.size(), Integer(0))};
  std::vector<Integer> best;
  for (Integer u = 1; u < order_; ++u) {
    if (gcd(u, order_) != 1) continue;
    std::vector<Integer> w = weights_;
    for (auto& x : w) x = mod(x * u, order_);
    std::sort(w.begin(), w.end());
    if (best.empty() || w < best) best = std::move(w);
  }
  return {order_, std::move(best)};
}

bool CyclicQuotientType::is_isolated() const {
  for (const auto& w : weights_)
    if (gcd(w, order_) != 1) return false;
  return true;
}

std::string CyclicQuotientType::to_string() const {
  std::ostringstream os;
  os << "1/" << order_.get_str() << "(";
  for (std::size_t i = 0; i < weights_.size(); ++i) {
    if (i) os << ",";
    os << weights_[i].get_str();
  }
  os << ")";
  return os.str();
}

bool equivalent(const CyclicQuotientType& a, const CyclicQuotientType& b) {
  return a.dimension() == b.dimension() && a.canonical() == b.canonical();
}

bool equivalent_ordered(const CyclicQuotientType& a, const CyclicQuotientType& b) {
  if (a.order() != b.order() || a.dimension() != b.dimension()) return false;
  if (a.order() == 1) return true;
  for (Integer u = 1; u < a.order(); ++u) {
    if (gcd(u, a.order()) != 1) continue;
    if (a.scaled(u) == b) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// ConeGerm

ConeGerm::ConeGerm(ConeKind kind, std::vector<LatticeVector> gens)
    : kind_(kind), gens_(std::move(gens)) {
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    for (std::size_t j = i + 1; j < gens_.size(); ++j) {
      LatticeVector n = cross(gens_[i], gens_[j]);
      if (is_zero(n)) continue;
      bool pos = false, neg = false;
      for (std::size_t k = 0; k < gens_.size(); ++k) {
        if (k == i || k == j) continue;
        const Integer s = dot(n, gens_[k]);
        if (s > 0) pos = true;
        if (s < 0) neg = true;
      }
      if (pos && neg) continue;
      if (neg) n = -n;
      facets_.push_back({primitive_part(n), i, j});
    }
  }
}

ConeGerm ConeGerm::simplicial(LatticeVector v1, LatticeVector v2, LatticeVector v3) {
  std::vector<LatticeVector> gens{std::move(v1), std::move(v2), std::move(v3)};
  require_rank3_primitive(gens);
  if (determinant(columns(gens)) == 0)
    throw DomainError("simplicial cone generators are linearly dependent");
  return {ConeKind::Simplicial3, std::move(gens)};
}

ConeGerm ConeGerm::odp_square(LatticeVector v1, LatticeVector v2, LatticeVector v3,
                              LatticeVector v4) {
  std::vector<LatticeVector> gens{std::move(v1), std::move(v2), std::move(v3), std::move(v4)};
  require_rank3_primitive(gens);
  if (!same(LatticeVector(gens[0] + gens[1]), LatticeVector(gens[2] + gens[3])))
    throw DomainError("square cone requires v1 + v2 = v3 + v4");
  for (std::size_t skip = 0; skip < 4; ++skip) {
    std::vector<LatticeVector> sub;
    for (std::size_t k = 0; k < 4; ++k)
      if (k != skip) sub.push_back(gens[k]);
    if (determinant(columns(sub)) == 0)
      throw DomainError("square cone requires every three generators to be independent");
  }
  return {ConeKind::OdpSquare, std::move(gens)};
}

ConeGerm ConeGerm::reference_odp() {
  return odp_square(lattice_vector({1, 0, 0}), lattice_vector({0, 1, 1}),
                    lattice_vector({0, 1, 0}), lattice_vector({1, 0, 1}));
}

ConeGerm ConeGerm::smooth() {
  return simplicial(lattice_vector({1, 0, 0}), lattice_vector({0, 1, 0}),
                    lattice_vector({0, 0, 1}));
}

ConeGerm ConeGerm::from_generators(std::vector<LatticeVector> gens) {
  if (gens.size() == 3) return simplicial(gens[0], gens[1], gens[2]);
  if (gens.size() == 4) {
    // find the opposite pair
    const std::size_t partner[3][4] = {{0, 1, 2, 3}, {0, 2, 1, 3}, {0, 3, 1, 2}};
    for (const auto& p : partner) {
      if (same(LatticeVector(gens[p[0]] + gens[p[1]]), LatticeVector(gens[p[2]] + gens[p[3]])))
        return odp_square(gens[p[0]], gens[p[1]], gens[p[2]], gens[p[3]]);
    }
  }
  throw DomainError("germ must have 3 generators or 4 forming a square");
}

bool ConeGerm::contains(const LatticeVector& v) const {
  for (const auto& f : facets_)
    if (dot(f.normal, v) < 0) return false;
  return true;
}

bool ConeGerm::contains_in_interior(const LatticeVector& v) const {
  for (const auto& f : facets_)
    if (dot(f.normal, v) <= 0) return false;
  return true;
}

RationalVector ConeGerm::gorenstein_functional() const {
  LatticeMatrix rows(3, 3);
  for (int i = 0; i < 3; ++i) rows.row(i) = gens_[static_cast<std::size_t>(i)].transpose();
  const RationalMatrix inv = rational_inverse(rows);
  RationalVector ones(3);
  ones << Rational(1), Rational(1), Rational(1);
  const RationalVector m = inv * ones;
  for (const auto& g : gens_) {
    if (Rational(m.dot(to_rational(g))) != 1)
      throw DomainError("germ is not Q-Gorenstein graded: no functional equal to 1 on all rays");
  }
  return m;
}

// ---------------------------------------------------------------------------
// Fans

bool meet_along_common_face(const ConeGerm& a, const ConeGerm& b) {
  std::vector<LatticeVector> normals;
  for (const auto& f : a.facets()) normals.push_back(f.normal);
  for (const auto& f : b.facets()) normals.push_back(f.normal);

  std::vector<LatticeVector> shared;
  for (const auto& g : a.generators())
    for (const auto& h : b.generators())
      if (same(g, h)) shared.push_back(g);

  auto in_shared_face = [&](const LatticeVector& v) {
    switch (shared.size()) {
      case 0:
        return false;
      case 1:
        return is_zero(cross(v, shared[0])) && dot(v, shared[0]) > 0;
      case 2:
        return in_plane_cone(v, shared[0], shared[1]);
      default:
        return ConeGerm::from_generators(shared).contains(v);
    }
  };

  for (std::size_t i = 0; i < normals.size(); ++i) {
    for (std::size_t j = i + 1; j < normals.size(); ++j) {
      const LatticeVector line = cross(normals[i], normals[j]);
      if (is_zero(line)) continue;
      for (const LatticeVector& ray : {line, LatticeVector(-line)}) {
        if (a.contains(ray) && b.contains(ray) && !in_shared_face(ray)) return false;
      }
    }
  }
  return true;
}

Fan::Fan(std::vector<ConeGerm> cones) : cones_(std::move(cones)) {
  for (std::size_t i = 0; i < cones_.size(); ++i)
    for (std::size_t j = i + 1; j < cones_.size(); ++j)
      if (!meet_along_common_face(cones_[i], cones_[j]))
        throw DomainError("fan cones " + std::to_string(i) + " and " + std::to_string(j) +
                          " do not meet along a common face");
}

Fan star_subdivide(const Fan& f, const LatticeVector& ray) {
  if (ray.size() != 3 || !is_primitive(ray))
    throw DomainError("star_subdivide: ray must be a primitive rank 3 vector");
  std::vector<ConeGerm> out;
  bool hit = false;
  for (const auto& cone : f.cones()) {
    if (!cone.contains(ray)) {
      out.push_back(cone);
      continue;
    }
    hit = true;
    bool is_generator = false;
    for (const auto& g : cone.generators()) is_generator = is_generator || same(g, ray);
    if (is_generator) {
      out.push_back(cone);
      continue;
    }
    for (const auto& facet : cone.facets()) {
      if (dot(facet.normal, ray) == 0) continue;
      out.push_back(ConeGerm::simplicial(ray, cone.generators()[facet.a],
                                         cone.generators()[facet.b]));
    }
  }
  if (!hit) throw DomainError("star_subdivide: ray lies outside the support of the fan");
  return Fan(std::move(out));
}

// ---------------------------------------------------------------------------
// Quotient types

CyclicQuotientType simplicial_quotient_type(const std::vector<LatticeVector>& gens) {
  if (gens.empty()) throw DomainError("empty cone");
  const auto n = static_cast<Eigen::Index>(gens.size());
  for (const auto& g : gens)
    if (g.size() != n) throw DomainError("simplicial cone must be full-dimensional");
  const LatticeMatrix g = columns(gens);
  const Integer det = determinant(g);
  if (det == 0) throw DomainError("degenerate cone");
  const Integer r = abs(det);
  if (r == 1) return {1, std::vector<Integer>(gens.size(), Integer(0))};

  const SmithForm s = smith_normal_form(g);
  for (Eigen::Index i = 0; i + 1 < n; ++i)
    if (s.d(i, i) != 1) throw DomainError("cone chart is not a cyclic quotient");

  // N / N' is generated by the last adapted basis vector.
  const LatticeMatrix uinv = unimodular_inverse(s.u);
  const LatticeVector generator = uinv.col(n - 1);
  const LatticeMatrix adj = adjugate(g);
  const LatticeVector scaled = adj * generator;  // det * coordinates
  std::vector<Integer> weights;
  for (Eigen::Index i = 0; i < n; ++i) {
    // coordinate c_i = scaled_i / det, weight = r * c_i
    Integer w = det > 0 ? Integer(scaled(i)) : Integer(-scaled(i));
    weights.push_back(w);
  }
  return {r, std::move(weights)};
}

CyclicQuotientType cone_quotient_type(const ConeGerm& c) {
  if (c.kind() != ConeKind::Simplicial3)
    throw DomainError("cone_quotient_type requires a simplicial cone");
  return simplicial_quotient_type(c.generators());
}

CyclicQuotientType surface_point_type(const LatticeVector& e, const LatticeVector& a,
                                      const LatticeVector& c) {
  const LatticeMatrix basis = complete_to_basis(primitive_part(e));
  const LatticeMatrix inv = unimodular_inverse(basis);
  std::vector<LatticeVector> projected;
  for (const auto* v : {&a, &c}) {
    const LatticeVector coords = inv * (*v);
    LatticeVector p(2);
    p(0) = coords(1);
    p(1) = coords(2);
    projected.push_back(primitive_part(p));
  }
  return simplicial_quotient_type(projected);
}

CyclicQuotientType transversal_type(const LatticeVector& a, const LatticeVector& c) {
  return simplicial_quotient_type(saturated_plane_coords(a, c));
}

Rational discrepancy(const ConeGerm& germ, const LatticeVector& ray) {
  if (!germ.contains(ray)) throw DomainError("discrepancy: ray lies outside the cone");
  const RationalVector m = germ.gorenstein_functional();
  return Rational(m.dot(to_rational(ray))) - 1;
}

// ---------------------------------------------------------------------------
// Terminality

TerminalityVerdict reid_tai(const CyclicQuotientType& q) {
  if (q.dimension() != 3) throw DomainError("Reid-Tai test needs a rank 3 quotient");
  const Integer& r = q.order();
  if (r == 1) return {true, TerminalityReason::Terminal, std::nullopt};

  for (Integer j = 1; j < r; ++j) {
    int zeros = 0;
    for (const auto& w : q.weights())
      if (mod(j * w, r) == 0) ++zeros;
    if (zeros == 2) return {false, TerminalityReason::PseudoReflection, j};
  }
  for (Integer j = 1; j < r; ++j) {
    Integer sum = 0;  // r * sum of fractional parts
    for (const auto& w : q.weights()) sum += mod(j * w, r);
    if (sum <= r) return {false, TerminalityReason::SumAtMostOne, j};
  }
  return {true, TerminalityReason::Terminal, std::nullopt};
}

std::string to_string(TerminalityReason reason) {
  switch (reason) {
    case TerminalityReason::Terminal:
      return "terminal";
    case TerminalityReason::PseudoReflection:
      return "pseudo-reflection";
    case TerminalityReason::SumAtMostOne:
      return "age-at-most-one";
  }
  return "unknown";
}

}  // namespace toric_plt
