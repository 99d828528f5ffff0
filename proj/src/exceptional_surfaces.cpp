#include "toric_plt/exceptional_surfaces.hpp"

#include "toric_plt/toric_fans.hpp"

namespace toric_plt {

namespace {

void require_alpha(const Integer& alpha1, const Integer& alpha2) {
  if (alpha1 < 1 || alpha2 < 1) throw DomainError("alpha1, alpha2 must be positive");
  if (gcd(alpha1, alpha2) != 1) throw DomainError("gcd(alpha1, alpha2) must be 1");
}

Rational boundary_coefficient(const Integer& d) { return make_rational(d - 1, d); }

}  // namespace

LatticeVector odp_blowup_ray(const std::array<Integer, 4>& beta) {
  LatticeVector w(3);
  w << beta[2], beta[3], beta[0];
  return w;
}

bool WeightedSurface::pairwise_coprime() const {
  if (kind_ != SurfaceKind::Wps) return false;
  return gcd(a_[0], a_[1]) == 1 && gcd(a_[0], a_[2]) == 1 && gcd(a_[1], a_[2]) == 1;
}

BoundaryDivisor WeightedSurface::boundary() const {
  BoundaryDivisor out;
  if (kind_ == SurfaceKind::Wps) {
    for (std::size_t i = 0; i < 3; ++i)
      if (d_[i] > 1)
        out.push_back({"x" + std::to_string(i + 1) + "=0", boundary_coefficient(d_[i])});
    return out;
  }
  static const char* const curves[4] = {"x1=x3=0", "x1=x4=0", "x2=x3=0", "x2=x4=0"};
  for (std::size_t i = 0; i < 4; ++i)
    if (d_[i] > 1) out.push_back({curves[i], boundary_coefficient(d_[i])});
  return out;
}

std::string WeightedSurface::to_string() const {
  std::string s;
  const auto join = [](const std::vector<Integer>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + v[i].get_str();
    return out;
  };
  if (kind_ == SurfaceKind::Wps) {
    s = "P(" + join(a_) + ")";
  } else {
    s = "(x1x2+x3x4=0) in P(" + join(beta_) + ")";
  }
  for (const auto& c : boundary()) s += " + " + toric_plt::to_string(c.coefficient) + "{" + c.curve + "}";
  return s;
}

WeightedSurface surface_from_smooth_weights(const std::array<Integer, 3>& beta) {
  for (const auto& b : beta)
    if (b < 1) throw DomainError("blow-up weights must be positive");
  if (gcd(gcd(beta[0], beta[1]), beta[2]) != 1)
    throw DomainError("blow-up weights must have gcd 1");
  WeightedSurface s;
  s.kind_ = SurfaceKind::Wps;
  s.beta_.assign(beta.begin(), beta.end());
  s.d_ = {gcd(beta[1], beta[2]), gcd(beta[0], beta[2]), gcd(beta[0], beta[1])};
  s.a_ = {exact_div(beta[0], s.d_[1] * s.d_[2]), exact_div(beta[1], s.d_[0] * s.d_[2]),
          exact_div(beta[2], s.d_[0] * s.d_[1])};
  return s;
}

WeightedSurface odp_surface_from_weights(const std::array<Integer, 4>& beta) {
  for (const auto& b : beta)
    if (b < 1) throw DomainError("blow-up weights must be positive");
  if (beta[0] + beta[1] != beta[2] + beta[3])
    throw DomainError("constraint b1 + b2 = b3 + b4 violated");
  for (std::size_t skip = 0; skip < 4; ++skip) {
    Integer g = 0;
    for (std::size_t i = 0; i < 4; ++i)
      if (i != skip) g = gcd(g, beta[i]);
    if (g != 1)
      throw DomainError("constraint gcd of weights other than b" + std::to_string(skip + 1) +
                        " = 1 violated");
  }
  WeightedSurface s;
  s.kind_ = SurfaceKind::OdpQuadric;
  s.beta_.assign(beta.begin(), beta.end());
  // d_ij = gcd of the complementary pair
  s.d_ = {gcd(beta[1], beta[3]), gcd(beta[1], beta[2]), gcd(beta[0], beta[3]),
          gcd(beta[0], beta[2])};
  return s;
}

bool is_standard_coefficient(const Rational& c) {
  if (c < 0 || c >= 1) return false;
  // (k-1)/k  <=>  1 - c = 1/k
  const Rational rest = Rational(1) - c;
  return rest.get_num() == 1;
}

Rational pairing(const WeightedSurface& s, const Rational& m_a, const Rational& m_b) {
  const auto& b = s.blowup_weights();
  if (s.kind() == SurfaceKind::Wps) {
    if (!s.pairwise_coprime()) throw DomainError("pairing needs pairwise coprime weights");
    const auto& a = s.weights();
    return m_a * m_b / Rational(a[0] * a[1] * a[2]);
  }
  return m_a * m_b * Rational(b[0] + b[1]) / Rational(b[0] * b[1] * b[2] * b[3]);
}

Rational pairing(const WeightedSurface& s, const DivisorClass& a, const DivisorClass& b) {
  return pairing(s, Rational(a.degree), Rational(b.degree));
}

Rational log_degree(const WeightedSurface& s, const std::optional<DivisorClass>& gamma) {
  Rational deg = 0;
  if (s.kind() == SurfaceKind::Wps) {
    const auto& a = s.weights();
    const auto& d = s.multiplicities();
    for (std::size_t i = 0; i < 3; ++i) deg += -Rational(a[i]) + make_rational((d[i] - 1) * a[i], d[i]);
  } else {
    // (K_Z + S)|_S = O(-(b1 + b2)) in the ambient grading
    const auto& b = s.blowup_weights();
    deg = -Rational(b[0] + b[1]);
  }
  if (gamma) deg += Rational(gamma->degree);
  deg.canonicalize();
  return deg;
}

Rational blowup_log_discrepancy(const WeightedSurface& s) {
  const auto& b = s.blowup_weights();
  if (s.kind() == SurfaceKind::Wps) {
    LatticeVector ray(3);
    ray << b[0], b[1], b[2];
    return discrepancy(ConeGerm::smooth(), ray) + 1;
  }
  return discrepancy(ConeGerm::reference_odp(), odp_blowup_ray({b[0], b[1], b[2], b[3]})) + 1;
}

SmoothBlowup SmoothBlowup::type_a(const Integer& k, const Integer& a2, const Integer& a3,
                                  const Integer& d1) {
  if (k < 1 || a2 < 1 || a3 < 1 || d1 < 1) throw DomainError("type A parameters must be positive");
  if (gcd(a2, a3) != 1) throw DomainError("type A needs gcd(a2, a3) = 1");
  if (!divides(k, a2 + a3)) throw DomainError("type A needs k | a2 + a3");
  if (gcd(exact_div(a2 + a3, k), d1) != 1)
    throw DomainError("type A needs gcd((a2 + a3)/k, d1) = 1");
  SmoothBlowup f;
  f.kind = DuValKind::A;
  f.k = k;
  f.a2 = a2;
  f.a3 = a3;
  f.d1 = d1;
  return f;
}

SmoothBlowup SmoothBlowup::type_d(const Integer& n) {
  if (n < 4) throw DomainError("type D needs n >= 4");
  SmoothBlowup f;
  f.kind = DuValKind::D;
  f.n = n;
  return f;
}

SmoothBlowup SmoothBlowup::type_e(int n) {
  SmoothBlowup f;
  switch (n) {
    case 6: f.kind = DuValKind::E6; break;
    case 7: f.kind = DuValKind::E7; break;
    case 8: f.kind = DuValKind::E8; break;
    default: throw DomainError("type E needs n in {6, 7, 8}");
  }
  return f;
}

std::array<Integer, 3> SmoothBlowup::weights() const {
  switch (kind) {
    case DuValKind::A:
      return {exact_div(a2 + a3, k), a2 * d1, a3 * d1};
    case DuValKind::D:
      if (mod(n, 2) == 0) {
        const Integer h = (n - 2) / 2;
        return {2, 2 * h, 2 * h + 1};
      } else {
        const Integer h = (n - 1) / 2;
        return {2, 2 * h - 1, 2 * h};
      }
    case DuValKind::E6: return {3, 4, 6};
    case DuValKind::E7: return {4, 6, 9};
    case DuValKind::E8: return {6, 10, 15};
  }
  throw DomainError("unknown family");
}

std::array<Integer, 3> SmoothBlowup::expected_surface_weights() const {
  switch (kind) {
    case DuValKind::A:
      return {exact_div(a2 + a3, k), a2, a3};
    case DuValKind::D:
      if (mod(n, 2) == 0) {
        const Integer h = (n - 2) / 2;
        return {1, h, 2 * h + 1};
      } else {
        const Integer h = (n - 1) / 2;
        return {1, 2 * h - 1, h};
      }
    case DuValKind::E6: return {1, 2, 1};
    case DuValKind::E7: return {2, 1, 3};
    case DuValKind::E8: return {1, 1, 1};
  }
  throw DomainError("unknown family");
}

DivisorClass SmoothBlowup::gamma() const {
  switch (kind) {
    case DuValKind::A: return {a2 + a3};
    case DuValKind::D: return {n - 1};  // 2k+1 for D_{2k+2}, 2k for D_{2k+1}
    case DuValKind::E6: return {2};
    case DuValKind::E7: return {3};
    case DuValKind::E8: return {1};
  }
  throw DomainError("unknown family");
}

std::string SmoothBlowup::name() const {
  switch (kind) {
    case DuValKind::A:
      return "A(k=" + k.get_str() + ",a2=" + a2.get_str() + ",a3=" + a3.get_str() +
             ",d1=" + d1.get_str() + ")";
    case DuValKind::D: return "D" + n.get_str();
    case DuValKind::E6: return "E6";
    case DuValKind::E7: return "E7";
    case DuValKind::E8: return "E8";
  }
  return "?";
}

Rational minimal_section_sq(const SmoothBlowup& f, const Integer& alpha1, const Integer& alpha2) {
  require_alpha(alpha1, alpha2);
  const WeightedSurface s = surface_from_smooth_weights(f.weights());
  const DivisorClass gamma = f.gamma();
  const Rational kd_gamma = pairing(s, log_degree(s), Rational(gamma.degree));
  Rational out = Rational(alpha2) * kd_gamma / blowup_log_discrepancy(s) -
                 Rational(alpha1) * pairing(s, gamma, gamma);
  out.canonicalize();
  return out;
}

Rational minimal_section_sq_closed_form(const SmoothBlowup& f, const Integer& alpha1,
                                        const Integer& alpha2) {
  require_alpha(alpha1, alpha2);
  const Rational a1(alpha1), a2(alpha2);
  Rational out;
  switch (f.kind) {
    case DuValKind::A: {
      const Rational denom(f.a2 * f.a3);
      out = -(a2 * make_rational(f.k, f.d1) / denom + a1 * Rational(f.k * (f.a2 + f.a3)) / denom);
      break;
    }
    case DuValKind::D: {
      const Rational n2(f.n - 2);
      out = -(a2 / n2 + a1 * Rational(2 * f.n - 2) / n2);
      break;
    }
    case DuValKind::E6: out = -(a2 * make_rational(1, 6) + a1 * 2); break;
    case DuValKind::E7: out = -(a2 * make_rational(1, 12) + a1 * make_rational(3, 2)); break;
    case DuValKind::E8: out = -(a2 * make_rational(1, 30) + a1); break;
  }
  out.canonicalize();
  return out;
}

Rational odp_minimal_section_sq_general(const std::array<Integer, 4>& beta, const Integer& alpha1,
                                        const Integer& alpha2) {
  require_alpha(alpha1, alpha2);
  const WeightedSurface s = odp_surface_from_weights(beta);
  const DivisorClass gamma{beta[1]};
  const Rational kd_gamma = pairing(s, log_degree(s), Rational(gamma.degree));
  Rational out = Rational(alpha2) * kd_gamma / blowup_log_discrepancy(s) -
                 Rational(alpha1) * pairing(s, gamma, gamma);
  out.canonicalize();
  return out;
}

Rational odp_minimal_section_sq(const std::array<Integer, 4>& beta, const Integer& alpha1,
                                const Integer& alpha2) {
  require_alpha(alpha1, alpha2);
  odp_surface_from_weights(beta);
  const Rational tail = make_rational(1, beta[2]) + make_rational(1, beta[3]);
  Rational out = -Rational(alpha2) * make_rational(1, beta[0]) * tail -
                 Rational(alpha1) * make_rational(beta[1], beta[0]) * tail;
  out.canonicalize();
  return out;
}

}  // namespace toric_plt
