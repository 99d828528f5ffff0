#include "toric_plt/plt_families.hpp"

namespace toric_plt {

namespace {

LatticeVector vec3(const Integer& x, const Integer& y, const Integer& z) {
  LatticeVector v(3);
  v << x, y, z;
  return v;
}

LatticeVector unit(int i) {
  LatticeVector v = LatticeVector::Zero(3);
  v(i) = 1;
  return v;
}

LatticeVector cross(const LatticeVector& a, const LatticeVector& b) {
  return vec3(a(1) * b(2) - a(2) * b(1), a(2) * b(0) - a(0) * b(2), a(0) * b(1) - a(1) * b(0));
}

// u with <n, u> = 1 for the primitive normal n of the plane spanned by a, c:
// together with the saturated plane lattice it generates Z^3.
LatticeVector plane_complement(const LatticeVector& a, const LatticeVector& c) {
  const LatticeVector n = primitive_part(cross(a, c));
  const LatticeMatrix inv = unimodular_inverse(complete_to_basis(n));
  return inv.row(0).transpose();
}

void require_positive(const Integer& x, const char* name) {
  if (x < 1) throw DomainError(std::string(name) + " must be positive");
}

// One fiber of the conic bundle in toric coordinates: the blow-up ray v of
// S, the ray g whose orbit with v is the curve Gamma locally, and the ray s
// on the other side of the fiber.
struct FiberChart {
  std::string id;
  LatticeVector v, g, s;
  std::optional<LatticeMatrix> to_vertex_basis;  // quotient ambient: s -> e1, g -> e2
};

struct Claim {
  CyclicQuotientType on_section;
  CyclicQuotientType other;
  Integer k;
};

std::vector<FiberChart> smooth_charts(const FamilySpec& spec) {
  const auto b = spec.weights();
  const LatticeVector v = vec3(b[0], b[1], b[2]);
  const auto vertex = [&](const char* id, int g, int s) {
    return FiberChart{id, v, unit(g), unit(s), std::nullopt};
  };
  // generic point of the curve {x_s = 0} on S, which carries a quotient
  const auto curve = [&](const char* id, int s) {
    return FiberChart{id, v, plane_complement(v, unit(s)), unit(s), std::nullopt};
  };
  switch (spec.kind) {
    case FamilyKind::A:
      return {vertex("f1", 2, 0), vertex("f2", 1, 0)};
    case FamilyKind::DEven:
      return {vertex("f1", 0, 2), curve("f2", 2), curve("f3", 2)};
    case FamilyKind::DOdd:
      return {vertex("f1", 0, 2), curve("f2", 1), curve("f3", 1)};
    case FamilyKind::E6:
      return {curve("f1", 0), curve("f2", 1), curve("f3", 1)};
    case FamilyKind::E7:
      return {vertex("f1", 1, 2), curve("f2", 2), curve("f3", 0)};
    case FamilyKind::E8:
      return {curve("f1", 0), curve("f2", 2), curve("f3", 1)};
    case FamilyKind::Odp: {
      const auto ref = ConeGerm::reference_odp().generators();
      const LatticeVector w = odp_blowup_ray({b[0], b[1], b[2], b[3]});
      // f1 over the point where only x3 survives, f2 where only x4 survives
      return {FiberChart{"f1", w, ref[2], ref[1], std::nullopt},
              FiberChart{"f2", w, ref[0], ref[3], std::nullopt}};
    }
  }
  throw DomainError("unknown family");
}

// Type A over 1/r: N = Z^3 with the cone <e1, e2, e3 = (1, q, r)>, and the
// blow-up ray b = (b1 e1 + b2 e2 + b3 e3)/r.
struct QuotientModel {
  Integer r, q;
  LatticeVector e1, e2, e3, b;
};

QuotientModel quotient_model(const FamilySpec& spec) {
  const auto w = spec.weights();
  const Integer& r = spec.ambient.r;
  QuotientModel m;
  m.r = r;
  Integer inv;
  mpz_invert(inv.get_mpz_t(), w[2].get_mpz_t(), r.get_mpz_t());
  m.q = mod(-w[1] * inv, r);
  m.e1 = unit(0);
  m.e2 = unit(1);
  m.e3 = vec3(1, m.q, r);
  const LatticeVector sum = w[0] * m.e1 + w[1] * m.e2 + w[2] * m.e3;
  m.b = vec3(exact_div(sum(0), r), exact_div(sum(1), r), exact_div(sum(2), r));
  return m;
}

std::vector<FiberChart> quotient_charts(const FamilySpec& spec) {
  const QuotientModel m = quotient_model(spec);
  // P2 = V(e1, e3, b) is brought to the standard vertex by M
  return {FiberChart{"f1", m.b, m.e3, m.e1, cyclic_chart_change_of_basis(m.q, m.r)},
          FiberChart{"f2", m.b, m.e2, m.e1, LatticeMatrix::Identity(3, 3)}};
}

std::vector<FiberChart> charts(const FamilySpec& spec) {
  if (spec.ambient.kind == TerminalKind::CyclicQuotient) return quotient_charts(spec);
  return smooth_charts(spec);
}

LatticeVector new_ray(const FamilySpec& spec, const FiberChart& c) {
  return spec.alpha2 * c.g + spec.alpha1 * c.v;
}

Claim paired(const Integer& order, const Integer& fiber_weight, const Integer& section_weight,
             const Integer& k) {
  return {CyclicQuotientType(order, {fiber_weight, -section_weight}),
          CyclicQuotientType(order, {fiber_weight, section_weight}), k};
}

// The displayed data of each diagram.
std::vector<Claim> diagram_claims(const FamilySpec& spec) {
  const Integer& al1 = spec.alpha1;
  const Integer& al2 = spec.alpha2;
  const auto gcd_claim = [&](const Integer& order, const Integer& fiber_weight,
                             const Integer& numerator) {
    const Integer k = gcd(order, numerator);
    return paired(exact_div(order, k), fiber_weight, exact_div(numerator, k), k);
  };
  switch (spec.kind) {
    case FamilyKind::A: {
      const Integer l = exact_div(spec.a2 + spec.a3, spec.k);
      return {gcd_claim(spec.a2 * spec.d1, l, al1 * spec.a3 * spec.d1 + al2),
              gcd_claim(spec.a3 * spec.d1, l, al1 * spec.a2 * spec.d1 + al2)};
    }
    case FamilyKind::DEven:
    case FamilyKind::DOdd: {
      const Claim c2 = gcd_claim(2, 1, al2);
      return {gcd_claim(spec.n() - 2, 1, 2 * al1 + al2), c2, c2};
    }
    case FamilyKind::E6: {
      const Claim c2 = gcd_claim(3, 1, al2);
      return {gcd_claim(2, 1, al2), c2, c2};
    }
    case FamilyKind::E7:
      return {gcd_claim(4, 1, 2 * al1 + al2), gcd_claim(2, 1, al2), gcd_claim(3, 1, al2)};
    case FamilyKind::E8:
      return {gcd_claim(5, 1, al2), gcd_claim(2, 1, al2), gcd_claim(3, 1, al2)};
    case FamilyKind::Odp: {
      const auto b = spec.weights();
      const Integer num = al1 * b[1] + al2;
      return {gcd_claim(b[2], b[0], num), gcd_claim(b[3], b[0], num)};
    }
  }
  throw DomainError("unknown family");
}

std::vector<Claim> quotient_claims(const FamilySpec& spec) {
  std::vector<Claim> out;
  for (const auto& c : quotient_charts(spec)) {
    const LatticeVector t = *c.to_vertex_basis * new_ray(spec, c);
    const VertexFormula f = vertex_formula(t);
    out.push_back({f.on_section, f.other, f.fiber_multiplicity});
  }
  return out;
}

std::vector<Claim> claims(const FamilySpec& spec) {
  if (spec.ambient.kind == TerminalKind::CyclicQuotient) return quotient_claims(spec);
  return diagram_claims(spec);
}

// 1/alpha1(-alpha2, 1) x A^1, weights in the order (g, new ray)
CyclicQuotientType e0_transversal_claim(const FamilySpec& spec) {
  return CyclicQuotientType(spec.alpha1, {-spec.alpha2, 1});
}

}  // namespace

std::string to_string(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::A: return "A";
    case FamilyKind::DEven: return "D_even";
    case FamilyKind::DOdd: return "D_odd";
    case FamilyKind::E6: return "E6";
    case FamilyKind::E7: return "E7";
    case FamilyKind::E8: return "E8";
    case FamilyKind::Odp: return "ODP";
  }
  return "?";
}

FamilySpec FamilySpec::type_a(const Integer& k, const Integer& a2, const Integer& a3,
                              const Integer& d1, const Integer& alpha1, const Integer& alpha2) {
  FamilySpec s;
  s.kind = FamilyKind::A;
  s.k = k;
  s.a2 = a2;
  s.a3 = a3;
  s.d1 = d1;
  s.alpha1 = alpha1;
  s.alpha2 = alpha2;
  s.validate();
  return s;
}

FamilySpec FamilySpec::type_d_even(const Integer& k, const Integer& alpha1,
                                   const Integer& alpha2) {
  FamilySpec s;
  s.kind = FamilyKind::DEven;
  s.k = k;
  s.alpha1 = alpha1;
  s.alpha2 = alpha2;
  s.validate();
  return s;
}

FamilySpec FamilySpec::type_d_odd(const Integer& k, const Integer& alpha1, const Integer& alpha2) {
  FamilySpec s;
  s.kind = FamilyKind::DOdd;
  s.k = k;
  s.alpha1 = alpha1;
  s.alpha2 = alpha2;
  s.validate();
  return s;
}

FamilySpec FamilySpec::type_e(int n, const Integer& alpha1, const Integer& alpha2) {
  FamilySpec s;
  switch (n) {
    case 6: s.kind = FamilyKind::E6; break;
    case 7: s.kind = FamilyKind::E7; break;
    case 8: s.kind = FamilyKind::E8; break;
    default: throw DomainError("type E needs n in {6, 7, 8}");
  }
  s.alpha1 = alpha1;
  s.alpha2 = alpha2;
  s.validate();
  return s;
}

FamilySpec FamilySpec::type_odp(const Integer& a1, const Integer& k, const Integer& d13,
                                const Integer& d14, const Integer& a3, const Integer& a4,
                                const Integer& alpha1, const Integer& alpha2) {
  FamilySpec s;
  s.kind = FamilyKind::Odp;
  s.a1 = a1;
  s.k = k;
  s.d13 = d13;
  s.d14 = d14;
  s.a3 = a3;
  s.a4 = a4;
  s.alpha1 = alpha1;
  s.alpha2 = alpha2;
  s.ambient = odp_type();
  s.validate();
  return s;
}

FamilySpec FamilySpec::over_quotient(const Integer& r) const {
  if (kind != FamilyKind::A) throw DomainError("a quotient ambient is supported for type A only");
  FamilySpec s = *this;
  if (r == 1) {
    s.ambient = smooth_type();
    return s;
  }
  if (r < 2) throw DomainError("quotient order must be positive");
  const auto w = weights();
  if (gcd(w[1], r) != 1 || gcd(w[2], r) != 1)
    throw DomainError("constraint b2, b3 units mod r violated");
  if (!divides(r, w[0] + w[2])) throw DomainError("constraint b1 + b3 = 0 mod r violated");
  s.ambient.kind = TerminalKind::CyclicQuotient;
  s.ambient.r = r;
  s.ambient.q = 1;
  const QuotientModel m = quotient_model(s);
  s.ambient = classify_germ(ConeGerm::simplicial(m.e1, m.e2, m.e3));
  s.validate();
  return s;
}

void FamilySpec::validate() const {
  require_positive(alpha1, "alpha1");
  require_positive(alpha2, "alpha2");
  if (gcd(alpha1, alpha2) != 1) throw DomainError("constraint gcd(alpha1, alpha2) = 1 violated");
  switch (kind) {
    case FamilyKind::A:
      SmoothBlowup::type_a(k, a2, a3, d1);
      break;
    case FamilyKind::DEven:
      if (k < 1) throw DomainError("constraint k >= 1 for D_{2k+2} violated");
      break;
    case FamilyKind::DOdd:
      if (k < 2) throw DomainError("constraint k >= 2 for D_{2k+1} violated");
      break;
    case FamilyKind::E6:
    case FamilyKind::E7:
    case FamilyKind::E8:
      break;
    case FamilyKind::Odp: {
      for (const auto* x : {&a1, &k, &d13, &d14, &a3, &a4}) require_positive(*x, "ODP parameters");
      if (k * d13 * d14 < 2)
        throw DomainError("constraint k d13 d14 >= 2 violated (the curve would be toric)");
      const auto b = weights();
      odp_surface_from_weights({b[0], b[1], b[2], b[3]});
      break;
    }
  }
  if (kind == FamilyKind::Odp) {
    if (ambient.kind != TerminalKind::OrdinaryDoublePoint)
      throw DomainError("ODP family needs the ordinary double point ambient");
  } else if (ambient.kind == TerminalKind::OrdinaryDoublePoint) {
    throw DomainError("only the ODP family lives over the ordinary double point");
  } else if (ambient.kind == TerminalKind::CyclicQuotient) {
    if (kind != FamilyKind::A) throw DomainError("a quotient ambient is supported for type A only");
    const auto w = weights();
    const Integer& r = ambient.r;
    if (gcd(w[1], r) != 1 || gcd(w[2], r) != 1)
      throw DomainError("constraint b2, b3 units mod r violated");
    if (!divides(r, w[0] + w[2])) throw DomainError("constraint b1 + b3 = 0 mod r violated");
  }
}

std::vector<Integer> FamilySpec::weights() const {
  switch (kind) {
    case FamilyKind::A: {
      const auto w = SmoothBlowup::type_a(k, a2, a3, d1).weights();
      return {w.begin(), w.end()};
    }
    case FamilyKind::DEven:
      return {2, 2 * k, 2 * k + 1};
    case FamilyKind::DOdd:
      return {2, 2 * k - 1, 2 * k};
    case FamilyKind::E6: return {3, 4, 6};
    case FamilyKind::E7: return {4, 6, 9};
    case FamilyKind::E8: return {6, 10, 15};
    case FamilyKind::Odp:
      return {a1, a1 * k * d13 * d14, a3 * d14, a4 * d13};
  }
  throw DomainError("unknown family");
}

Integer FamilySpec::n() const {
  if (kind == FamilyKind::DEven) return 2 * k + 2;
  if (kind == FamilyKind::DOdd) return 2 * k + 1;
  throw DomainError("n is defined for type D only");
}

std::string FamilySpec::name() const {
  std::string s;
  switch (kind) {
    case FamilyKind::A:
      s = "A k=" + k.get_str() + " a2=" + a2.get_str() + " a3=" + a3.get_str() +
          " d1=" + d1.get_str();
      break;
    case FamilyKind::DEven:
    case FamilyKind::DOdd:
      s = "D" + n().get_str();
      break;
    case FamilyKind::Odp:
      s = "ODP a1=" + a1.get_str() + " k=" + k.get_str() + " d13=" + d13.get_str() +
          " d14=" + d14.get_str() + " a3=" + a3.get_str() + " a4=" + a4.get_str();
      break;
    default:
      s = to_string(kind);
  }
  s += " alpha=" + alpha1.get_str() + "," + alpha2.get_str();
  if (ambient.kind == TerminalKind::CyclicQuotient) s += " r=" + ambient.r.get_str();
  return s;
}

VertexFormula vertex_formula(const LatticeVector& t) {
  const Integer h1 = gcd(t(1), t(2));
  const Integer h2 = gcd(t(0), t(2));
  if (h1 == 0 || h2 == 0) throw DomainError("vertex formula needs t off the coordinate planes");
  const Integer order = exact_div(abs(t(2)), h1 * h2);
  const Integer g1 = exact_div(t(0), h2);
  const Integer g2 = exact_div(t(1), h1);
  return {CyclicQuotientType(order, {g1, g2}), CyclicQuotientType(order, {g1, -g2}), h1, h2};
}

ConicBundleDescription build_family(const FamilySpec& spec) {
  spec.validate();
  ConicBundleDescription d;
  d.spec = spec;
  const auto cs = charts(spec);
  const auto cl = claims(spec);
  for (std::size_t i = 0; i < cs.size(); ++i)
    d.fibers.push_back({cs[i].id, cl[i].on_section, cl[i].other, cl[i].k,
                        make_rational(cl[i].k - 1, cl[i].k)});

  const auto w = spec.weights();
  if (spec.kind == FamilyKind::Odp) {
    d.section_self_intersection =
        odp_minimal_section_sq({w[0], w[1], w[2], w[3]}, spec.alpha1, spec.alpha2);
  } else {
    SmoothBlowup f;
    switch (spec.kind) {
      case FamilyKind::A: f = SmoothBlowup::type_a(spec.k, spec.a2, spec.a3, spec.d1); break;
      case FamilyKind::DEven:
      case FamilyKind::DOdd: f = SmoothBlowup::type_d(spec.n()); break;
      case FamilyKind::E6: f = SmoothBlowup::type_e(6); break;
      case FamilyKind::E7: f = SmoothBlowup::type_e(7); break;
      default: f = SmoothBlowup::type_e(8); break;
    }
    d.section_self_intersection = minimal_section_sq(f, spec.alpha1, spec.alpha2);
  }
  d.section_on_cover = spec.ambient.kind == TerminalKind::CyclicQuotient;
  d.transversal = e0_transversal_claim(spec);
  d.e0_coefficient = make_rational(spec.alpha1 - 1, spec.alpha1);
  d.toric_log_surface = diff_e_is_toric(spec);
  return d;
}

ChartReport verify_fiber_charts(const FamilySpec& spec) {
  const ConicBundleDescription d = build_family(spec);
  ChartReport report;
  const auto note = [&](const std::string& where, const std::string& claimed,
                        const std::string& computed) {
    report.ok = false;
    report.mismatches.push_back({where, claimed, computed});
  };
  const auto cs = charts(spec);
  for (std::size_t i = 0; i < cs.size(); ++i) {
    const FiberChart& c = cs[i];
    const FiberData& f = d.fibers[i];
    const LatticeVector e4 = new_ray(spec, c);
    if (c.to_vertex_basis) report.vertex_basis_dets.push_back(determinant(*c.to_vertex_basis));
    const CyclicQuotientType on_section = surface_point_type(e4, c.s, c.v);
    const CyclicQuotientType other = surface_point_type(e4, c.s, c.g);
    const Integer k = transversal_type(e4, c.s).order();
    report.charts_checked += 2;
    if (!equivalent_ordered(on_section, f.on_section))
      note(c.id + " on_section", f.on_section.to_string(), on_section.to_string());
    if (!equivalent_ordered(other, f.other))
      note(c.id + " other", f.other.to_string(), other.to_string());
    if (k != f.k) note(c.id + " multiplicity", f.k.get_str(), k.get_str());
    const CyclicQuotientType flipped(other.order(), {other.weights()[0], -other.weights()[1]});
    if (!equivalent_ordered(flipped, on_section))
      note(c.id + " pairing", other.to_string(), on_section.to_string());
  }
  // along E0, away from the fibers
  const FiberChart& c = cs.front();
  const CyclicQuotientType along = transversal_type(c.g, new_ray(spec, c));
  if (!equivalent_ordered(along, d.transversal))
    note("E0 transversal", d.transversal.to_string(), along.to_string());
  return report;
}

BoundaryDivisor diff_e(const FamilySpec& spec) {
  const ConicBundleDescription d = build_family(spec);
  BoundaryDivisor out;
  for (const auto& f : d.fibers) out.push_back({f.id, f.coefficient});
  out.push_back({"E0", d.e0_coefficient});
  return out;
}

bool diff_e_is_toric(const FamilySpec& spec) {
  return spec.kind == FamilyKind::A || spec.kind == FamilyKind::Odp;
}

bool klt_check(const ConicBundleDescription& desc) {
  const auto valid = [](const CyclicQuotientType& q) {
    if (q.order() < 1) throw DomainError("quotient order must be positive");
    if (q.dimension() != 2) return false;
    return q.is_smooth() || q.is_isolated();
  };
  for (const auto& f : desc.fibers) {
    if (f.coefficient < 0 || f.coefficient >= 1 || !is_standard_coefficient(f.coefficient))
      return false;
    if (!valid(f.on_section) || !valid(f.other)) return false;
  }
  if (desc.e0_coefficient < 0 || desc.e0_coefficient >= 1) return false;
  return valid(desc.transversal);
}

}  // namespace toric_plt
