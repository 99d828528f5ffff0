#include "toric_plt/singularity_classifier.hpp"

#include <algorithm>
#include <array>
#include <optional>

namespace toric_plt {

namespace {

LatticeMatrix columns(const std::vector<LatticeVector>& gens) {
  LatticeMatrix g(3, static_cast<Eigen::Index>(gens.size()));
  for (std::size_t j = 0; j < gens.size(); ++j) g.col(static_cast<Eigen::Index>(j)) = gens[j];
  return g;
}

// Integral unimodular W with W * from_j = to_j, if one exists.
std::optional<LatticeMatrix> lattice_map(const std::vector<LatticeVector>& from,
                                         const std::vector<LatticeVector>& to) {
  const LatticeMatrix f = columns(from);
  const LatticeMatrix t = columns(to);
  const Integer det = determinant(f);
  if (det == 0 || abs(det) != abs(determinant(t))) return std::nullopt;
  const LatticeMatrix scaled = t * adjugate(f);  // det * W
  LatticeMatrix w(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (!divides(det, scaled(i, j))) return std::nullopt;
      w(i, j) = exact_div(scaled(i, j), det);
    }
  if (!is_unimodular(w)) return std::nullopt;
  return w;
}

Integer inverse_mod(const Integer& a, const Integer& m) {
  Integer inv;
  if (mpz_invert(inv.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0)
    throw DomainError("not a unit");
  return mod(inv, m);
}

}  // namespace

std::string TerminalToricType::to_string() const {
  switch (kind) {
    case TerminalKind::Smooth:
      return "Smooth";
    case TerminalKind::CyclicQuotient:
      return "CyclicQuotient(" + r.get_str() + "," + q.get_str() + ")";
    case TerminalKind::OrdinaryDoublePoint:
      return "OrdinaryDoublePoint";
  }
  return "?";
}

TerminalToricType smooth_type() { return {}; }

TerminalToricType cyclic_quotient_type(const Integer& r, const Integer& q) {
  if (r < 2) throw DomainError("cyclic quotient needs r >= 2");
  if (gcd(q, r) != 1) throw DomainError("cyclic quotient needs gcd(q, r) = 1");
  TerminalToricType t;
  t.kind = TerminalKind::CyclicQuotient;
  t.r = r;
  const Integer reduced = mod(q, r);
  t.q = std::min(reduced, Integer(r - reduced));
  return t;
}

TerminalToricType odp_type() {
  TerminalToricType t;
  t.kind = TerminalKind::OrdinaryDoublePoint;
  return t;
}

ConeGerm reference_cone(const TerminalToricType& t) {
  switch (t.kind) {
    case TerminalKind::Smooth:
      return ConeGerm::smooth();
    case TerminalKind::CyclicQuotient: {
      LatticeVector e3(3);
      e3 << Integer(1), t.q, t.r;
      return ConeGerm::simplicial(lattice_vector({1, 0, 0}), lattice_vector({0, 1, 0}), e3);
    }
    case TerminalKind::OrdinaryDoublePoint:
      return ConeGerm::reference_odp();
  }
  throw DomainError("unknown terminal kind");
}

NotTerminalError::NotTerminalError(CyclicQuotientType type, TerminalityVerdict verdict)
    : DomainError("germ is not terminal: " + type.to_string() + " fails Reid-Tai (" +
                  toric_plt::to_string(verdict.reason) + ", j = " +
                  (verdict.witness ? verdict.witness->get_str() : std::string("-")) + ")"),
      type_(std::move(type)),
      verdict_(std::move(verdict)) {}

TerminalToricType classify_germ(const ConeGerm& c) {
  const auto& gens = c.generators();

  if (c.kind() == ConeKind::OdpSquare) {
    const auto ref = ConeGerm::reference_odp().generators();
    // gens[0] + gens[1] = gens[2] + gens[3]; try every labelling that keeps
    // opposite pairs opposite.
    const std::array<std::array<std::size_t, 4>, 8> labellings{{{0, 1, 2, 3},
                                                                {1, 0, 2, 3},
                                                                {0, 1, 3, 2},
                                                                {1, 0, 3, 2},
                                                                {2, 3, 0, 1},
                                                                {3, 2, 0, 1},
                                                                {2, 3, 1, 0},
                                                                {3, 2, 1, 0}}};
    for (const auto& l : labellings) {
      auto w = lattice_map({gens[l[0]], gens[l[2]], gens[l[3]]}, {ref[0], ref[2], ref[3]});
      if (!w) continue;
      TerminalToricType t = odp_type();
      t.witness = *w;
      return t;
    }
    throw DomainError("square cone is not the ordinary double point (index > 1)");
  }

  const CyclicQuotientType quotient = cone_quotient_type(c);
  const TerminalityVerdict verdict = reid_tai(quotient);
  if (!verdict.terminal) throw NotTerminalError(quotient, verdict);

  if (quotient.is_smooth()) {
    TerminalToricType t = smooth_type();
    t.witness = unimodular_inverse(columns(gens));
    return t;
  }

  const Integer& r = quotient.order();
  const auto& w = quotient.weights();
  std::optional<Integer> best;
  std::array<std::size_t, 3> perm{0, 1, 2};
  do {
    // reference weights in generator order are (-1, -q, 1)
    const Integer& w1 = w[perm[0]];
    if (gcd(w1, r) != 1) continue;
    const Integer u = mod(-inverse_mod(w1, r), r);
    if (mod(u * w[perm[2]], r) != 1) continue;
    const Integer q = mod(-u * w[perm[1]], r);
    const Integer normal = std::min(q, Integer(r - q));
    if (!best || normal < *best) best = normal;
  } while (std::next_permutation(perm.begin(), perm.end()));

  if (!best) throw DomainError("terminal quotient without a (1,-1,q) normal form");
  TerminalToricType t = cyclic_quotient_type(r, *best);
  const auto ref = reference_cone(t).generators();
  perm = {0, 1, 2};
  do {
    if (auto map = lattice_map({gens[perm[0]], gens[perm[1]], gens[perm[2]]}, ref)) {
      t.witness = *map;
      return t;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  throw DomainError("no unimodular witness found for the cyclic quotient normal form");
}

std::vector<TerminalOrder> enumerate_terminal_orders(const std::vector<Integer>& weights,
                                                     const Integer& r_max) {
  if (weights.size() != 3) throw DomainError("three weights required");
  for (const auto& b : weights)
    if (b < 1) throw DomainError("weights must be positive");
  if (r_max < 1) throw DomainError("r_max must be positive");
  std::vector<TerminalOrder> out;
  for (Integer r = 1; r <= r_max; ++r) {
    const CyclicQuotientType action(r, weights);
    if (reid_tai_is_terminal(action)) out.push_back({r, action.canonical()});
  }
  return out;
}

}  // namespace toric_plt
