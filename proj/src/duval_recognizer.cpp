#include "toric_plt/duval_recognizer.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace toric_plt {

namespace {

using Vec3 = std::array<Integer, 3>;

Integer dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Vec3 sub(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }

Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

Integer total(const Exponent& l) { return l[0] + l[1] + l[2]; }

std::string monomial_string(const Exponent& l) {
  std::string s;
  for (int i = 0; i < 3; ++i) {
    if (l[static_cast<std::size_t>(i)] == 0) continue;
    if (!s.empty()) s += ' ';
    s += "x" + std::to_string(i + 1);
    if (l[static_cast<std::size_t>(i)] != 1) s += "^" + l[static_cast<std::size_t>(i)].get_str();
  }
  return s.empty() ? "1" : s;
}

std::optional<std::array<int, 3>> find_order(const Vec3& beta, const Vec3& w) {
  std::array<int, 3> p{0, 1, 2};
  do {
    if (beta[static_cast<std::size_t>(p[0])] == w[0] &&
        beta[static_cast<std::size_t>(p[1])] == w[1] &&
        beta[static_cast<std::size_t>(p[2])] == w[2])
      return p;
  } while (std::next_permutation(p.begin(), p.end()));
  return std::nullopt;
}

// Variables in a subset are given by a bit mask.
bool supported_in(const Exponent& l, int mask) {
  for (int i = 0; i < 3; ++i)
    if (l[static_cast<std::size_t>(i)] != 0 && !(mask & (1 << i))) return false;
  return true;
}

// A generic polynomial with this support has an isolated critical point at
// the origin iff for every nonempty set I of variables there is a monomial
// in the variables of I alone, or |I| monomials x_I^a x_j with distinct
// j outside I.
bool generic_isolated(const MonomialSupport& s) {
  for (int mask = 1; mask < 8; ++mask) {
    bool pure = false;
    std::set<int> outside;
    for (const auto& l : s.monomials()) {
      if (total(l) == 0) continue;
      if (supported_in(l, mask)) {
        pure = true;
        break;
      }
      for (int j = 0; j < 3; ++j) {
        if (mask & (1 << j) || l[static_cast<std::size_t>(j)] != 1) continue;
        Exponent rest = l;
        rest[static_cast<std::size_t>(j)] = 0;
        if (total(rest) > 0 && supported_in(rest, mask)) outside.insert(j);
      }
    }
    const int size = __builtin_popcount(static_cast<unsigned>(mask));
    if (!pure && static_cast<int>(outside.size()) < size) return false;
  }
  return true;
}

// Rank of the Hessian at 0 of a polynomial with this support and random
// coefficients; the seed is fixed so the answer is reproducible.
int generic_hessian_rank(const MonomialSupport& s) {
  std::mt19937_64 rng(0x5eed);
  std::uniform_int_distribution<long> coef(1, 1L << 40);
  int best = 0;
  for (int trial = 0; trial < 3; ++trial) {
    MatrixX<Integer> h = MatrixX<Integer>::Zero(3, 3);
    for (const auto& l : s.monomials()) {
      if (total(l) != 2) continue;
      const Integer c = coef(rng);
      std::vector<int> vars;
      for (int i = 0; i < 3; ++i)
        for (int e = 0; e < l[static_cast<std::size_t>(i)]; ++e) vars.push_back(i);
      if (vars[0] == vars[1]) {
        h(vars[0], vars[0]) += 2 * c;
      } else {
        h(vars[0], vars[1]) += c;
        h(vars[1], vars[0]) += c;
      }
    }
    int rank = 0;
    const Integer det = h(0, 0) * (h(1, 1) * h(2, 2) - h(1, 2) * h(2, 1)) -
                        h(0, 1) * (h(1, 0) * h(2, 2) - h(1, 2) * h(2, 0)) +
                        h(0, 2) * (h(1, 0) * h(2, 1) - h(1, 1) * h(2, 0));
    if (det != 0) {
      rank = 3;
    } else {
      for (int i = 0; i < 3 && rank < 2; ++i)
        for (int j = i + 1; j < 3 && rank < 2; ++j)
          for (int a = 0; a < 3 && rank < 2; ++a)
            for (int b = a + 1; b < 3 && rank < 2; ++b)
              if (h(i, a) * h(j, b) - h(i, b) * h(j, a) != 0) rank = 2;
      if (rank == 0 && !h.isZero()) rank = 1;
    }
    best = std::max(best, rank);
  }
  return best;
}

}  // namespace

MonomialSupport::MonomialSupport(std::vector<Exponent> monomials) : monomials_(std::move(monomials)) {
  if (monomials_.empty()) throw DomainError("monomial support is empty");
  std::set<Exponent> seen;
  for (const auto& l : monomials_) {
    for (const auto& e : l)
      if (e < 0) throw DomainError("negative exponent in " + monomial_string(l));
    if (!seen.insert(l).second) throw DomainError("repeated monomial " + monomial_string(l));
  }
}

bool MonomialSupport::operator==(const MonomialSupport& other) const {
  return std::set<Exponent>(monomials_.begin(), monomials_.end()) ==
         std::set<Exponent>(other.monomials_.begin(), other.monomials_.end());
}

std::string MonomialSupport::to_string() const {
  std::string s;
  for (const auto& l : monomials_) {
    if (!s.empty()) s += " + ";
    s += monomial_string(l);
  }
  return s;
}

DuValType DuValType::a(const Integer& n) {
  if (n < 1) throw DomainError("A_n needs n >= 1");
  return {DuValKind::A, n};
}

DuValType DuValType::d(const Integer& n) {
  if (n < 4) throw DomainError("D_n needs n >= 4");
  return {DuValKind::D, n};
}

DuValType DuValType::e(int n) {
  switch (n) {
    case 6: return {DuValKind::E6, 6};
    case 7: return {DuValKind::E7, 7};
    case 8: return {DuValKind::E8, 8};
    default: throw DomainError("E_n needs n in {6, 7, 8}");
  }
}

std::string DuValType::to_string() const {
  switch (kind) {
    case DuValKind::A: return "A" + n.get_str();
    case DuValKind::D: return "D" + n.get_str();
    default: return "E" + n.get_str();
  }
}

MonomialSupport lift_curve(const MonomialSupport& support, const std::array<Integer, 3>& d) {
  for (const auto& di : d)
    if (di < 1) throw DomainError("lift multiplicities must be positive");
  std::vector<Exponent> out;
  out.reserve(support.size());
  for (const auto& l : support.monomials()) out.push_back({d[0] * l[0], d[1] * l[1], d[2] * l[2]});
  return MonomialSupport(std::move(out));
}

MonomialSupport curve_support(const std::array<Integer, 3>& a, const Integer& m) {
  for (const auto& ai : a)
    if (ai < 1) throw DomainError("weights must be positive");
  if (m < 0) throw DomainError("degree must be nonnegative");
  std::vector<Exponent> out;
  for (Integer l1 = 0; a[0] * l1 <= m; ++l1)
    for (Integer l2 = 0; a[0] * l1 + a[1] * l2 <= m; ++l2) {
      const Integer rest = m - a[0] * l1 - a[1] * l2;
      if (divides(a[2], rest)) out.push_back({l1, l2, exact_div(rest, a[2])});
    }
  if (out.empty())
    throw DomainError("no monomial of degree " + m.get_str() + " on the weighted plane");
  return MonomialSupport(std::move(out));
}

MonomialSupport family_equation(const SmoothBlowup& f) {
  const auto s = surface_from_smooth_weights(f.weights());
  const auto& a = s.weights();
  const auto& d = s.multiplicities();
  return lift_curve(curve_support({a[0], a[1], a[2]}, f.gamma().degree), {d[0], d[1], d[2]});
}

std::optional<WeightFamilyMatch> recognize_weight_family(const std::array<Integer, 3>& beta) {
  for (const auto& b : beta)
    if (b < 1) return std::nullopt;
  if (gcd(gcd(beta[0], beta[1]), beta[2]) != 1) return std::nullopt;

  for (int n : {6, 7, 8}) {
    const auto f = SmoothBlowup::type_e(n);
    if (auto order = find_order(beta, f.weights())) return WeightFamilyMatch{f, *order, DuValType::e(n)};
  }

  Vec3 sorted = beta;
  std::sort(sorted.begin(), sorted.end());
  // (2, 2k, 2k+1) or (2, 2k-1, 2k) with k >= 2
  if (sorted[0] == 2 && sorted[2] == sorted[1] + 1 && sorted[1] >= 2) {
    const Integer n = sorted[1] + 2;
    const auto f = SmoothBlowup::type_d(n);
    if (auto order = find_order(beta, f.weights())) return WeightFamilyMatch{f, *order, DuValType::d(n)};
  }
  // Type A: read the smallest weight that works as (a2+a3)/k; equal
  // weights give the same reading, so the result does not depend on order.
  std::optional<WeightFamilyMatch> best;
  for (int i = 0; i < 3; ++i) {
    int j = i == 0 ? 1 : 0;
    int k = i == 2 ? 1 : 2;
    if (beta[static_cast<std::size_t>(j)] > beta[static_cast<std::size_t>(k)]) std::swap(j, k);
    const Integer& l = beta[static_cast<std::size_t>(i)];
    if (best && l >= best->family.weights()[0]) continue;
    const Integer d1 = gcd(beta[static_cast<std::size_t>(j)], beta[static_cast<std::size_t>(k)]);
    const Integer a2 = exact_div(beta[static_cast<std::size_t>(j)], d1);
    const Integer a3 = exact_div(beta[static_cast<std::size_t>(k)], d1);
    if (!divides(l, a2 + a3)) continue;
    const auto f = SmoothBlowup::type_a(exact_div(a2 + a3, l), a2, a3, d1);
    const Integer n = f.k * f.d1 - 1;
    std::optional<DuValType> type;
    if (n >= 1) type = DuValType::a(n);
    best = WeightFamilyMatch{f, {i, j, k}, type};
  }
  return best;
}

bool newton_interior_contains_one(const MonomialSupport& support) {
  // Candidate normals are spanned by triples of points and recession
  // directions; every facet of conv(S) + R^3_{>=0} is among them and each
  // facet normal is nonnegative. (1,1,1) is interior iff it lies strictly
  // inside every supporting halfspace.
  const auto& pts = support.monomials();
  const Vec3 one{1, 1, 1};
  const Vec3 dirs[3] = {Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}};

  auto strictly_inside = [&](Vec3 n) {
    bool nonneg = true, nonpos = true;
    for (const auto& c : n) {
      if (c < 0) nonneg = false;
      if (c > 0) nonpos = false;
    }
    if (nonneg && nonpos) return true;  // zero vector
    if (!nonneg && !nonpos) return true;  // not a normal of the polyhedron
    if (nonpos)
      for (auto& c : n) c = -c;
    Integer lo = dot(n, pts[0]);
    for (const auto& p : pts) lo = std::min(lo, dot(n, p));
    return dot(n, one) > lo;
  };

  for (const auto& e1 : dirs)
    for (const auto& e2 : dirs)
      if (!strictly_inside(cross(e1, e2))) return false;
  const std::size_t m = pts.size();
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) {
      const Vec3 u = sub(pts[b], pts[a]);
      for (const auto& e : dirs)
        if (!strictly_inside(cross(u, e))) return false;
      for (std::size_t c = b + 1; c < m; ++c)
        if (!strictly_inside(cross(u, sub(pts[c], pts[a])))) return false;
    }
  }
  return true;
}

Integer weighted_degree(const MonomialSupport& support, const std::array<Integer, 3>& beta) {
  const auto& ms = support.monomials();
  const Integer deg = dot(beta, ms[0]);
  for (const auto& l : ms) {
    const Integer d = dot(beta, l);
    if (d != deg)
      throw DomainError("support is not quasihomogeneous: " + monomial_string(ms[0]) +
                        " has degree " + deg.get_str() + ", " + monomial_string(l) +
                        " has degree " + d.get_str());
  }
  return deg;
}

DuValVerdict classify_support(const MonomialSupport& support, const std::array<Integer, 3>& beta) {
  for (const auto& b : beta)
    if (b < 1) throw DomainError("weights must be positive");
  const Integer deg = weighted_degree(support, beta);
  if (deg == 0) throw DomainError("constant support does not pass through the origin");

  for (const auto& l : support.monomials())
    if (total(l) == 1) return {std::nullopt, DuValFailure::Smooth};
  for (std::size_t i = 0; i < 3; ++i) {
    bool used = false;
    for (const auto& l : support.monomials()) used = used || l[i] != 0;
    if (!used) return {std::nullopt, DuValFailure::MissingVariable};
  }
  if (!generic_isolated(support)) return {std::nullopt, DuValFailure::NotIsolated};
  if (!newton_interior_contains_one(support)) return {std::nullopt, DuValFailure::NewtonBound};

  // Milnor number of an isolated quasihomogeneous singularity.
  Rational mu = 1;
  std::array<Rational, 3> w;
  for (std::size_t i = 0; i < 3; ++i) {
    w[i] = make_rational(beta[i], deg);
    mu *= make_rational(deg, beta[i]) - 1;
  }
  if (mu.get_den() != 1 || mu < 1) throw DomainError("Milnor number " + toric_plt::to_string(mu));
  const Integer n = mu.get_num();

  switch (generic_hessian_rank(support)) {
    case 3:
    case 2: return {DuValType::a(n), DuValFailure::None};
    case 1: {
      std::sort(w.begin(), w.end());
      if (w[2] == make_rational(1, 2) && w[1] == make_rational(1, 3)) {
        if (w[0] == make_rational(1, 4) && n == 6) return {DuValType::e(6), DuValFailure::None};
        if (w[0] == make_rational(2, 9) && n == 7) return {DuValType::e(7), DuValFailure::None};
        if (w[0] == make_rational(1, 5) && n == 8) return {DuValType::e(8), DuValFailure::None};
      }
      return {DuValType::d(n), DuValFailure::None};
    }
    default: return {std::nullopt, DuValFailure::NewtonBound};
  }
}

std::optional<DuValType> is_duval(const MonomialSupport& support,
                                  const std::array<Integer, 3>& beta) {
  return classify_support(support, beta).type;
}

std::string to_string(DuValFailure f) {
  switch (f) {
    case DuValFailure::None: return "none";
    case DuValFailure::Smooth: return "smooth";
    case DuValFailure::NotIsolated: return "not isolated";
    case DuValFailure::MissingVariable: return "independent of a variable";
    case DuValFailure::NewtonBound: return "1 outside the Newton interior";
  }
  return "?";
}

ParseError::ParseError(const std::string& what, std::size_t line, std::size_t column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

MonomialSupport parse_monomials(const std::string& text) {
  std::vector<Exponent> out;
  std::set<Exponent> seen;
  std::size_t line_no = 0, pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    ++line_no;
    std::string line = text.substr(pos, end - pos);
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    pos = end + 1;

    Exponent l{0, 0, 0};
    std::array<bool, 3> given{false, false, false};
    bool any = false, constant = false;
    std::size_t first_col = 0;
    std::size_t i = 0;
    auto col = [&] { return i + 1; };
    while (i < line.size()) {
      const char c = line[i];
      if (c == ' ' || c == '\t' || c == '\r' || c == '*') {
        ++i;
        continue;
      }
      if (!any) first_col = col();
      if (constant) throw ParseError("unexpected text after constant monomial", line_no, col());
      if (c == '1' && !any) {
        constant = any = true;
        ++i;
        continue;
      }
      if (c != 'x') throw ParseError(std::string("expected 'x', found '") + c + "'", line_no, col());
      ++i;
      if (i >= line.size() || line[i] < '1' || line[i] > '3')
        throw ParseError("expected variable index 1, 2 or 3", line_no, col());
      const auto v = static_cast<std::size_t>(line[i] - '1');
      if (given[v]) throw ParseError("variable repeated in one monomial", line_no, col());
      given[v] = true;
      ++i;
      Integer e = 1;
      if (i < line.size() && line[i] == '^') {
        ++i;
        const std::size_t start = i;
        while (i < line.size() && line[i] >= '0' && line[i] <= '9') ++i;
        if (i == start) throw ParseError("expected exponent after '^'", line_no, col());
        e = Integer(line.substr(start, i - start));
      }
      l[v] = e;
      any = true;
    }
    if (!any) continue;
    if (!seen.insert(l).second) throw ParseError("repeated monomial", line_no, first_col);
    out.push_back(l);
    if (pos > text.size()) break;
  }
  if (out.empty()) throw ParseError("no monomials", line_no == 0 ? 1 : line_no, 1);
  return MonomialSupport(std::move(out));
}

}  // namespace toric_plt
