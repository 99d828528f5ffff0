#include "doctest.h"
#include "toric_plt/duval_recognizer.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

using namespace toric_plt;

namespace {

MonomialSupport supp(std::initializer_list<std::array<long, 3>> ls) {
  std::vector<Exponent> v;
  for (const auto& l : ls) v.push_back({l[0], l[1], l[2]});
  return MonomialSupport(v);
}

std::array<Integer, 3> w3(long a, long b, long c) { return {a, b, c}; }

std::vector<SmoothBlowup> families(long pmax) {
  std::vector<SmoothBlowup> out;
  for (long a2 = 1; a2 <= pmax; ++a2)
    for (long a3 = 1; a3 <= pmax; ++a3)
      for (long k = 1; k <= pmax; ++k)
        for (long d1 = 1; d1 <= pmax; ++d1) {
          if (std::gcd(a2, a3) != 1 || (a2 + a3) % k != 0) continue;
          if (std::gcd((a2 + a3) / k, d1) != 1) continue;
          out.push_back(SmoothBlowup::type_a(k, a2, a3, d1));
        }
  for (long n = 4; n <= 2 * pmax + 2; ++n) out.push_back(SmoothBlowup::type_d(n));
  for (int n : {6, 7, 8}) out.push_back(SmoothBlowup::type_e(n));
  return out;
}

DuValType expected_type(const SmoothBlowup& f) {
  switch (f.kind) {
    case DuValKind::A: return DuValType::a(f.k * f.d1 - 1);
    case DuValKind::D: return DuValType::d(f.n);
    case DuValKind::E6: return DuValType::e(6);
    case DuValKind::E7: return DuValType::e(7);
    case DuValKind::E8: return DuValType::e(8);
  }
  return {};
}

// Oracle: (1,1,1) is outside the open Newton polyhedron iff some
// nonnegative functional n has n.(1,1,1) <= min over the support.
bool separated_by_small_functional(const MonomialSupport& s, long bound) {
  for (long a = 0; a <= bound; ++a)
    for (long b = 0; b <= bound; ++b)
      for (long c = 0; c <= bound; ++c) {
        if (a == 0 && b == 0 && c == 0) continue;
        Integer lo = -1;
        for (const auto& l : s.monomials()) {
          const Integer v = a * l[0] + b * l[1] + c * l[2];
          if (lo < 0 || v < lo) lo = v;
        }
        if (a + b + c <= lo) return true;
      }
  return false;
}

}  // namespace

TEST_CASE("lift_curve examples") {
  const auto s = supp({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  CHECK(lift_curve(s, w3(1, 1, 1)) == s);
  const auto e8 = lift_curve(s, w3(5, 3, 2));
  CHECK(e8 == supp({{5, 0, 0}, {0, 3, 0}, {0, 0, 2}}));
  CHECK(weighted_degree(e8, w3(6, 10, 15)) == 30);

  const auto d4 = lift_curve(supp({{0, 0, 1}, {1, 2, 0}}), w3(1, 1, 2));
  CHECK(d4 == supp({{0, 0, 2}, {1, 2, 0}}));
  CHECK(weighted_degree(d4, w3(2, 2, 3)) == 6);
  CHECK_THROWS_AS(lift_curve(s, w3(0, 1, 1)), DomainError);
}

TEST_CASE("monomial support invariants") {
  CHECK_THROWS_AS(MonomialSupport({}), DomainError);
  CHECK_THROWS_AS(supp({{1, 0, 0}, {1, 0, 0}}), DomainError);
  CHECK_THROWS_AS(supp({{-1, 0, 0}}), DomainError);
  CHECK(supp({{2, 0, 0}, {0, 1, 3}}).to_string() == "x1^2 + x2 x3^3");
}

TEST_CASE("recognize_weight_family examples") {
  auto m = recognize_weight_family(w3(6, 10, 15));
  REQUIRE(m);
  CHECK(m->type == DuValType::e(8));
  m = recognize_weight_family(w3(3, 4, 6));
  REQUIRE(m);
  CHECK(m->type == DuValType::e(6));
  m = recognize_weight_family(w3(2, 3, 4));
  REQUIRE(m);
  CHECK(m->family.kind == DuValKind::D);
  CHECK(m->type == DuValType::d(5));
  m = recognize_weight_family(w3(2, 2, 3));
  REQUIRE(m);
  CHECK(m->type == DuValType::d(4));
  m = recognize_weight_family(w3(1, 1, 1));
  REQUIRE(m);
  CHECK(m->family.kind == DuValKind::A);
  CHECK(m->type == DuValType::a(1));  // k = 2, d1 = 1
  m = recognize_weight_family(w3(2, 1, 1));
  REQUIRE(m);
  CHECK(m->type == DuValType::a(2));  // l = 1, a2 = 1, a3 = 2, k = 3
  m = recognize_weight_family(w3(7, 3, 4));
  REQUIRE(m);
  CHECK(m->family.k == 1);
  CHECK_FALSE(m->type);  // x1 + x2 x3
  CHECK_FALSE(recognize_weight_family(w3(2, 4, 6)));
  CHECK_FALSE(recognize_weight_family(w3(0, 1, 1)));
  CHECK_FALSE(recognize_weight_family(w3(5, 7, 11)));
}

TEST_CASE("recognize_weight_family finds every family and is permutation invariant") {
  for (const auto& f : families(10)) {
    const auto w = f.weights();
    std::array<int, 3> p{0, 1, 2};
    do {
      const std::array<Integer, 3> beta{w[static_cast<std::size_t>(p[0])],
                                        w[static_cast<std::size_t>(p[1])],
                                        w[static_cast<std::size_t>(p[2])]};
      const auto m = recognize_weight_family(beta);
      REQUIRE_MESSAGE(m, f.name());
      for (int i = 0; i < 3; ++i)
        CHECK(beta[static_cast<std::size_t>(m->order[static_cast<std::size_t>(i)])] ==
              m->family.weights()[static_cast<std::size_t>(i)]);
      const auto base = recognize_weight_family(w);
      CHECK(m->type == base->type);
      CHECK(m->family.name() == base->family.name());
      if (f.kind != DuValKind::A) CHECK(m->type == expected_type(f));
    } while (std::next_permutation(p.begin(), p.end()));
  }
}

TEST_CASE("newton_interior_contains_one examples") {
  CHECK(newton_interior_contains_one(supp({{2, 0, 0}, {0, 2, 0}, {0, 0, 2}})));
  CHECK_FALSE(newton_interior_contains_one(supp({{2, 0, 0}, {0, 3, 0}})));
  CHECK_FALSE(newton_interior_contains_one(supp({{1, 1, 1}})));
  CHECK_FALSE(newton_interior_contains_one(supp({{3, 0, 0}, {0, 3, 0}, {0, 0, 3}})));
  CHECK(newton_interior_contains_one(supp({{2, 0, 0}, {0, 3, 0}, {0, 0, 5}})));
  CHECK_FALSE(newton_interior_contains_one(supp({{2, 0, 0}, {0, 3, 0}, {0, 0, 6}})));
}

TEST_CASE("newton interior against a separating functional search") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<long> e(0, 4), size(1, 6);
  int interior = 0, exterior = 0;
  for (int trial = 0; trial < 400; ++trial) {
    std::set<Exponent> pts;
    const long n = size(rng);
    while (static_cast<long>(pts.size()) < n) pts.insert({e(rng), e(rng), e(rng)});
    const MonomialSupport s(std::vector<Exponent>(pts.begin(), pts.end()));
    const bool inside = newton_interior_contains_one(s);
    // cross products of exponent differences stay below 2 * 4 * 4
    CHECK_MESSAGE(inside != separated_by_small_functional(s, 32), s.to_string());
    (inside ? interior : exterior) += 1;
  }
  CHECK(interior > 20);
  CHECK(exterior > 20);
}

TEST_CASE("is_duval on normal forms") {
  for (long n = 1; n <= 12; ++n) {
    const auto s = supp({{2, 0, 0}, {0, 2, 0}, {0, 0, n + 1}});
    CHECK(is_duval(s, w3(n + 1, n + 1, 2)) == DuValType::a(n));
    const auto t = supp({{1, 1, 0}, {0, 0, n + 1}});
    CHECK(is_duval(t, w3(1, n, 1)) == DuValType::a(n));
  }
  for (long n = 4; n <= 14; ++n) {
    // x1^2 + x2^2 x3 + x3^(n-1), weights (n-1, n-2, 2)
    const auto s = supp({{2, 0, 0}, {0, 2, 1}, {0, 0, n - 1}});
    CHECK(is_duval(s, w3(n - 1, n - 2, 2)) == DuValType::d(n));
  }
  CHECK(is_duval(supp({{2, 0, 0}, {0, 3, 0}, {0, 0, 4}}), w3(6, 4, 3)) == DuValType::e(6));
  CHECK(is_duval(supp({{2, 0, 0}, {0, 3, 0}, {0, 1, 3}}), w3(9, 6, 4)) == DuValType::e(7));
  CHECK(is_duval(supp({{5, 0, 0}, {0, 3, 0}, {0, 0, 2}}), w3(6, 10, 15)) == DuValType::e(8));
  // D4 with the cubic split into three factors
  CHECK(is_duval(supp({{0, 0, 2}, {3, 0, 0}, {0, 3, 0}}), w3(2, 2, 3)) == DuValType::d(4));
}

TEST_CASE("is_duval failing cases") {
  // x1^2 + x2^2 x3: the first weight list
  for (long l = 1; l <= 6; ++l)
    for (long k = 1; 2 * k < 2 * l + 1; ++k) {
      const auto s = supp({{2, 0, 0}, {0, 2, 1}});
      const auto beta = w3(2 * l + 1, 2 * l + 1 - 2 * k, 4 * k);
      CHECK_FALSE(is_duval(s, beta));
      CHECK(classify_support(s, beta).failure == DuValFailure::NotIsolated);
    }
  // independent of x3
  auto v = classify_support(supp({{3, 0, 0}, {0, 2, 0}}), w3(2, 3, 1));
  CHECK(v.failure == DuValFailure::MissingVariable);
  // x1^2 + x2^3 + x3^6 is simple elliptic
  v = classify_support(supp({{2, 0, 0}, {0, 3, 0}, {0, 0, 6}}), w3(3, 2, 1));
  CHECK(v.failure == DuValFailure::NewtonBound);
  v = classify_support(supp({{1, 0, 0}, {0, 1, 1}}), w3(2, 1, 1));
  CHECK(v.failure == DuValFailure::Smooth);
}

TEST_CASE("is_duval rejects supports that are not quasihomogeneous") {
  try {
    is_duval(supp({{2, 0, 0}, {0, 3, 0}}), w3(1, 1, 1));
    FAIL("expected DomainError");
  } catch (const DomainError& e) {
    const std::string what = e.what();
    CHECK(what.find("degree 2") != std::string::npos);
    CHECK(what.find("degree 3") != std::string::npos);
  }
}

TEST_CASE("round trip through the six families") {
  std::size_t n = 0;
  for (const auto& f : families(10)) {
    const auto phi = family_equation(f);
    const auto beta = f.weights();
    const Integer deg = weighted_degree(phi, beta);
    for (const auto& l : phi.monomials()) CHECK(beta[0] * l[0] + beta[1] * l[1] + beta[2] * l[2] == deg);
    const auto verdict = classify_support(phi, beta);
    if (f.kind == DuValKind::A && f.k * f.d1 == 1) {
      CHECK(verdict.failure == DuValFailure::Smooth);
      continue;
    }
    for (const auto& l : phi.monomials()) CHECK(l[0] + l[1] + l[2] >= 2);
    REQUIRE_MESSAGE(verdict.type, f.name() << " " << to_string(verdict.failure));
    CHECK_MESSAGE(*verdict.type == expected_type(f), f.name() << " " << verdict.type->to_string());
    // an A triple can have several readings; only the kind is pinned
    const auto m = recognize_weight_family(beta);
    REQUIRE(m);
    if (m->family.kind != f.kind) {
      // (3, 2, 4) is both type A (k=1, a2=1, a3=2, d1=2) and D5
      std::array<Integer, 3> sorted = beta;
      std::sort(sorted.begin(), sorted.end());
      CHECK(sorted == w3(2, 3, 4));
      CHECK(m->type == DuValType::d(5));
    }
    if (f.kind != DuValKind::A) CHECK(m->type == verdict.type);
    ++n;
  }
  CHECK(n > 300);
}

TEST_CASE("parse_monomials") {
  const auto s = parse_monomials("# E8\nx1^5\n  x2^3   # cube\n\nx3^2\n");
  CHECK(s == supp({{5, 0, 0}, {0, 3, 0}, {0, 0, 2}}));
  CHECK(parse_monomials("x1 x2^2*x3") == supp({{1, 2, 1}}));
  CHECK(parse_monomials("1\nx1") == supp({{0, 0, 0}, {1, 0, 0}}));

  auto fails_at = [](const std::string& text, std::size_t line, std::size_t col) {
    try {
      parse_monomials(text);
    } catch (const ParseError& e) {
      CHECK(e.line() == line);
      CHECK(e.column() == col);
      return;
    }
    FAIL("expected ParseError for " << text);
  };
  fails_at("x1\nx4", 2, 2);
  fails_at("x1\n  y2", 2, 3);
  fails_at("x1^", 1, 4);
  fails_at("x1 x1", 1, 5);
  fails_at("x2\nx2", 2, 1);
  fails_at("# nothing\n", 2, 1);
}
