#include "doctest.h"
#include "oracles.hpp"
#include "toric_plt/toric_fans.hpp"

#include <numeric>
#include <random>
#include <set>

using namespace toric_plt;

namespace {

CyclicQuotientType type3(long r, long a, long b, long c) { return {r, {a, b, c}}; }

// The set of box points predicted by a quotient type: frac(j*w/r), j < r.
std::set<std::vector<Rational>> predicted_box(const CyclicQuotientType& t) {
  std::set<std::vector<Rational>> out;
  for (Integer j = 0; j < t.order(); ++j) {
    std::vector<Rational> p;
    for (const auto& w : t.weights()) p.push_back(make_rational(mod(j * w, t.order()), t.order()));
    out.insert(p);
  }
  return out;
}

}  // namespace

TEST_CASE("quotient type normal form") {
  CHECK(type3(7, 1, -1, 3).weights() == std::vector<Integer>{1, 6, 3});
  CHECK(equivalent(type3(7, 1, -1, 3), type3(7, 3, 1, 6)));
  CHECK(equivalent(type3(7, 1, -1, 3), type3(7, 2, 5, 6)));  // times 2
  CHECK_FALSE(equivalent(type3(7, 1, -1, 3), type3(7, 1, 1, 1)));
  CHECK(type3(5, 2, 3, 4).canonical() == type3(5, 2, 3, 4).scaled(3).canonical());
  CHECK(CyclicQuotientType(1, {0, 0, 0}).is_smooth());
  CHECK_THROWS_AS(CyclicQuotientType(0, {1}), DomainError);

  // ordered equivalence keeps coordinates attached
  CHECK(equivalent_ordered(CyclicQuotientType(5, {1, 2}), CyclicQuotientType(5, {2, 4})));
  CHECK_FALSE(equivalent_ordered(CyclicQuotientType(5, {1, 2}), CyclicQuotientType(5, {2, 1})));
}

TEST_CASE("cone_quotient_type examples") {
  CHECK(cone_quotient_type(ConeGerm::smooth()).is_smooth());

  for (long r = 2; r <= 15; ++r)
    for (long q = 1; q < r; ++q) {
      if (std::gcd(q, r) != 1) continue;
      const auto c = ConeGerm::simplicial(lattice_vector({1, 0, 0}), lattice_vector({0, 1, 0}),
                                          lattice_vector({1, q, r}));
      const auto t = cone_quotient_type(c);
      CHECK(t.order() == r);
      CHECK(equivalent(t, type3(r, 1, -1, q)));
    }

  const auto c = ConeGerm::simplicial(lattice_vector({1, 0, 0}), lattice_vector({0, 1, 0}),
                                      lattice_vector({3, 1, 2}));
  const auto t = cone_quotient_type(c);
  CHECK(t.order() == 2);
  CHECK(equivalent(t, type3(2, 1, 1, 1)));
  const auto box = oracle::box_points(c.generators());
  CHECK(box.size() == 2);
  CHECK(std::set<std::vector<Rational>>(box.begin(), box.end()) == predicted_box(t));

  CHECK_THROWS_AS(ConeGerm::simplicial(lattice_vector({1, 0, 0}), lattice_vector({0, 1, 0}),
                                       lattice_vector({1, 1, 0})),
                  DomainError);
  CHECK_THROWS_AS(cone_quotient_type(ConeGerm::reference_odp()), DomainError);
}

TEST_CASE("cone_quotient_type agrees with box-point enumeration") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<long> dist(-4, 4);
  int checked = 0;
  while (checked < 300) {
    std::vector<LatticeVector> gens;
    for (int i = 0; i < 3; ++i) gens.push_back(lattice_vector({dist(rng), dist(rng), dist(rng)}));
    bool ok = true;
    for (const auto& g : gens) ok = ok && content(g) == 1;
    if (!ok) continue;
    LatticeMatrix m(3, 3);
    for (int j = 0; j < 3; ++j) m.col(j) = gens[static_cast<std::size_t>(j)];
    if (determinant(m) == 0) continue;
    CyclicQuotientType t(1, {0, 0, 0});
    try {
      t = simplicial_quotient_type(gens);
    } catch (const DomainError&) {
      // non-cyclic group: at least two invariant factors exceed 1
      CHECK(oracle::minors_gcd(m, 2) > 1);
      continue;
    }
    const auto box = oracle::box_points(gens);
    CHECK(Integer(static_cast<long>(box.size())) == t.order());
    CHECK(std::set<std::vector<Rational>>(box.begin(), box.end()) == predicted_box(t));
    ++checked;
  }
}

TEST_CASE("star_subdivide examples") {
  const Fan base({ConeGerm::smooth()});
  const LatticeVector e1 = lattice_vector({1, 0, 0});
  const LatticeVector e2 = lattice_vector({0, 1, 0});
  const LatticeVector e3 = lattice_vector({0, 0, 1});

  const LatticeVector e4 = lattice_vector({0, 2, 3});  // 2*e2 + 3*e3
  const Fan sub = star_subdivide(base, e4);
  REQUIRE(sub.cones().size() == 2);
  CHECK(sub.cones()[0].generators() == std::vector<LatticeVector>{e4, e1, e2});
  CHECK(sub.cones()[1].generators() == std::vector<LatticeVector>{e4, e1, e3});

  CHECK(star_subdivide(base, lattice_vector({1, 1, 1})).cones().size() == 3);

  const Fan odp({ConeGerm::reference_odp()});
  const Fan odp_sub = star_subdivide(odp, lattice_vector({1, 1, 1}));
  CHECK(odp_sub.cones().size() == 4);
  for (const auto& c : odp_sub.cones()) CHECK(c.kind() == ConeKind::Simplicial3);

  CHECK_THROWS_AS(star_subdivide(base, lattice_vector({-1, 0, 0})), DomainError);
  CHECK_THROWS_AS(star_subdivide(base, lattice_vector({2, 2, 2})), DomainError);
}

TEST_CASE("star_subdivide preserves support") {
  std::mt19937_64 rng(3);
  std::uniform_int_distribution<long> dist(1, 9);
  for (int iter = 0; iter < 100; ++iter) {
    const bool odp = iter % 2 == 1;
    const ConeGerm cone = odp ? ConeGerm::reference_odp() : ConeGerm::smooth();
    // random interior ray
    LatticeVector ray;
    do {
      ray = lattice_vector({dist(rng), dist(rng), dist(rng)});
    } while (content(ray) != 1 || !cone.contains_in_interior(ray));
    const Fan sub = star_subdivide(Fan({cone}), ray);

    // volume identity: sum |det| of the new cones = <m, ray> * |det| of the
    // old simplicial pieces; for the smooth cone this is <(1,1,1), ray>.
    Integer total = 0;
    for (const auto& c : sub.cones()) {
      LatticeMatrix m(3, 3);
      for (int j = 0; j < 3; ++j) m.col(j) = c.generators()[static_cast<std::size_t>(j)];
      total += abs(oracle::cofactor_det(m));
    }
    if (!odp) CHECK(total == ray(0) + ray(1) + ray(2));
    else CHECK(Rational(total) == (discrepancy(cone, ray) + 1) * 2);

    // random lattice points: in the old cone iff in some new cone
    std::uniform_int_distribution<long> pt(-3, 12);
    for (int k = 0; k < 50; ++k) {
      const LatticeVector p = lattice_vector({pt(rng), pt(rng), pt(rng)});
      bool in_new = false;
      for (const auto& c : sub.cones()) in_new = in_new || c.contains(p);
      CHECK(in_new == cone.contains(p));
    }
  }
}

TEST_CASE("fan compatibility is checked at construction") {
  const auto a = ConeGerm::smooth();
  const auto b = ConeGerm::simplicial(lattice_vector({1, 1, 0}), lattice_vector({0, 1, 0}),
                                      lattice_vector({0, 0, 1}));
  CHECK_THROWS_AS(Fan({a, b}), DomainError);
  const auto c = ConeGerm::simplicial(lattice_vector({-1, 0, 0}), lattice_vector({0, 1, 0}),
                                      lattice_vector({0, 0, 1}));
  CHECK_NOTHROW(Fan({a, c}));
  const auto d = ConeGerm::simplicial(lattice_vector({-1, 0, 0}), lattice_vector({0, -1, 0}),
                                      lattice_vector({0, 0, -1}));
  CHECK_NOTHROW(Fan({a, d}));
}

TEST_CASE("discrepancy") {
  CHECK(discrepancy(ConeGerm::smooth(), lattice_vector({1, 1, 1})) == 2);
  CHECK(discrepancy(ConeGerm::smooth(), lattice_vector({6, 10, 15})) == 30);
  CHECK(discrepancy(ConeGerm::reference_odp(), lattice_vector({1, 1, 1})) == 1);
  CHECK_THROWS_AS(discrepancy(ConeGerm::smooth(), lattice_vector({1, -1, 1})), DomainError);

  // linear in the ray
  const auto odp = ConeGerm::reference_odp();
  const LatticeVector a = lattice_vector({1, 1, 1});
  const LatticeVector b = lattice_vector({2, 1, 2});
  CHECK(discrepancy(odp, LatticeVector(a + b)) + 1 ==
        (discrepancy(odp, a) + 1) + (discrepancy(odp, b) + 1));

  // quotient germ: m = (1, 1, -3/7), so <m, (1,1,1)> - 1 = 4/7
  const auto q = ConeGerm::simplicial(lattice_vector({1, 0, 0}), lattice_vector({0, 1, 0}),
                                      lattice_vector({1, 3, 7}));
  CHECK(discrepancy(q, lattice_vector({1, 1, 1})) == make_rational(4, 7));
}

TEST_CASE("reid_tai examples") {
  CHECK(reid_tai_is_terminal(type3(2, 1, 1, 1)));
  const auto v = reid_tai(type3(2, 1, 1, 0));
  CHECK_FALSE(v.terminal);
  REQUIRE(v.witness.has_value());
  CHECK(*v.witness == 1);
  for (long r = 2; r <= 50; ++r)
    for (long q = 1; q < r; ++q)
      if (std::gcd(q, r) == 1) CHECK(reid_tai_is_terminal(type3(r, 1, -1, q)));
  CHECK(reid_tai(type3(4, 2, 0, 0)).reason == TerminalityReason::PseudoReflection);
  CHECK_THROWS_AS(reid_tai(CyclicQuotientType(3, {1, 2})), DomainError);
}

TEST_CASE("reid_tai matches the terminal family exhaustively for r <= 20") {
  for (long r = 1; r <= 20; ++r)
    for (long a = 0; a < r; ++a)
      for (long b = 0; b < r; ++b)
        for (long c = 0; c < r; ++c)
          CHECK(reid_tai_is_terminal(type3(r, a, b, c)) == oracle::is_terminal_family(r, a, b, c));
}

TEST_CASE("chart pairing over the first fiber of the A family") {
  // For the cone <e1, e2, beta> and e4 = alpha2*e2 + alpha1*beta, the two
  // points of the fiber V(e4, e1) carry 1/g(g1, g2) and 1/g(g1, -g2).
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<long> small(1, 9);
  int done = 0;
  while (done < 100) {
    const long a2 = small(rng), a3 = small(rng), d1 = small(rng), k = small(rng);
    const long al1 = small(rng), al2 = small(rng);
    if ((a2 + a3) % k != 0 || std::gcd(a2, a3) != 1 || std::gcd(al1, al2) != 1) continue;
    const long l = (a2 + a3) / k;
    if (std::gcd(l, d1) != 1) continue;
    const LatticeVector e1 = lattice_vector({1, 0, 0});
    const LatticeVector e2 = lattice_vector({0, 1, 0});
    const LatticeVector beta = lattice_vector({l, a2 * d1, a3 * d1});
    const LatticeVector e4 = Integer(al2) * e2 + Integer(al1) * beta;
    const auto on_section = surface_point_type(e4, e1, beta);
    const auto other = surface_point_type(e4, e1, e2);
    CHECK(on_section.order() == other.order());
    const CyclicQuotientType flipped(on_section.order(),
                                     {on_section.weights()[0], -on_section.weights()[1]});
    CHECK(equivalent_ordered(flipped, other));
    ++done;
  }
}
