#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_util.hpp"
#include "theme/errors.hpp"
#include "theme/hom.hpp"

using namespace theme;
using testutil::poly;

namespace {

ThemePresentation pres(Rational l1, std::vector<int> p, std::vector<BSeries> S) {
  return make_presentation(l1, std::move(p), std::move(S), true);
}

ThemePresentation e3(Rational alpha, Rational beta, Rational gamma) {
  return pres(Rational(7, 2), {1, 1}, {poly({1, beta, gamma}), poly({1, alpha})});
}

ThemePresentation e4(Rational theta, Rational gamma, Rational alpha) {
  return pres(Rational(9, 2), {3, 2, 2},
              {poly({1, 1, 2, theta}), poly({1, 1, gamma}), poly({1, 0, alpha})});
}

// The source word kills the image inside the target module.
bool annihilates(const HomSolution& s) {
  int T = s.trunc;
  Elem z = chain_apply_word(s.dst.at_trunc(T).module(), s.src.at_trunc(T).word(), s.image);
  return elem_is_zero(elem_truncated(z, elem_trunc(z) - s.src.k()));
}

bool strictly_increasing_or_constant(const std::vector<Rational>& l) {
  bool inc = true, cst = true;
  for (std::size_t i = 0; i + 1 < l.size(); ++i) {
    if (!(l[i] < l[i + 1])) inc = false;
    if (l[i] != l[i + 1]) cst = false;
  }
  return inc || cst;
}

}  // namespace

TEST_CASE("find_injection: identity and rank one") {
  ThemePresentation P = e3(1, 2, 5);
  InjectionResult id = find_injection(P, P);
  CHECK(id.decision == Decision::Yes);
  REQUIRE(id.solution);
  CHECK(annihilates(*id.solution));
  CHECK(id.codimension == 0);
  CHECK(id.stabilized);

  Rational l(3, 2);
  InjectionResult r = find_injection(pres(l + 2, {}, {}), pres(l, {}, {}));
  CHECK(r.decision == Decision::Yes);
  REQUIRE(r.solution);
  CHECK(r.solution->image[0].agrees_with(BSeries::monomial(1, 2, r.solution->image[0].trunc())));
  CHECK(r.codimension == 2);
  CHECK(find_injection(pres(l - 1, {}, {}), pres(l, {}, {})).decision == Decision::No);
  CHECK(find_injection(pres(l + Rational(1, 3), {}, {}), pres(l, {}, {})).decision == Decision::No);
}

TEST_CASE("find_injection: sharpness pair is obstructed") {
  ThemePresentation P = e4(1, 3, 1);  // 3 alpha != 5 gamma
  InjectionResult r = find_injection(quotient(P, 1), submodule(P, 3));
  CHECK(r.decision == Decision::No);
  CHECK(r.obstruction.has_value());
  CHECK(r.stabilized);
  ThemePresentation Q = e4(1, 3, 5);  // 3 alpha = 5 gamma
  CHECK(find_injection(quotient(Q, 1), submodule(Q, 3)).decision == Decision::Yes);
}

TEST_CASE("find_injection: existence and codimension when mu_j - lambda_j >= k - 1") {
  std::mt19937 g(83);
  for (int it = 0; it < 12; ++it) {
    int k = std::uniform_int_distribution<int>(1, 3)(g);
    ThemePresentation dst = testutil::rand_presentation(g, k, 0, 2);
    // source invariants: mu_1 = lambda_1 + d_1, p'_j chosen so every gap stays >= k - 1
    std::vector<Rational> l = dst.lambdas();
    std::vector<int> d(k);
    for (int j = 0; j < k; ++j) d[j] = k - 1 + std::uniform_int_distribution<int>(0, 1)(g);
    for (int j = 1; j < k; ++j) {
      Rational need = l[j] + d[j] - (l[j - 1] + d[j - 1]) + 1;
      if (need < 0) d[j] += static_cast<int>(floor_long(-need)) + 1;
    }
    std::vector<int> p;
    for (int j = 1; j < k; ++j) p.push_back(static_cast<int>(floor_long(l[j] + d[j] - l[j - 1] - d[j - 1] + 1)));
    std::vector<BSeries> S;
    for (int j = 1; j < k; ++j) {
      std::vector<Rational> c(p[j - 1] + 2);
      c[0] = 1;
      for (std::size_t i = 1; i < c.size(); ++i) c[i] = testutil::rand_rational(g, 3, 2);
      if (p[j - 1] >= 1) c[p[j - 1]] = testutil::rand_nonzero(g, 3, 2);
      S.push_back(BSeries(c, static_cast<int>(c.size()) - 1));
    }
    ThemePresentation src = pres(l[0] + d[0], p, S);
    InjectionResult r = find_injection(src, dst);
    CHECK(r.decision == Decision::Yes);
    REQUIRE(r.solution);
    CHECK(annihilates(*r.solution));
    Rational total = 0;
    for (int j = 0; j < k; ++j) total += src.lambdas()[j] - l[j];
    CHECK(r.codimension == static_cast<int>(total.get_num().get_si()));
    for (int j = 0; j < k; ++j) {
      auto v = r.solution->image[j].valuation();
      if (v) CHECK(*v >= j);
    }
  }
}

TEST_CASE("end_dimension examples") {
  CHECK(end_dimension(pres(Rational(5, 4), {}, {})) == 1);
  CHECK(end_dimension(pres(Rational(5, 2), {0}, {poly({1, 3})})) == 1);
  CHECK(end_dimension(pres(Rational(5, 2), {1}, {poly({1, 3})})) == 2);
  ThemePresentation full = pres(Rational(9, 2), {2, 3}, {poly({1, 1, 1}), poly({1, 0, 0, 2})});
  CHECK(end_dimension(full) == 3);
  CHECK(end_flag(full) == std::vector<int>{1, 2, 3});
}

TEST_CASE("is_invariant examples") {
  InvarianceResult yes = is_invariant(e3(2, 2, 3));
  CHECK(yes.decision == Decision::Yes);
  REQUIRE(yes.witness);
  // x = e_2 - gamma b e_1
  CHECK(yes.witness->at(1).agrees_with(BSeries::constant(1, yes.witness->at(1).trunc())));
  CHECK(yes.witness->at(0).agrees_with(BSeries::monomial(-3, 1, yes.witness->at(0).trunc())));
  InvarianceResult no = is_invariant(e3(2, 3, 3));
  CHECK(no.decision == Decision::No);
  CHECK(no.obstruction.has_value());
  CHECK(is_invariant(e4(1, 3, 5)).decision == Decision::Yes);
  CHECK(is_invariant(e4(2, 6, 10)).decision == Decision::Yes);
  CHECK(is_invariant(e4(1, 3, 4)).decision == Decision::No);
  CHECK(is_invariant(e4(1, 2, 5)).decision == Decision::No);
  CHECK(is_invariant(pres(Rational(3, 4), {}, {})).decision == Decision::Yes);
}

TEST_CASE("isomorphic examples") {
  IsoResult r = isomorphic(e3(1, 2, 5), e3(1, 2, 0));
  CHECK(r.decision == Decision::Yes);
  REQUIRE(r.U);
  CHECK(*r.U == Rational(5) / (1 - 2));
  IsoResult s = isomorphic(e3(3, 5, Rational(1, 2)), e3(3, 5, 2));
  CHECK(s.decision == Decision::Yes);
  REQUIRE(s.U);
  CHECK(*s.U == (Rational(1, 2) - 2) / (3 - 5));
  IsoResult n = isomorphic(e3(2, 2, 5), e3(2, 2, 1));
  CHECK(n.decision == Decision::No);
  CHECK(n.obstruction.has_value());
  CHECK(isomorphic(e3(2, 2, 5), e3(2, 2, 5)).decision == Decision::Yes);
  CHECK(isomorphic(e3(1, 2, 5), e4(1, 1, 1)).decision == Decision::No);
  std::mt19937 g(89);
  for (int it = 0; it < 8; ++it) {
    int k = std::uniform_int_distribution<int>(2, 3)(g);
    ThemePresentation P = testutil::rand_presentation(g, k, 0, 3, 2);
    CHECK(isomorphic(P, canonical_form(P)).decision == Decision::Yes);
  }
}

TEST_CASE("ext_dimensions") {
  Rational mu(5, 3);
  ExtResult a = ext_dimensions(pres(mu - 1, {}, {}), pres(mu, {}, {}));
  CHECK(a.ext0 == 0);
  CHECK(a.ext1 == 1);
  ExtResult b = ext_dimensions(pres(mu + 2, {}, {}), pres(mu, {}, {}));
  CHECK(b.ext0 == 1);
  CHECK(b.ext1 == 2);
  ExtResult c = ext_dimensions(pres(mu + Rational(1, 2), {}, {}), pres(mu, {}, {}));
  CHECK(c.ext0 == 0);
  CHECK(c.ext1 == 1);
  std::mt19937 g(97);
  for (int it = 0; it < 8; ++it) {
    int k1 = std::uniform_int_distribution<int>(1, 3)(g), k2 = std::uniform_int_distribution<int>(1, 3)(g);
    ThemePresentation E = testutil::rand_presentation(g, k1, 0, 2);
    ThemePresentation F = testutil::rand_presentation(g, k2, 0, 2);
    ExtResult r = ext_dimensions(E, F);
    CHECK(r.stabilized);
    CHECK(r.ext1 - r.ext0 == k1 * k2);
    CHECK(r.ext0 == hom_dimension(E, F));
  }
}

TEST_CASE("property_u examples") {
  CHECK(property_u(e3(2, 2, 3)).decision == Decision::Yes);
  CHECK(property_u(e3(2, 3, 3)).decision == Decision::No);
  ThemePresentation p2zero = pres(Rational(7, 2), {1, 0}, {poly({1, 2, 3}), poly({1, 1})});
  CHECK(is_invariant(p2zero).decision == Decision::No);
  CHECK(property_u(p2zero).decision == Decision::Yes);
  CHECK(property_u(pres(Rational(5, 2), {0}, {poly({1})})).decision == Decision::Yes);
}

TEST_CASE("invariance properties on random presentations") {
  std::mt19937 g(101);
  int invariant_seen = 0;
  for (int it = 0; it < 40; ++it) {
    int k = std::uniform_int_distribution<int>(2, 4)(g);
    ThemePresentation P = testutil::rand_presentation(g, k, 0, 3);
    InvarianceResult r = is_invariant(P);
    REQUIRE(r.decision != Decision::Unknown);
    EndInfo e = end_analysis(P);
    CHECK(e.dimension == e.direct_dimension);
    CHECK(e.dimension >= 1);
    CHECK(e.dimension <= k);
    CHECK((e.dimension == k) == (r.decision == Decision::Yes));
    for (const auto& w : e.witnesses) CHECK(annihilates(w));
    const auto& p = P.p;
    bool lemma5 = p[k - 2] == 0 || (k >= 3 && p[k - 2] == 1 && p[k - 3] >= 2);
    if (lemma5) CHECK(r.decision == Decision::No);
    if (r.decision == Decision::Yes) {
      ++invariant_seen;
      CHECK(strictly_increasing_or_constant(P.lambdas()));
      for (int j = 1; j < k; ++j) {
        CHECK(is_invariant(submodule(P, j)).decision == Decision::Yes);
        CHECK(is_invariant(quotient(P, j)).decision == Decision::Yes);
      }
      bool all_one = true;
      for (int x : p) all_one = all_one && x == 1;
      if (all_one)
        for (int j = 1; j < k - 1; ++j) CHECK(P.S[j][1] == P.S[0][1]);
      CHECK(property_u(P).decision == Decision::Yes);
    }
  }
  CHECK(invariant_seen > 0);
}

TEST_CASE("p_j >= k - 1 gives a full endomorphism flag") {
  std::mt19937 g(103);
  for (int it = 0; it < 10; ++it) {
    int k = std::uniform_int_distribution<int>(2, 4)(g);
    ThemePresentation P = testutil::rand_presentation(g, k, k - 1, k);
    CHECK(end_dimension(P) == k);
    CHECK(is_invariant(P).decision == Decision::Yes);
  }
}
