#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_util.hpp"
#include "theme/errors.hpp"
#include "theme/xi.hpp"

using namespace theme;

namespace {

const int N = 14;

XiElement rand_xi(std::mt19937& g, const Rational& lambda, int cap, int trunc, bool unit_top) {
  XiElement x{lambda, {}};
  for (int j = 0; j <= cap; ++j) x.comps.push_back(testutil::rand_series(g, trunc, 3, 2));
  if (unit_top) x.comps[cap].set(0, testutil::rand_nonzero(g, 3, 2));
  return x;
}

XiElement b_times(const XiElement& x) { return BSeries::monomial(1, 1, x.trunc()) * x; }

// Apply the unipotent defect to an element with t-polynomial coefficients.
std::vector<XiElement> defect(const std::vector<XiElement>& by_t) {
  int cap = by_t[0].cap(), trunc = by_t[0].trunc();
  std::vector<XiElement> out(by_t.size() + cap + 1, XiElement{by_t[0].lambda, zero_elem(cap + 1, trunc)});
  for (std::size_t m = 0; m < by_t.size(); ++m) {
    XiTElement d = monodromy_defect(by_t[m]);
    for (std::size_t r = 1; r < d.by_t_power.size(); ++r) out[m + r] = out[m + r] + d.by_t_power[r];
  }
  return out;
}

bool all_zero(const std::vector<XiElement>& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

}  // namespace

TEST_CASE("xi_apply_a examples") {
  Rational l(3, 7);
  XiElement e0 = XiElement::basis(l, 0, 1, N), e1 = XiElement::basis(l, 1, 1, N);
  XiElement a0 = xi_apply_a(e0);
  CHECK(a0.comps[0] == BSeries::monomial(l, 1, N));
  CHECK(a0.comps[1].is_zero());
  XiElement a1 = xi_apply_a(e1);
  CHECK(a1.comps[1] == BSeries::monomial(l, 1, N));
  CHECK(a1.comps[0] == BSeries::monomial(1, 1, N));
  XiElement ab0 = xi_apply_a(b_times(e0));
  CHECK(ab0.comps[0] == BSeries::monomial(l + 1, 2, N));
}

TEST_CASE("a raises the b-valuation of the top component by one") {
  std::mt19937 g(23);
  for (int it = 0; it < 40; ++it) {
    Rational l = testutil::rand_rational(g, 4, 5);
    l = lambda_class(l);
    XiElement x = rand_xi(g, l, 2, N, false);
    int d = x.log_degree();
    if (d < 0) continue;
    XiElement y = xi_apply_a(x);
    CHECK(y.log_degree() <= d);
    CHECK(y.log_degree() == d);
    auto v = x.comps[d].valuation();
    if (*v + 1 <= N) CHECK(*y.comps[d].valuation() == *v + 1);
  }
}

TEST_CASE("xi_s_power reads s^(lambda-1+m) as a^m e_{lambda,j}") {
  Rational l(1, 2);
  for (int m = 0; m < 4; ++m) {
    XiElement x = xi_s_power(l - 1 + m, 0, 0, N);
    CHECK(x.comps[0] == BSeries::monomial(rising(l, m), m, N));
    XiElement y = XiElement::basis(l, 1, 1, N);
    for (int i = 0; i < m; ++i) y = xi_apply_a(y);
    CHECK(xi_s_power(l - 1 + m, 1, 1, N).agrees_with(y));
  }
  CHECK_THROWS(xi_s_power(Rational(-3, 2), 0, 0, N));
}

TEST_CASE("generate_module examples") {
  Rational l(2, 3);
  GeneratedModule m0 = generate_module(XiElement::basis(l, 0, 0, N));
  CHECK(m0.rank == 1);
  REQUIRE(m0.relation.size() == 1);
  CHECK(m0.relation[0].agrees_with(BSeries::monomial(l, 1, N)));
  CHECK(generate_module(XiElement::basis(l, 1, 1, N)).rank == 2);
}

TEST_CASE("rank-2 generator of the exceptional shape") {
  // b e_{lambda,1} + gamma e_{lambda,0}, lambda1 = lambda + 1, gamma = -(lambda1 - 1)
  Rational l(1, 2);
  int m = 1;
  Rational lambda1 = l + m;
  XiElement phi{l, zero_elem(2, N)};
  phi.comps[1] = BSeries::monomial(1, m, N);
  phi.comps[0] = BSeries::constant(-(lambda1 - 1), N);
  GeneratedModule M = generate_module(phi);
  CHECK(M.rank == 2);
  ThemePresentation P = from_generator(M);
  CHECK(P.lambda1 == lambda1);
  CHECK(P.p == std::vector<int>{1});
}

TEST_CASE("generate_module on random generators") {
  std::mt19937 g(29);
  for (int it = 0; it < 25; ++it) {
    int cap = std::uniform_int_distribution<int>(0, 3)(g);
    Rational l = lambda_class(testutil::rand_nonzero(g, 4, 5));
    XiElement phi = rand_xi(g, l, cap, 20, true);
    GeneratedModule M = generate_module(phi);
    CHECK(M.rank == cap + 1);
    // a^k phi = sum relation[j] a^j phi
    XiElement top = M.basis.back();
    top = xi_apply_a(top);
    XiElement sum{l, zero_elem(top.comps.size(), M.trunc)};
    for (int j = 0; j < M.rank; ++j) sum = sum + M.relation[j] * M.basis[j].with_cap(top.cap());
    CHECK(sum.agrees_with(top));
  }
}

TEST_CASE("filtration_member") {
  std::mt19937 g(31);
  for (int it = 0; it < 10; ++it) {
    Rational l = lambda_class(testutil::rand_nonzero(g, 4, 5));
    XiElement phi = rand_xi(g, l, 2, 20, true);
    GeneratedModule M = generate_module(phi);
    FiltrationBasis full = filtration_member(M, 3);
    CHECK(full.basis.size() == 3);
    for (int j = 1; j <= 3; ++j) {
      FiltrationBasis F = filtration_member(M, j);
      CHECK(static_cast<int>(F.basis.size()) == j);
      CHECK(F.inside_b_power);
      for (const auto& x : F.basis) CHECK(x.log_degree() <= j - 1);
    }
  }
}

TEST_CASE("solve_shift examples") {
  Rational l(1, 4);
  XiElement theta{l, zero_elem(1, N)};
  theta.comps[0] = BSeries::monomial(1, 1, N);
  XiElement psi = solve_shift(0, 0, theta);
  CHECK(psi.with_cap(1).agrees_with(XiElement::basis(l, 1, 1, N)));
  XiElement zero{l, zero_elem(2, N)};
  CHECK(solve_shift(1, 2, zero).is_zero());
  // coefficient rho on b^{q+1} e_j lands on b^q e_{j+1}
  int j = 1, q = 2;
  Rational rho(7, 3);
  XiElement th{l, zero_elem(2, N)};
  th.comps[j] = BSeries::monomial(rho, q + 1, N);
  th.comps[0] = BSeries::monomial(2, 3, N);
  XiElement s = solve_shift(j, q, th);
  CHECK(s.comps[j + 1][q] == rho);
}

TEST_CASE("solve_shift inverts a - (lambda + q) b") {
  std::mt19937 g(37);
  for (int it = 0; it < 30; ++it) {
    int j = std::uniform_int_distribution<int>(0, 2)(g);
    int q = std::uniform_int_distribution<int>(0, 4)(g);
    Rational l = lambda_class(testutil::rand_nonzero(g, 4, 5));
    XiElement theta = rand_xi(g, l, j, N, false);
    for (auto& c : theta.comps) c.set(0, 0);
    XiElement psi = solve_shift(j, q, theta);
    XiElement back = xi_apply_a(psi) - Rational(l + q) * BSeries::monomial(1, 1, psi.trunc()) * psi;
    CHECK(back.truncated(N - 1).agrees_with(theta.with_cap(back.cap()).truncated(N - 1)));
    for (int h = 0; h <= j; ++h) CHECK(psi.comps[h].trunc() >= N - 1);
    CHECK(psi.log_degree() <= j + 1);
  }
  XiElement bad{Rational(1, 2), zero_elem(1, N)};
  bad.comps[0] = BSeries::constant(1, N);
  CHECK_THROWS_AS(solve_shift(0, 0, bad), Error);
}

TEST_CASE("component_split and multi_rank") {
  XiMultiElement x;
  x.parts.emplace(Rational(1, 3), XiElement::basis(Rational(1, 3), 0, 0, N));
  x.parts.emplace(Rational(1, 2), XiElement::basis(Rational(1, 2), 1, 1, N));
  auto split = component_split(x);
  REQUIRE(split.size() == 2);
  CHECK(split.at(Rational(1, 3)).rank == 1);
  CHECK(split.at(Rational(1, 2)).rank == 2);
  CHECK(multi_rank(x) == 3);
  XiMultiElement single;
  single.parts.emplace(Rational(1, 2), XiElement::basis(Rational(1, 2), 1, 1, N));
  CHECK(component_split(single).size() == 1);
  CHECK(multi_rank(single) == 2);
}

TEST_CASE("monodromy examples") {
  Rational l(1, 5);
  XiTElement d0 = monodromy_defect(XiElement::basis(l, 0, 2, N));
  CHECK(d0.log_degree() < 0);
  XiTElement d1 = monodromy_defect(XiElement::basis(l, 1, 2, N));
  CHECK(d1.coefficient(0, 0) == TPoly::monomial(1, 1));
  CHECK(d1.coefficient(1, 0).is_zero());
  XiTElement d2 = monodromy_defect(XiElement::basis(l, 2, 2, N));
  CHECK(d2.coefficient(1, 0) == TPoly::monomial(1, 1));
  CHECK(d2.coefficient(0, 0) == TPoly::monomial(Rational(1, 2), 2));
}

TEST_CASE("monodromy defect properties") {
  std::mt19937 g(41);
  for (int it = 0; it < 20; ++it) {
    int k = std::uniform_int_distribution<int>(1, 4)(g);
    Rational l = lambda_class(testutil::rand_nonzero(g, 4, 5));
    XiElement phi = rand_xi(g, l, k - 1, N, true);
    XiTElement d = monodromy_defect(phi);
    CHECK(d.log_degree() < phi.log_degree());
    std::vector<XiElement> v{phi};
    for (int i = 0; i < k; ++i) v = defect(v);
    CHECK(all_zero(v));
    // commutes with a and with b
    XiTElement da = monodromy_defect(xi_apply_a(phi));
    XiTElement db = monodromy_defect(b_times(phi));
    for (std::size_t m = 1; m < d.by_t_power.size(); ++m) {
      CHECK(da.by_t_power[m].agrees_with(xi_apply_a(d.by_t_power[m])));
      CHECK(db.by_t_power[m].agrees_with(b_times(d.by_t_power[m])));
    }
  }
}

TEST_CASE("XiElement text form") {
  XiElement x{Rational(1, 2), zero_elem(3, 2)};
  x.comps[0] = testutil::poly({1, 3}).padded(2);
  x.comps[2] = BSeries::monomial(Rational(-5, 2), 2, 2);
  CHECK(x.str() == "(1 + 3*b)*s^(-1/2) + (-(5/2)*b^2)*s^(-1/2)*log(s)^2/2!");
}
