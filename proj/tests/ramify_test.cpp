#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "ramified/ramify.hpp"

using namespace ramified;

namespace {

using Vertices = std::vector<std::pair<std::int64_t, std::int64_t>>;

EisensteinPolynomial poly(std::uint32_t p, const std::vector<std::int64_t>& low, int prec = 12) {
  return EisensteinPolynomial::from_integers(make_base(p, 1, 0, prec), low);
}

ResidueElement r(const EisensteinPolynomial& f, int v) { return f.base()->residue().from_int(v); }

}  // namespace

TEST(Eisenstein, Check) {
  EXPECT_NO_THROW(check_eisenstein(poly(2, {2, 2})));
  try {
    check_eisenstein(poly(2, {4, 0}));
    FAIL();
  } catch (const NotEisenstein& e) {
    EXPECT_EQ(e.index(), 0);
  }
  EXPECT_NO_THROW(check_eisenstein(poly(3, {3, 0, 0})));
  EXPECT_THROW(check_eisenstein(poly(3, {3, 1, 0})), NotEisenstein);
}

TEST(Polygon, WorkedExamples) {
  EXPECT_EQ(ram_polygon(poly(2, {2, 2})).vertices, (Vertices{{1, 1}, {2, 0}}));
  EXPECT_EQ(ram_polygon(poly(2, {2, 0})).vertices, (Vertices{{1, 2}, {2, 0}}));
  EXPECT_EQ(ram_polygon(poly(2, {2, 0, 0, 0})).vertices, (Vertices{{1, 8}, {2, 4}, {4, 0}}));
  EXPECT_EQ(ram_data(poly(2, {2, 2})).breaks, (std::vector<Rational>{1}));
  EXPECT_EQ(ram_data(poly(2, {2, 0})).breaks, (std::vector<Rational>{2}));
  EXPECT_EQ(ram_data(poly(2, {2, 0, 0, 0})).breaks, (std::vector<Rational>{2, 4}));
}

TEST(RamData, Invariants) {
  const auto d1 = ram_data(poly(2, {2, 2}));
  EXPECT_EQ(d1.tau, (std::vector<Rational>{1, 0}));
  EXPECT_EQ(d1.xi, (std::vector<Rational>{1, 0}));
  EXPECT_EQ(d1.sigma, (std::vector<Rational>{2, 0}));
  EXPECT_EQ(d1.phi(3), Rational(2));

  const auto d2 = ram_data(poly(2, {2, 0, 0, 0}));
  EXPECT_EQ(d2.tau, (std::vector<Rational>{4, 2, 0}));
  EXPECT_EQ(d2.xi, (std::vector<Rational>{8, 4, 0}));
  EXPECT_EQ(d2.sigma, (std::vector<Rational>{12, 8, 0}));
  EXPECT_EQ(d2.phi(2), Rational(2));
  EXPECT_EQ(d2.phi(4), Rational(3));
  EXPECT_EQ(d2.psi(3), Rational(4));

  const auto tame = ram_data(poly(3, {3, 0}));
  EXPECT_EQ(tame.breaks, (std::vector<Rational>{0}));
  EXPECT_EQ(tame.phi(1), Rational(1, 2));
  EXPECT_EQ(tame.different(), 1);
}

TEST(RamData, Different) {
  EXPECT_EQ(different_val(poly(2, {2, 2})), 2);
  EXPECT_EQ(different_val(poly(2, {2, 0})), 3);
  EXPECT_EQ(different_val(poly(2, {-2, 0})), 3);
  EXPECT_EQ(different_val(poly(2, {2, 0, 0, 0})), 11);
}

TEST(RamData, PhiPsiInverse) {
  const auto d = ram_data(poly(2, {2, 0, 0, 0}));
  std::mt19937 rng(3);
  for (int t = 0; t < 200; ++t) {
    const Rational x(static_cast<std::int64_t>(rng() % 500), 1 + static_cast<std::int64_t>(rng() % 37));
    EXPECT_EQ(d.psi(d.phi(x)), x);
    EXPECT_EQ(d.phi(d.psi(x)), x);
  }
  EXPECT_EQ(d.phi(0), Rational(0));
}

TEST(Residual, WorkedExamples) {
  const auto f = poly(2, {2, 2});
  auto S = residual_poly(f, 1);
  EXPECT_EQ(S.body.coeffs().size(), 2u);
  EXPECT_EQ(S.body.coeffs().at(0), r(f, 1));
  EXPECT_EQ(S.body.coeffs().at(1), r(f, 1));

  const auto g = poly(2, {2, 0});
  S = residual_poly(g, 2);
  EXPECT_EQ(S.body.coeffs().size(), 2u);

  const auto h = poly(2, {2, 0, 0, 0});
  S = residual_poly(h, 2);
  EXPECT_EQ(S.body.coeffs(), (std::map<int, ResidueElement>{{1, r(h, 1)}, {2, r(h, 1)}}));
  S = residual_poly(h, 4);
  EXPECT_EQ(S.body.coeffs(), (std::map<int, ResidueElement>{{0, r(h, 1)}, {1, r(h, 1)}}));
}

TEST(Residual, TameClosedForm) {
  // S_0 = (1+T^{p^s})^{n'} − 1 evaluated exhaustively on F_9.
  auto base = make_base(3, 2, 0, 8);
  std::mt19937 rng(5);
  const auto f = oracle::random_eisenstein(base, 6, rng);
  const auto S = residual_poly(f, 0);
  const auto& k = base->residue();
  for (std::uint64_t i = 0; i < k.q(); ++i) {
    const auto x = k.from_index(i);
    const auto expect = k.sub(k.pow(k.add(k.one(), k.pow(x, 3)), 2), k.one());
    EXPECT_EQ(S.eval(k, x), expect);
  }
}

TEST(Support, Quadratics) {
  using K = SupportEntry::Kind;
  const auto s1 = reduced_support(ram_data(poly(2, {2, 2})));
  EXPECT_EQ(s1, (std::vector<SupportEntry>{{1, 1, K::Range, -1}, {0, 2, K::Exception, 0}}));
  const auto s2 = reduced_support(ram_data(poly(2, {2, 0})));
  EXPECT_EQ(s2, (std::vector<SupportEntry>{{1, 2, K::Range, -1}, {0, 3, K::Exception, 0}}));
}

TEST(Support, DegreePShape) {
  for (std::uint32_t p : {2u, 3u}) {
    for (int t = 1; t <= static_cast<int>(p); ++t) {
      if (t % p == 0 && t != static_cast<int>(p)) continue;
      const int n = static_cast<int>(p);
      const auto d = make_ramification_data(n, p, {Rational(t)}, {n, 1});
      for (const auto& e : reduced_support(d)) {
        if (e.i == 0) {
          EXPECT_EQ(e.kind, SupportEntry::Kind::Exception);
          EXPECT_EQ(e.j, t + 1);
        } else {
          EXPECT_GE(n * e.j + e.i, (n - 1) * t + n);
          EXPECT_LT(n * e.j + e.i, n * t + n);
        }
      }
    }
  }
}

class RandomPolys : public ::testing::TestWithParam<std::tuple<int, int, int>> {};

TEST_P(RandomPolys, PolygonIdentities) {
  const auto [p, f, n] = GetParam();
  auto base = make_base(p, f, 0, 10);
  std::mt19937 rng(p * 100 + n);
  for (int trial = 0; trial < 30; ++trial) {
    const auto poly = oracle::random_eisenstein(base, n, rng, 4);
    const auto terms = phi_terms(poly);
    const auto d = ram_data(ram_polygon(poly, terms), n, p);
    // v_L(Φ_j) against arithmetic in O_L.
    for (int j = 1; j <= n; ++j) {
      if (terms.val[j] < 0) continue;
      EXPECT_EQ(oracle::phi_val(poly, j), std::optional<int>(static_cast<int>(terms.val[j])));
    }
    // nφ(m) = min_j v_L(Φ_j) + jm.
    for (int m = 0; m <= ceil(d.last_break()) + 2; ++m) {
      std::int64_t best = std::int64_t(1) << 40;
      for (int j = 1; j <= n; ++j)
        if (terms.val[j] >= 0) best = std::min<std::int64_t>(best, terms.val[j] + std::int64_t(j) * m);
      EXPECT_EQ(d.nphi(Rational(m)), Rational(best));
    }
    // N(p^ℓ) = ξ_ℓ/n, ξ_j ≤ n(ℓ−j) + ξ_ℓ, τ_ℓ(p^{ℓ+1} − p^ℓ) ≤ n.
    for (int l = 0; l <= d.s; ++l) {
      EXPECT_EQ(d.polygon.N(Rational(static_cast<std::int64_t>(ipow(p, l))), n), d.xi[l] / n);
      for (int j = 0; j < l; ++j) EXPECT_LE(d.xi[j], Rational(n * (l - j)) + d.xi[l]);
      EXPECT_LE(d.tau[l] * Rational(static_cast<std::int64_t>(ipow(p, l + 1) - ipow(p, l))), Rational(n));
    }
    EXPECT_EQ(d.xi[d.s], Rational(0));
    // S_m has more than one monomial exactly at integer breaks, and matches
    // the residue computed in O_L.
    for (int m = 1; m <= ceil(d.last_break()); ++m) {
      const auto S = residual_poly(poly, d, terms, m);
      EXPECT_EQ(S.body.monomial_count() > 1, d.is_integer_break(Rational(m)));
      const Rational E = d.nphi(Rational(m));
      for (int a = 0; ipow(p, a) <= static_cast<std::uint64_t>(n); ++a) {
        const auto it = S.body.coeffs().find(a);
        const auto expect = oracle::residual_coeff(poly, m, a, static_cast<int>(E.numerator()));
        EXPECT_EQ(it == S.body.coeffs().end() ? base->residue().zero() : it->second, expect);
      }
    }
  }
}

INSTANTIATE_TEST_SUITE_P(Fields, RandomPolys,
                         ::testing::Values(std::make_tuple(2, 1, 2), std::make_tuple(2, 1, 4), std::make_tuple(3, 1, 3),
                                           std::make_tuple(2, 2, 4), std::make_tuple(3, 1, 6), std::make_tuple(2, 1, 6)));

TEST(Polygon, PrecisionInsufficient) {
  auto base = make_base(2, 1, 0, 12);
  auto f = EisensteinPolynomial(base, {IntegerElement::from_integer(base, 2, 12), IntegerElement::from_integer(base, 0, 1)});
  EXPECT_THROW(ram_polygon(f), PrecisionInsufficient);
}

TEST(Skeleton, FromUpperBreaks) {
  const auto d = data_from_upper(2, 1, {{Rational(1), 1}});
  EXPECT_EQ(d.breaks, (std::vector<Rational>{1}));
  EXPECT_EQ(d.n, 2);
  const auto cyc = data_from_upper(3, 2, {{Rational(1), 1}});
  EXPECT_EQ(cyc.n, 6);
  EXPECT_EQ(cyc.breaks, (std::vector<Rational>{0, 2}));
  EXPECT_EQ(cyc.polygon.vertices, (Vertices{{1, 4}, {3, 0}, {6, 0}}));
  EXPECT_EQ(cyc.different(), 9);
}
