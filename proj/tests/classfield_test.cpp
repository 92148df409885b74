#include <gtest/gtest.h>

#include "oracles.hpp"
#include "ramified/classfield.hpp"
#include "ramified/identify.hpp"

using namespace ramified;

namespace {

FpMatrix identity(std::uint32_t p, int f) {
  FpMatrix m(p, f, f);
  for (int t = 0; t < f; ++t) m(t, t) = 1;
  return m;
}

NormGroupSpec spec(std::uint32_t p, std::int64_t pin, int tame, std::vector<int> us, int prec = 10) {
  NormGroupSpec s;
  s.base = make_base(p, 1, 0, prec);
  s.pi_N = IntegerElement::from_integer(s.base, pin);
  s.tame_order = tame;
  for (int u : us) s.wild.push_back({u, identity(p, 1)});
  return s;
}

EisensteinPolynomial poly(const BasePtr& base, const std::vector<std::int64_t>& low) {
  return EisensteinPolynomial::from_integers(base, low);
}

// Every unit norm at levels prime to p, checked against the walk.
void expect_round_trip(const NormGroup& N, const EisensteinPolynomial& f) {
  const auto d = ram_data(f);
  const auto& k = f.base()->residue();
  for (std::int64_t m = 1; m <= ceil(d.last_break()); ++m)
    for (int a = 0; a < f.base()->f(); ++a) {
      const auto u = norm_unit(f, k.basis(a), static_cast<int>(m));
      EXPECT_TRUE(N.contains_unit(u)) << f.str() << " m=" << m;
    }
}

}  // namespace

TEST(NormGroup, Validation) {
  EXPECT_NO_THROW(NormGroup(spec(2, 2, 1, {1})));
  EXPECT_EQ(NormGroup(spec(2, 2, 1, {1})).degree(), 2);
  EXPECT_EQ(NormGroup(spec(3, 3, 2, {})).degree(), 2);
  auto bad = spec(2, 2, 1, {1});
  bad.wild[0].nu = FpMatrix(2, 1, 1);
  EXPECT_THROW(NormGroup{bad}, InvalidSpec);
  EXPECT_THROW(NormGroup(spec(3, 3, 4, {})), InvalidSpec);
  EXPECT_THROW(NormGroup(spec(2, 2, 1, {2, 1})), InvalidSpec);
  // 9 = (1+2)² lands in U_3 with nonzero class, so ν_3 cannot kill N ∩ U_3.
  EXPECT_THROW(NormGroup(spec(2, 2, 1, {3})), InvalidSpec);
  EXPECT_THROW(NormGroup(spec(2, 4, 1, {1})), InvalidSpec);
}

TEST(NormGroup, Membership) {
  const NormGroup N(spec(2, 2, 1, {1}));
  const auto& b = N.base();
  EXPECT_TRUE(N.contains(IntegerElement::from_integer(b, 2)));
  EXPECT_TRUE(N.contains(IntegerElement::from_integer(b, 5)));
  EXPECT_FALSE(N.contains(IntegerElement::from_integer(b, 3)));
  EXPECT_FALSE(N.contains(IntegerElement::from_integer(b, 6)));
  const NormGroup T(spec(3, 3, 2, {}));
  EXPECT_TRUE(T.contains(IntegerElement::from_integer(T.base(), 4)));
  EXPECT_FALSE(T.contains(IntegerElement::from_integer(T.base(), 2)));
  // Q_3(ζ_9): ⟨3⟩ × U_2.
  const NormGroup Z(spec(3, 3, 2, {1}));
  EXPECT_TRUE(Z.contains(IntegerElement::from_integer(Z.base(), 10)));
  EXPECT_FALSE(Z.contains(IntegerElement::from_integer(Z.base(), 4)));
  EXPECT_FALSE(Z.contains(IntegerElement::from_integer(Z.base(), 7)));
  EXPECT_FALSE(Z.contains(IntegerElement::from_integer(Z.base(), 2)));
}

TEST(Skeleton, Examples) {
  const auto sk = skeleton(NormGroup(spec(2, 2, 1, {1})));
  EXPECT_EQ(sk.data.n, 2);
  EXPECT_EQ(sk.data.breaks, std::vector<Rational>{Rational(1)});
  ASSERT_EQ(sk.unknowns.size(), 1u);
  EXPECT_EQ(std::make_pair(sk.unknowns[0].i, sk.unknowns[0].j), std::make_pair(1, 1));
  EXPECT_EQ(sk.start.str(), "T^2 + 2");

  const auto tame = skeleton(NormGroup(spec(3, 3, 2, {})));
  EXPECT_TRUE(tame.unknowns.empty());

  const auto z9 = skeleton(NormGroup(spec(3, 3, 2, {1})));
  EXPECT_EQ(z9.data.n, 6);
  ASSERT_EQ(z9.data.breaks.size(), 2u);
  EXPECT_EQ(z9.data.breaks[0], Rational(0));
  EXPECT_EQ(z9.data.breaks[1], z9.data.psi(Rational(1)));
  EXPECT_FALSE(z9.unknowns.empty());
}

TEST(NormUnit, Examples) {
  auto base = make_base(2, 1, 0, 10);
  const auto& k = base->residue();
  EXPECT_EQ(norm_unit(poly(base, {2, 2}), k.one(), 1).truncated(2), IntegerElement::one(base, 2));
  // N(1 + ρ) ≡ 3 mod 4 and N(1 + ρ²) ≡ (1 − g_0)² ≡ 1 mod 8 for T² + 2.
  EXPECT_EQ(norm_unit(poly(base, {2, 0}), k.one(), 1).truncated(2), IntegerElement::from_integer(base, 3, 2));
  EXPECT_EQ(norm_unit(poly(base, {2, 0}), k.one(), 2).truncated(3), IntegerElement::one(base, 3));
  EXPECT_EQ(norm_unit(poly(base, {2, 0}), k.zero(), 2), IntegerElement::one(base, norm_unit(poly(base, {2, 0}), k.zero(), 2).precision()));
}

TEST(Construct, Examples) {
  EXPECT_EQ(construct(spec(2, 2, 1, {1})).str(), "T^2 + 2*T + 2");
  EXPECT_EQ(construct(spec(2, -2, 1, {1})).str(), "T^2 + 2*T - 2");
  EXPECT_EQ(construct(spec(3, 3, 2, {})).str(), "T^2 + 3");
}

TEST(Construct, Cyclotomic) {
  // Q_2(ζ_4), Q_2(ζ_8), Q_3(ζ_9) against the minimal polynomials of ζ − 1.
  struct Case {
    NormGroupSpec s;
    std::vector<std::int64_t> low;
  };
  std::vector<Case> cases{{spec(2, 2, 1, {1}, 12), {2, 2}},
                          {spec(2, 2, 1, {1, 2}, 12), {2, 4, 6, 4}},
                          {spec(3, 3, 2, {1}, 12), {3, 9, 18, 21, 15, 6}}};
  for (const auto& c : cases) {
    const NormGroup N(c.s);
    ConstructTrace trace;
    const auto f = construct(N, &trace);
    const auto g = poly(c.s.base, c.low);
    EXPECT_EQ(is_isomorphic(f, g).kind, Verdict::Kind::Isomorphic) << f.str();
    const auto ms = all_reduced(f);
    EXPECT_EQ(ms.entries.size(), 1u) << f.str();
    EXPECT_EQ(ms.total(), N.degree());
    EXPECT_EQ(ms.entries.begin()->first, f);
    expect_round_trip(N, f);
    for (const auto& st : trace.stages) {
      EXPECT_GE(Rational(st.m), Rational(1));
      EXPECT_LE(Rational(st.m), ram_data(f).last_break());
    }
  }
}

TEST(Construct, RejectsNonNormData) {
  // No tame part over F_2.
  EXPECT_THROW(construct(spec(2, 2, 2, {1})), InvalidSpec);
}

// Varying f_{i,j} moves the norm class at the stage layer by f̄λθ^{p^ℓ}, and
// leaves lower layers alone.
TEST(NormUnit, PerturbationMatchesLambda) {
  for (const auto& s : {spec(2, 2, 1, {1}, 12), spec(2, 2, 1, {1, 2}, 12), spec(3, 3, 2, {1}, 12), spec(3, 3, 1, {1}, 12)}) {
    const NormGroup N(s);
    const auto sk = skeleton(N);
    const auto& d = sk.data;
    const auto& k = s.base->residue();
    const int n = d.n;
    for (const auto& e : sk.unknowns) {
      const auto C = cij(d, e.i, e.j);
      for (int m = 1; Rational(m) <= d.last_break(); ++m) {
        if (vp(static_cast<std::uint64_t>(m), d.p) != 0) continue;
        const Rational c = C(Rational(m));
        const auto theta = k.one();
        const auto a0 = norm_unit(sk.start, theta, m);
        const auto a1 = norm_unit(sk.start.with_digit(e.i, e.j, k.one()), theta, m);
        // Unchanged modulo π^u whenever u ≤ C/n − 1.
        const Rational top = c / n - 1;
        const int u = static_cast<int>(floor(top));
        if (u >= 1) {
          EXPECT_TRUE(a0.truncated(u).congruent(a1.truncated(u))) << e.i << "," << e.j << " m=" << m;
        }
        if (!is_integer(top) || !is_integer(Rational(e.i + static_cast<std::int64_t>(ipow(d.p, d.level(e.i))) * m, n)))
          continue;
        const auto diff = (a1 - a0).truncated(u + 1);
        const auto lam = lambda_coeff(sk.start, d, e.i, m);
        const auto expect = k.mul(lam, k.pow(theta, ipow(d.p, d.level(e.i))));
        const auto dv = diff.val();
        ASSERT_TRUE(dv.has_value() || k.is_zero(expect));
        if (dv) {
          EXPECT_EQ(*dv, u);
          // a0 is a unit ≡ 1 at this depth only up to lower-layer terms; compare quotients.
          const auto q = (a1 * a0.unit_inv() - IntegerElement::one(s.base, a1.precision())).div_pi(u).residue();
          EXPECT_EQ(q, expect) << e.i << "," << e.j << " m=" << m << " p=" << d.p;
        }
      }
    }
  }
}

TEST(Construct, GaloisRoundTrip) {
  std::vector<NormGroupSpec> specs{spec(3, 3, 1, {1}, 12), spec(3, 3, 1, {1, 2}, 12), spec(5, 5, 1, {1}, 12),
                                   spec(3, -3, 2, {1}, 12), spec(5, 10, 4, {}, 12)};
  // Over F_4: ν_1 = first coordinate, and both coordinates.
  for (const std::vector<std::vector<std::uint32_t>>& rows : {std::vector<std::vector<std::uint32_t>>{{1, 0}},
                                                               std::vector<std::vector<std::uint32_t>>{{1, 0}, {0, 1}}}) {
    NormGroupSpec s;
    s.base = make_base(2, 2, 0, 12);
    s.pi_N = IntegerElement::from_integer(s.base, 2);
    FpMatrix m(2, rows.size(), 2);
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (int c = 0; c < 2; ++c) m(r, c) = rows[r][c];
    s.wild.push_back({1, m});
    specs.push_back(s);
  }
  for (const auto& s : specs) {
    const NormGroup N(s);
    const auto f = construct(N);
    EXPECT_EQ(f.degree(), N.degree());
    // N(π) = (−1)^n f_0.
    EXPECT_TRUE(N.contains(f.degree() % 2 ? -f.coeff(0) : f.coeff(0)));
    const auto ms = all_reduced(f);
    ASSERT_EQ(ms.entries.size(), 1u) << f.str();
    EXPECT_EQ(ms.entries.begin()->second, N.degree()) << f.str();
    expect_round_trip(N, f);
  }
}
