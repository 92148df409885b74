#include <gtest/gtest.h>

#include <random>

#include "ramified/padics.hpp"

using namespace ramified;

namespace {

std::vector<std::uint32_t> digit_values(const IntegerElement& x) {
  std::vector<std::uint32_t> out;
  for (const auto& d : x.digits()) out.push_back(d.coeffs[0]);
  return out;
}

// v_p(C(i,j)) by exact multiplication with 128-bit integers, for small i.
int binomial_val_exact(int i, int j, int p) {
  unsigned __int128 c = 1;
  for (int k = 1; k <= j; ++k) c = c * (i - j + k) / k;
  int v = 0;
  while (c % p == 0) {
    c /= p;
    ++v;
  }
  return v;
}

}  // namespace

TEST(Padics, FromIntegerDigitsQ2) {
  auto q2 = make_base(2, 1, 0, 8);
  EXPECT_EQ(digit_values(IntegerElement::from_integer(q2, -2)),
            (std::vector<std::uint32_t>{0, 1, 1, 1, 1, 1, 1, 1}));
  EXPECT_EQ(digit_values(IntegerElement::from_integer(q2, 0)), std::vector<std::uint32_t>(8, 0));
  EXPECT_EQ(IntegerElement::from_integer(q2, -2).digit(2).coeffs[0], 1u);
}

TEST(Padics, TeichmullerDigitsQ3) {
  auto q3 = make_base(3, 1, 0, 6);
  const auto x = IntegerElement::from_integer(q3, -3);
  const auto ds = digit_values(x);
  EXPECT_EQ(ds, (std::vector<std::uint32_t>{0, 2, 0, 0, 0, 0}));
  // ω(2) = −1 in Z_3.
  EXPECT_EQ(IntegerElement::teichmuller(q3, q3->residue().from_int(2)), IntegerElement::from_integer(q3, -1));
}

TEST(Padics, Valuation) {
  auto q2 = make_base(2, 1, 0, 8);
  EXPECT_EQ(IntegerElement::from_integer(q2, 12).val(), 2);
  EXPECT_EQ(IntegerElement::from_integer(q2, -2).val(), 1);
  EXPECT_FALSE(IntegerElement::from_integer(q2, 0).val().has_value());
  EXPECT_FALSE(IntegerElement::from_integer(q2, 256).val().has_value());
}

TEST(Padics, Arithmetic) {
  auto q2 = make_base(2, 1, 0, 10);
  const auto m1 = IntegerElement::from_integer(q2, -1);
  EXPECT_EQ(m1 * m1, IntegerElement::one(q2));
  EXPECT_EQ(IntegerElement::from_integer(q2, 3) + IntegerElement::from_integer(q2, 5), IntegerElement::from_integer(q2, 8));
  auto q3 = make_base(3, 1, 0, 10);
  const auto two = IntegerElement::from_integer(q3, 2);
  EXPECT_EQ(two * two.unit_inv(), IntegerElement::one(q3));
  EXPECT_THROW(IntegerElement::from_integer(q3, 3).unit_inv(), Error);
}

TEST(Padics, SetDigit) {
  auto q2 = make_base(2, 1, 0, 8);
  EXPECT_EQ(IntegerElement::from_integer(q2, 2).set_digit(3, q2->residue().one()), IntegerElement::from_integer(q2, 10));
  EXPECT_THROW(IntegerElement::from_integer(q2, 2).digit(8), PrecisionInsufficient);
}

TEST(Padics, PrecisionPropagation) {
  auto q2 = make_base(2, 1, 0, 10);
  const auto a = IntegerElement::from_integer(q2, 5, 4);
  const auto b = IntegerElement::from_integer(q2, 7, 9);
  EXPECT_EQ((a + b).precision(), 4);
  EXPECT_EQ((a * b).precision(), 4);
  EXPECT_EQ(IntegerElement::from_integer(q2, 8, 9).div_pi(3).precision(), 6);
}

TEST(Padics, RingLawsRandomized) {
  std::mt19937 rng(11);
  for (auto [p, f, ch] : std::vector<std::tuple<int, int, int>>{{2, 1, 0}, {3, 2, 0}, {2, 2, 2}, {5, 1, 0}, {3, 1, 3}}) {
    auto base = make_base(p, f, ch, 7);
    const auto& k = base->residue();
    auto rnd = [&]() {
      std::map<int, ResidueElement> ds;
      for (int j = 0; j < 7; ++j) ds[j] = k.from_index(rng() % k.q());
      return IntegerElement::from_digits(base, 7, ds);
    };
    for (int t = 0; t < 30; ++t) {
      const auto x = rnd(), y = rnd(), z = rnd();
      EXPECT_EQ((x * y) * z, x * (y * z));
      EXPECT_EQ(x * (y + z), x * y + x * z);
      EXPECT_EQ(x + y - y, x);
      const auto vx = x.val(), vy = y.val();
      if (vx && vy && *vx + *vy < 7) {
        EXPECT_EQ((x * y).val(), *vx + *vy);
      }
      // Round trip through digits.
      std::map<int, ResidueElement> ds;
      const auto digits = x.digits();
      for (int j = 0; j < 7; ++j) ds[j] = digits[j];
      EXPECT_EQ(IntegerElement::from_digits(base, 7, ds), x);
      if (x.val() == std::optional<int>(0)) {
        EXPECT_EQ(x * x.unit_inv(), IntegerElement::one(base));
      }
    }
  }
}

TEST(Padics, TeichmullerIsFixedByFrobeniusPower) {
  for (auto [p, f] : std::vector<std::pair<int, int>>{{2, 2}, {3, 2}, {5, 1}, {7, 1}}) {
    auto base = make_base(p, f, 0, 6);
    for (std::uint64_t i = 0; i < base->q(); ++i) {
      const auto w = IntegerElement::teichmuller(base, base->residue().from_index(i));
      EXPECT_EQ(w.pow(base->q()), w);
      EXPECT_EQ(w.residue(), base->residue().from_index(i));
    }
  }
}

TEST(Padics, BinomialValuationKummer) {
  for (int p : {2, 3, 5})
    for (int i = 0; i <= 40; ++i)
      for (int j = 0; j <= i; ++j) EXPECT_EQ(binomial_val(i, j, p), binomial_val_exact(i, j, p));
  auto q3 = make_base(3, 1, 0, 5);
  EXPECT_EQ(IntegerElement::binomial(q3, 9, 3, 5), IntegerElement::from_integer(q3, 84));
}

TEST(Padics, NonTrivialUniformizerUnit) {
  // π_K = 3·(−1) = −3 over Q_3.
  auto base = make_base(3, 1, 0, 6, {{0, make_field(3, 1)->from_int(2)}});
  const auto pi = IntegerElement::pi_power(base, 1, 6);
  EXPECT_EQ(pi, IntegerElement::from_integer(base, -3));
  const auto x = IntegerElement::from_integer(base, 3);
  EXPECT_EQ(x.val(), 1);
  EXPECT_EQ(x.digit(1), base->residue().from_int(2));
  EXPECT_EQ(x.div_pi(1), IntegerElement::from_integer(base, -1, 5));
}

TEST(Padics, CharacteristicP) {
  auto base = make_base(2, 1, 2, 6);
  const auto t = IntegerElement::pi_power(base, 1, 6);
  const auto x = IntegerElement::one(base) + t;
  EXPECT_EQ(x * x, IntegerElement::one(base) + t * t);
  EXPECT_EQ(IntegerElement::from_integer(base, 2), IntegerElement::zero(base));
}
