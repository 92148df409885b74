#pragma once

// Deciding whether two Eisenstein polynomials generate the same extension:
// cheap criteria on the leading difference, the congruence filter, the full
// comparison of reduced sets, and a brute-force root counter.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "ramified/errors.hpp"
#include "ramified/rational.hpp"
#include "ramified/reduce.hpp"

namespace ramified {

struct DiffReport {
  std::int64_t v = 0;  // v_L(f(π) − g(π))
  int i = 0;
  Rational r;  // ψ(v/n − 1)
  ResidueElement residual;
};

enum class RuleOut { PolygonMismatch, NonIntegerLevel, ResidualNotInImage, CongruenceFail };

struct Verdict {
  enum class Kind { RuledOut, Inconclusive, Isomorphic, NonIsomorphic };
  Kind kind = Kind::Inconclusive;
  std::optional<RuleOut> reason;
  std::string detail;

  bool operator==(const Verdict& o) const { return kind == o.kind && reason == o.reason; }
};

inline std::string to_string(RuleOut r) {
  switch (r) {
    case RuleOut::PolygonMismatch: return "POLYGON_MISMATCH";
    case RuleOut::NonIntegerLevel: return "NON_INTEGER_LEVEL";
    case RuleOut::ResidualNotInImage: return "RESIDUAL_NOT_IN_IMAGE";
    case RuleOut::CongruenceFail: return "CONGRUENCE_FAIL";
  }
  return "?";
}

inline std::string to_string(const Verdict& v) {
  switch (v.kind) {
    case Verdict::Kind::RuledOut: return "RuledOut(" + to_string(*v.reason) + ")";
    case Verdict::Kind::Inconclusive: return "Inconclusive";
    case Verdict::Kind::Isomorphic: return "Isomorphic";
    case Verdict::Kind::NonIsomorphic: return "NonIsomorphic";
  }
  return "?";
}

namespace detail {

inline void require_comparable(const EisensteinPolynomial& f, const EisensteinPolynomial& g) {
  if (f.degree() != g.degree()) throw Error("polynomials of different degree");
  if (f.base() != g.base()) throw Error("polynomials over different base fields");
}

}  // namespace detail

/// The monomial (f_i − g_i)π^i of least valuation and its level.
inline DiffReport lead_diff(const EisensteinPolynomial& f, const EisensteinPolynomial& g) {
  detail::require_comparable(f, g);
  const int n = f.degree();
  std::optional<DiffReport> best;
  int k = 0;
  IntegerElement unit;
  for (int i = 0; i < n; ++i) {
    const IntegerElement d = f.coeff(i) - g.coeff(i);
    const auto v = d.val();
    if (!v) continue;
    const std::int64_t w = static_cast<std::int64_t>(n) * *v + i;
    if (!best || w < best->v) {
      best = DiffReport{w, i, Rational(0), {}};
      k = *v;
      unit = d.div_pi(*v);
    }
  }
  if (!best) throw IndistinguishablePolynomials("f and g agree to the working precision");
  const auto& kf = f.base()->residue();
  best->residual = kf.mul(unit.residue(), kf.inv(kf.pow(f.eta(), static_cast<std::uint64_t>(k))));
  best->r = ram_data(f).psi(Rational(best->v, n) - 1);
  return *best;
}

/// Largest m with f ≡ g mod Σ_j P_{p^j}(ξ_j + n + p^j m), using the polygon of f.
inline ExtRational congruence_level(const EisensteinPolynomial& f, const EisensteinPolynomial& g) {
  detail::require_comparable(f, g);
  const auto d = ram_data(f);
  const int n = f.degree();
  ExtRational level = ExtRational::pos_inf();
  for (int i = 0; i < n; ++i) {
    const auto v = (f.coeff(i) - g.coeff(i)).val();
    if (!v) continue;
    const int a = d.level(static_cast<std::uint64_t>(i));
    std::optional<Rational> best;
    for (int j = 0; j <= a; ++j) {
      const Rational x = (Rational(static_cast<std::int64_t>(n) * *v + i - n) - d.xi[j]) /
                         static_cast<std::int64_t>(ipow(d.p, j));
      if (!best || x > *best) best = x;
    }
    level = std::min(level, ExtRational(*best));
  }
  return level;
}

/// The cheap criteria, cheapest first.  RuledOut means f cannot be reduced
/// greedily to g; for Galois extensions that decides non-isomorphism.
inline Verdict greedy_filter(const EisensteinPolynomial& f, const EisensteinPolynomial& g) {
  detail::require_comparable(f, g);
  const auto df = ram_data(f);
  if (df.polygon.vertices != ram_data(g).polygon.vertices)
    return {Verdict::Kind::RuledOut, RuleOut::PolygonMismatch, "ramification polygons differ"};
  DiffReport rep;
  try {
    rep = lead_diff(f, g);
  } catch (const IndistinguishablePolynomials&) {
    return {Verdict::Kind::Isomorphic, std::nullopt, "equal at working precision"};
  }
  if (Rational(rep.v) > df.krasner_bound())
    return {Verdict::Kind::Isomorphic, std::nullopt, "difference beyond the Krasner bound"};
  if (!is_integer(rep.r))
    return {Verdict::Kind::RuledOut, RuleOut::NonIntegerLevel, "level r = " + to_string(rep.r)};
  const auto& kf = f.base()->residue();
  if (rep.r == Rational(0)) {
    // Step 0 rescales η̄ by n-th powers.
    const auto ratio = kf.mul(g.eta(), kf.inv(f.eta()));
    if (!kf.nth_root(ratio, static_cast<std::uint64_t>(f.degree())))
      return {Verdict::Kind::RuledOut, RuleOut::ResidualNotInImage, "η̄ ratio is not an n-th power"};
  } else if (df.is_integer_break(rep.r)) {
    const auto S = residual_poly(f, static_cast<int>(rep.r.numerator()));
    const auto A = lin_analyze(S.body, f.base()->residue_ptr());
    if (!A.in_image(rep.residual))
      return {Verdict::Kind::RuledOut, RuleOut::ResidualNotInImage,
              "residual " + kf.str(rep.residual) + " not in the image of S_" + to_string(rep.r)};
  }
  const auto level = congruence_level(f, g);
  if (level < ExtRational(rep.r))
    return {Verdict::Kind::RuledOut, RuleOut::CongruenceFail, "congruence fails at level " + to_string(rep.r)};
  return {Verdict::Kind::Inconclusive, std::nullopt, "level r = " + to_string(rep.r)};
}

/// Compares the sets of all reduced polynomials.
inline Verdict is_isomorphic(const EisensteinPolynomial& f, const EisensteinPolynomial& g, const ReduceOptions& opts = {}) {
  detail::require_comparable(f, g);
  if (ram_data(f).polygon.vertices != ram_data(g).polygon.vertices)
    return {Verdict::Kind::NonIsomorphic, RuleOut::PolygonMismatch, "ramification polygons differ"};
  const auto a = all_reduced(f, opts).distinct();
  const auto b = all_reduced(g, opts).distinct();
  std::size_t common = 0;
  for (const auto& x : a)
    if (std::find(b.begin(), b.end(), x) != b.end()) ++common;
  if (common == 0) return {Verdict::Kind::NonIsomorphic, std::nullopt, "disjoint reduced sets"};
  if (common == a.size() && common == b.size()) return {Verdict::Kind::Isomorphic, std::nullopt, "equal reduced sets"};
  throw InternalInconsistency("reduced sets overlap partially");
}

/// Number of roots of f in K[T]/(g), by digit-by-digit search over expansions
/// Σ ω(a_k)ρ^k.  Does not use polygons or reductions.
inline std::uint64_t root_count(const EisensteinPolynomial& f, const EisensteinPolynomial& g, int depth = 0,
                                std::uint64_t budget = 2'000'000) {
  detail::require_comparable(f, g);
  const int n = f.degree();
  const auto& base = f.base();
  const auto& kf = base->residue();
  const auto eval = [&](const EisensteinPolynomial& ring, const ExtensionElement& x, int prec) {
    ExtensionElement acc = ExtensionElement::one(ring, prec);
    for (int i = n - 1; i >= 0; --i)
      acc = acc * x + ExtensionElement::from_base(ring, f.coeff(i).truncated(std::min(prec, f.coeff(i).precision())));
    return acc;
  };
  // d = v(f'(π_f)) in K[T]/(f) bounds the separation of the roots.
  const int fprec = f.precision();
  ExtensionElement deriv = ExtensionElement::zero(f, fprec);
  const ExtensionElement pif = ExtensionElement::pi_power(f, 1, fprec);
  ExtensionElement pw = ExtensionElement::one(f, fprec);
  for (int i = 1; i <= n; ++i) {
    IntegerElement c = IntegerElement::from_integer(base, i, fprec);
    if (i < n) c = c * f.coeff(i);
    deriv = deriv + pw.scaled(c);
    pw = pw * pif;
  }
  const auto dv = deriv.val();
  if (!dv) throw PrecisionInsufficient(fprec * 2, "derivative vanishes to working precision");
  const int d = *dv;
  const int sep = d - n + 2;
  const int D = std::max(depth, 2 * d - 2 * n + 3);
  const int need = (D + n + 1 + n - 1) / n + 1;
  if (g.precision() < need) throw PrecisionInsufficient(need, "root search needs more digits of g");
  const int prec = g.precision();
  const ExtensionElement rho = ExtensionElement::pi_power(g, 1, prec);
  std::vector<ExtensionElement> rho_pow{ExtensionElement::one(g, prec)};
  for (int k = 1; k <= D; ++k) rho_pow.push_back(rho_pow.back() * rho);
  std::vector<IntegerElement> digits;
  for (std::uint64_t a = 0; a < kf.q(); ++a) digits.push_back(IntegerElement::teichmuller(base, kf.from_index(a), prec));

  std::uint64_t nodes = 0;
  std::vector<ExtensionElement> leaves;
  std::vector<std::pair<int, ExtensionElement>> stack{{0, ExtensionElement::zero(g, prec)}};
  while (!stack.empty()) {
    auto [k, x] = stack.back();
    stack.pop_back();
    if (k == D) {
      leaves.push_back(x);
      continue;
    }
    for (std::uint64_t a = (k == 0 ? 1 : 0); a < kf.q(); ++a) {
      if (++nodes > budget) throw SearchBudgetExceeded("root search exceeded its node budget");
      ExtensionElement y = x + rho_pow[k + 1].scaled(digits[a]);
      if (eval(g, y, prec).val_lower_bound() < k + 1 + n) continue;
      stack.emplace_back(k + 1, std::move(y));
    }
  }
  // Leaves near one root are closer than any two distinct roots.
  std::vector<ExtensionElement> reps;
  for (const auto& x : leaves) {
    bool seen = false;
    for (const auto& y : reps)
      if ((x - y).val_lower_bound() > sep) {
        seen = true;
        break;
      }
    if (!seen) reps.push_back(x);
  }
  return reps.size();
}

}  // namespace ramified
