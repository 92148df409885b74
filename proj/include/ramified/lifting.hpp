#pragma once

// Recovering the minimal polynomial of a deformed uniformizer without
// resultants: compose f with F(T) = T + (terms of degree ≥ 2), then peel off
// the ϝ-minimal monomial of degree ≥ n until everything left there is below
// the target precision.

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "ramified/errors.hpp"
#include "ramified/padics.hpp"
#include "ramified/ramify.hpp"

namespace ramified {

/// Dense polynomial over O_K, index = degree; empty slots are zero.
using OPoly = std::vector<IntegerElement>;

/// (ϝ_1, ϝ_2) = (v_L(c) + r, −r) for a monomial cT^r.
struct MixedValuation {
  std::int64_t f1;
  std::int64_t f2;
  friend auto operator<=>(const MixedValuation&, const MixedValuation&) = default;
};

inline std::optional<MixedValuation> mixed_valuation(const IntegerElement& c, int r, int n) {
  const auto v = c.val();
  if (!v) return std::nullopt;
  return MixedValuation{static_cast<std::int64_t>(n) * *v + r, -r};
}

struct LiftOptions {
  int max_iterations = 200000;
};

namespace detail {

inline bool negligible(const IntegerElement& c, int r, int n, std::int64_t target) {
  const auto v = c.val();
  return !v || static_cast<std::int64_t>(n) * *v + r >= target;
}

// a·b with monomials of ϝ_1 ≥ target dropped.
inline OPoly mul_truncated(const OPoly& a, const OPoly& b, int n, std::int64_t target, const BasePtr& base, int prec) {
  const std::size_t len = std::min<std::size_t>(a.size() + b.size() - 1, static_cast<std::size_t>(target) + 1);
  OPoly out(len, IntegerElement::zero(base, prec));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size() && i + j < len; ++j) {
      if (b[j].is_zero()) continue;
      out[i + j] += a[i] * b[j];
    }
  }
  for (std::size_t r = 0; r < out.size(); ++r)
    if (negligible(out[r], static_cast<int>(r), n, target)) out[r] = IntegerElement::zero(base, prec);
  while (out.size() > 1 && out.back().is_zero()) out.pop_back();
  return out;
}

}  // namespace detail

/// The lifting step iterated to target ϝ_1: returns T^n plus the part of
/// degree < n, an Eisenstein polynomial agreeing with the minimal polynomial
/// of the relevant root modulo π^target.
inline EisensteinPolynomial lift_factor(OPoly h, int n, std::int64_t target, const BasePtr& base, int prec,
                                        const LiftOptions& opts = {}) {
  if (static_cast<int>(h.size()) <= n) h.resize(n + 1, IntegerElement::zero(base, prec));
  for (std::size_t r = 0; r < h.size(); ++r)
    if (detail::negligible(h[r], static_cast<int>(r), n, target)) h[r] = IntegerElement::zero(base, prec);
  const IntegerElement one = IntegerElement::one(base, prec);
  std::optional<MixedValuation> last;
  for (int iter = 0;; ++iter) {
    if (iter >= opts.max_iterations) throw NonTermination("lifting step exceeded its iteration cap");
    // ϝ-minimal monomial of degree ≥ n in h − T^n.
    std::optional<MixedValuation> best;
    int best_r = -1;
    for (std::size_t r = n; r < h.size(); ++r) {
      const IntegerElement c = static_cast<int>(r) == n ? h[r] - one : h[r];
      if (detail::negligible(c, static_cast<int>(r), n, target)) continue;
      const auto mv = mixed_valuation(c, static_cast<int>(r), n);
      if (!best || *mv < *best) {
        best = mv;
        best_r = static_cast<int>(r);
      }
    }
    if (!best) break;
    if (last && !(*last < *best)) throw InternalInconsistency("lifting step failed to increase the mixed valuation");
    last = best;
    const IntegerElement c = best_r == n ? h[n] - one : h[best_r];
    // h ← h·(1 − cT^{r−n}).
    OPoly factor(best_r - n + 1, IntegerElement::zero(base, prec));
    factor[0] = one;
    factor[best_r - n] = factor[best_r - n] - c;
    h = detail::mul_truncated(h, factor, n, target, base, prec);
    if (static_cast<int>(h.size()) <= n) h.resize(n + 1, IntegerElement::zero(base, prec));
  }
  std::vector<IntegerElement> low(h.begin(), h.begin() + n);
  for (auto& c : low) c = c.truncated(std::min(prec, c.precision()));
  return {base, low};
}

/// f(F(T)) for F given by its monomials, truncated at ϝ_1 ≥ target.
inline OPoly compose(const EisensteinPolynomial& f, const std::map<int, IntegerElement>& F, std::int64_t target, int prec) {
  const int n = f.degree();
  const BasePtr& base = f.base();
  OPoly Fp;
  for (const auto& [d, c] : F) {
    if (static_cast<int>(Fp.size()) <= d) Fp.resize(d + 1, IntegerElement::zero(base, prec));
    Fp[d] = c.truncated(std::min(prec, c.precision()));
  }
  OPoly power{IntegerElement::one(base, prec)};
  OPoly acc{IntegerElement::zero(base, prec)};
  for (int i = 0; i <= n; ++i) {
    const IntegerElement c = i == n ? IntegerElement::one(base, prec) : f.coeff(i).truncated(std::min(prec, f.coeff(i).precision()));
    if (!c.is_zero()) {
      if (acc.size() < power.size()) acc.resize(power.size(), IntegerElement::zero(base, prec));
      for (std::size_t r = 0; r < power.size(); ++r)
        if (!power[r].is_zero()) acc[r] += c * power[r];
    }
    if (i < n) power = detail::mul_truncated(power, Fp, n, target, base, prec);
  }
  return acc;
}

/// The minimal polynomial of the uniformizer ρ with π = ρ − θρ^{m+1} − tail(ρ),
/// i.e. ρ = π + θπ^{m+1} + O(π^{m+2}).  `tail` holds extra terms of degree ≥ m+2.
inline EisensteinPolynomial substitute(const EisensteinPolynomial& f, const IntegerElement& theta, int m,
                                       const std::map<int, IntegerElement>& tail = {}, const LiftOptions& opts = {}) {
  if (m < 1) throw Error("substitution level must be at least 1");
  const int prec = f.precision();
  const int n = f.degree();
  if (theta.is_zero() && tail.empty()) return f;
  std::map<int, IntegerElement> F;
  F.emplace(1, IntegerElement::one(f.base(), prec));
  F.emplace(m + 1, -theta.truncated(std::min(prec, theta.precision())));
  for (const auto& [d, c] : tail) {
    if (d < m + 2) throw Error("substitution tail must start at degree m+2");
    auto it = F.find(d);
    if (it == F.end()) F.emplace(d, -c);
    else it->second = it->second - c;
  }
  const std::int64_t target = static_cast<std::int64_t>(n) * prec;
  return lift_factor(compose(f, F, target, prec), n, target, f.base(), prec, opts);
}

inline EisensteinPolynomial substitute(const EisensteinPolynomial& f, const ResidueElement& theta, int m) {
  return substitute(f, IntegerElement::teichmuller(f.base(), theta, f.precision()), m);
}

/// N_{L/K}(1 + θρ^m) = f_0/g_0 for π = ρ(1 + θρ^m), g the minimal polynomial of ρ.
inline IntegerElement norm_unit(const EisensteinPolynomial& f, const IntegerElement& theta, int m) {
  const int prec = f.precision();
  const int n = f.degree();
  if (theta.is_zero()) return IntegerElement::one(f.base(), prec - 1);
  std::map<int, IntegerElement> F;
  F.emplace(1, IntegerElement::one(f.base(), prec));
  F.emplace(m + 1, theta.truncated(std::min(prec, theta.precision())));
  const std::int64_t target = static_cast<std::int64_t>(n) * prec;
  const auto g = lift_factor(compose(f, F, target, prec), n, target, f.base(), prec);
  const IntegerElement a = f.coeff(0).div_pi(1);
  const IntegerElement b = g.coeff(0).div_pi(1);
  return a * b.unit_inv();
}

inline IntegerElement norm_unit(const EisensteinPolynomial& f, const ResidueElement& theta, int m) {
  return norm_unit(f, IntegerElement::teichmuller(f.base(), theta, f.precision()), m);
}

}  // namespace ramified
