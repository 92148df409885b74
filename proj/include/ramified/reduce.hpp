#pragma once

// Reduced Eisenstein polynomials: greedy reduction level by level, the
// multiset of all reduced polynomials, and the count of automorphisms.

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <vector>

#include "ramified/errors.hpp"
#include "ramified/lifting.hpp"
#include "ramified/ramify.hpp"

namespace ramified {

/// Picks the class representative of `x` modulo the image of the level-m map.
/// The default is LinearMap::representative (the zero class maps to 0).
using RepresentativeHook = std::function<ResidueElement(int m, const LinearMap&, const ResidueElement&)>;

enum class KernelChoice { Require, Zero };

struct ReduceOptions {
  int guard = 2;
  RepresentativeHook representative;
  LiftOptions lift;
};

/// Everything a reduction step reads off the current polynomial.
struct ReductionContext {
  RamificationData data;
  PhiTerms terms;
  ResidueElement eta;

  explicit ReductionContext(const EisensteinPolynomial& f)
      : terms(phi_terms(f)), eta(f.eta()) {
    data = ram_data(ram_polygon(f, terms), f.degree(), f.base()->p());
  }

  /// Position (i, j) of the digit handled at level m, with nj + i = nφ(m) + n.
  std::pair<int, int> position(int m) const {
    const Rational E = data.nphi(Rational(m)) + data.n;
    if (!is_integer(E)) throw InternalInconsistency("non-integral nφ(m) at integer m");
    const auto e = E.numerator();
    return {static_cast<int>(e % data.n), static_cast<int>(e / data.n)};
  }

  /// θ ↦ η̄^j S_m(θ) as an F_p-linear map of κ.
  LinearMap level_map(const EisensteinPolynomial& f, int m) const {
    const auto& kf = f.base()->residue();
    const auto S = residual_poly(f, data, terms, m);
    const auto [i, j] = position(m);
    (void)i;
    return lin_analyze(S.body.scaled(kf, kf.pow(eta, static_cast<std::uint64_t>(j))), f.base()->residue_ptr());
  }
};

/// Minimum v_K-precision for reducing f: ⌊φ(t_k)⌋ + 2 + guard.
inline int working_precision(const RamificationData& d, int guard = 2) {
  return static_cast<int>(floor(d.phi(d.last_break()))) + 2 + guard;
}

namespace detail {

inline EisensteinPolynomial scale_uniformizer(const EisensteinPolynomial& f, const ResidueElement& theta) {
  const int n = f.degree();
  const int prec = f.precision();
  const auto t = IntegerElement::teichmuller(f.base(), theta, prec);
  std::vector<IntegerElement> cs;
  for (int i = 0; i < n; ++i) cs.push_back(f.coeff(i) * t.pow(static_cast<std::uint64_t>(n - i)));
  return {f.base(), cs};
}

// Residues θ̄ with θ̄^n = β̄/ᾱ, β̄ the power-class representative of ᾱ.
inline std::vector<ResidueElement> step0_solutions(const EisensteinPolynomial& f) {
  const auto& k = f.base()->residue();
  const auto n = static_cast<std::uint64_t>(f.degree());
  const auto alpha = f.eta();
  const auto beta = k.power_class_of(alpha, n);
  const auto root = k.nth_root(k.mul(beta, k.inv(alpha)), n);
  if (!root) throw InternalInconsistency("power class representative is not in the class");
  std::vector<ResidueElement> out;
  for (const auto& z : k.roots_of_unity(n)) out.push_back(k.mul(*root, z));
  std::sort(out.begin(), out.end(), [&k](const auto& a, const auto& b) { return k.index(a) < k.index(b); });
  return out;
}

inline void require_precision(const EisensteinPolynomial& f, const RamificationData& d, int guard) {
  const int need = working_precision(d, guard);
  if (f.precision() < need) throw PrecisionInsufficient(need, "polynomial known to too few digits for reduction");
}

}  // namespace detail

/// θ^n f(θ^{-1}T) with −f_0/π_K moved into the canonical power class.
inline EisensteinPolynomial reduce_step0(const EisensteinPolynomial& f) {
  check_eisenstein(f);
  const auto thetas = detail::step0_solutions(f);
  const auto& k = f.base()->residue();
  // The identity if it is among the solutions, else the smallest.
  for (const auto& t : thetas)
    if (t == k.one()) return f;
  return detail::scale_uniformizer(f, thetas.front());
}

/// One step of the reduction at level m ≥ 1.  At an integer break with a
/// nontrivial kernel the kernel element added to θ must be supplied unless
/// the policy is Zero.
inline EisensteinPolynomial reduce_step(const EisensteinPolynomial& f, int m,
                                        const std::optional<ResidueElement>& choice = std::nullopt,
                                        KernelChoice policy = KernelChoice::Require, const ReduceOptions& opts = {}) {
  if (m < 1) throw Error("reduce_step level must be at least 1");
  const auto& k = f.base()->residue();
  const ReductionContext ctx(f);
  const auto [i, j] = ctx.position(m);
  const LinearMap A = ctx.level_map(f, m);
  const ResidueElement alpha = f.digit(i, j);
  const ResidueElement beta = opts.representative ? opts.representative(m, A, alpha) : A.representative(alpha);
  auto theta = A.solve(k.sub(alpha, beta));
  if (!theta) throw InternalInconsistency("representative not congruent modulo the image");
  if (A.kernel_size() > 1) {
    if (choice) theta = k.add(*theta, *choice);
    else if (policy == KernelChoice::Require) throw ChoiceRequired("level " + std::to_string(m) + " has a nontrivial kernel");
  } else if (choice && !k.is_zero(*choice)) {
    throw Error("kernel choice given at a level with trivial kernel");
  }
  if (k.is_zero(*theta)) return f;
  auto g = substitute(f, IntegerElement::teichmuller(f.base(), *theta, f.precision()), m, {}, opts.lift);
  if (g.digit(i, j) != beta) throw InternalInconsistency("reduction step did not reach the chosen representative");
  return g;
}

/// Zero every digit f_{i,j} with nj + i > nφ(t_k) + n; the result is exact
/// (padded to the base precision).
inline EisensteinPolynomial krasner_truncate(const EisensteinPolynomial& f, const RamificationData& d) {
  const int n = f.degree();
  const Rational bound = d.krasner_bound();
  const auto& base = f.base();
  std::vector<IntegerElement> cs;
  for (int i = 0; i < n; ++i) {
    std::map<int, ResidueElement> ds;
    for (int j = 0; Rational(n * j + i) <= bound; ++j) ds[j] = f.digit(i, j);
    cs.push_back(IntegerElement::from_digits(base, base->precision(), ds));
  }
  return {base, cs};
}

/// The reduced polynomial obtained with canonical choices (kernel element 0).
inline EisensteinPolynomial reduce(const EisensteinPolynomial& f, const ReduceOptions& opts = {}) {
  const ReductionContext ctx(f);
  detail::require_precision(f, ctx.data, opts.guard);
  EisensteinPolynomial g = reduce_step0(f.truncated(working_precision(ctx.data, opts.guard)));
  const auto top = floor(ctx.data.last_break());
  for (std::int64_t m = 1; m <= top; ++m) g = reduce_step(g, static_cast<int>(m), std::nullopt, KernelChoice::Zero, opts);
  return krasner_truncate(g, ctx.data);
}

struct ReducedMultiset {
  std::map<EisensteinPolynomial, int> entries;

  int total() const {
    int t = 0;
    for (const auto& [g, c] : entries) t += c;
    return t;
  }
  std::vector<EisensteinPolynomial> distinct() const {
    std::vector<EisensteinPolynomial> out;
    for (const auto& [g, c] : entries) out.push_back(g);
    return out;
  }
  bool operator==(const ReducedMultiset&) const = default;
};

/// All reduced polynomials reachable by every choice at step 0 and at the
/// integer breaks, with multiplicity.
inline ReducedMultiset all_reduced(const EisensteinPolynomial& f, const ReduceOptions& opts = {}) {
  check_eisenstein(f);
  const ReductionContext ctx(f);
  detail::require_precision(f, ctx.data, opts.guard);
  const EisensteinPolynomial start = f.truncated(working_precision(ctx.data, opts.guard));
  std::vector<EisensteinPolynomial> layer;
  for (const auto& t : detail::step0_solutions(start)) layer.push_back(detail::scale_uniformizer(start, t));
  const auto top = floor(ctx.data.last_break());
  for (std::int64_t m = 1; m <= top; ++m) {
    const bool branch = ctx.data.is_integer_break(Rational(m));
    std::vector<EisensteinPolynomial> next;
    for (const auto& g : layer) {
      if (!branch) {
        next.push_back(reduce_step(g, static_cast<int>(m), std::nullopt, KernelChoice::Zero, opts));
        continue;
      }
      const ReductionContext gc(g);
      const LinearMap A = gc.level_map(g, static_cast<int>(m));
      if (A.kernel_size() == 1) {
        next.push_back(reduce_step(g, static_cast<int>(m), std::nullopt, KernelChoice::Zero, opts));
        continue;
      }
      for (const auto& kappa : A.kernel_elements())
        next.push_back(reduce_step(g, static_cast<int>(m), kappa, KernelChoice::Require, opts));
    }
    layer = std::move(next);
  }
  ReducedMultiset out;
  for (const auto& g : layer) ++out.entries[krasner_truncate(g, ctx.data)];
  return out;
}

struct AutInfo {
  std::uint64_t B = 1;
  int aut = 0;
  std::vector<EisensteinPolynomial> reduced;
};

/// B_{L/K} = Π ρ_i, where ρ_0 = gcd(n, q−1) if t_1 = 0 and ρ_i counts the
/// roots of S_{t_i} in κ at the positive integer breaks.
inline std::uint64_t count_B(const EisensteinPolynomial& f) {
  const ReductionContext ctx(f);
  const auto& k = f.base()->residue();
  std::uint64_t B = 1;
  for (const auto& t : ctx.data.breaks) {
    if (!is_integer(t)) continue;
    if (t == Rational(0)) {
      B *= std::gcd(static_cast<std::uint64_t>(f.degree()), k.q() - 1);
      continue;
    }
    B *= ctx.level_map(f, static_cast<int>(t.numerator())).kernel_size();
  }
  return B;
}

inline AutInfo aut_info(const EisensteinPolynomial& f, const ReduceOptions& opts = {}) {
  const auto ms = all_reduced(f, opts);
  AutInfo info;
  info.B = count_B(f);
  info.reduced = ms.distinct();
  for (const auto& [g, c] : ms.entries) {
    if (info.aut == 0) info.aut = c;
    else if (info.aut != c) throw InternalInconsistency("reduced multiset has unequal multiplicities");
  }
  if (static_cast<std::uint64_t>(ms.total()) != info.B)
    throw InternalInconsistency("reduced multiset size differs from B");
  return info;
}

/// Runs attempt(prec), raising the precision when it reports PrecisionInsufficient.
template <class F>
auto with_precision_retry(int start, F&& attempt, int cap = 60) -> decltype(attempt(start)) {
  int prec = start;
  for (;;) {
    try {
      return attempt(prec);
    } catch (const PrecisionInsufficient& e) {
      if (prec >= cap) throw;
      prec = std::min(cap, std::max(prec + 4, std::max(e.needed(), prec * 3 / 2)));
    }
  }
}

}  // namespace ramified
