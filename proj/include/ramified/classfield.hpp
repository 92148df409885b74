#pragma once

// Totally ramified class fields: from a norm group given layer by layer to
// the reduced Eisenstein polynomial generating the extension.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ramified/errors.hpp"
#include "ramified/lifting.hpp"
#include "ramified/ramify.hpp"

namespace ramified {

/// ν_u : U_u/U_{u+1} ≅ κ → F_p^{d_u}, as a d_u × f matrix on power-basis coordinates.
struct WildLayer {
  int u = 0;
  FpMatrix nu;
};

struct NormGroupSpec {
  BasePtr base;
  IntegerElement pi_N;  // a uniformizer lying in N
  int tame_order = 1;   // n′, with ν_0 = dlog mod n′
  std::vector<WildLayer> wild;
  // Extra elements of N ∩ U_1 beyond the Teichmüller lifts of the layer kernels.
  std::vector<IntegerElement> unit_generators;
};

/// The subgroup N = ⟨π_N⟩ × μ^{n′} × H, H ⊂ U_1 generated by 1 + π_K^u ω(c)
/// for c in ker ν_u (all of κ when u is not a break), u below the conductor,
/// plus any extra generators.  Membership is decided layer by layer.
class NormGroup {
 public:
  explicit NormGroup(const NormGroupSpec& spec) : spec_(spec) { build(); }

  const NormGroupSpec& spec() const { return spec_; }
  int degree() const { return degree_; }
  int conductor() const { return conductor_; }
  int wild_dimension() const { return s_; }
  const BasePtr& base() const { return spec_.base; }
  const WildLayer* layer(int u) const {
    for (const auto& w : spec_.wild)
      if (w.u == u) return &w;
    return nullptr;
  }

  struct Walk {
    bool ok = true;
    int failed_layer = -1;  // 0 for the tame layer
    ResidueElement target_class;
  };

  /// Walk the unit y down the filtration, dividing by elements of N at each
  /// layer below `target`.  At `target` (if ≥ 1) the class in U_u/U_{u+1} is
  /// returned; otherwise the walk continues to the conductor.
  Walk walk(IntegerElement y, int target = -1) const {
    const auto& k = base()->residue();
    const int prec = conductor_ + 1;
    Walk w;
    y = y.truncated(std::min(prec, y.precision())).padded(prec);
    if (y.val() != std::optional<int>(0)) throw Error("norm group walk needs a unit");
    const auto r = y.residue();
    if (spec_.tame_order > 1 && k.dlog(r) % static_cast<std::uint64_t>(spec_.tame_order) != 0) {
      w.ok = false;
      w.failed_layer = 0;
      return w;
    }
    y = y * IntegerElement::teichmuller(base(), r, prec).unit_inv();
    for (int u = 1; u < conductor_ && (target < 0 || u <= target); ++u) {
      const IntegerElement d = y - IntegerElement::one(base(), prec);
      const auto v = d.val();
      ResidueElement c = k.zero();
      if (v && *v == u) c = d.div_pi(u).residue();
      else if (v && *v < u) throw InternalInconsistency("norm group walk left the filtration");
      if (u == target) {
        w.target_class = c;
        return w;
      }
      if (k.is_zero(c)) continue;
      if (const WildLayer* L = layer(u); L && !is_zero_vec(L->nu.apply(k.to_coords(c)))) {
        w.ok = false;
        w.failed_layer = u;
        return w;
      }
      const auto& basis = layers_.at(u);
      FpMatrix lead(base()->p(), base()->f(), basis.size());
      for (std::size_t b = 0; b < basis.size(); ++b) {
        const auto cc = k.to_coords(basis[b].lead);
        for (int t = 0; t < base()->f(); ++t) lead(t, b) = cc[t];
      }
      const auto e = lead.solve(k.to_coords(c));
      if (!e) throw InternalInconsistency("layer class outside the span of the subgroup");
      for (std::size_t b = 0; b < basis.size(); ++b)
        if ((*e)[b]) y = y * basis[b].inverse.pow((*e)[b]);
    }
    if (target >= conductor_) w.target_class = k.zero();
    return w;
  }

  bool contains_unit(const IntegerElement& y) const { return walk(y).ok; }

  /// Membership of a nonzero element of K.
  bool contains(const IntegerElement& x) const {
    const auto v = x.val();
    if (!v) throw PrecisionInsufficient(x.precision() + 1, "zero element in membership test");
    IntegerElement y = x;
    const IntegerElement pin_inv = spec_.pi_N.div_pi(1).unit_inv();
    for (int t = 0; t < *v; ++t) y = y.div_pi(1) * pin_inv;
    return contains_unit(y);
  }

  std::vector<std::uint32_t> nu(int u, const ResidueElement& c) const {
    const WildLayer* L = layer(u);
    if (!L) return {};
    return L->nu.apply(base()->residue().to_coords(c));
  }

 private:
  struct Element {
    IntegerElement value;
    IntegerElement inverse;
    ResidueElement lead;
  };

  static bool is_zero_vec(const std::vector<std::uint32_t>& v) {
    return std::all_of(v.begin(), v.end(), [](std::uint32_t x) { return x == 0; });
  }

  void build() {
    const auto& sp = spec_;
    if (!sp.base) throw InvalidSpec("missing base field");
    const auto& k = sp.base->residue();
    const auto p = sp.base->p();
    const int f = sp.base->f();
    if (sp.tame_order < 1 || (k.q() - 1) % static_cast<std::uint64_t>(sp.tame_order) != 0)
      throw InvalidSpec("tame order must divide q-1");
    if (!sp.pi_N.valid() || sp.pi_N.val() != std::optional<int>(1)) throw InvalidSpec("pi_N must be a uniformizer");
    int last = 0;
    s_ = 0;
    for (const auto& w : sp.wild) {
      if (w.u <= last) throw InvalidSpec("upper breaks must be strictly increasing positive integers");
      last = w.u;
      if (w.nu.p() != p || w.nu.cols() != static_cast<std::size_t>(f) || w.nu.rows() == 0)
        throw InvalidSpec("layer map at u=" + std::to_string(w.u) + " must be a nonempty d x f matrix over F_p");
      if (w.nu.rank() != w.nu.rows()) throw InvalidSpec("layer map at u=" + std::to_string(w.u) + " is not surjective");
      s_ += static_cast<int>(w.nu.rows());
    }
    conductor_ = last + 1;
    degree_ = sp.tame_order * static_cast<int>(ipow(p, s_));
    if (sp.base->precision() < conductor_ + 2)
      throw PrecisionInsufficient(conductor_ + 2, "base precision below the conductor");
    const int prec = conductor_ + 1;
    layers_.assign(conductor_, {});
    // Layered echelon basis of H modulo U_c, closed under p-th powers.
    std::vector<IntegerElement> queue;
    for (int u = 1; u < conductor_; ++u) {
      std::vector<std::vector<std::uint32_t>> gens;
      if (const WildLayer* L = layer(u)) gens = L->nu.kernel();
      else
        for (int t = 0; t < f; ++t) {
          std::vector<std::uint32_t> e(f, 0);
          e[t] = 1;
          gens.push_back(e);
        }
      for (const auto& g : gens)
        queue.push_back(IntegerElement::one(sp.base, prec) +
                        IntegerElement::teichmuller(sp.base, k.from_coords(g), prec).mul_pi(u));
    }
    for (const auto& g : sp.unit_generators) {
      const auto x = g.truncated(std::min(prec, g.precision())).padded(prec);
      if (x.val() != std::optional<int>(0) || !k.is_zero(k.sub(x.residue(), k.one())))
        throw InvalidSpec("unit generators must be principal units");
      queue.push_back(x);
    }
    while (!queue.empty()) {
      IntegerElement y = queue.back();
      queue.pop_back();
      insert(y, queue, prec);
    }
    for (int u = 1; u < conductor_; ++u) {
      const WildLayer* L = layer(u);
      const std::size_t want = L ? f - L->nu.rows() : f;
      if (layers_[u].size() != want)
        throw InvalidSpec("layer maps are not compatible with a subgroup of U_1 (layer " + std::to_string(u) + ")");
      if (L)
        for (const auto& e : layers_[u])
          if (!is_zero_vec(L->nu.apply(k.to_coords(e.lead))))
            throw InvalidSpec("subgroup meets layer " + std::to_string(u) + " outside the kernel of its map");
    }
  }

  void insert(IntegerElement y, std::vector<IntegerElement>& queue, int prec) {
    const auto& k = spec_.base->residue();
    for (int u = 1; u < conductor_; ++u) {
      const IntegerElement d = y - IntegerElement::one(spec_.base, prec);
      const auto v = d.val();
      if (!v || *v >= conductor_) return;
      if (*v > u) continue;
      const ResidueElement c = d.div_pi(u).residue();
      auto& basis = layers_[u];
      FpMatrix lead(spec_.base->p(), spec_.base->f(), basis.size() + 0);
      for (std::size_t b = 0; b < basis.size(); ++b) {
        const auto cc = k.to_coords(basis[b].lead);
        for (int t = 0; t < spec_.base->f(); ++t) lead(t, b) = cc[t];
      }
      const auto e = basis.empty() ? std::optional<std::vector<std::uint32_t>>() : lead.solve(k.to_coords(c));
      if (!e) {
        basis.push_back({y, y.unit_inv(), c});
        queue.push_back(y.pow(spec_.base->p()));
        return;
      }
      for (std::size_t b = 0; b < basis.size(); ++b)
        if ((*e)[b]) y = y * basis[b].inverse.pow((*e)[b]);
    }
  }

  NormGroupSpec spec_;
  int degree_ = 1;
  int conductor_ = 1;
  int s_ = 0;
  std::vector<std::vector<Element>> layers_;
};

/// Ramification data and the starting polynomial T^n + (−1)^n π_N.
struct Skeleton {
  RamificationData data;
  EisensteinPolynomial start;
  std::vector<SupportEntry> unknowns;  // range positions with i ≠ 0
};

inline Skeleton skeleton(const NormGroup& N) {
  const auto& sp = N.spec();
  std::vector<std::pair<Rational, int>> upper;
  for (const auto& w : sp.wild) upper.emplace_back(Rational(w.u), static_cast<int>(w.nu.rows()));
  Skeleton sk;
  sk.data = data_from_upper(sp.base->p(), sp.tame_order, upper);
  const int n = sk.data.n;
  if (n != N.degree()) throw InternalInconsistency("skeleton degree mismatch");
  for (int l = 0; sp.base->char_zero() && l < sk.data.s; ++l)
    if (sk.data.tau[l] * Rational(static_cast<std::int64_t>(ipow(sk.data.p, l + 1) - ipow(sk.data.p, l))) > Rational(n))
      throw InvalidSpec("upper breaks violate the bound on ramification for this degree");
  const int prec = sp.base->precision();
  std::vector<IntegerElement> cs(n, IntegerElement::zero(sp.base, prec));
  IntegerElement f0 = sp.pi_N.truncated(std::min(prec, sp.pi_N.precision())).padded(prec);
  if (n % 2 == 1) f0 = -f0;
  cs[0] = f0;
  sk.start = EisensteinPolynomial(sp.base, cs);
  for (const auto& e : reduced_support(sk.data))
    if (e.i != 0 && e.kind == SupportEntry::Kind::Range) sk.unknowns.push_back(e);
  return sk;
}

/// C_{i,j}(x) = nj + i + min_{k ≤ ℓ}(ξ_k − ξ_ℓ + p^k x) with ℓ = v_p(i).
inline PiecewiseLinear cij(const RamificationData& d, int i, int j) {
  const int l = d.level(static_cast<std::uint64_t>(i));
  std::vector<Line> lines;
  for (int k = 0; k <= l; ++k)
    lines.push_back({Rational(static_cast<std::int64_t>(ipow(d.p, k))), Rational(d.n * j + i) + d.xi[k] - d.xi[l]});
  return PiecewiseLinear(lines);
}

/// λ_{i,j} = C(i, p^ℓ)·η̄^{(i+p^ℓ m)/n − 1}.
inline ResidueElement lambda_coeff(const EisensteinPolynomial& f, const RamificationData& d, int i, int m) {
  const auto& k = f.base()->residue();
  const int l = d.level(static_cast<std::uint64_t>(i));
  const auto pl = static_cast<std::int64_t>(ipow(d.p, l));
  const std::int64_t e = i + pl * m;
  if (e % d.n != 0) throw InternalInconsistency("λ exponent is not integral");
  const auto c = IntegerElement::binomial(f.base(), static_cast<std::uint64_t>(i), static_cast<std::uint64_t>(pl), 2);
  if (c.val() != std::optional<int>(0)) throw InternalInconsistency("binomial in λ is not a unit");
  const std::int64_t ex = e / d.n - 1;
  ResidueElement eta = f.eta();
  ResidueElement pw = ex >= 0 ? k.pow(eta, static_cast<std::uint64_t>(ex)) : k.inv(k.pow(eta, static_cast<std::uint64_t>(-ex)));
  return k.mul(c.residue(), pw);
}

struct StageRecord {
  int m = 0;
  int u = 0;
  std::vector<std::pair<int, int>> positions;  // (i, j) solved at this stage
};

struct ConstructTrace {
  std::vector<StageRecord> stages;
};

namespace detail {

// Layer-u class of N(1 + θρ^m) for the current polynomial, after dividing
// out elements of N on the lower layers.
inline ResidueElement norm_class(const NormGroup& N, const EisensteinPolynomial& f, const ResidueElement& theta, int m, int u) {
  const auto w = N.walk(norm_unit(f, theta, m), u);
  if (!w.ok)
    throw InconsistentNormDatum("norm of a principal unit leaves N at layer " + std::to_string(w.failed_layer) +
                                " before layer " + std::to_string(u));
  return w.target_class;
}

}  // namespace detail

/// The reduced Eisenstein polynomial of the class field of N.
inline EisensteinPolynomial construct(const NormGroup& N, ConstructTrace* trace = nullptr) {
  const Skeleton sk = skeleton(N);
  const auto& d = sk.data;
  const int n = d.n;
  const auto& base = N.base();
  const auto& k = base->residue();
  const int F = base->f();
  EisensteinPolynomial f = sk.start;
  if (f.precision() < N.conductor() + 3) throw PrecisionInsufficient(N.conductor() + 3, "construction precision");

  // R_ℓ in order of nj + i.
  std::vector<std::vector<std::pair<int, int>>> R(std::max(d.s, 0));
  std::set<std::pair<int, int>> pending;
  for (const auto& e : sk.unknowns) {
    const int l = d.level(static_cast<std::uint64_t>(e.i));
    if (l >= d.s) throw InternalInconsistency("range position at the top level");
    R[l].emplace_back(e.i, e.j);
    pending.insert({e.i, e.j});
  }
  for (auto& r : R)
    std::sort(r.begin(), r.end(), [n](auto a, auto b) { return n * a.second + a.first < n * b.second + b.first; });

  std::vector<int> wild_breaks;  // indices r with t_r > 0
  for (std::size_t r = 0; r < d.breaks.size(); ++r)
    if (d.breaks[r] > Rational(0)) wild_breaks.push_back(static_cast<int>(r));

  while (!pending.empty()) {
    // Pending heads and their C functions.
    std::map<int, std::pair<int, int>> head;
    for (int l = 0; l < d.s; ++l)
      for (const auto& ij : R[l])
        if (pending.count(ij)) {
          head[l] = ij;
          break;
        }
    std::map<int, PiecewiseLinear> C;
    for (const auto& [l, ij] : head) C.emplace(l, cij(d, ij.first, ij.second));
    // A break whose stage point lies in the interior of its interval.
    std::optional<Rational> best_m;
    int best_r = -1;
    for (int r : wild_breaks) {
      const Rational target = d.nphi(d.breaks[r]) + n;
      Rational x = C.begin()->second.inverse(target);
      for (const auto& [l, c] : C) x = std::max(x, c.inverse(target));
      bool interior = true;
      bool any = false;
      for (const auto& [l, c] : C) {
        if (c(x) != target) continue;
        any = true;
        if (d.tau[l] != d.breaks[r]) interior = false;
      }
      if (!any || !interior) continue;
      if (!best_m || x < *best_m) {
        best_m = x;
        best_r = r;
      }
    }
    if (!best_m) throw InternalInconsistency("no solver stage available");
    const Rational& mr = *best_m;
    const Rational tr = d.breaks[best_r];
    if (!is_integer(mr) || mr < Rational(1) || mr > tr || vp(static_cast<std::uint64_t>(mr.numerator()), d.p) != 0)
      throw InternalInconsistency("stage point " + to_string(mr) + " is not an integer prime to p below the break");
    const int m = static_cast<int>(mr.numerator());
    const Rational target = d.nphi(tr) + n;
    const int u = static_cast<int>((target / n - 1).numerator());
    const WildLayer* L = N.layer(u);
    if (!L) throw InternalInconsistency("stage at a layer without a map");
    // Positions for ℓ with τ_ℓ = t_r.
    std::vector<std::pair<int, std::pair<int, int>>> unknown;  // (ℓ, (i, j))
    for (int l = 0; l < d.s; ++l) {
      if (d.tau[l] != tr) continue;
      std::optional<std::pair<int, int>> pos;
      for (const auto& ij : R[l])
        if (cij(d, ij.first, ij.second)(mr) == target) pos = ij;
      if (!pos) throw InternalInconsistency("no position at level " + std::to_string(l) + " for stage m=" + std::to_string(m));
      unknown.push_back({l, *pos});
    }
    if (unknown.size() != L->nu.rows()) throw InternalInconsistency("stage dimension differs from the layer map rank");
    EisensteinPolynomial f0 = f;
    for (const auto& [l, ij] : unknown) f0 = f0.with_digit(ij.first, ij.second, k.zero());
    // Equations ν_u(class(N_0(α_a)) + Σ_ℓ f̄_ℓ λ_ℓ α_a^{p^ℓ}) = 0 for each basis α_a.
    const std::size_t rows = static_cast<std::size_t>(F) * L->nu.rows();
    const std::size_t cols = static_cast<std::size_t>(F) * unknown.size();
    FpMatrix A(d.p, rows, cols);
    std::vector<std::uint32_t> rhs(rows, 0);
    for (int a = 0; a < F; ++a) {
      const ResidueElement alpha = k.basis(a);
      const auto base_cls = N.nu(u, detail::norm_class(N, f0, alpha, m, u));
      for (std::size_t t = 0; t < L->nu.rows(); ++t) rhs[a * L->nu.rows() + t] = base_cls[t];
      for (std::size_t x = 0; x < unknown.size(); ++x) {
        const auto& [l, ij] = unknown[x];
        const ResidueElement lam = lambda_coeff(f0, d, ij.first, m);
        const ResidueElement ap = k.pow(alpha, ipow(d.p, l));
        for (int b = 0; b < F; ++b) {
          // The class of N(1 + θρ^m) moves by f̄ λ θ^{p^ℓ}.
          const auto col = N.nu(u, k.mul(k.mul(k.basis(b), lam), ap));
          for (std::size_t t = 0; t < L->nu.rows(); ++t) A(a * L->nu.rows() + t, x * F + b) = col[t];
        }
      }
    }
    if (A.rank() != cols) throw InconsistentNormDatum("singular system at stage m=" + std::to_string(m));
    for (auto& v : rhs) v = (d.p - v) % d.p;
    const auto sol = A.solve(rhs);
    if (!sol) throw InconsistentNormDatum("unsolvable system at stage m=" + std::to_string(m));
    StageRecord rec{m, u, {}};
    f = f0;
    for (std::size_t x = 0; x < unknown.size(); ++x) {
      const auto& ij = unknown[x].second;
      std::vector<std::uint32_t> cc(sol->begin() + x * F, sol->begin() + (x + 1) * F);
      f = f.with_digit(ij.first, ij.second, k.from_coords(cc));
      pending.erase(ij);
      rec.positions.push_back(ij);
    }
    // Every head that attained the stage value must now be resolved.
    for (const auto& [l, ij] : head)
      if (C.at(l)(mr) == target && pending.count(ij)) throw InternalInconsistency("stage left a minimal head pending");
    if (trace) trace->stages.push_back(rec);
  }
  // All norms of principal units at levels prime to p must lie in N.
  const auto top = ceil(d.last_break());
  for (std::int64_t m = 1; m <= top; ++m) {
    if (vp(static_cast<std::uint64_t>(m), d.p) != 0) continue;
    for (int a = 0; a < F; ++a)
      if (!N.contains_unit(norm_unit(f, k.basis(a), static_cast<int>(m))))
        throw InconsistentNormDatum("norm of 1 + α ρ^" + std::to_string(m) + " is not in N");
  }
  return f;
}

inline EisensteinPolynomial construct(const NormGroupSpec& spec, ConstructTrace* trace = nullptr) {
  return construct(NormGroup(spec), trace);
}

}  // namespace ramified
