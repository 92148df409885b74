#pragma once

// Eisenstein polynomials, the ring O_L = O_K[T]/(f), ramification polygons,
// Hasse-Herbrand functions, residual polynomials and reduced supports.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "ramified/errors.hpp"
#include "ramified/padics.hpp"
#include "ramified/rational.hpp"
#include "ramified/residue.hpp"

namespace ramified {

inline int vp(std::uint64_t x, std::uint32_t p) {
  int v = 0;
  while (x && x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

inline std::uint64_t ipow(std::uint64_t b, int e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

/// T^n + f_{n-1}T^{n-1} + ... + f_0 with coefficients in O_K.
class EisensteinPolynomial {
 public:
  EisensteinPolynomial() = default;
  EisensteinPolynomial(BasePtr base, std::vector<IntegerElement> coeffs)
      : base_(std::move(base)), coeffs_(std::move(coeffs)) {
    for (const auto& c : coeffs_)
      if (c.base() != base_) throw Error("coefficient from a different base field");
  }

  /// From integer coefficients c_0, ..., c_{n-1} (leading 1 implicit).
  static EisensteinPolynomial from_integers(const BasePtr& base, const std::vector<std::int64_t>& low) {
    std::vector<IntegerElement> cs;
    for (auto c : low) cs.push_back(IntegerElement::from_integer(base, c));
    return {base, cs};
  }

  const BasePtr& base() const { return base_; }
  int degree() const { return static_cast<int>(coeffs_.size()); }
  const IntegerElement& coeff(int i) const { return coeffs_.at(i); }
  const std::vector<IntegerElement>& coeffs() const { return coeffs_; }
  IntegerElement& mutable_coeff(int i) { return coeffs_.at(i); }

  int precision() const {
    int prec = base_->precision();
    for (const auto& c : coeffs_) prec = std::min(prec, c.precision());
    return prec;
  }

  EisensteinPolynomial truncated(int prec) const {
    EisensteinPolynomial g = *this;
    for (auto& c : g.coeffs_) c = c.truncated(std::min(prec, c.precision()));
    return g;
  }

  ResidueElement digit(int i, int j) const { return coeffs_.at(i).digit(j); }
  EisensteinPolynomial with_digit(int i, int j, const ResidueElement& d) const {
    EisensteinPolynomial g = *this;
    g.coeffs_.at(i) = g.coeffs_.at(i).set_digit(j, d);
    return g;
  }

  /// η̄_f, the residue of −f_0/π_K.
  ResidueElement eta() const { return (-coeffs_.at(0)).div_pi(1).residue(); }

  /// Per coefficient, the residue indices of its digits; used for ordering.
  std::vector<std::vector<std::uint64_t>> key() const {
    std::vector<std::vector<std::uint64_t>> k;
    for (const auto& c : coeffs_) {
      std::vector<std::uint64_t> row;
      for (const auto& d : c.digits()) row.push_back(base_->residue().index(d));
      k.push_back(std::move(row));
    }
    return k;
  }

  friend bool operator==(const EisensteinPolynomial& a, const EisensteinPolynomial& b) {
    return a.coeffs_ == b.coeffs_;
  }
  friend bool operator<(const EisensteinPolynomial& a, const EisensteinPolynomial& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    for (int i = 0; i < a.degree(); ++i) {
      if (a.coeffs_[i].precision() != b.coeffs_[i].precision())
        return a.coeffs_[i].precision() < b.coeffs_[i].precision();
      if (a.coeffs_[i].raw() != b.coeffs_[i].raw()) break;
    }
    return a.key() < b.key();
  }

  /// Human-readable form.  Prime residue fields of characteristic 0 print
  /// coefficients as balanced integers modulo p^precision; otherwise digit lists.
  std::string str() const {
    const int n = degree();
    std::string s = "T^" + std::to_string(n);
    const bool integral = base_->char_zero() && base_->f() == 1 && base_->trivial_unit();
    for (int i = n - 1; i >= 0; --i) {
      const auto& c = coeffs_[i];
      if (c.is_zero()) continue;
      std::string cs;
      bool negative = false;
      if (integral) {
        const auto m = static_cast<std::int64_t>(base_->modulus(c.precision()));
        auto v = static_cast<std::int64_t>(c.raw()[0]);
        if (v > m / 2) v -= m;
        negative = v < 0;
        cs = std::to_string(negative ? -v : v);
      } else {
        cs = c.str();
      }
      s += negative ? " - " : " + ";
      if (i == 0) s += cs;
      else if (cs == "1") s += i == 1 ? "T" : "T^" + std::to_string(i);
      else s += cs + (i == 1 ? "*T" : "*T^" + std::to_string(i));
    }
    return s;
  }

 private:
  BasePtr base_;
  std::vector<IntegerElement> coeffs_;
};

inline void check_eisenstein(const EisensteinPolynomial& f) {
  if (f.degree() < 1) throw NotEisenstein(0, "degree must be at least 1");
  for (int i = 0; i < f.degree(); ++i) {
    const auto v = f.coeff(i).val();
    if (i == 0) {
      if (f.coeff(0).precision() < 2) throw PrecisionInsufficient(2, "constant term needs two known digits");
      if (!v || *v != 1)
        throw NotEisenstein(0, "constant term must have valuation exactly 1");
    } else if (v && *v < 1) {
      throw NotEisenstein(i, "coefficient " + std::to_string(i) + " is a unit");
    } else if (!v && f.coeff(i).precision() < 1) {
      throw PrecisionInsufficient(1, "coefficient " + std::to_string(i) + " has no known digits");
    }
  }
}

/// An element Σ a_i π^i of O_L, π a root of f.
class ExtensionElement {
 public:
  ExtensionElement() = default;
  ExtensionElement(const EisensteinPolynomial* f, std::vector<IntegerElement> a) : f_(f), a_(std::move(a)) {}

  static ExtensionElement from_base(const EisensteinPolynomial& f, const IntegerElement& c) {
    std::vector<IntegerElement> a(f.degree(), IntegerElement::zero(f.base(), c.precision()));
    a[0] = c;
    return {&f, a};
  }
  static ExtensionElement zero(const EisensteinPolynomial& f, int prec) {
    return from_base(f, IntegerElement::zero(f.base(), prec));
  }
  static ExtensionElement one(const EisensteinPolynomial& f, int prec) {
    return from_base(f, IntegerElement::one(f.base(), prec));
  }
  /// π^k for 0 ≤ k.
  static ExtensionElement pi_power(const EisensteinPolynomial& f, int k, int prec) {
    ExtensionElement x = one(f, prec);
    ExtensionElement pi = zero(f, prec);
    if (f.degree() == 1) pi.a_[0] = -f.coeff(0).truncated(std::min(prec, f.coeff(0).precision()));
    else pi.a_[1] = IntegerElement::one(f.base(), prec);
    for (int t = 0; t < k; ++t) x = x * pi;
    return x;
  }

  const std::vector<IntegerElement>& coords() const { return a_; }
  const IntegerElement& coord(int i) const { return a_.at(i); }

  friend ExtensionElement operator+(const ExtensionElement& x, const ExtensionElement& y) {
    ExtensionElement r = x;
    for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] = r.a_[i] + y.a_[i];
    return r;
  }
  friend ExtensionElement operator-(const ExtensionElement& x, const ExtensionElement& y) {
    ExtensionElement r = x;
    for (std::size_t i = 0; i < r.a_.size(); ++i) r.a_[i] = r.a_[i] - y.a_[i];
    return r;
  }
  friend ExtensionElement operator*(const ExtensionElement& x, const ExtensionElement& y) {
    const int n = static_cast<int>(x.a_.size());
    int prec = x.a_[0].precision();
    for (const auto& c : x.a_) prec = std::min(prec, c.precision());
    for (const auto& c : y.a_) prec = std::min(prec, c.precision());
    const BasePtr& base = x.f_->base();
    std::vector<IntegerElement> prod(2 * n - 1, IntegerElement::zero(base, prec));
    for (int i = 0; i < n; ++i) {
      if (x.a_[i].is_zero()) continue;
      for (int j = 0; j < n; ++j) {
        if (y.a_[j].is_zero()) continue;
        prod[i + j] = prod[i + j] + x.a_[i] * y.a_[j];
      }
    }
    for (int d = 2 * n - 2; d >= n; --d) {
      if (prod[d].is_zero()) continue;
      const IntegerElement c = prod[d];
      for (int k = 0; k < n; ++k) prod[d - n + k] = prod[d - n + k] - c * x.f_->coeff(k);
    }
    prod.resize(n);
    for (auto& c : prod) c = c.truncated(std::min(prec, c.precision()));
    return {x.f_, prod};
  }
  ExtensionElement scaled(const IntegerElement& c) const {
    ExtensionElement r = *this;
    for (auto& x : r.a_) x = x * c;
    return r;
  }

  /// v_L as min_i n·v_K(a_i) + i, or nullopt when below precision.
  std::optional<int> val() const {
    std::optional<int> best;
    const int n = static_cast<int>(a_.size());
    for (int i = 0; i < n; ++i) {
      const auto v = a_[i].val();
      if (!v) continue;
      const int w = n * *v + i;
      if (!best || w < *best) best = w;
    }
    return best;
  }

  /// A lower bound for v_L that is exact when val() is defined.
  int val_lower_bound() const {
    const auto v = val();
    if (v) return *v;
    const int n = static_cast<int>(a_.size());
    int bound = 1 << 28;
    for (int i = 0; i < n; ++i) bound = std::min(bound, n * a_[i].precision() + i);
    return bound;
  }

 private:
  const EisensteinPolynomial* f_ = nullptr;
  std::vector<IntegerElement> a_;
};

/// Lower convex hull of the ramification polynomial, ordinates in v_L units.
struct NewtonPolygon {
  std::vector<std::pair<std::int64_t, std::int64_t>> vertices;

  /// N(x) = y/n at an abscissa in [1, n].
  Rational N(const Rational& x, int n) const {
    for (std::size_t k = 0; k + 1 < vertices.size(); ++k) {
      const auto [x0, y0] = vertices[k];
      const auto [x1, y1] = vertices[k + 1];
      if (x >= x0 && x <= x1) return (Rational(y0) + Rational(y1 - y0, x1 - x0) * (x - x0)) / n;
    }
    if (x == vertices.back().first) return Rational(vertices.back().second, n);
    throw Error("abscissa outside the polygon");
  }
};

/// The valuations v_L(Φ_j), j = 1..n, with the index i of the dominating
/// term C(i,j) f_i π^{i-n}.
struct PhiTerms {
  std::vector<std::int64_t> val;  // index j; val[0] unused
  std::vector<int> argmin;
};

inline PhiTerms phi_terms(const EisensteinPolynomial& f) {
  const int n = f.degree();
  const std::uint32_t p = f.base()->p();
  const bool char0 = f.base()->char_zero();
  constexpr std::int64_t kInf = std::int64_t(1) << 40;
  PhiTerms t;
  t.val.assign(n + 1, kInf);
  t.argmin.assign(n + 1, -1);
  std::vector<std::int64_t> unknown(n + 1, kInf);
  for (int j = 1; j <= n; ++j) {
    for (int i = j; i <= n; ++i) {
      const int bv = binomial_val(i, j, p);
      if (!char0 && bv > 0) continue;
      const std::int64_t cv = char0 ? bv : 0;
      if (i == n) {
        const std::int64_t w = n * cv;
        if (w < t.val[j]) {
          t.val[j] = w;
          t.argmin[j] = n;
        }
        continue;
      }
      const auto v = f.coeff(i).val();
      if (v) {
        const std::int64_t w = n * (cv + *v) + i - n;
        if (w < t.val[j]) {
          t.val[j] = w;
          t.argmin[j] = i;
        }
      } else {
        unknown[j] = std::min<std::int64_t>(unknown[j], n * (cv + f.coeff(i).precision()) + i - n);
      }
    }
  }
  // A term of unknown valuation matters only when its lower bound can undercut
  // the known minimum; report the precision that would settle it.
  for (int j = 1; j <= n; ++j) {
    if (unknown[j] <= t.val[j]) {
      t.val[j] = -(unknown[j] + 1);  // marker: uncertain, bounded below by unknown[j]
      t.argmin[j] = -1;
    }
  }
  return t;
}

namespace detail {

inline std::vector<std::pair<std::int64_t, std::int64_t>> lower_hull(
    const std::vector<std::pair<std::int64_t, std::int64_t>>& pts) {
  std::vector<std::pair<std::int64_t, std::int64_t>> h;
  for (const auto& pt : pts) {
    while (h.size() >= 2) {
      const auto& a = h[h.size() - 2];
      const auto& b = h[h.size() - 1];
      // Remove b if it lies on or above segment a→pt.
      const __int128 cross = (__int128)(b.first - a.first) * (pt.second - a.second) -
                             (__int128)(b.second - a.second) * (pt.first - a.first);
      if (cross <= 0) h.pop_back();
      else break;
    }
    h.push_back(pt);
  }
  return h;
}

}  // namespace detail

/// The ramification polygon of f.
inline NewtonPolygon ram_polygon(const EisensteinPolynomial& f, const PhiTerms& terms) {
  const int n = f.degree();
  std::vector<std::pair<std::int64_t, std::int64_t>> known;
  for (int j = 1; j <= n; ++j)
    if (terms.val[j] >= 0 && terms.val[j] < (std::int64_t(1) << 40)) known.emplace_back(j, terms.val[j]);
  if (terms.val[1] >= (std::int64_t(1) << 40)) throw Error("the derivative vanishes: inseparable polynomial");
  NewtonPolygon poly;
  poly.vertices = detail::lower_hull(known);
  // Uncertain points must lie strictly above the hull built from known ones.
  int needed = 0;
  for (int j = 1; j <= n; ++j) {
    if (terms.val[j] >= 0) continue;
    const std::int64_t lower = -terms.val[j] - 1;
    bool above = false;
    if (!poly.vertices.empty() && j >= poly.vertices.front().first && j <= poly.vertices.back().first) {
      const Rational hull = poly.N(Rational(j), 1);
      above = Rational(lower) > hull;
      if (!above) {
        const std::int64_t gap = floor(hull) - lower + 1;
        needed = std::max<int>(needed, f.precision() + static_cast<int>((gap + n - 1) / n) + 1);
      }
    } else {
      needed = std::max(needed, f.precision() + 2);
    }
  }
  if (needed) throw PrecisionInsufficient(needed, "ramification polygon depends on unknown digits");
  return poly;
}

inline NewtonPolygon ram_polygon(const EisensteinPolynomial& f) { return ram_polygon(f, phi_terms(f)); }

/// Ramification invariants of a totally ramified extension of degree n.
struct RamificationData {
  int n = 1;
  std::uint32_t p = 2;
  int s = 0;
  int nprime = 1;
  NewtonPolygon polygon;
  std::vector<Rational> breaks;       // t_1 < ... < t_k
  std::vector<std::int64_t> gammas;   // γ_0 = n > γ_1 > ... > γ_k = 1
  std::vector<Rational> tau, xi, sigma;  // ℓ = 0..s
  PiecewiseLinear nphi;                 // x ↦ nφ(x)

  Rational phi(const Rational& x) const { return nphi(x) / n; }
  Rational psi(const Rational& y) const { return nphi.inverse(y * n); }
  std::vector<Rational> upper_breaks() const {
    std::vector<Rational> u;
    for (const auto& t : breaks) u.push_back(phi(t));
    return u;
  }
  /// v_L of the different: nN(1) + n - 1.
  std::int64_t different() const { return polygon.vertices.front().second + n - 1; }
  Rational last_break() const { return breaks.empty() ? Rational(0) : breaks.back(); }
  /// n(φ(t_k) + 1), beyond which digits do not affect the extension.
  Rational krasner_bound() const { return nphi(last_break()) + n; }
  bool is_integer_break(const Rational& m) const {
    return is_integer(m) && std::find(breaks.begin(), breaks.end(), m) != breaks.end();
  }

  /// ξ/σ/τ for ℓ capped at s (abscissae beyond p^s lie on the flat part).
  int level(std::uint64_t i) const { return i == 0 ? s : std::min(vp(i, p), s); }

  friend bool operator==(const RamificationData& a, const RamificationData& b) {
    return a.n == b.n && a.p == b.p && a.polygon.vertices == b.polygon.vertices;
  }
};

/// Builds the data from lower breaks and the cardinalities γ_0..γ_k.
inline RamificationData make_ramification_data(int n, std::uint32_t p, const std::vector<Rational>& breaks,
                                               const std::vector<std::int64_t>& gammas) {
  if (gammas.size() != breaks.size() + 1 || gammas.front() != n || gammas.back() != 1)
    throw Error("inconsistent ramification skeleton");
  RamificationData d;
  d.n = n;
  d.p = p;
  d.s = vp(n, p);
  d.nprime = static_cast<int>(n / ipow(p, d.s));
  d.breaks = breaks;
  d.gammas = gammas;
  // nφ has slope γ_i on [t_i, t_{i+1}].
  std::vector<Line> lines;
  Rational x = 0, y = 0;
  lines.push_back({Rational(n), Rational(0)});
  for (std::size_t i = 0; i < breaks.size(); ++i) {
    y += Rational(gammas[i]) * (breaks[i] - x);
    x = breaks[i];
    lines.push_back({Rational(gammas[i + 1]), y - Rational(gammas[i + 1]) * x});
  }
  d.nphi = PiecewiseLinear(lines);
  // Vertex at abscissa γ_i has ordinate nφ(t_i) − t_i γ_i.
  d.polygon.vertices.clear();
  for (std::size_t i = breaks.size(); i >= 1; --i) {
    const Rational yv = d.nphi(breaks[i - 1]) - breaks[i - 1] * gammas[i];
    if (!is_integer(yv)) throw Error("non-integral ramification polygon vertex");
    d.polygon.vertices.emplace_back(gammas[i], yv.numerator());
  }
  d.polygon.vertices.emplace_back(n, 0);
  if (breaks.empty()) d.polygon.vertices = {{1, 0}};
  for (int l = 0; l <= d.s; ++l) {
    const std::uint64_t pl = ipow(p, l);
    Rational tau = 0;
    if (static_cast<std::uint64_t>(n) > pl) {
      for (std::size_t i = 0; i < breaks.size(); ++i)
        if (static_cast<std::uint64_t>(gammas[i + 1]) <= pl) {
          tau = breaks[i];
          break;
        }
    }
    d.tau.push_back(tau);
    d.sigma.push_back(d.nphi(tau));
    d.xi.push_back(d.nphi(tau) - Rational(static_cast<std::int64_t>(pl)) * tau);
  }
  return d;
}

/// Ramification data of the extension generated by f.
inline RamificationData ram_data(const NewtonPolygon& poly, int n, std::uint32_t p) {
  const auto& v = poly.vertices;
  if (v.empty() || v.front().first != 1 || v.back().first != n) throw Error("malformed ramification polygon");
  std::vector<Rational> breaks;
  std::vector<std::int64_t> gammas{n};
  for (std::size_t k = v.size() - 1; k >= 1; --k) {
    const auto [x0, y0] = v[k - 1];
    const auto [x1, y1] = v[k];
    breaks.push_back(-Rational(y1 - y0, x1 - x0));
    gammas.push_back(x0);
  }
  RamificationData d = make_ramification_data(n, p, breaks, gammas);
  if (d.polygon.vertices != poly.vertices) throw InternalInconsistency("polygon reconstruction mismatch");
  return d;
}

inline RamificationData ram_data(const EisensteinPolynomial& f) {
  return ram_data(ram_polygon(f), f.degree(), f.base()->p());
}

/// Ramification data from the upper breaks u_r and dimensions d_r, with a
/// tame part of degree nprime.
inline RamificationData data_from_upper(std::uint32_t p, int nprime, const std::vector<std::pair<Rational, int>>& upper) {
  int s = 0;
  for (const auto& [u, dim] : upper) s += dim;
  const int n = nprime * static_cast<int>(ipow(p, s));
  std::vector<Rational> breaks;
  std::vector<std::int64_t> gammas{n};
  std::int64_t gamma = n;
  Rational x = 0, v = 0;
  if (nprime > 1) {
    breaks.push_back(0);
    gamma = static_cast<std::int64_t>(ipow(p, s));
    gammas.push_back(gamma);
  }
  for (const auto& [u, dim] : upper) {
    if (u <= v) throw Error("upper breaks must be increasing and positive");
    const Rational t = x + (u - v) * Rational(n) / Rational(gamma);
    breaks.push_back(t);
    gamma /= static_cast<std::int64_t>(ipow(p, dim));
    gammas.push_back(gamma);
    x = t;
    v = u;
  }
  return make_ramification_data(n, p, breaks, gammas);
}

/// S_m: for m ≥ 1 an additive polynomial, for m = 0 the tame (1+T^{p^s})^{n'} − 1.
struct ResidualPolynomial {
  int m = 0;
  LinearizedPolynomial body;
  int s = 0;
  int nprime = 1;

  bool tame() const { return m == 0; }

  ResidueElement eval(const ResidueField& k, const ResidueElement& x) const {
    if (m >= 1) return body.eval(k, x);
    ResidueElement y = x;
    for (int t = 0; t < s; ++t) y = k.pow(y, k.p());
    return k.sub(k.pow(k.add(k.one(), y), nprime), k.one());
  }
};

/// S_m of f.  The coefficient of T^{p^a} is the leading residue of the
/// dominating term of Φ_{p^a}, twisted by η̄^{-k} for its π_K-valuation k.
inline ResidualPolynomial residual_poly(const EisensteinPolynomial& f, const RamificationData& data,
                                        const PhiTerms& terms, int m) {
  ResidualPolynomial S;
  S.m = m;
  S.s = data.s;
  S.nprime = data.nprime;
  if (m == 0) return S;
  const int n = f.degree();
  const ResidueField& kf = f.base()->residue();
  const Rational E = data.nphi(Rational(m));
  const ResidueElement eta = f.eta();
  for (int a = 0; ipow(data.p, a) <= static_cast<std::uint64_t>(n); ++a) {
    const auto pa = static_cast<int>(ipow(data.p, a));
    // Uncertain points lie strictly above the polygon, so they never dominate.
    if (terms.val[pa] < 0) continue;
    if (Rational(terms.val[pa] + static_cast<std::int64_t>(pa) * m) != E) continue;
    const int i = terms.argmin[pa];
    const int prec = f.precision();
    IntegerElement c = IntegerElement::binomial(f.base(), i, pa, prec);
    if (i < n) c = c * f.coeff(i).truncated(std::min(prec, f.coeff(i).precision()));
    const auto k = c.val();
    if (!k) throw PrecisionInsufficient(prec + 2, "residual coefficient below precision");
    const ResidueElement w = c.div_pi(*k).residue();
    S.body.set(kf, a, kf.mul(w, kf.inv(kf.pow(eta, static_cast<std::uint64_t>(*k)))));
  }
  return S;
}

inline ResidualPolynomial residual_poly(const EisensteinPolynomial& f, int m) {
  const auto terms = phi_terms(f);
  return residual_poly(f, ram_data(ram_polygon(f, terms), f.degree(), f.base()->p()), terms, m);
}

inline std::int64_t different_val(const EisensteinPolynomial& f) { return ram_data(f).different(); }

struct SupportEntry {
  enum class Kind { Range, Exception };
  int i = 0;
  int j = 0;
  Kind kind = Kind::Range;
  int r = -1;  // for exceptions: the level ℓ = r whose σ_r is hit

  friend auto operator<=>(const SupportEntry&, const SupportEntry&) = default;
};

/// Digit positions (i, j), j ≥ 1, that may be nonzero in a reduced polynomial,
/// apart from f_{0,1}.  `has_root(r)` reports whether S_{τ_r} has a nonzero
/// root; when absent every exceptional position is kept.
inline std::vector<SupportEntry> reduced_support(const RamificationData& d,
                                                 const std::function<bool(int)>& has_root = {}) {
  std::vector<SupportEntry> out;
  const int n = d.n;
  const Rational top = d.krasner_bound();
  for (int i = 0; i < n; ++i) {
    const int l = d.level(i);
    for (int j = 1; Rational(n * j + i) <= top + n; ++j) {
      const Rational w(n * j - n + i);
      if (w >= d.xi[l] && w < d.sigma[l]) {
        out.push_back({i, j, SupportEntry::Kind::Range, -1});
        continue;
      }
      for (int r = 0; r <= l; ++r) {
        if (!(d.tau[r] > 0) || !is_integer(d.tau[r]) || w != d.sigma[r]) continue;
        if (has_root && !has_root(r)) continue;
        out.push_back({i, j, SupportEntry::Kind::Exception, r});
        break;
      }
    }
  }
  std::sort(out.begin(), out.end(), [n](const SupportEntry& a, const SupportEntry& b) {
    return std::make_tuple(n * a.j + a.i, a.i) < std::make_tuple(n * b.j + b.i, b.i);
  });
  return out;
}

}  // namespace ramified
