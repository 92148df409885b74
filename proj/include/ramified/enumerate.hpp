#pragma once

// Enumeration of totally ramified extensions of degree n over an unramified
// p-adic field, one record per isomorphism class, with the mass sum.

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include "ramified/errors.hpp"
#include "ramified/io.hpp"
#include "ramified/reduce.hpp"

namespace ramified {

struct EnumerateOptions {
  std::uint64_t budget = 5'000'000;  // candidate polynomials examined
  int guard = 2;
};

struct Enumeration {
  std::vector<ClassRecord> classes;
  Rational mass;  // Σ (n/aut)·q^{−(d−n+1)}
  std::uint64_t candidates = 0;
};

namespace detail {

// Polygons arising from T^n + Σ p^{w_i} T^i + p; the polygon depends only on
// the valuations of the coefficients, and w_i > v_p(n) + 1 acts like w_i = ∞.
inline std::vector<RamificationData> candidate_polygons(std::uint32_t p, int f, int n) {
  const BasePtr base = make_base(p, f, 0, vp(static_cast<std::uint64_t>(n), p) + 4);
  const int W = vp(static_cast<std::uint64_t>(n), p) + 2;
  std::vector<int> w(n, 1);
  std::map<std::vector<std::pair<std::int64_t, std::int64_t>>, RamificationData> seen;
  std::function<void(int)> rec = [&](int i) {
    if (i == n) {
      std::vector<IntegerElement> cs{IntegerElement::from_integer(base, p)};
      for (int k = 1; k < n; ++k)
        cs.push_back(w[k] > W ? IntegerElement::zero(base) : IntegerElement::pi_power(base, w[k], base->precision()));
      const auto d = ram_data(EisensteinPolynomial(base, cs));
      seen.emplace(d.polygon.vertices, d);
      return;
    }
    for (int v = 1; v <= W + 1; ++v) {
      w[i] = v;
      rec(i + 1);
    }
  };
  rec(1);
  std::vector<RamificationData> out;
  for (auto& [k, d] : seen) out.push_back(d);
  return out;
}

}  // namespace detail

/// All classes of totally ramified degree-n extensions of the unramified
/// extension of Q_p of degree f.
inline Enumeration enumerate_extensions(std::uint32_t p, int f, int n, const EnumerateOptions& opts = {}) {
  if (n < 2) throw Error("degree must be at least 2");
  const auto polygons = detail::candidate_polygons(p, f, n);
  int prec = 4;
  for (const auto& d : polygons) prec = std::max(prec, working_precision(d, opts.guard) + 1);
  const BasePtr base = make_base(p, f, 0, prec);
  const auto& k = base->residue();
  ReduceOptions ropts;
  ropts.guard = opts.guard;

  // Residues η̄ up to n-th powers.
  std::set<ResidueElement> etas;
  for (std::uint64_t a = 1; a < k.q(); ++a) etas.insert(k.power_class_of(k.from_index(a), static_cast<std::uint64_t>(n)));

  Enumeration out;
  std::set<EisensteinPolynomial> known;
  for (const auto& d : polygons) {
    std::vector<SupportEntry> supp;
    for (const auto& e : reduced_support(d))
      if (Rational(n * e.j + e.i) <= d.krasner_bound()) supp.push_back(e);
    for (const auto& eta : etas) {
      const IntegerElement f0 = -IntegerElement::teichmuller(base, eta).mul_pi(1);
      std::vector<IntegerElement> cs(n, IntegerElement::zero(base));
      cs[0] = f0;
      const EisensteinPolynomial start(base, cs);
      std::vector<std::uint64_t> idx(supp.size(), 0);
      for (;;) {
        if (++out.candidates > opts.budget) throw SearchBudgetExceeded("enumeration exceeded its candidate budget");
        EisensteinPolynomial g = start;
        for (std::size_t t = 0; t < supp.size(); ++t) g = g.with_digit(supp[t].i, supp[t].j, k.from_index(idx[t]));
        const auto dg = ram_data(g);
        if (dg.polygon.vertices == d.polygon.vertices && !known.count(krasner_truncate(g, dg))) {
          const auto info = aut_info(g, ropts);
          const bool fresh = !known.count(info.reduced.front());
          for (const auto& r : info.reduced) known.insert(r);
          if (fresh) {
            ClassRecord c;
            c.p = p;
            c.f = f;
            c.n = n;
            c.lower_breaks = dg.breaks;
            c.disc_exponent = dg.different();
            c.aut = info.aut;
            c.B = info.B;
            c.reduced = info.reduced;
            out.classes.push_back(std::move(c));
          }
        }
        std::size_t t = 0;
        while (t < supp.size() && ++idx[t] == k.q()) idx[t++] = 0;
        if (t == supp.size()) break;
      }
    }
  }
  std::sort(out.classes.begin(), out.classes.end(), [](const ClassRecord& a, const ClassRecord& b) {
    if (a.disc_exponent != b.disc_exponent) return a.disc_exponent < b.disc_exponent;
    if (a.lower_breaks != b.lower_breaks) return a.lower_breaks < b.lower_breaks;
    return a.reduced.front() < b.reduced.front();
  });
  out.mass = Rational(0);
  const auto q = static_cast<std::int64_t>(k.q());
  for (const auto& c : out.classes) {
    Rational w(n, c.aut);
    for (std::int64_t e = 0; e < c.disc_exponent - n + 1; ++e) w /= q;
    out.mass += w;
  }
  return out;
}

}  // namespace ramified
