// One line per acceptance criterion.  All comparisons are exact (rationals,
// residue fields, p-adic digits to the stated precision); no tolerances.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "oracles.hpp"
#include "ramified/ramified.hpp"

using namespace ramified;

namespace {

struct Result {
  bool ok = true;
  std::string note;
  void fail(const std::string& why) {
    if (ok) note = why;
    ok = false;
  }
};

EisensteinPolynomial qpoly(const BasePtr& base, const std::vector<std::int64_t>& low) {
  return EisensteinPolynomial::from_integers(base, low);
}

// Random polynomials whose reduction fits the base precision.
std::vector<EisensteinPolynomial> corpus(std::uint32_t p, int n, int count, std::uint32_t seed, int prec = 14, int depth = 4) {
  auto base = make_base(p, 1, 0, prec);
  std::mt19937 rng(seed);
  std::vector<EisensteinPolynomial> out;
  while (static_cast<int>(out.size()) < count) {
    auto g = oracle::random_eisenstein(base, n, rng, depth);
    if (working_precision(ram_data(g)) > prec - 2) continue;
    out.push_back(g);
  }
  return out;
}

Result quadratics_q2() {
  Result r;
  const auto e = enumerate_extensions(2, 1, 2);
  std::set<std::pair<std::int64_t, std::string>> got;
  for (const auto& c : e.classes) {
    if (c.aut != 2 || c.B != 2 || c.reduced.size() != 1) r.fail("class with aut/B/reduced != 2/2/1");
    for (const auto& g : c.reduced) got.insert({c.disc_exponent, g.str()});
  }
  const std::set<std::pair<std::int64_t, std::string>> want{{2, "T^2 + 2*T + 2"}, {2, "T^2 + 2*T + 6"},
                                                            {3, "T^2 + 2"},       {3, "T^2 + 10"},
                                                            {3, "T^2 + 4*T + 2"}, {3, "T^2 + 4*T + 10"}};
  if (e.classes.size() != 6) r.fail(std::to_string(e.classes.size()) + " classes");
  if (got != want) r.fail("reduced set differs");
  r.note = r.ok ? "6 classes, reduced sets match" : r.note;
  return r;
}

Result mass_formula() {
  Result r;
  std::ostringstream s;
  for (auto [p, n] : {std::pair{2u, 2}, std::pair{3u, 2}, std::pair{3u, 3}, std::pair{2u, 4}}) {
    const auto e = enumerate_extensions(p, 1, n);
    s << "(" << p << ",1," << n << "):" << to_string(e.mass) << " ";
    if (e.mass != Rational(n)) r.fail("mass " + to_string(e.mass) + " for p=" + std::to_string(p) + " n=" + std::to_string(n));
  }
  if (r.ok) r.note = s.str();
  return r;
}

Result reduced_multiset() {
  Result r;
  int checked = 0;
  for (auto [p, n] : {std::pair{2u, 2}, std::pair{2u, 4}, std::pair{3u, 3}}) {
    for (const auto& f : corpus(p, n, 200, 1000 * p + n)) {
      const auto ms = all_reduced(f);
      const auto B = count_B(f);
      if (static_cast<std::uint64_t>(ms.total()) != B) r.fail("|all_reduced| != B for " + f.str());
      int mult = 0;
      for (const auto& [g, c] : ms.entries) {
        if (mult == 0) mult = c;
        if (c != mult) r.fail("unequal multiplicities for " + f.str());
      }
      if (static_cast<std::uint64_t>(mult) != root_count(f, f)) r.fail("multiplicity != root_count for " + f.str());
      ++checked;
    }
  }
  if (r.ok) r.note = std::to_string(checked) + " polynomials, 0 violations";
  return r;
}

Result degree_p_shape() {
  Result r;
  int polys = 0;
  for (std::uint32_t p : {2u, 3u}) {
    const int n = static_cast<int>(p);
    for (const auto& c : enumerate_extensions(p, 1, n).classes)
      for (const auto& g : c.reduced) {
        ++polys;
        const auto d = ram_data(g);
        const Rational t = d.last_break();
        const auto& k = g.base()->residue();
        for (int i = 0; i < n; ++i)
          for (int j = 1; j < g.precision(); ++j) {
            if ((i == 0 && j == 1) || k.is_zero(g.digit(i, j))) continue;
            const Rational w(n * j + i);
            const bool range = w >= Rational(n - 1) * t + n && w < Rational(n) * t + n;
            const bool exception = i == 0 && is_integer(t) && Rational(j) == t + 1 &&
                                   ReductionContext(g).level_map(g, static_cast<int>(t.numerator())).kernel_size() > 1;
            if (!range && !exception) r.fail("digit (" + std::to_string(i) + "," + std::to_string(j) + ") in " + g.str());
          }
      }
  }
  // Cyclic degree-p inputs from cyclotomic fields: Φ_4(T+1) and ζ_9 + ζ_9^{-1} − 2.
  for (auto [p, low] : {std::pair{2u, std::vector<std::int64_t>{2, 2}}, std::pair{3u, std::vector<std::int64_t>{3, 9, 6}}}) {
    const auto f = qpoly(make_base(p, 1, 0, 12), low);
    const auto info = aut_info(f);
    if (info.aut != static_cast<int>(p) || info.reduced.size() != 1) r.fail("cyclic input " + f.str());
  }
  if (r.ok) r.note = std::to_string(polys) + " reduced polynomials; cyclic inputs aut = p, singleton";
  return r;
}

Result identification() {
  Result r;
  auto base = make_base(2, 1, 0, 14);
  std::vector<EisensteinPolynomial> polys;
  for (std::int64_t a : {2, 6, 10, 14})
    for (std::int64_t b = 0; b < 16; b += 2) polys.push_back(qpoly(base, {a, b}));
  int pairs = 0;
  for (const auto& f : polys)
    for (const auto& g : polys) {
      if (f == g) continue;
      ++pairs;
      const auto full = is_isomorphic(f, g);
      // On raw inputs a RuledOut verdict must be sound; on reduced forms it must be exact.
      if (greedy_filter(f, g).kind == Verdict::Kind::RuledOut && full.kind != Verdict::Kind::NonIsomorphic)
        r.fail(f.str() + " vs " + g.str() + ": unsound RuledOut");
      const auto rf = reduce(f), rg = reduce(g);
      if (rf != rg) {
        const auto quick = greedy_filter(rf, rg);
        if ((quick.kind == Verdict::Kind::RuledOut) != (full.kind == Verdict::Kind::NonIsomorphic))
          r.fail(rf.str() + " vs " + rg.str() + ": " + to_string(quick) + " / " + to_string(full));
      } else if (full.kind != Verdict::Kind::Isomorphic) {
        r.fail("equal reductions but " + to_string(full));
      }
      if ((full.kind == Verdict::Kind::Isomorphic) != (root_count(f, g) > 0)) r.fail("root_count disagrees on " + f.str() + " vs " + g.str());
    }
  std::mt19937 rng(77);
  int subs = 0;
  for (auto [p, n] : {std::pair{2u, 2}, std::pair{2u, 4}, std::pair{3u, 3}, std::pair{3u, 2}})
    for (const auto& f : corpus(p, n, 25, 7 * p + n)) {
      const int m = 1 + static_cast<int>(rng() % 4);
      const auto theta = IntegerElement::teichmuller(f.base(), f.base()->residue().from_index(rng() % p));
      if (congruence_level(f, substitute(f, theta, m)) < ExtRational(Rational(m))) r.fail("congruence level below m for " + f.str());
      ++subs;
    }
  if (r.ok) r.note = std::to_string(pairs) + " ordered pairs; " + std::to_string(subs) + " substitutions congruent";
  return r;
}

Result lifting() {
  Result r;
  std::mt19937 rng(2024);
  int count = 0;
  const std::vector<std::tuple<std::uint32_t, int, int, int>> fields{{2, 1, 0, 2}, {2, 1, 0, 4}, {3, 1, 0, 3}, {3, 2, 0, 2}, {2, 1, 2, 4}};
  while (count < 100) {
    const auto [p, f, ch, n] = fields[count % fields.size()];
    auto base = make_base(p, f, ch, 8);
    const auto poly = oracle::random_eisenstein(base, n, rng, 5);
    const int m = 1 + static_cast<int>(rng() % 3);
    const auto theta = IntegerElement::teichmuller(base, base->residue().from_index(rng() % base->q()));
    const auto g = substitute(poly, theta, m);
    const auto rho = oracle::implicit_uniformizer(poly, theta, m);
    const auto cp = oracle::charpoly(oracle::mult_matrix(poly, rho));
    for (int i = 0; i < n; ++i) {
      const auto& c = cp[n - i];
      const int prec = std::min(c.precision(), g.coeff(i).precision());
      if (!c.truncated(prec).congruent(g.coeff(i).truncated(prec))) r.fail("coefficient " + std::to_string(i) + " of " + g.str());
    }
    ++count;
  }
  if (r.ok) r.note = "100 instances equal to the Berkowitz characteristic polynomial";
  return r;
}

Result class_fields() {
  Result r;
  const auto spec = [](std::uint32_t p, std::int64_t pin, int tame, bool wild) {
    NormGroupSpec s;
    s.base = make_base(p, 1, 0, 12);
    s.pi_N = IntegerElement::from_integer(s.base, pin);
    s.tame_order = tame;
    if (wild) {
      FpMatrix m(p, 1, 1);
      m(0, 0) = 1;
      s.wild.push_back({1, m});
    }
    return s;
  };
  struct Case {
    NormGroupSpec s;
    std::string want;
  };
  const std::vector<Case> cases{{spec(2, 2, 1, true), "T^2 + 2*T + 2"},
                                {spec(2, -2, 1, true), "T^2 + 2*T - 2"},
                                {spec(3, 3, 2, false), "T^2 + 3"},
                                {spec(3, 3, 2, true), ""}};
  for (const auto& c : cases) {
    const NormGroup N(c.s);
    const auto f = construct(N);
    if (!c.want.empty() && f.str() != c.want) r.fail("got " + f.str() + " want " + c.want);
    if (c.want.empty()) {
      const auto z9 = qpoly(c.s.base, {3, 9, 18, 21, 15, 6});
      if (is_isomorphic(f, z9).kind != Verdict::Kind::Isomorphic) r.fail(f.str() + " not isomorphic to Φ_9(T+1)");
    }
    const auto d = ram_data(f);
    for (std::int64_t m = 1; m <= ceil(d.last_break()); ++m)
      for (int a = 0; a < c.s.base->f(); ++a)
        if (!N.contains_unit(norm_unit(f, c.s.base->residue().basis(a), static_cast<int>(m))))
          r.fail("norm of 1+θρ^" + std::to_string(m) + " outside N for " + f.str());
  }
  if (r.ok) r.note = "4 constructions, norms in N";
  return r;
}

Result invariant_suites() {
  Result r;
  int polys = 0;
  for (auto [p, f, n] : {std::tuple{2u, 1, 2}, std::tuple{2u, 1, 4}, std::tuple{3u, 1, 3}, std::tuple{2u, 2, 4}, std::tuple{3u, 1, 6}}) {
    auto base = make_base(p, f, 0, 10);
    std::mt19937 rng(p * 31 + n);
    for (int t = 0; t < 20; ++t) {
      const auto poly = oracle::random_eisenstein(base, n, rng, 4);
      const auto terms = phi_terms(poly);
      const auto d = ram_data(ram_polygon(poly, terms), n, p);
      ++polys;
      for (int j = 1; j <= n; ++j)
        if (terms.val[j] >= 0 && oracle::phi_val(poly, j) != std::optional<int>(static_cast<int>(terms.val[j])))
          r.fail("v(Φ_j) mismatch");
      for (int m = 0; m <= ceil(d.last_break()) + 2; ++m) {
        std::int64_t best = std::int64_t(1) << 40;
        for (int j = 1; j <= n; ++j)
          if (terms.val[j] >= 0) best = std::min<std::int64_t>(best, terms.val[j] + std::int64_t(j) * m);
        if (d.nphi(Rational(m)) != Rational(best)) r.fail("nφ(m) != min v(Φ_j) + jm at m=" + std::to_string(m));
      }
      for (int l = 0; l <= d.s; ++l) {
        if (d.polygon.N(Rational(static_cast<std::int64_t>(ipow(p, l))), n) != d.xi[l] / n) r.fail("N(p^l) != xi_l/n");
        for (int j = 0; j < l; ++j)
          if (d.xi[j] > Rational(n * (l - j)) + d.xi[l]) r.fail("xi bound");
        if (d.tau[l] * Rational(static_cast<std::int64_t>(ipow(p, l + 1) - ipow(p, l))) > Rational(n)) r.fail("tau bound");
      }
      for (int m = 1; m <= ceil(d.last_break()); ++m)
        if ((residual_poly(poly, d, terms, m).body.monomial_count() > 1) != d.is_integer_break(Rational(m))) r.fail("S_m monomial count vs integer break");
      for (int t2 = 0; t2 < 20; ++t2) {
        const Rational x(static_cast<std::int64_t>(rng() % 300), 1 + static_cast<std::int64_t>(rng() % 23));
        if (d.psi(d.phi(x)) != x || d.phi(d.psi(x)) != x) r.fail("phi/psi inversion");
      }
    }
  }
  // Rank–nullity for random additive polynomials.
  int maps = 0;
  for (auto [p, f] : {std::pair{2u, 3}, std::pair{3u, 2}, std::pair{2u, 4}, std::pair{5u, 2}}) {
    auto k = make_field(p, f);
    std::mt19937 rng(p + 10 * f);
    for (int t = 0; t < 25; ++t) {
      LinearizedPolynomial l;
      for (int a = 0; a < f; ++a)
        if (rng() % 2) l.set(*k, a, k->from_index(rng() % k->q()));
      const auto A = lin_analyze(l, k);
      if (A.kernel_size() * A.image_size() != k->q()) r.fail("rank-nullity");
      ++maps;
    }
  }
  if (r.ok) r.note = std::to_string(polys) + " polynomials, " + std::to_string(maps) + " linear maps";
  return r;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Result()>>> criteria{
      {"1 quadratics over Q_2", quadratics_q2},
      {"2 mass formula", mass_formula},
      {"3 reduced multiset structure", reduced_multiset},
      {"4 degree-p support shape", degree_p_shape},
      {"5 identification soundness", identification},
      {"6 lifting vs characteristic polynomial", lifting},
      {"7 class field construction", class_fields},
      {"8 invariant suites", invariant_suites},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Result r;
    try {
      r = run();
    } catch (const std::exception& e) {
      r.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cout << (r.ok ? "PASS " : "FAIL ") << name << " [" << r.note << "] (" << static_cast<int>(secs * 10) / 10.0 << "s)"
              << std::endl;
    failed += !r.ok;
  }
  return failed == 0 ? 0 : 1;
}
