#pragma once

// Text and JSON formats: integer-coefficient polynomial text, PolyRecord,
// ClassRecord and the norm-group spec file.

#include <cctype>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "ramified/classfield.hpp"
#include "ramified/errors.hpp"
#include "ramified/ramify.hpp"

namespace ramified {

using json = nlohmann::json;

/// Monomials c·T^k of an integer polynomial, keyed by k.
using IntegerPolynomial = std::map<int, std::int64_t>;

/// Parses "T^2+2*T+2", "T^2 - 2", "3*T^4 + T".  Positions in errors are 0-based.
inline IntegerPolynomial parse_polynomial(std::string_view text) {
  std::size_t pos = 0;
  const auto skip = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  const auto number = [&](std::int64_t& out) {
    const std::size_t start = pos;
    std::int64_t v = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      if (v > (INT64_MAX - 9) / 10) throw ParseError(start, "integer too large");
      v = v * 10 + (text[pos] - '0');
      ++pos;
    }
    if (pos > start) out = v;
    return pos > start;
  };
  IntegerPolynomial out;
  skip();
  if (pos == text.size()) throw ParseError(pos, "empty polynomial");
  bool first = true;
  while (true) {
    skip();
    if (pos == text.size()) break;
    std::int64_t sign = 1;
    if (text[pos] == '+' || text[pos] == '-') {
      sign = text[pos] == '-' ? -1 : 1;
      ++pos;
      skip();
    } else if (!first) {
      throw ParseError(pos, "expected '+' or '-'");
    }
    first = false;
    const std::size_t term_start = pos;
    std::int64_t c = 1;
    const bool has_number = number(c);
    skip();
    int k = 0;
    if (has_number && pos < text.size() && text[pos] == '*') {
      ++pos;
      skip();
      if (pos == text.size() || (text[pos] != 'T' && text[pos] != 't')) throw ParseError(pos, "expected 'T' after '*'");
    }
    if (pos < text.size() && (text[pos] == 'T' || text[pos] == 't')) {
      ++pos;
      k = 1;
      skip();
      if (pos < text.size() && text[pos] == '^') {
        ++pos;
        skip();
        std::int64_t e = 0;
        const std::size_t at = pos;
        if (!number(e)) throw ParseError(pos, "expected an exponent");
        if (e > 4096) throw ParseError(at, "exponent too large");
        k = static_cast<int>(e);
      }
    } else if (!has_number) {
      throw ParseError(term_start, "expected a term");
    }
    out[k] += sign * c;
  }
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  if (out.empty()) throw ParseError(0, "zero polynomial");
  return out;
}

/// The Eisenstein polynomial with the given integer coefficients over `base`.
inline EisensteinPolynomial to_eisenstein(const IntegerPolynomial& poly, const BasePtr& base) {
  const int n = poly.rbegin()->first;
  if (n < 1) throw NotEisenstein(0, "constant polynomial");
  if (poly.rbegin()->second != 1) throw NotEisenstein(n, "polynomial is not monic");
  std::vector<std::int64_t> low(n, 0);
  for (const auto& [k, c] : poly)
    if (k < n) low[k] = c;
  auto f = EisensteinPolynomial::from_integers(base, low);
  check_eisenstein(f);
  return f;
}

inline EisensteinPolynomial parse_eisenstein(std::string_view text, const BasePtr& base) {
  return to_eisenstein(parse_polynomial(text), base);
}

// ---- JSON -----------------------------------------------------------------

inline json residue_to_json(const ResidueField& k, const ResidueElement& x) { return k.to_coords(x); }

inline ResidueElement residue_from_json(const ResidueField& k, const json& j) {
  if (!j.is_array() || j.size() != static_cast<std::size_t>(k.degree())) throw InvalidSpec("digit must have f coordinates");
  std::vector<std::uint32_t> c;
  for (const auto& x : j) {
    const auto v = x.get<std::int64_t>();
    if (v < 0 || v >= static_cast<std::int64_t>(k.p())) throw InvalidSpec("digit coordinate outside F_p");
    c.push_back(static_cast<std::uint32_t>(v));
  }
  return k.from_coords(c);
}

/// Nonzero digits as [[j, coords], ...].
inline json digits_to_json(const IntegerElement& x) {
  const auto& k = x.base()->residue();
  json out = json::array();
  const auto ds = x.digits();
  for (std::size_t j = 0; j < ds.size(); ++j)
    if (!k.is_zero(ds[j])) out.push_back(json::array({j, residue_to_json(k, ds[j])}));
  return out;
}

inline std::map<int, ResidueElement> digit_map_from_json(const ResidueField& k, const json& j) {
  if (!j.is_array()) throw InvalidSpec("digits must be a list of [j, coords]");
  std::map<int, ResidueElement> ds;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2) throw InvalidSpec("digit entries are [j, coords]");
    const int idx = e[0].get<int>();
    if (idx < 0) throw InvalidSpec("negative digit index");
    ds[idx] = residue_from_json(k, e[1]);
  }
  return ds;
}

inline IntegerElement digits_from_json(const BasePtr& base, const json& j, int prec) {
  const auto ds = digit_map_from_json(base->residue(), j);
  if (!ds.empty() && ds.rbegin()->first >= prec) throw InvalidSpec("digit index beyond the precision");
  return IntegerElement::from_digits(base, prec, ds);
}

inline json base_to_json(const BasePtr& b) {
  json j{{"p", b->p()}, {"f", b->f()}, {"modulus", b->residue().modulus()}, {"char", b->characteristic()},
         {"prec", b->precision()}};
  if (!b->trivial_unit()) {
    json u = json::array();
    for (const auto& [idx, d] : b->unit_digits()) u.push_back(json::array({idx, residue_to_json(b->residue(), d)}));
    j["unif_unit"] = u;
  }
  return j;
}

inline BasePtr base_from_json(const json& j) {
  try {
    const auto p = j.at("p").get<std::uint32_t>();
    const int f = j.value("f", 1);
    const int ch = j.value("char", 0);
    const int prec = j.value("prec", 12);
    if (p < 2 || f < 1 || prec < 1 || (ch != 0 && ch != static_cast<int>(p)))
      throw InvalidSpec("base descriptor out of range");
    BasePtr b = make_base(p, f, ch, prec);
    if (j.contains("unif_unit")) b = make_base(p, f, ch, prec, digit_map_from_json(b->residue(), j["unif_unit"]));
    if (j.contains("modulus") && j["modulus"].get<std::vector<std::uint32_t>>() != b->residue().modulus())
      throw InvalidSpec("residue field modulus differs from the canonical one");
    return b;
  } catch (const json::exception& e) {
    throw InvalidSpec(std::string("malformed base descriptor: ") + e.what());
  }
}

inline json poly_to_json(const EisensteinPolynomial& f) {
  json coeffs = json::object();
  json precs = json::array();
  for (int i = 0; i < f.degree(); ++i) {
    coeffs[std::to_string(i)] = digits_to_json(f.coeff(i));
    precs.push_back(f.coeff(i).precision());
  }
  return {{"base", base_to_json(f.base())}, {"n", f.degree()}, {"coeffs", coeffs}, {"coeff_prec", precs},
          {"text", f.str()}};
}

/// Reads a PolyRecord; `base` may be supplied to share an existing field.
inline EisensteinPolynomial poly_from_json(const json& j, BasePtr base = nullptr) {
  try {
    if (!base) base = base_from_json(j.at("base"));
    const int n = j.at("n").get<int>();
    if (n < 1) throw InvalidSpec("degree must be positive");
    std::vector<IntegerElement> cs;
    for (int i = 0; i < n; ++i) {
      const int prec = j.contains("coeff_prec") ? j["coeff_prec"].at(i).get<int>() : base->precision();
      if (prec < 0 || prec > base->precision()) throw InvalidSpec("coefficient precision out of range");
      const auto key = std::to_string(i);
      cs.push_back(j.at("coeffs").contains(key) ? digits_from_json(base, j["coeffs"][key], prec)
                                                : IntegerElement::zero(base, prec));
    }
    EisensteinPolynomial f(base, cs);
    check_eisenstein(f);
    return f;
  } catch (const json::exception& e) {
    throw InvalidSpec(std::string("malformed polynomial record: ") + e.what());
  }
}

struct ClassRecord {
  std::uint32_t p = 0;
  int f = 1;
  int n = 0;
  std::vector<Rational> lower_breaks;
  std::int64_t disc_exponent = 0;
  int aut = 0;
  std::uint64_t B = 0;
  std::vector<EisensteinPolynomial> reduced;
};

inline json class_to_json(const ClassRecord& c) {
  json breaks = json::array();
  for (const auto& t : c.lower_breaks) breaks.push_back(std::to_string(t.numerator()) + "/" + std::to_string(t.denominator()));
  json reduced = json::array();
  for (const auto& g : c.reduced) reduced.push_back(poly_to_json(g));
  return {{"p", c.p},     {"f", c.f}, {"n", c.n},   {"lower_breaks", breaks}, {"disc_exponent", c.disc_exponent},
          {"aut", c.aut}, {"B", c.B}, {"reduced", reduced}};
}

inline ClassRecord class_from_json(const json& j) {
  try {
    ClassRecord c;
    c.p = j.at("p").get<std::uint32_t>();
    c.f = j.at("f").get<int>();
    c.n = j.at("n").get<int>();
    for (const auto& t : j.at("lower_breaks")) c.lower_breaks.push_back(parse_rational(t.get<std::string>()));
    c.disc_exponent = j.at("disc_exponent").get<std::int64_t>();
    c.aut = j.at("aut").get<int>();
    c.B = j.at("B").get<std::uint64_t>();
    BasePtr base;
    for (const auto& r : j.at("reduced")) {
      c.reduced.push_back(poly_from_json(r, base));
      base = c.reduced.back().base();
    }
    if (c.B != static_cast<std::uint64_t>(c.aut) * c.reduced.size()) throw InvalidSpec("class record with B != aut * |reduced|");
    return c;
  } catch (const json::exception& e) {
    throw InvalidSpec(std::string("malformed class record: ") + e.what());
  }
}

/// Field element given either as an integer or as a digit list.
inline IntegerElement element_from_json(const BasePtr& base, const json& j) {
  if (j.is_number_integer()) return IntegerElement::from_integer(base, j.get<std::int64_t>());
  return digits_from_json(base, j, base->precision());
}

/// {"base": {...}, "pi_N": 2 | [[j, coords]...], "tame_order": 1,
///  "wild": [{"u": 1, "matrix": [[1]]}], "unit_generators": [...]}
inline NormGroupSpec spec_from_json(const json& j) {
  try {
    NormGroupSpec s;
    s.base = base_from_json(j.at("base"));
    s.pi_N = element_from_json(s.base, j.at("pi_N"));
    s.tame_order = j.value("tame_order", 1);
    for (const auto& w : j.value("wild", json::array())) {
      const auto rows = w.at("matrix").get<std::vector<std::vector<std::int64_t>>>();
      FpMatrix m(s.base->p(), rows.size(), static_cast<std::size_t>(s.base->f()));
      for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != static_cast<std::size_t>(s.base->f())) throw InvalidSpec("matrix rows must have f entries");
        for (std::size_t c = 0; c < rows[r].size(); ++c) {
          const auto v = rows[r][c] % static_cast<std::int64_t>(s.base->p());
          m(r, c) = static_cast<std::uint32_t>(v < 0 ? v + s.base->p() : v);
        }
      }
      s.wild.push_back({w.at("u").get<int>(), m});
    }
    for (const auto& g : j.value("unit_generators", json::array())) s.unit_generators.push_back(element_from_json(s.base, g));
    return s;
  } catch (const json::exception& e) {
    throw InvalidSpec(std::string("malformed class field spec: ") + e.what());
  }
}

inline json spec_to_json(const NormGroupSpec& s) {
  json wild = json::array();
  for (const auto& w : s.wild) {
    json rows = json::array();
    for (std::size_t r = 0; r < w.nu.rows(); ++r) {
      json row = json::array();
      for (std::size_t c = 0; c < w.nu.cols(); ++c) row.push_back(w.nu(r, c));
      rows.push_back(row);
    }
    wild.push_back({{"u", w.u}, {"matrix", rows}});
  }
  json gens = json::array();
  for (const auto& g : s.unit_generators) gens.push_back(digits_to_json(g));
  json b = base_to_json(s.base);
  return {{"base", b}, {"pi_N", digits_to_json(s.pi_N)}, {"tame_order", s.tame_order}, {"wild", wild}, {"unit_generators", gens}};
}

}  // namespace ramified
