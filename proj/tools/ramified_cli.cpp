// ramified_cli: invariants | reduce | identify | enumerate | classfield.
// Exit codes: 0 ok, 1 negative verdict, 2 error.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "ramified/ramified.hpp"

using namespace ramified;

namespace {

struct Common {
  std::uint32_t p = 2;
  int f = 1;
  int prec = 0;  // 0: start small and retry
  std::string out;
};

bool looks_like_json(const std::string& s) {
  return (!s.empty() && s.front() == '{') || (s.size() > 5 && s.substr(s.size() - 5) == ".json");
}

json read_json(const std::string& arg) {
  if (!arg.empty() && arg.front() == '{') return json::parse(arg);
  std::ifstream in(arg);
  if (!in) throw Error("cannot open " + arg);
  return json::parse(in);
}

std::string rationals(const std::vector<Rational>& xs) {
  std::string s;
  for (const auto& x : xs) s += (s.empty() ? "" : ", ") + to_string(x);
  return s.empty() ? "none" : s;
}

// Runs `body` on the parsed polynomials, retrying with more digits when the
// input came as text.
template <class F>
int with_polys(const Common& c, const std::vector<std::string>& args, F&& body) {
  bool text = true;
  for (const auto& a : args) text = text && !looks_like_json(a);
  const auto attempt = [&](int prec) {
    std::vector<EisensteinPolynomial> polys;
    BasePtr base;
    for (const auto& a : args) {
      if (looks_like_json(a)) {
        polys.push_back(poly_from_json(read_json(a), base));
      } else {
        if (!base) base = make_base(c.p, c.f, 0, prec);
        polys.push_back(parse_eisenstein(a, base));
      }
      base = polys.back().base();
    }
    return body(polys);
  };
  if (!text) return attempt(c.prec);
  if (c.prec > 0) return attempt(c.prec);
  return with_precision_retry(12, attempt, 80);
}

void write_out(const Common& c, const json& j) {
  if (c.out.empty()) return;
  std::ofstream o(c.out);
  if (!o) throw Error("cannot write " + c.out);
  o << j.dump(2) << "\n";
}

int cmd_invariants(const Common& c, const std::string& poly) {
  return with_polys(c, {poly}, [&](const std::vector<EisensteinPolynomial>& ps) {
    const auto& f = ps[0];
    const auto d = ram_data(f);
    std::cout << "polynomial: " << f.str() << "\n";
    std::cout << "polygon:";
    for (const auto& [x, y] : d.polygon.vertices) std::cout << " (" << x << "," << y << ")";
    std::cout << "\n";
    std::cout << "lower breaks: " << rationals(d.breaks) << "\n";
    std::cout << "upper breaks: " << rationals(d.upper_breaks()) << "\n";
    std::cout << "phi breakpoints: " << rationals(d.nphi.breakpoints()) << "\n";
    std::cout << "tau: " << rationals(d.tau) << "\n";
    std::cout << "xi: " << rationals(d.xi) << "\n";
    std::cout << "sigma: " << rationals(d.sigma) << "\n";
    std::cout << "different: " << d.different() << "\n";
    const auto info = aut_info(f);
    std::cout << "B: " << info.B << "\n";
    std::cout << "aut: " << info.aut << "\n";
    std::cout << "reduced: " << info.reduced.size() << "\n";
    json j{{"polynomial", poly_to_json(f)},  {"lower_breaks", json::array()}, {"different", d.different()},
           {"B", info.B},                    {"aut", info.aut}};
    for (const auto& t : d.breaks) j["lower_breaks"].push_back(to_string(t));
    write_out(c, j);
    return 0;
  });
}

int cmd_reduce(const Common& c, const std::string& poly, bool all) {
  return with_polys(c, {poly}, [&](const std::vector<EisensteinPolynomial>& ps) {
    if (!all) {
      const auto g = reduce(ps[0]);
      std::cout << g.str() << "\n";
      write_out(c, poly_to_json(g));
      return 0;
    }
    const auto ms = all_reduced(ps[0]);
    json j = json::array();
    for (const auto& [g, mult] : ms.entries) {
      std::cout << g.str() << ": " << mult << "\n";
      j.push_back({{"polynomial", poly_to_json(g)}, {"multiplicity", mult}});
    }
    write_out(c, j);
    return 0;
  });
}

int cmd_identify(const Common& c, const std::string& a, const std::string& b) {
  return with_polys(c, {a, b}, [&](const std::vector<EisensteinPolynomial>& ps) {
    const auto quick = greedy_filter(ps[0], ps[1]);
    const auto full = is_isomorphic(ps[0], ps[1]);
    std::cout << "greedy: " << to_string(quick) << (quick.detail.empty() ? "" : " (" + quick.detail + ")") << "\n";
    std::cout << "verdict: " << to_string(full) << (full.detail.empty() ? "" : " (" + full.detail + ")") << "\n";
    write_out(c, {{"greedy", to_string(quick)}, {"verdict", to_string(full)}});
    return full.kind == Verdict::Kind::Isomorphic ? 0 : 1;
  });
}

int cmd_enumerate(const Common& c, int n) {
  const auto e = enumerate_extensions(c.p, c.f, n);
  std::ostringstream lines;
  for (const auto& cls : e.classes) lines << class_to_json(cls).dump() << "\n";
  lines << json{{"summary", true}, {"classes", e.classes.size()}, {"mass", to_string(e.mass)}}.dump() << "\n";
  if (!c.out.empty()) {
    std::ofstream o(c.out);
    if (!o) throw Error("cannot write " + c.out);
    o << lines.str();
  } else {
    std::cout << lines.str();
  }
  std::cerr << e.classes.size() << " classes, mass " << to_string(e.mass) << "\n";
  return 0;
}

int cmd_classfield(const Common& c, const std::string& path) {
  const auto spec = spec_from_json(read_json(path));
  const auto f = construct(spec);
  std::cout << f.str() << "\n";
  write_out(c, poly_to_json(f));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Totally ramified extensions of p-adic fields"};
  app.require_subcommand(1);
  Common c;
  const auto common = [&c](CLI::App* s, bool field = true) {
    if (field) {
      s->add_option("--p", c.p, "residue characteristic")->capture_default_str();
      s->add_option("--f", c.f, "residue degree of the base field")->capture_default_str();
      s->add_option("--prec", c.prec, "pi-adic precision (default: automatic)");
    }
    s->add_option("--out", c.out, "write JSON output to this file");
  };
  std::string a, b;
  bool all = false;
  int n = 2;

  auto* inv = app.add_subcommand("invariants", "ramification invariants of an Eisenstein polynomial");
  inv->add_option("poly", a, "polynomial text or PolyRecord JSON")->required();
  common(inv);
  auto* red = app.add_subcommand("reduce", "reduced polynomial");
  red->add_option("poly", a, "polynomial text or PolyRecord JSON")->required();
  red->add_flag("--all", all, "all reduced polynomials with multiplicity");
  common(red);
  auto* idn = app.add_subcommand("identify", "decide whether two polynomials generate the same extension");
  idn->add_option("first", a, "polynomial text or PolyRecord JSON")->required();
  idn->add_option("second", b, "polynomial text or PolyRecord JSON")->required();
  common(idn);
  auto* en = app.add_subcommand("enumerate", "all totally ramified extensions of degree n");
  en->add_option("--n", n, "degree")->required();
  common(en);
  auto* cf = app.add_subcommand("classfield", "reduced polynomial of a class field");
  cf->add_option("spec", a, "norm group spec JSON")->required();
  common(cf, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  try {
    if (*inv) return cmd_invariants(c, a);
    if (*red) return cmd_reduce(c, a, all);
    if (*idn) return cmd_identify(c, a, b);
    if (*en) return cmd_enumerate(c, n);
    if (*cf) return cmd_classfield(c, a);
  } catch (const ParseError& e) {
    std::string shown = a;
    if (*idn) {
      try {
        parse_polynomial(a);
        shown = b;
      } catch (const ParseError&) {
      }
    }
    std::cerr << "parse error: " << e.what() << "\n  " << shown << "\n  " << std::string(e.position(), ' ') << "^\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
