#pragma once

// Truncated arithmetic in O_K, where K is either the unramified extension of
// Q_p with residue field F_q or the Laurent series field F_q((t)).  Elements
// carry an absolute π_K-adic precision; results keep the smaller precision
// of their operands.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ramified/errors.hpp"
#include "ramified/residue.hpp"

namespace ramified {

/// Valuation reported for binomial coefficients that vanish in characteristic p.
inline constexpr int kInfVal = 1 << 28;

/// Number of carries when adding a and b in base p (Kummer).
inline int carries(std::uint64_t a, std::uint64_t b, std::uint32_t p) {
  int count = 0, carry = 0;
  while (a || b || carry) {
    const std::uint64_t s = a % p + b % p + carry;
    carry = s >= p ? 1 : 0;
    count += carry;
    a /= p;
    b /= p;
  }
  return count;
}

/// v_p(C(i, j)) for 0 ≤ j ≤ i.
inline int binomial_val(std::uint64_t i, std::uint64_t j, std::uint32_t p) {
  return carries(j, i - j, p);
}

/// C(i, j) mod m where m = p^N.
inline std::uint64_t binomial_mod(std::uint64_t i, std::uint64_t j, std::uint32_t p, std::uint64_t m) {
  if (j > i) return 0;
  // Track p-adic valuation and unit part separately so that divisions stay exact.
  std::uint64_t unit = 1 % m;
  int v = 0;
  auto mulmod = [m](std::uint64_t a, std::uint64_t b) {
    return static_cast<std::uint64_t>((unsigned __int128)a * b % m);
  };
  auto inv_unit = [&](std::uint64_t a) {
    // a is prime to p; invert modulo m by Newton iteration from the inverse mod p.
    std::uint64_t y = fp_inv(static_cast<std::uint32_t>(a % p), p);
    for (int it = 0; it < 7; ++it) {
      const std::uint64_t ay = mulmod(a % m, y);
      y = mulmod(y, (2 + m - ay % m) % m);
    }
    return y;
  };
  for (std::uint64_t k = 1; k <= j; ++k) {
    std::uint64_t num = i - j + k, den = k;
    while (num % p == 0) {
      num /= p;
      ++v;
    }
    while (den % p == 0) {
      den /= p;
      --v;
    }
    unit = mulmod(mulmod(unit, num % m), inv_unit(den % m));
  }
  std::uint64_t r = unit;
  for (int k = 0; k < v; ++k) r = mulmod(r, p);
  return r;
}

class IntegerElement;

/// The base field K.  Immutable once built; shared by all its elements.
class BaseField {
 public:
  /// `unit_digits` describes the unit u with π_K = u·p (char 0) or u·t
  /// (char p), as Σ ω(c_j) p^j, resp. Σ c_j t^j.  Empty means u = 1.
  static std::shared_ptr<const BaseField> make(std::uint32_t p, int f, int characteristic, int precision,
                                               const std::map<int, ResidueElement>& unit_digits = {});

  const ResidueField& residue() const { return *residue_; }
  const FieldPtr& residue_ptr() const { return residue_; }
  std::uint32_t p() const { return residue_->p(); }
  int f() const { return residue_->degree(); }
  std::uint64_t q() const { return residue_->q(); }
  int characteristic() const { return characteristic_; }
  bool char_zero() const { return characteristic_ == 0; }
  /// Precision cap: number of π_K-digits of every freshly built element.
  int precision() const { return precision_; }
  bool trivial_unit() const { return trivial_unit_; }
  const std::map<int, ResidueElement>& unit_digits() const { return unit_digits_; }

  /// p^k (char 0 storage modulus); k ≤ precision().
  std::uint64_t modulus(int k) const { return pow_p_[k]; }

  // Raw storage helpers shared with IntegerElement.
  std::vector<std::uint64_t> raw_teichmuller(const ResidueElement& d, int prec) const;
  const std::vector<std::uint64_t>& raw_unit() const { return unit_raw_; }
  const std::vector<std::uint64_t>& raw_unit_inv() const { return unit_inv_raw_; }

  bool same_as(const BaseField& o) const {
    return p() == o.p() && f() == o.f() && characteristic_ == o.characteristic_ && unit_digits_ == o.unit_digits_;
  }

  BaseField(FieldPtr residue, int characteristic, int precision)
      : residue_(std::move(residue)), characteristic_(characteristic), precision_(precision) {}

 private:
  std::vector<std::uint64_t> compute_teichmuller(const ResidueElement& d) const;

  FieldPtr residue_;
  int characteristic_;
  int precision_;
  bool trivial_unit_ = true;
  std::map<int, ResidueElement> unit_digits_;
  std::vector<std::uint64_t> pow_p_;
  std::vector<std::uint64_t> unit_raw_, unit_inv_raw_;
  std::vector<std::vector<std::uint64_t>> teich_;

  friend class IntegerElement;
};

using BasePtr = std::shared_ptr<const BaseField>;

/// An element of O_K known modulo π_K^precision.
class IntegerElement {
 public:
  IntegerElement() = default;

  static IntegerElement zero(const BasePtr& base, int prec) {
    IntegerElement x(base, prec);
    return x;
  }
  static IntegerElement zero(const BasePtr& base) { return zero(base, base->precision()); }
  static IntegerElement one(const BasePtr& base, int prec) { return from_integer(base, 1, prec); }
  static IntegerElement one(const BasePtr& base) { return one(base, base->precision()); }

  /// The integer n embedded in O_K (char p: n mod p).
  static IntegerElement from_integer(const BasePtr& base, std::int64_t n, int prec) {
    IntegerElement x(base, prec);
    if (prec == 0) return x;
    if (base->char_zero()) {
      const std::int64_t m = static_cast<std::int64_t>(base->modulus(prec));
      x.data_[0] = static_cast<std::uint64_t>(((n % m) + m) % m);
    } else {
      const std::int64_t p = base->p();
      x.data_[0] = static_cast<std::uint64_t>(((n % p) + p) % p);
    }
    return x;
  }
  static IntegerElement from_integer(const BasePtr& base, std::int64_t n) {
    return from_integer(base, n, base->precision());
  }

  /// Unsigned residue class modulo p^prec (char 0) used for large binomials.
  static IntegerElement from_residue_mod(const BasePtr& base, std::uint64_t r, int prec) {
    IntegerElement x(base, prec);
    if (prec == 0) return x;
    x.data_[0] = base->char_zero() ? r % base->modulus(prec) : r % base->p();
    return x;
  }

  /// The representative ω(d) ∈ R of a residue.
  static IntegerElement teichmuller(const BasePtr& base, const ResidueElement& d, int prec) {
    IntegerElement x(base, prec);
    x.data_ = base->raw_teichmuller(d, prec);
    return x;
  }
  static IntegerElement teichmuller(const BasePtr& base, const ResidueElement& d) {
    return teichmuller(base, d, base->precision());
  }

  /// π_K^k.
  static IntegerElement pi_power(const BasePtr& base, int k, int prec) {
    return one(base, prec).mul_pi(k).truncated(prec);
  }

  /// Σ ω(d_j) π_K^j over the given digits.
  static IntegerElement from_digits(const BasePtr& base, int prec, const std::map<int, ResidueElement>& digits) {
    IntegerElement x = zero(base, prec);
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
      if (it->first < 0) throw Error("negative digit index");
      if (it->first >= prec) continue;
      x = x + teichmuller(base, it->second, prec).mul_pi(it->first).truncated(prec);
    }
    return x;
  }

  /// The binomial coefficient C(i, j) as an element of O_K.
  static IntegerElement binomial(const BasePtr& base, std::uint64_t i, std::uint64_t j, int prec) {
    if (base->char_zero()) return from_residue_mod(base, binomial_mod(i, j, base->p(), base->modulus(prec)), prec);
    const bool zero = binomial_val(i, j, base->p()) > 0;
    if (zero) return IntegerElement::zero(base, prec);
    // Lucas: product of digit binomials mod p.
    std::uint64_t r = 1, a = i, b = j;
    const std::uint32_t p = base->p();
    while (a || b) {
      r = r * binomial_mod(a % p, b % p, p, p) % p;
      a /= p;
      b /= p;
    }
    return from_integer(base, static_cast<std::int64_t>(r), prec);
  }

  const BasePtr& base() const { return base_; }
  bool valid() const { return base_ != nullptr; }
  int precision() const { return prec_; }

  IntegerElement truncated(int prec) const {
    if (prec > prec_) throw PrecisionInsufficient(prec, "cannot raise precision of a truncated element");
    IntegerElement x(base_, prec);
    if (base_->char_zero()) {
      const std::uint64_t m = base_->modulus(prec);
      for (std::size_t k = 0; k < data_.size(); ++k) x.data_[k] = data_[k] % m;
    } else {
      std::copy(data_.begin(), data_.begin() + static_cast<std::ptrdiff_t>(x.data_.size()), x.data_.begin());
    }
    return x;
  }

  /// Pads with zero digits up to prec; only meaningful for exactly known values.
  IntegerElement padded(int prec) const {
    if (prec <= prec_) return truncated(prec);
    IntegerElement x(base_, std::min(prec, base_->precision()));
    std::copy(data_.begin(), data_.end(), x.data_.begin());
    return x;
  }

  friend IntegerElement operator+(const IntegerElement& a, const IntegerElement& b) {
    const int prec = std::min(a.prec_, b.prec_);
    IntegerElement x = a.truncated(prec);
    const IntegerElement y = b.truncated(prec);
    if (x.base_->char_zero()) {
      const std::uint64_t m = x.base_->modulus(prec);
      for (std::size_t k = 0; k < x.data_.size(); ++k) x.data_[k] = (x.data_[k] + y.data_[k]) % m;
    } else {
      const std::uint32_t p = x.base_->p();
      for (std::size_t k = 0; k < x.data_.size(); ++k) x.data_[k] = (x.data_[k] + y.data_[k]) % p;
    }
    return x;
  }

  IntegerElement operator-() const {
    IntegerElement x = *this;
    const std::uint64_t m = base_->char_zero() ? base_->modulus(prec_) : base_->p();
    for (auto& c : x.data_) c = (m - c % m) % m;
    return x;
  }

  friend IntegerElement operator-(const IntegerElement& a, const IntegerElement& b) { return a + (-b); }

  friend IntegerElement operator*(const IntegerElement& a, const IntegerElement& b) {
    const int prec = std::min(a.prec_, b.prec_);
    IntegerElement x(a.base_, prec);
    if (prec == 0) return x;
    const int f = a.base_->f();
    if (a.base_->char_zero()) {
      const std::uint64_t m = a.base_->modulus(prec);
      const auto& g = a.base_->residue().modulus();
      std::vector<unsigned __int128> prod(2 * f - 1, 0);
      for (int i = 0; i < f; ++i) {
        const std::uint64_t ai = a.data_[i] % m;
        if (!ai) continue;
        for (int j = 0; j < f; ++j) prod[i + j] = (prod[i + j] + (unsigned __int128)ai * (b.data_[j] % m)) % m;
      }
      for (int d = 2 * f - 2; d >= f; --d) {
        const std::uint64_t c = static_cast<std::uint64_t>(prod[d] % m);
        if (!c) continue;
        for (int k = 0; k < f; ++k)
          prod[d - f + k] = (prod[d - f + k] + (unsigned __int128)(m - g[k] % m) % m * c) % m;
        prod[d] = 0;
      }
      for (int k = 0; k < f; ++k) x.data_[k] = static_cast<std::uint64_t>(prod[k] % m);
    } else {
      const ResidueField& kf = a.base_->residue();
      for (int i = 0; i < prec; ++i) {
        const ResidueElement ai = a.coeff(i);
        if (kf.is_zero(ai)) continue;
        for (int j = 0; i + j < prec; ++j) {
          const ResidueElement bj = b.coeff(j);
          if (kf.is_zero(bj)) continue;
          x.set_coeff(i + j, kf.add(x.coeff(i + j), kf.mul(ai, bj)));
        }
      }
    }
    return x;
  }

  IntegerElement& operator+=(const IntegerElement& o) { return *this = *this + o; }
  IntegerElement& operator-=(const IntegerElement& o) { return *this = *this - o; }
  IntegerElement& operator*=(const IntegerElement& o) { return *this = *this * o; }

  IntegerElement pow(std::uint64_t e) const {
    IntegerElement r = one(base_, prec_), b = *this;
    while (e) {
      if (e & 1) r = r * b;
      b = b * b;
      e >>= 1;
    }
    return r;
  }

  /// x·π_K^k; precision grows by k up to the cap of the base field.
  IntegerElement mul_pi(int k) const {
    if (k == 0) return *this;
    const int prec = std::min(prec_ + k, base_->precision());
    IntegerElement x(base_, prec);
    if (base_->char_zero()) {
      const std::uint64_t m = base_->modulus(prec);
      std::uint64_t pk = 1;
      for (int t = 0; t < k && pk < m; ++t) pk = static_cast<std::uint64_t>((unsigned __int128)pk * base_->p() % m);
      for (std::size_t c = 0; c < data_.size(); ++c)
        x.data_[c] = static_cast<std::uint64_t>((unsigned __int128)data_[c] * pk % m);
    } else {
      const int f = base_->f();
      for (int j = 0; j + k < prec && j < prec_; ++j)
        for (int c = 0; c < f; ++c) x.data_[(j + k) * f + c] = data_[j * f + c];
    }
    if (!base_->trivial_unit()) {
      IntegerElement u = unit(base_, prec);
      for (int t = 0; t < k; ++t) x = x * u;
    }
    return x;
  }

  /// x / π_K^k; requires the first k digits to vanish.  Precision drops by k.
  IntegerElement div_pi(int k) const {
    if (k == 0) return *this;
    if (k > prec_) throw PrecisionInsufficient(k, "division by π_K beyond precision");
    const auto v = val();
    if (v && *v < k) throw Error("division by π_K^" + std::to_string(k) + " of an element of valuation " + std::to_string(*v));
    const int prec = prec_ - k;
    IntegerElement x(base_, prec);
    if (base_->char_zero()) {
      std::uint64_t pk = 1;
      for (int t = 0; t < k; ++t) pk *= base_->p();
      const std::uint64_t m = base_->modulus(prec);
      for (std::size_t c = 0; c < data_.size(); ++c) x.data_[c] = (data_[c] / pk) % m;
    } else {
      const int f = base_->f();
      for (int j = 0; j < prec; ++j)
        for (int c = 0; c < f; ++c) x.data_[j * f + c] = data_[(j + k) * f + c];
    }
    if (!base_->trivial_unit()) {
      IntegerElement ui = unit_inverse(base_, prec);
      for (int t = 0; t < k; ++t) x = x * ui;
    }
    return x;
  }

  /// Index of the first nonzero digit, or nullopt when every known digit is 0.
  std::optional<int> val() const {
    if (base_->char_zero()) {
      int best = prec_;
      for (auto c : data_) {
        if (!c) continue;
        int v = 0;
        while (c % base_->p() == 0) {
          c /= base_->p();
          ++v;
        }
        best = std::min(best, v);
      }
      if (best >= prec_) return std::nullopt;
      return best;
    }
    const int f = base_->f();
    for (int j = 0; j < prec_; ++j)
      for (int c = 0; c < f; ++c)
        if (data_[j * f + c]) return j;
    return std::nullopt;
  }

  bool is_zero() const { return !val().has_value(); }

  ResidueElement residue() const {
    if (prec_ < 1) throw PrecisionInsufficient(1, "residue of an element without known digits");
    return coeff_residue();
  }

  std::vector<ResidueElement> digits() const {
    std::vector<ResidueElement> out;
    out.reserve(prec_);
    IntegerElement x = *this;
    const ResidueField& kf = base_->residue();
    for (int j = 0; j < prec_; ++j) {
      if (x.is_zero()) {
        out.push_back(kf.zero());
        continue;
      }
      const ResidueElement d = x.coeff_residue();
      out.push_back(d);
      x = (x - teichmuller(base_, d, x.prec_)).div_pi(1);
    }
    return out;
  }

  ResidueElement digit(int j) const {
    if (j < 0 || j >= prec_) throw PrecisionInsufficient(j + 1, "digit index " + std::to_string(j) + " outside precision");
    IntegerElement x = *this;
    for (int t = 0; t < j; ++t) {
      if (x.is_zero()) return base_->residue().zero();
      x = (x - teichmuller(base_, x.coeff_residue(), x.prec_)).div_pi(1);
    }
    return x.coeff_residue();
  }

  IntegerElement set_digit(int j, const ResidueElement& d) const {
    if (j < 0 || j >= prec_) throw PrecisionInsufficient(j + 1, "digit index " + std::to_string(j) + " outside precision");
    const ResidueElement old = digit(j);
    if (old == d) return *this;
    const IntegerElement delta = (teichmuller(base_, d, prec_) - teichmuller(base_, old, prec_)).mul_pi(j).truncated(prec_);
    return *this + delta;
  }

  IntegerElement unit_inv() const {
    if (prec_ == 0) return *this;
    const auto v = val();
    if (!v || *v != 0) throw Error("unit_inv of a non-unit");
    const ResidueField& kf = base_->residue();
    IntegerElement y = teichmuller(base_, kf.inv(coeff_residue()), prec_);
    const IntegerElement two = from_integer(base_, 2, prec_);
    for (int known = 1; known < prec_; known *= 2) y = y * (two - *this * y);
    return y;
  }

  friend bool operator==(const IntegerElement& a, const IntegerElement& b) {
    return a.prec_ == b.prec_ && a.data_ == b.data_;
  }

  /// Equality modulo π_K^min-precision.
  bool congruent(const IntegerElement& o) const { return (*this - o).is_zero(); }

  const std::vector<std::uint64_t>& raw() const { return data_; }

  std::string str() const {
    std::string s = "[";
    const auto ds = digits();
    bool first = true;
    for (std::size_t j = 0; j < ds.size(); ++j) {
      if (base_->residue().is_zero(ds[j])) continue;
      s += (first ? "" : ",") + std::string("[") + std::to_string(j) + "," + base_->residue().str(ds[j]) + "]";
      first = false;
    }
    return s + "]/" + std::to_string(prec_);
  }

 private:
  IntegerElement(BasePtr base, int prec) : base_(std::move(base)), prec_(prec) {
    if (prec < 0 || prec > base_->precision())
      throw PrecisionInsufficient(prec, "requested precision exceeds the base field cap");
    data_.assign(base_->char_zero() ? base_->f() : static_cast<std::size_t>(prec) * base_->f(), 0);
  }

  static IntegerElement unit(const BasePtr& base, int prec) {
    IntegerElement u(base, base->precision());
    u.data_ = base->raw_unit();
    return u.truncated(prec);
  }
  static IntegerElement unit_inverse(const BasePtr& base, int prec) {
    IntegerElement u(base, base->precision());
    u.data_ = base->raw_unit_inv();
    return u.truncated(prec);
  }

  // Char p coefficient of t^j.
  ResidueElement coeff(int j) const {
    const int f = base_->f();
    ResidueElement r = base_->residue().zero();
    for (int c = 0; c < f; ++c) r.coeffs[c] = static_cast<std::uint32_t>(data_[j * f + c]);
    return r;
  }
  void set_coeff(int j, const ResidueElement& r) {
    const int f = base_->f();
    for (int c = 0; c < f; ++c) data_[j * f + c] = r.coeffs[c];
  }

  ResidueElement coeff_residue() const {
    if (base_->char_zero()) {
      ResidueElement r = base_->residue().zero();
      for (int c = 0; c < base_->f(); ++c) r.coeffs[c] = static_cast<std::uint32_t>(data_[c] % base_->p());
      return r;
    }
    return coeff(0);
  }

  BasePtr base_;
  int prec_ = 0;
  std::vector<std::uint64_t> data_;

  friend class BaseField;
};

inline std::vector<std::uint64_t> BaseField::raw_teichmuller(const ResidueElement& d, int prec) const {
  std::vector<std::uint64_t> full;
  if (!teich_.empty()) full = teich_[residue_->index(d)];
  else full = compute_teichmuller(d);
  if (char_zero()) {
    for (auto& c : full) c %= pow_p_[prec];
  } else {
    full.resize(static_cast<std::size_t>(prec) * f());
  }
  return full;
}

inline std::vector<std::uint64_t> BaseField::compute_teichmuller(const ResidueElement& d) const {
  const int f = this->f();
  if (!char_zero()) {
    std::vector<std::uint64_t> out(static_cast<std::size_t>(precision_) * f, 0);
    if (precision_ > 0)
      for (int c = 0; c < f; ++c) out[c] = d.coeffs[c];
    return out;
  }
  // Iterating y ↦ y^q from any lift gains one correct digit per step.
  auto self = std::shared_ptr<const BaseField>(this, [](const BaseField*) {});
  IntegerElement y(self, precision_);
  for (int c = 0; c < f; ++c) y.data_[c] = d.coeffs[c];
  for (int it = 0; it < precision_; ++it) y = y.pow(q());
  return y.data_;
}

inline BasePtr BaseField::make(std::uint32_t p, int f, int characteristic, int precision,
                               const std::map<int, ResidueElement>& unit_digits) {
  if (characteristic != 0 && characteristic != static_cast<int>(p))
    throw Error("characteristic must be 0 or p");
  if (precision < 1) throw Error("precision must be positive");
  auto field = make_field(p, f);
  auto b = std::make_shared<BaseField>(field, characteristic, precision);
  b->pow_p_.assign(1, 1);
  if (characteristic == 0) {
    for (int k = 1; k <= precision; ++k) {
      if (b->pow_p_.back() > (std::uint64_t(1) << 62) / p)
        throw PrecisionInsufficient(k - 1, "precision " + std::to_string(precision) + " exceeds the 62-bit storage limit for p=" +
                                               std::to_string(p));
      b->pow_p_.push_back(b->pow_p_.back() * p);
    }
  }
  if (field->q() <= 4096) {
    b->teich_.resize(field->q());
    for (std::uint64_t i = 0; i < field->q(); ++i) b->teich_[i] = b->compute_teichmuller(field->from_index(i));
  }
  // u as an element: Σ ω(c_j) p^j, resp. Σ c_j t^j.  Built while π_K = p (resp. t).
  BasePtr self = b;
  IntegerElement u = IntegerElement::zero(self, precision);
  const IntegerElement pe = characteristic == 0 ? IntegerElement::from_integer(self, p, precision) : IntegerElement();
  for (const auto& [j, c] : unit_digits) {
    if (j >= precision) continue;
    IntegerElement term = IntegerElement::teichmuller(self, c, precision);
    term = characteristic == 0 ? term * pe.pow(j) : term.mul_pi(j);
    u = u + term;
  }
  if (unit_digits.empty()) u = IntegerElement::one(self, precision);
  if (u.val() != std::optional<int>(0)) throw Error("uniformizer unit must be a unit");
  b->unit_raw_ = u.raw();
  b->unit_inv_raw_ = u.unit_inv().raw();
  b->trivial_unit_ = u == IntegerElement::one(self, precision);
  if (!b->trivial_unit_) b->unit_digits_ = unit_digits;
  return b;
}

inline BasePtr make_base(std::uint32_t p, int f, int characteristic, int precision,
                         const std::map<int, ResidueElement>& unit_digits = {}) {
  return BaseField::make(p, f, characteristic, precision, unit_digits);
}

/// The same field with a different precision cap.
inline BasePtr with_precision(const BasePtr& base, int precision) {
  return BaseField::make(base->p(), base->f(), base->characteristic(), precision, base->unit_digits());
}

/// Re-embeds x into another instance of the same field, keeping its digits.
inline IntegerElement rebase(const IntegerElement& x, const BasePtr& target) {
  if (x.base() == target) return x;
  if (!x.base()->same_as(*target)) throw Error("incompatible base fields");
  std::map<int, ResidueElement> digits;
  const auto ds = x.digits();
  for (std::size_t j = 0; j < ds.size(); ++j)
    if (!x.base()->residue().is_zero(ds[j])) digits[static_cast<int>(j)] = ds[j];
  return IntegerElement::from_digits(target, std::min(x.precision(), target->precision()), digits);
}

}  // namespace ramified
