#pragma once

// Arithmetic in the residue field F_q = F_p[X]/(g), F_p linear algebra, and
// additive (linearized) polynomials viewed as F_p-linear maps on F_q.

#include <cstdint>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include <boost/container/small_vector.hpp>

#include "ramified/errors.hpp"

namespace ramified {

using Coords = boost::container::small_vector<std::uint32_t, 4>;

inline bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

inline std::uint32_t fp_pow(std::uint64_t a, std::uint64_t e, std::uint32_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return static_cast<std::uint32_t>(r);
}

inline std::uint32_t fp_inv(std::uint32_t a, std::uint32_t p) {
  if (a % p == 0) throw Error("inverse of zero in F_p");
  return fp_pow(a, p - 2, p);
}

/// Dense matrix over F_p, row-major.
class FpMatrix {
 public:
  FpMatrix() = default;
  FpMatrix(std::uint32_t p, std::size_t rows, std::size_t cols)
      : p_(p), rows_(rows), cols_(cols), a_(rows * cols, 0) {}

  std::uint32_t p() const { return p_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::uint32_t& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  std::uint32_t operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

  friend bool operator==(const FpMatrix&, const FpMatrix&) = default;

  std::vector<std::uint32_t> apply(const std::vector<std::uint32_t>& x) const {
    std::vector<std::uint32_t> y(rows_, 0);
    for (std::size_t r = 0; r < rows_; ++r) {
      std::uint64_t s = 0;
      for (std::size_t c = 0; c < cols_; ++c) s += std::uint64_t((*this)(r, c)) * x[c];
      y[r] = static_cast<std::uint32_t>(s % p_);
    }
    return y;
  }

  FpMatrix transposed() const {
    FpMatrix t(p_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  /// In-place reduced row echelon form; returns pivot columns.
  std::vector<std::size_t> rref() {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
      std::size_t sel = row;
      while (sel < rows_ && (*this)(sel, col) == 0) ++sel;
      if (sel == rows_) continue;
      for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(sel, c), (*this)(row, c));
      const std::uint64_t inv = fp_inv((*this)(row, col), p_);
      for (std::size_t c = 0; c < cols_; ++c) (*this)(row, c) = (*this)(row, c) * inv % p_;
      for (std::size_t r = 0; r < rows_; ++r) {
        if (r == row || (*this)(r, col) == 0) continue;
        const std::uint64_t factor = (*this)(r, col);
        for (std::size_t c = 0; c < cols_; ++c)
          (*this)(r, c) = static_cast<std::uint32_t>(
              ((*this)(r, c) + std::uint64_t(p_ - (*this)(row, c)) * factor) % p_);
      }
      pivots.push_back(col);
      ++row;
    }
    return pivots;
  }

  std::size_t rank() const {
    FpMatrix m = *this;
    return m.rref().size();
  }

  /// Basis of {x : Mx = 0}, as rows in reduced row echelon form.
  std::vector<std::vector<std::uint32_t>> kernel() const {
    FpMatrix m = *this;
    const auto pivots = m.rref();
    std::vector<bool> is_pivot(cols_, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<std::vector<std::uint32_t>> basis;
    for (std::size_t free = 0; free < cols_; ++free) {
      if (is_pivot[free]) continue;
      std::vector<std::uint32_t> v(cols_, 0);
      v[free] = 1;
      for (std::size_t k = 0; k < pivots.size(); ++k)
        v[pivots[k]] = (p_ - m(k, free)) % p_;
      basis.push_back(std::move(v));
    }
    return rref_rows(p_, cols_, std::move(basis));
  }

  /// Basis of the column space, as rows in reduced row echelon form.
  std::vector<std::vector<std::uint32_t>> image() const {
    std::vector<std::vector<std::uint32_t>> cols;
    for (std::size_t c = 0; c < cols_; ++c) {
      std::vector<std::uint32_t> v(rows_);
      for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
      cols.push_back(std::move(v));
    }
    return rref_rows(p_, rows_, std::move(cols));
  }

  /// Lexicographically smallest x with Mx = b (coordinate 0 most
  /// significant), or nullopt when b is not in the image.
  std::optional<std::vector<std::uint32_t>> solve(const std::vector<std::uint32_t>& b) const {
    FpMatrix aug(p_, rows_, cols_ + 1);
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t c = 0; c < cols_; ++c) aug(r, c) = (*this)(r, c);
      aug(r, cols_) = b[r] % p_;
    }
    const auto pivots = aug.rref();
    if (!pivots.empty() && pivots.back() == cols_) return std::nullopt;
    std::vector<std::uint32_t> x(cols_, 0);
    for (std::size_t k = 0; k < pivots.size(); ++k) x[pivots[k]] = aug(k, cols_);
    for (const auto& kv : kernel()) {
      std::size_t lead = 0;
      while (kv[lead] == 0) ++lead;
      const std::uint64_t t = x[lead];
      if (t == 0) continue;
      for (std::size_t c = 0; c < cols_; ++c)
        x[c] = static_cast<std::uint32_t>((x[c] + (p_ - kv[c]) * t) % p_);
    }
    return x;
  }

  static std::vector<std::vector<std::uint32_t>> rref_rows(
      std::uint32_t p, std::size_t width, std::vector<std::vector<std::uint32_t>> rows) {
    FpMatrix m(p, rows.size(), width);
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t c = 0; c < width; ++c) m(r, c) = rows[r][c];
    const std::size_t rank = m.rref().size();
    std::vector<std::vector<std::uint32_t>> out(rank, std::vector<std::uint32_t>(width));
    for (std::size_t r = 0; r < rank; ++r)
      for (std::size_t c = 0; c < width; ++c) out[r][c] = m(r, c);
    return out;
  }

 private:
  std::uint32_t p_ = 2;
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<std::uint32_t> a_;
};

/// An element of F_q in the power basis of a root of the modulus.
struct ResidueElement {
  Coords coeffs;

  friend bool operator==(const ResidueElement&, const ResidueElement&) = default;
  friend auto operator<=>(const ResidueElement& a, const ResidueElement& b) {
    return std::lexicographical_compare_three_way(a.coeffs.begin(), a.coeffs.end(),
                                                  b.coeffs.begin(), b.coeffs.end());
  }
};

/// The residue field F_q, q = p^f, with a deterministic modulus and
/// primitive root.
class ResidueField {
 public:
  ResidueField(std::uint32_t p, int f) : p_(p), f_(f) {
    if (!is_prime(p)) throw Error("residue characteristic " + std::to_string(p) + " is not prime");
    if (f < 1) throw Error("residue degree must be positive");
    q_ = 1;
    for (int k = 0; k < f; ++k) {
      if (q_ > (std::uint64_t(1) << 40) / p) throw Error("residue field too large");
      q_ *= p;
    }
    modulus_ = find_modulus();
    primitive_root_ = find_primitive_root();
    if (q_ <= (std::uint64_t(1) << 20)) {
      log_.assign(q_, -1);
      exp_.resize(q_ - 1);
      ResidueElement x = one();
      for (std::uint64_t e = 0; e + 1 < q_; ++e) {
        exp_[e] = x;
        log_[index(x)] = static_cast<std::int64_t>(e);
        x = mul(x, primitive_root_);
      }
    }
  }

  std::uint32_t p() const { return p_; }
  int degree() const { return f_; }
  std::uint64_t q() const { return q_; }
  /// Monic modulus, coefficients low degree first (length f+1).
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  const ResidueElement& primitive_root() const { return primitive_root_; }

  ResidueElement zero() const { return ResidueElement{Coords(f_, 0)}; }
  ResidueElement one() const { return from_int(1); }
  ResidueElement from_int(std::int64_t v) const {
    ResidueElement x = zero();
    x.coeffs[0] = static_cast<std::uint32_t>(((v % std::int64_t(p_)) + p_) % p_);
    return x;
  }
  ResidueElement basis(int k) const {
    ResidueElement x = zero();
    x.coeffs[k] = 1;
    return x;
  }
  ResidueElement from_coords(const std::vector<std::uint32_t>& c) const {
    if (c.size() != static_cast<std::size_t>(f_)) throw Error("residue coordinate list has wrong length");
    ResidueElement x = zero();
    for (int k = 0; k < f_; ++k) x.coeffs[k] = c[k] % p_;
    return x;
  }
  std::vector<std::uint32_t> to_coords(const ResidueElement& x) const {
    return {x.coeffs.begin(), x.coeffs.end()};
  }

  bool is_zero(const ResidueElement& x) const {
    for (auto c : x.coeffs)
      if (c) return false;
    return true;
  }

  /// Position in the lexicographic order of coordinate tuples.
  std::uint64_t index(const ResidueElement& x) const {
    std::uint64_t i = 0;
    for (int k = 0; k < f_; ++k) i = i * p_ + x.coeffs[k];
    return i;
  }
  ResidueElement from_index(std::uint64_t i) const {
    ResidueElement x = zero();
    for (int k = f_ - 1; k >= 0; --k) {
      x.coeffs[k] = static_cast<std::uint32_t>(i % p_);
      i /= p_;
    }
    return x;
  }

  ResidueElement add(const ResidueElement& a, const ResidueElement& b) const {
    ResidueElement r = zero();
    for (int k = 0; k < f_; ++k) r.coeffs[k] = (a.coeffs[k] + b.coeffs[k]) % p_;
    return r;
  }
  ResidueElement neg(const ResidueElement& a) const {
    ResidueElement r = zero();
    for (int k = 0; k < f_; ++k) r.coeffs[k] = (p_ - a.coeffs[k]) % p_;
    return r;
  }
  ResidueElement sub(const ResidueElement& a, const ResidueElement& b) const { return add(a, neg(b)); }
  ResidueElement scale(const ResidueElement& a, std::uint32_t s) const {
    ResidueElement r = zero();
    for (int k = 0; k < f_; ++k) r.coeffs[k] = static_cast<std::uint32_t>(std::uint64_t(a.coeffs[k]) * (s % p_) % p_);
    return r;
  }

  ResidueElement mul(const ResidueElement& a, const ResidueElement& b) const {
    std::vector<std::uint64_t> prod(2 * f_ - 1, 0);
    for (int i = 0; i < f_; ++i) {
      if (!a.coeffs[i]) continue;
      for (int j = 0; j < f_; ++j) prod[i + j] = (prod[i + j] + std::uint64_t(a.coeffs[i]) * b.coeffs[j]) % p_;
    }
    for (int d = 2 * f_ - 2; d >= f_; --d) {
      const std::uint64_t c = prod[d];
      if (!c) continue;
      for (int k = 0; k < f_; ++k) prod[d - f_ + k] = (prod[d - f_ + k] + (p_ - modulus_[k]) * c) % p_;
      prod[d] = 0;
    }
    ResidueElement r = zero();
    for (int k = 0; k < f_; ++k) r.coeffs[k] = static_cast<std::uint32_t>(prod[k]);
    return r;
  }

  ResidueElement pow(ResidueElement a, std::uint64_t e) const {
    ResidueElement r = one();
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

  ResidueElement frobenius(const ResidueElement& a, int times = 1) const {
    ResidueElement r = a;
    for (int t = 0; t < times % f_; ++t) r = pow(r, p_);
    return r;
  }

  ResidueElement inv(const ResidueElement& a) const {
    if (is_zero(a)) throw Error("inverse of zero residue");
    return pow(a, q_ - 2);
  }

  /// Exponent e in [0, q-1) with g^e = x for the primitive root g.
  std::uint64_t dlog(const ResidueElement& x) const {
    if (is_zero(x)) throw Error("discrete logarithm of zero");
    if (!log_.empty()) return static_cast<std::uint64_t>(log_[index(x)]);
    ResidueElement y = one();
    for (std::uint64_t e = 0; e + 1 < q_; ++e) {
      if (y == x) return e;
      y = mul(y, primitive_root_);
    }
    throw InternalInconsistency("discrete logarithm not found");
  }

  ResidueElement gpow(std::uint64_t e) const {
    e %= (q_ - 1);
    if (!exp_.empty()) return exp_[e];
    return pow(primitive_root_, e);
  }

  /// Representatives g^0, ..., g^{d-1} of F_q^× / (F_q^×)^n, d = gcd(n, q-1).
  std::vector<ResidueElement> power_class_reps(std::uint64_t n) const {
    const std::uint64_t d = std::gcd(n, q_ - 1);
    std::vector<ResidueElement> reps;
    for (std::uint64_t i = 0; i < d; ++i) reps.push_back(gpow(i));
    return reps;
  }

  /// The representative in power_class_reps(n) of the class of x.
  ResidueElement power_class_of(const ResidueElement& x, std::uint64_t n) const {
    const std::uint64_t d = std::gcd(n, q_ - 1);
    return gpow(dlog(x) % d);
  }

  /// Smallest-exponent θ = g^k with θ^n = y, or nullopt if y is not an n-th power.
  std::optional<ResidueElement> nth_root(const ResidueElement& y, std::uint64_t n) const {
    const std::uint64_t order = q_ - 1;
    const std::uint64_t d = std::gcd(n, order);
    const std::uint64_t e = dlog(y);
    if (e % d) return std::nullopt;
    const std::uint64_t mod = order / d;
    if (mod == 1) return one();
    const std::uint64_t k = static_cast<std::uint64_t>(
        (__int128)(e / d) * inv_mod((n / d) % mod, mod) % mod);
    return gpow(k);
  }

  /// The n-th roots of unity of F_q, ordered by exponent.
  std::vector<ResidueElement> roots_of_unity(std::uint64_t n) const {
    const std::uint64_t d = std::gcd(n, q_ - 1);
    std::vector<ResidueElement> out;
    for (std::uint64_t i = 0; i < d; ++i) out.push_back(gpow((q_ - 1) / d * i));
    return out;
  }

  std::string str(const ResidueElement& x) const {
    std::string s = "[";
    for (int k = 0; k < f_; ++k) s += (k ? "," : "") + std::to_string(x.coeffs[k]);
    return s + "]";
  }

 private:
  static std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m) {
    std::int64_t t = 0, nt = 1, r = static_cast<std::int64_t>(m), nr = static_cast<std::int64_t>(a % m);
    while (nr) {
      const std::int64_t qq = r / nr;
      std::tie(t, nt) = std::make_tuple(nt, t - qq * nt);
      std::tie(r, nr) = std::make_tuple(nr, r - qq * nr);
    }
    if (r != 1) throw InternalInconsistency("non-invertible modulus in nth_root");
    return static_cast<std::uint64_t>((t % std::int64_t(m) + std::int64_t(m)) % std::int64_t(m));
  }

  // Remainder of a by monic b over F_p (both low degree first).
  std::vector<std::uint32_t> poly_rem(std::vector<std::uint32_t> a, const std::vector<std::uint32_t>& b) const {
    const std::size_t db = b.size() - 1;
    for (std::size_t d = a.size(); d-- > db;) {
      const std::uint64_t c = a[d];
      if (!c) continue;
      for (std::size_t k = 0; k <= db; ++k)
        a[d - db + k] = static_cast<std::uint32_t>((a[d - db + k] + (p_ - b[k]) * c) % p_);
    }
    a.resize(db);
    return a;
  }

  bool irreducible(const std::vector<std::uint32_t>& g) const {
    const int deg = static_cast<int>(g.size()) - 1;
    for (int d = 1; 2 * d <= deg; ++d) {
      std::uint64_t count = 1;
      for (int k = 0; k < d; ++k) count *= p_;
      for (std::uint64_t i = 0; i < count; ++i) {
        std::vector<std::uint32_t> h(d + 1, 0);
        std::uint64_t t = i;
        for (int k = 0; k < d; ++k) {
          h[k] = static_cast<std::uint32_t>(t % p_);
          t /= p_;
        }
        h[d] = 1;
        auto r = poly_rem(g, h);
        bool zero = true;
        for (auto c : r) zero = zero && c == 0;
        if (zero) return false;
      }
    }
    return true;
  }

  std::vector<std::uint32_t> find_modulus() const {
    // Lexicographic order on (c_0, ..., c_{f-1}) with c_0 most significant.
    for (std::uint64_t i = 0; i < q_; ++i) {
      std::vector<std::uint32_t> g(f_ + 1, 0);
      std::uint64_t t = i;
      for (int k = f_ - 1; k >= 0; --k) {
        g[k] = static_cast<std::uint32_t>(t % p_);
        t /= p_;
      }
      g[f_] = 1;
      if (irreducible(g)) return g;
    }
    throw InternalInconsistency("no irreducible modulus found");
  }

  ResidueElement find_primitive_root() const {
    const std::uint64_t order = q_ - 1;
    std::vector<std::uint64_t> primes;
    std::uint64_t m = order;
    for (std::uint64_t d = 2; d * d <= m; ++d)
      if (m % d == 0) {
        primes.push_back(d);
        while (m % d == 0) m /= d;
      }
    if (m > 1) primes.push_back(m);
    for (std::uint64_t i = 1; i < q_; ++i) {
      ResidueElement g = from_index(i);
      bool ok = true;
      for (auto r : primes) ok = ok && pow(g, order / r) != one();
      if (ok) return g;
    }
    throw InternalInconsistency("no primitive root found");
  }

  std::uint32_t p_;
  int f_;
  std::uint64_t q_;
  std::vector<std::uint32_t> modulus_;
  ResidueElement primitive_root_;
  std::vector<std::int64_t> log_;
  std::vector<ResidueElement> exp_;
};

using FieldPtr = std::shared_ptr<const ResidueField>;

inline FieldPtr make_field(std::uint32_t p, int f) { return std::make_shared<const ResidueField>(p, f); }

/// An F_p-linear endomorphism-or-map of F_q, analysed once: kernel, image,
/// canonical coset representatives of the image and lexicographically
/// minimal preimages.
class LinearMap {
 public:
  LinearMap(FieldPtr field, FpMatrix matrix) : field_(std::move(field)), m_(std::move(matrix)) {
    kernel_ = m_.kernel();
    image_ = m_.image();
    build_complement();
  }

  const ResidueField& field() const { return *field_; }
  const FpMatrix& matrix() const { return m_; }

  std::vector<ResidueElement> kernel_basis() const { return to_elements(kernel_); }
  std::vector<ResidueElement> image_basis() const { return to_elements(image_); }
  std::uint64_t kernel_size() const { return ipow(field_->p(), kernel_.size()); }
  std::uint64_t image_size() const { return ipow(field_->p(), image_.size()); }
  bool surjective() const { return image_.size() == m_.rows(); }
  bool injective() const { return kernel_.empty(); }

  ResidueElement apply(const ResidueElement& x) const {
    return field_->from_coords(m_.apply(field_->to_coords(x)));
  }

  /// All kernel elements, ordered by their coefficient vector over the basis.
  std::vector<ResidueElement> kernel_elements() const {
    std::vector<ResidueElement> out;
    const std::uint64_t count = kernel_size();
    const std::uint32_t p = field_->p();
    for (std::uint64_t i = 0; i < count; ++i) {
      std::vector<std::uint32_t> v(m_.cols(), 0);
      std::uint64_t t = i;
      for (const auto& b : kernel_) {
        const std::uint64_t c = t % p;
        t /= p;
        for (std::size_t k = 0; k < v.size(); ++k) v[k] = static_cast<std::uint32_t>((v[k] + c * b[k]) % p);
      }
      out.push_back(field_->from_coords(v));
    }
    return out;
  }

  bool in_image(const ResidueElement& b) const { return field_->is_zero(representative(b)); }

  /// Lexicographically smallest preimage of b, if any.
  std::optional<ResidueElement> solve(const ResidueElement& b) const {
    auto x = m_.solve(field_->to_coords(b));
    if (!x) return std::nullopt;
    return field_->from_coords(*x);
  }

  /// The canonical representative of b + image: the unique element of the
  /// span of the lexicographically first standard basis vectors completing
  /// a basis of the image that is congruent to b.
  ResidueElement representative(const ResidueElement& b) const {
    const auto c = field_->to_coords(b);
    std::vector<std::uint32_t> r(m_.rows(), 0);
    const std::uint32_t p = field_->p();
    for (std::size_t k = 0; k < c.size(); ++k)
      for (std::size_t t = 0; t < r.size(); ++t)
        r[t] = static_cast<std::uint32_t>((r[t] + std::uint64_t(c[k]) * rep_of_basis_[k][t]) % p);
    return field_->from_coords(r);
  }

 private:
  static std::uint64_t ipow(std::uint64_t b, std::size_t e) {
    std::uint64_t r = 1;
    while (e--) r *= b;
    return r;
  }

  std::vector<ResidueElement> to_elements(const std::vector<std::vector<std::uint32_t>>& rows) const {
    std::vector<ResidueElement> out;
    for (const auto& r : rows) out.push_back(field_->from_coords(r));
    return out;
  }

  void build_complement() {
    const std::size_t dim = m_.rows();
    const std::uint32_t p = field_->p();
    std::vector<std::vector<std::uint32_t>> span = image_;
    std::vector<std::size_t> chosen;
    for (std::size_t k = 0; k < dim && span.size() < dim; ++k) {
      auto trial = span;
      std::vector<std::uint32_t> e(dim, 0);
      e[k] = 1;
      trial.push_back(e);
      if (FpMatrix::rref_rows(p, dim, trial).size() > span.size()) {
        span = std::move(trial);
        chosen.push_back(k);
      }
    }
    // Columns: image basis, then chosen standard vectors.
    FpMatrix basis(p, dim, image_.size() + chosen.size());
    for (std::size_t c = 0; c < image_.size(); ++c)
      for (std::size_t r = 0; r < dim; ++r) basis(r, c) = image_[c][r];
    for (std::size_t c = 0; c < chosen.size(); ++c) basis(chosen[c], image_.size() + c) = 1;
    rep_of_basis_.assign(dim, std::vector<std::uint32_t>(dim, 0));
    for (std::size_t k = 0; k < dim; ++k) {
      std::vector<std::uint32_t> e(dim, 0);
      e[k] = 1;
      auto y = basis.solve(e);
      if (!y) throw InternalInconsistency("complement does not span");
      for (std::size_t c = 0; c < chosen.size(); ++c) rep_of_basis_[k][chosen[c]] = (*y)[image_.size() + c];
    }
  }

  FieldPtr field_;
  FpMatrix m_;
  std::vector<std::vector<std::uint32_t>> kernel_, image_;
  std::vector<std::vector<std::uint32_t>> rep_of_basis_;
};

/// Σ_a c_a X^{p^a} over F_q.
class LinearizedPolynomial {
 public:
  LinearizedPolynomial() = default;
  explicit LinearizedPolynomial(std::map<int, ResidueElement> coeffs) : coeffs_(std::move(coeffs)) {}

  const std::map<int, ResidueElement>& coeffs() const { return coeffs_; }

  void set(const ResidueField& k, int a, const ResidueElement& c) {
    if (k.is_zero(c)) coeffs_.erase(a);
    else coeffs_[a] = c;
  }

  std::size_t monomial_count() const { return coeffs_.size(); }

  ResidueElement eval(const ResidueField& k, const ResidueElement& x) const {
    ResidueElement acc = k.zero();
    for (const auto& [a, c] : coeffs_) {
      ResidueElement y = x;
      for (int t = 0; t < a; ++t) y = k.pow(y, k.p());
      acc = k.add(acc, k.mul(c, y));
    }
    return acc;
  }

  LinearizedPolynomial scaled(const ResidueField& k, const ResidueElement& s) const {
    LinearizedPolynomial out;
    for (const auto& [a, c] : coeffs_) out.set(k, a, k.mul(s, c));
    return out;
  }

  FpMatrix matrix(const ResidueField& k) const {
    const int f = k.degree();
    FpMatrix m(k.p(), f, f);
    for (int col = 0; col < f; ++col) {
      const auto y = eval(k, k.basis(col));
      for (int r = 0; r < f; ++r) m(r, col) = y.coeffs[r];
    }
    return m;
  }

 private:
  std::map<int, ResidueElement> coeffs_;
};

inline LinearMap lin_analyze(const LinearizedPolynomial& l, const FieldPtr& field) {
  return LinearMap(field, l.matrix(*field));
}

}  // namespace ramified
