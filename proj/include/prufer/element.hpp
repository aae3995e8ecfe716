#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

/*
 * Exact arithmetic in the Prüfer group Z(p^infinity), realized as the
 * rationals with p-power denominator taken mod 1.  An element is stored
 * as a fully reduced fraction a / p^n:
 *
 *     0 <= a < p^n,   p does not divide a unless n = 0,
 *     and the zero element is (a = 0, n = 0).
 *
 * Reduced storage makes structural equality coincide with group equality
 * and lets order queries read the exponent directly.  Numerators are
 * arbitrary-precision; the sequences built on top of this type reach
 * denominators beyond 2^400.
 */

namespace prufer {

using Int = boost::multiprecision::cpp_int;

inline bool is_prime(long long p) {
  if (p < 2) return false;
  if (p < 4) return true;
  if (p % 2 == 0) return false;
  for (long long d = 3; d * d <= p; d += 2)
    if (p % d == 0) return false;
  return true;
}

/// p^n for nonnegative n.
inline Int int_pow(long long p, std::uint64_t n) {
  if (p == 2) return Int(1) << n;
  Int r = 1, b = p;
  while (n) {
    if (n & 1) r *= b;
    b *= b;
    n >>= 1;
  }
  return r;
}

/// The order p^k of a group element, kept in exponent form.
struct Order {
  long long p = 2;
  std::uint64_t k = 0;

  Int value() const { return int_pow(p, k); }
  std::string str() const { return std::to_string(p) + "^" + std::to_string(k); }

  friend bool operator==(const Order&, const Order&) = default;
};

class Element {
 public:
  /// The zero element of Z(p^infinity).
  Element() = default;

  static Element zero(long long p) {
    check_prime(p);
    Element x;
    x.p_ = p;
    return x;
  }

  /// Reduced representative of a / p^n mod 1.  Accepts any integer a.
  static Element make(long long p, Int a, std::uint64_t n) {
    check_prime(p);
    Element x;
    x.p_ = p;
    x.exp_ = n;
    if (n == 0) return x;
    const Int den = int_pow(p, n);
    x.num_ = a % den;
    if (x.num_ < 0) x.num_ += den;
    x.reduce();
    return x;
  }

  /// e_n = 1 / p^n mod 1; e_0 = 0.
  static Element e(long long p, std::uint64_t n) {
    check_prime(p);
    Element x;
    x.p_ = p;
    if (n > 0) {
      x.num_ = 1;
      x.exp_ = n;
    }
    return x;
  }

  long long prime() const { return p_; }
  const Int& num() const { return num_; }
  std::uint64_t exp() const { return exp_; }
  bool is_zero() const { return exp_ == 0; }

  /// Reduced storage makes the order p^exp immediate.
  Order order() const { return Order{p_, exp_}; }

  Element operator+(const Element& o) const {
    require_same_group(o);
    Element r;
    r.p_ = p_;
    r.exp_ = exp_ > o.exp_ ? exp_ : o.exp_;
    if (r.exp_ == 0) return r;
    if (p_ == 2) {
      r.num_ = (num_ << (r.exp_ - exp_)) + (o.num_ << (r.exp_ - o.exp_));
      const Int mask = (Int(1) << r.exp_) - 1;
      r.num_ &= mask;
    } else {
      r.num_ = num_ * int_pow(p_, r.exp_ - exp_) + o.num_ * int_pow(p_, r.exp_ - o.exp_);
      r.num_ %= int_pow(p_, r.exp_);
    }
    r.reduce();
    return r;
  }

  Element operator-() const {
    Element r = *this;
    if (!r.is_zero()) r.num_ = int_pow(p_, exp_) - num_;  // still coprime to p
    return r;
  }

  Element operator-(const Element& o) const { return *this + (-o); }

  /// m * x, any integer m (negative and zero included).
  friend Element scalar_mul(const Int& m, const Element& x) {
    Element r;
    r.p_ = x.p_;
    if (x.is_zero() || m == 0) return r;
    const Int den = int_pow(x.p_, x.exp_);
    Int f = m % den;
    if (f < 0) f += den;
    r.num_ = (f * x.num_) % den;
    r.exp_ = x.exp_;
    r.reduce();
    return r;
  }

  friend bool operator==(const Element&, const Element&) = default;

  friend bool operator<(const Element& a, const Element& b) {
    if (a.p_ != b.p_) return a.p_ < b.p_;
    if (a.exp_ != b.exp_) return a.exp_ < b.exp_;
    return a.num_ < b.num_;
  }

  /// Literal form `a/p^n`, or `0` for the zero element.
  std::string str() const {
    if (is_zero()) return "0";
    return num_.str() + "/" + std::to_string(p_) + "^" + std::to_string(exp_);
  }

  /// Parses the literal grammar accepted by the CLI and the JSON reports:
  /// `a/p^n` with decimal integers (a may be negative), or `0`.
  static Element parse(std::string_view s) {
    if (s == "0") return Element();
    const auto bad = [&] {
      throw std::invalid_argument("malformed element literal '" + std::string(s) +
                                  "' (expected a/p^n or 0)");
    };
    const auto slash = s.find('/');
    const auto caret = s.find('^');
    if (slash == std::string_view::npos || caret == std::string_view::npos || caret < slash) bad();
    const auto a_txt = s.substr(0, slash);
    const auto p_txt = s.substr(slash + 1, caret - slash - 1);
    const auto n_txt = s.substr(caret + 1);
    if (a_txt.empty() || p_txt.empty() || n_txt.empty()) bad();
    if (!digits_only(a_txt.front() == '-' ? a_txt.substr(1) : a_txt) || !digits_only(p_txt) ||
        !digits_only(n_txt))
      bad();
    Int a{std::string(a_txt)};
    long long p = 0;
    std::uint64_t n = 0;
    try {
      p = std::stoll(std::string(p_txt));
      n = std::stoull(std::string(n_txt));
    } catch (const std::exception&) {
      bad();
    }
    if (n > 1'000'000)
      throw std::invalid_argument("element exponent " + std::to_string(n) +
                                  " is out of range (max 10^6)");
    return make(p, std::move(a), n);
  }

 private:
  static void check_prime(long long p) {
    if (!is_prime(p)) throw std::invalid_argument("p must be prime, got " + std::to_string(p));
  }

  static bool digits_only(std::string_view t) {
    if (t.empty()) return false;
    for (char c : t)
      if (c < '0' || c > '9') return false;
    return true;
  }

  void require_same_group(const Element& o) const {
    if (p_ != o.p_)
      throw std::invalid_argument("elements of Z(" + std::to_string(p_) + "^inf) and Z(" +
                                  std::to_string(o.p_) + "^inf) cannot be combined");
  }

  // Strips common powers of p; assumes 0 <= num < p^exp on entry.
  void reduce() {
    if (num_ == 0) {
      exp_ = 0;
      return;
    }
    if (p_ == 2) {
      const std::uint64_t t = boost::multiprecision::lsb(num_);
      const std::uint64_t s = t < exp_ ? t : exp_;
      num_ >>= s;
      exp_ -= s;
    } else {
      while (exp_ > 0 && num_ % p_ == 0) {
        num_ /= p_;
        --exp_;
      }
    }
    if (num_ == 0) exp_ = 0;
  }

  long long p_ = 2;
  std::uint64_t exp_ = 0;
  Int num_ = 0;
};

inline Element operator*(long long m, const Element& x) { return scalar_mul(Int(m), x); }

/// All p^n elements of the torsion level A[p^n] = <e_n>, sorted by (exp, num).
inline std::vector<Element> torsion_level(long long p, std::uint64_t n) {
  if (!is_prime(p)) throw std::invalid_argument("p must be prime");
  std::vector<Element> out;
  out.push_back(Element::zero(p));
  for (std::uint64_t j = 1; j <= n; ++j) {
    const Int den = int_pow(p, j);
    for (Int a = 1; a < den; ++a)
      if (a % p != 0) out.push_back(Element::make(p, a, j));
  }
  return out;
}

}  // namespace prufer
