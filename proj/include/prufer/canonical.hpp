#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "prufer/combination.hpp"
#include "prufer/element.hpp"

/*
 * The canonical form on Z(2^infinity).
 *
 * Every y can be written as sum sigma_{2n} e_{2n} over even subscripts only
 * (e_{2n-1} = 2 e_{2n} removes odd subscripts at the cost of at most
 * doubling the weight).  Requiring every coefficient to lie in
 * {-1, 0, 1, 2} pins the representation down uniquely; the map
 * n |-> sigma_{2n} is the canonical form, its key set is Lambda(y) and
 * lambda(y) = |Lambda(y)|.
 *
 * Canonicalization repeatedly divides the top coefficient by 4 with
 * remainder in {-1, 0, 1, 2} and folds the quotient one even level down
 * (4 e_{2n} = e_{2n-2}, and 4 e_2 = 0 at the bottom).  The potential
 * f(x) = max(-2x, x) never increases under this rewrite, which is what
 * the support-size bound lambda(z) <= 4l for weight-l combinations rests
 * on.
 *
 * Keying convention: the canonical form is keyed by n (so key n refers to
 * the subscript 2n of e).  JSON reports emit the even subscript itself
 * under "index" to match the element literals they sit next to.
 */

namespace prufer {

/// Potential of a single coefficient: f(x) = max(-2x, x).
template <typename IntT>
inline IntT f_weight(const IntT& x) {
  IntT a = -2 * x;
  return a > x ? a : x;
}

/// Smallest l >= 0 with 4^l >= |m| (m nonzero), i.e. ceil(log_4 |m|).
inline std::uint64_t ceil_log4(const Int& m) {
  if (m == 0) throw std::invalid_argument("ceil_log4 requires m != 0");
  Int a = m < 0 ? Int(-m) : m;
  std::uint64_t l = 0;
  Int pow = 1;
  while (pow < a) {
    pow <<= 2;
    ++l;
  }
  return l;
}

/// Remainder of s mod 4 chosen from {-1, 0, 1, 2}.
inline int rep4(const Int& s) {
  long long r = static_cast<long long>(s % 4);
  if (r < 0) r += 4;
  return r == 3 ? -1 : static_cast<int>(r);
}

/// Signed base-4 digits mu_i in {-1, 0, 1, 2} with sum mu_i 4^i = m,
/// least significant first; at most ceil(log_4 |m|) + 1 digits.
inline std::vector<int> expand_base4(Int m) {
  if (m == 0) throw std::invalid_argument("expand_base4 requires m != 0");
  std::vector<int> digits;
  while (m != 0) {
    const int r = rep4(m);
    digits.push_back(r);
    m = (m - r) / 4;
  }
  return digits;
}

/// Support of a canonical form: Lambda(y) as sorted n-keys, and lambda(y).
struct SupportReport {
  std::vector<std::uint64_t> lambda_set;

  std::size_t lambda_count() const { return lambda_set.size(); }

  friend bool operator==(const SupportReport&, const SupportReport&) = default;
};

/// The unique representation sum sigma_{2n} e_{2n}, sigma in {-1,0,1,2}.
struct CanonicalForm {
  std::vector<std::pair<std::uint64_t, int>> coeffs;  // (n, sigma_{2n}), n ascending, sigma != 0
  Element value;                                      // the element the form represents

  SupportReport support() const {
    SupportReport s;
    s.lambda_set.reserve(coeffs.size());
    for (const auto& [n, sigma] : coeffs) s.lambda_set.push_back(n);
    return s;
  }

  std::size_t lambda() const { return coeffs.size(); }

  /// sum |sigma| (the combination weight of the form).
  std::uint64_t weight() const {
    std::uint64_t w = 0;
    for (const auto& [n, sigma] : coeffs) w += static_cast<std::uint64_t>(sigma < 0 ? -sigma : sigma);
    return w;
  }

  /// sum f(sigma_{2n}).
  Int f_total() const {
    Int s = 0;
    for (const auto& [n, sigma] : coeffs) s += f_weight<Int>(Int(sigma));
    return s;
  }

  /// Re-evaluates the form as a combination over e.
  Element eval() const {
    Element acc = Element::zero(2);
    for (const auto& [n, sigma] : coeffs) acc = acc + scalar_mul(Int(sigma), Element::e(2, 2 * n));
    return acc;
  }
};

namespace detail {

// Core rewrite, top key downward.  Input: n-key -> arbitrary integer
// coefficient of e_{2n}.  The quotient of the division by 4 moves to key
// n-1; at n = 1 it vanishes (4 e_2 = 0).
inline CanonicalForm canonicalize_keyed(std::map<std::uint64_t, Int> sigma) {
  CanonicalForm out;
  while (!sigma.empty()) {
    auto it = std::prev(sigma.end());
    const std::uint64_t n = it->first;
    const Int s = it->second;
    sigma.erase(it);
    if (s == 0) continue;
    const int r = rep4(s);
    if (r != 0) out.coeffs.emplace_back(n, r);
    const Int q = (s - r) / 4;
    if (q != 0 && n > 1) sigma[n - 1] += q;
  }
  std::reverse(out.coeffs.begin(), out.coeffs.end());
  out.value = out.eval();
  return out;
}

}  // namespace detail

/// Rewrites a combination over e with arbitrary indices into one with even
/// indices only, via e_{2n-1} = 2 e_{2n}.  Value is preserved and the
/// weight at most doubles.
inline Combination to_even_support(const Combination& c) {
  std::map<std::uint64_t, long long> even;  // even index 2n -> coefficient
  for (const Term& t : c.terms()) {
    const std::uint64_t up = t.index % 2 == 1 ? t.index + 1 : t.index;
    even[up] += t.index % 2 == 1 ? 2 * t.coeff : t.coeff;
  }
  std::vector<Term> terms;
  for (const auto& [idx, coeff] : even)
    if (coeff != 0) terms.push_back(Term{idx, coeff});
  return Combination(std::move(terms));
}

/// Canonical form of a combination over e (p = 2).
inline CanonicalForm canonicalize(const Combination& c) {
  const Combination even = to_even_support(c);
  std::map<std::uint64_t, Int> sigma;
  for (const Term& t : even.terms()) sigma[t.index / 2] += t.coeff;
  return detail::canonicalize_keyed(std::move(sigma));
}

/// Canonical form of an element of Z(2^infinity).
inline CanonicalForm canonicalize(const Element& x) {
  if (x.prime() != 2) throw std::invalid_argument("canonical form requires p = 2");
  std::map<std::uint64_t, Int> sigma;
  if (!x.is_zero()) {
    if (x.exp() % 2 == 0)
      sigma[x.exp() / 2] = x.num();
    else
      sigma[(x.exp() + 1) / 2] = 2 * x.num();  // e_{2n-1} = 2 e_{2n}
  }
  return detail::canonicalize_keyed(std::move(sigma));
}

inline SupportReport support(const Element& x) { return canonicalize(x).support(); }

/// Support of m e_{2n} under the hypothesis n > ceil(log_4 |m|); the
/// result is nonempty and contained in {n - l, ..., n}.
inline SupportReport support_of_multiple(const Int& m, std::uint64_t n) {
  if (m == 0) throw std::invalid_argument("support_of_multiple requires m != 0");
  const std::uint64_t l = ceil_log4(m);
  if (n <= l)
    throw std::invalid_argument("support_of_multiple requires n > ceil(log4|m|) = " +
                                std::to_string(l));
  return support(scalar_mul(m, Element::e(2, 2 * n)));
}

/// A lower bound 4^{exp4} on an order, exp4 possibly negative (the bound
/// is then a rational below 1 and holds trivially).
struct Pow4Bound {
  long long exp4 = 0;

  /// o = 2^k exceeds 4^{exp4} iff k > 2*exp4.
  bool exceeded_by(const Order& o) const { return static_cast<long long>(o.k) > 2 * exp4; }

  std::string str() const { return "4^" + std::to_string(exp4); }
};

/// Certificate that an exactly computed order beats an analytic bound.
/// `holds` false signals an implementation bug: the inequalities are
/// theorems under the checked hypotheses.
struct OrderBoundCert {
  Pow4Bound bound;
  Order actual;
  bool holds = false;
};

/// Lower bound on o(y - z) from the canonical supports alone:
/// with Lambda(y) = {k_1 < ... < k_g} and lambda(z) < g,
/// o(y - z) > 4^{k_{g - lambda(z)} - 1}.
inline OrderBoundCert order_bound_supports(const Element& y, const Element& z) {
  const SupportReport sy = support(y);
  const SupportReport sz = support(z);
  const std::size_t g = sy.lambda_count();
  if (g <= sz.lambda_count())
    throw std::invalid_argument("order_bound_supports requires lambda(y) > lambda(z)");
  OrderBoundCert cert;
  cert.bound.exp4 = static_cast<long long>(sy.lambda_set[g - sz.lambda_count() - 1]) - 1;
  cert.actual = (y - z).order();
  cert.holds = cert.bound.exceeded_by(cert.actual);
  return cert;
}

/// One structured summand nu * e_{2n} of a spaced sum.
struct SpacedTerm {
  long long nu = 0;
  std::uint64_t n = 0;
};

struct SpacedBoundCert {
  Pow4Bound bound;
  Order actual;
  bool holds = false;
  std::size_t t = 0;         // number of structured summands
  std::size_t lambda_y = 0;  // support size of the assembled y
  std::size_t lambda_z = 0;
  bool min_support_holds = false;  // t <= lambda(y)
};

/// Bounds o(y - z) for y = sum nu_i e_{2n_i} whose subscripts are spaced
/// far enough apart that the per-term supports cannot overlap
/// (n_1 > l_1 and n_i < n_{i+1} - l_{i+1}, l_i = ceil(log4 |nu_i|)).
/// Then t <= lambda(y) and, for lambda(z) < lambda(y),
/// o(y - z) > 4^{n_{t - lambda(z)} - l_{t - lambda(z)} - 1}, where indices
/// at or below 0 fall back to n_1, l_1.
///
/// n_1 > l_1 is what keeps the first summand alive (4^{l_1} e_{2n_1} = 0
/// once n_1 <= l_1, and t <= lambda(y) can then fail); the remaining
/// summands get the same guarantee from the gap condition.
inline SpacedBoundCert order_bound_spaced(const std::vector<SpacedTerm>& y_spec, const Element& z) {
  if (y_spec.empty()) throw std::invalid_argument("order_bound_spaced requires t >= 1");
  std::vector<std::uint64_t> ls;
  ls.reserve(y_spec.size());
  for (const SpacedTerm& s : y_spec) {
    if (s.nu == 0) throw std::invalid_argument("order_bound_spaced requires nu_i != 0");
    if (s.n == 0) throw std::invalid_argument("order_bound_spaced requires n_i > 0");
    ls.push_back(ceil_log4(Int(s.nu)));
  }
  if (y_spec[0].n <= ls[0])
    throw std::invalid_argument("order_bound_spaced requires n_1 > ceil(log4|nu_1|)");
  for (std::size_t i = 0; i + 1 < y_spec.size(); ++i) {
    if (y_spec[i].n >= y_spec[i + 1].n)
      throw std::invalid_argument("order_bound_spaced requires strictly increasing n_i");
    if (!(y_spec[i].n < y_spec[i + 1].n - ls[i + 1]))
      throw std::invalid_argument("order_bound_spaced gap condition n_i < n_{i+1} - l_{i+1} violated");
  }

  Element y = Element::zero(2);
  for (const SpacedTerm& s : y_spec) y = y + scalar_mul(Int(s.nu), Element::e(2, 2 * s.n));

  SpacedBoundCert cert;
  cert.t = y_spec.size();
  cert.lambda_y = canonicalize(y).lambda();
  cert.lambda_z = support(z).lambda_count();
  if (cert.lambda_z >= cert.lambda_y)
    throw std::invalid_argument("order_bound_spaced requires lambda(z) < lambda(y)");
  cert.min_support_holds = cert.t <= cert.lambda_y;

  // index t - lambda(z), 1-based; nonpositive falls back to the first term
  std::size_t j = cert.lambda_z < cert.t ? cert.t - cert.lambda_z : 1;
  cert.bound.exp4 = static_cast<long long>(y_spec[j - 1].n) - static_cast<long long>(ls[j - 1]) - 1;
  cert.actual = (y - z).order();
  cert.holds = cert.bound.exceeded_by(cert.actual);
  return cert;
}

struct ScaledSumBoundCert {
  Pow4Bound bound;        // 4^{n_{t-4l} - l - 1}
  Pow4Bound bound_floor;  // 4^{n_1 - l - 1} <= bound
  Order actual;
  bool holds = false;
};

/// Bounds o(mu*y + z) for y = e_{2n_1} + ... + e_{2n_t} with t > 4l,
/// n_i < n_{i+1} - l, |mu| <= l, and z a combination over e of weight
/// <= l:  o(mu y + z) > 4^{n_{t-4l} - l - 1} >= 4^{n_1 - l - 1}.
/// mu = 0 is accepted but carries no guarantee (the support argument
/// behind the bound needs mu != 0); the certificate simply reports
/// whether the inequality held.
inline ScaledSumBoundCert order_bound_scaled_sum(std::uint64_t l, long long mu,
                                                 const std::vector<std::uint64_t>& n_indices,
                                                 const Combination& z) {
  if (l == 0) throw std::invalid_argument("order_bound_scaled_sum requires l >= 1");
  const std::uint64_t abs_mu = static_cast<std::uint64_t>(mu < 0 ? -mu : mu);
  if (abs_mu > l) throw std::invalid_argument("order_bound_scaled_sum requires |mu| <= l");
  if (z.weight() > l)
    throw std::invalid_argument("order_bound_scaled_sum requires weight(z) <= l");
  const std::size_t t = n_indices.size();
  if (t <= 4 * l) throw std::invalid_argument("order_bound_scaled_sum requires t > 4l");
  for (std::size_t i = 0; i < t; ++i) {
    if (n_indices[i] == 0) throw std::invalid_argument("order_bound_scaled_sum requires n_i > 0");
    if (i + 1 < t && !(n_indices[i] < n_indices[i + 1] - l))
      throw std::invalid_argument("order_bound_scaled_sum gap condition n_i < n_{i+1} - l violated");
  }

  Element y = Element::zero(2);
  for (std::uint64_t n : n_indices) y = y + Element::e(2, 2 * n);
  const Element value =
      scalar_mul(Int(mu), y) + z.eval([](std::uint64_t k) { return Element::e(2, k); }, Element::zero(2));

  ScaledSumBoundCert cert;
  cert.bound.exp4 =
      static_cast<long long>(n_indices[t - 4 * l - 1]) - static_cast<long long>(l) - 1;
  cert.bound_floor.exp4 = static_cast<long long>(n_indices[0]) - static_cast<long long>(l) - 1;
  cert.actual = value.order();
  cert.holds = cert.bound.exceeded_by(cert.actual);
  return cert;
}

}  // namespace prufer
