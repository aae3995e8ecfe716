#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "prufer/combination.hpp"
#include "prufer/element.hpp"

/*
 * The three sequences the library works with:
 *
 *   e : e_k = 1/p^k
 *   b : b_k = -x + e_{2(k^3-k^2)} + e_{2(k^3-k^2+k)} + ... + e_{2k^3}
 *       (k+1 summands; the inner subscripts form an arithmetic progression
 *        of step k between k^3-k^2 and k^3, doubled; e_0 = 0 covers k = 1)
 *   d : the interleaving b_1, e_1, b_2, e_2, b_3, e_3, ...
 *
 * b and d are tied to a target x of order 2^{k0} in Z(2^infinity); the
 * finest group topology converging along d has von Neumann radical <x>.
 */

namespace prufer {

/// A prescribed nonzero x in Z(2^infinity) together with k0, o(x) = 2^{k0}.
struct RadicalTarget {
  Element x;
  std::uint64_t k0 = 0;

  static RadicalTarget of(const Element& x) {
    if (x.prime() != 2) throw std::invalid_argument("radical target must lie in Z(2^inf)");
    if (x.is_zero()) throw std::invalid_argument("radical target must be nonzero");
    return RadicalTarget{x, x.exp()};
  }
};

/// Inner e-subscripts of b_k: 2(k^3 - k^2 + j k) for j = 0..k.
inline std::vector<std::uint64_t> b_subscripts(std::uint64_t k) {
  if (k == 0) throw std::invalid_argument("sequence index must be positive");
  const std::uint64_t base = k * k * k - k * k;
  std::vector<std::uint64_t> out;
  out.reserve(k + 1);
  for (std::uint64_t j = 0; j <= k; ++j) out.push_back(2 * (base + j * k));
  return out;
}

class Sequence {
 public:
  enum class Kind { E, B, D };

  static Sequence e(long long p = 2) { return Sequence(Kind::E, p, {}); }
  static Sequence b(const RadicalTarget& t) { return Sequence(Kind::B, 2, t); }
  static Sequence d(const RadicalTarget& t) { return Sequence(Kind::D, 2, t); }

  Kind kind() const { return kind_; }
  long long prime() const { return p_; }

  const RadicalTarget& target() const {
    if (kind_ == Kind::E) throw std::logic_error("sequence e carries no target");
    return target_;
  }

  std::string name() const {
    switch (kind_) {
      case Kind::E: return "e";
      case Kind::B: return "b";
      default: return "d";
    }
  }

  /// k-th term, k >= 1.
  Element term(std::uint64_t k) const {
    if (k == 0) throw std::invalid_argument("sequence index must be positive");
    switch (kind_) {
      case Kind::E:
        return Element::e(p_, k);
      case Kind::B: {
        Element acc = -target_.x;
        for (std::uint64_t s : b_subscripts(k)) acc = acc + Element::e(2, s);
        return acc;
      }
      default:
        // d interleaves b and e: positions 2i-1 |-> b_i, 2i |-> e_i.
        if (k % 2 == 1) return Sequence::b(target_).term((k + 1) / 2);
        return Element::e(2, k / 2);
    }
  }

 private:
  Sequence(Kind k, long long p, RadicalTarget t) : kind_(k), p_(p), target_(std::move(t)) {
    if (!is_prime(p_)) throw std::invalid_argument("p must be prime");
  }

  Kind kind_;
  long long p_;
  RadicalTarget target_;
};

/// Exact value of sum m_i * a_{k_i} over `seq`.
inline Element eval_combination(const Combination& c, const Sequence& seq) {
  return c.eval([&](std::uint64_t k) { return seq.term(k); }, Element::zero(seq.prime()));
}

/// Splits a combination over d by parity of its indices into the b-part
/// and the e-part (indices mapped back to the underlying sequences).
/// Weights add up to the original weight, and values add up exactly.
inline std::pair<Combination, Combination> split_d_combination(const Combination& c) {
  std::vector<Term> b_terms, e_terms;
  for (const Term& t : c.terms()) {
    if (t.index % 2 == 1)
      b_terms.push_back(Term{(t.index + 1) / 2, t.coeff});
    else
      e_terms.push_back(Term{t.index / 2, t.coeff});
  }
  return {Combination(std::move(b_terms)), Combination(std::move(e_terms))};
}

}  // namespace prufer
