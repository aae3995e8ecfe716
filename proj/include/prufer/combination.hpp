#pragma once

#include <cstdint>
#include <cstdlib>
#include <stdexcept>
#include <vector>

#include "prufer/element.hpp"

/*
 * Finite formal integer combinations sum m_i * a_{k_i} over a sequence,
 * with strictly increasing positive indices and nonzero coefficients.
 * The weight sum |m_i| is the quantity bounded by the window parameter l.
 */

namespace prufer {

struct Term {
  std::uint64_t index = 0;
  long long coeff = 0;

  friend bool operator==(const Term&, const Term&) = default;
};

inline constexpr long long kMaxCoeff = 1'000'000'000'000LL;

class Combination {
 public:
  Combination() = default;

  explicit Combination(std::vector<Term> terms) : terms_(std::move(terms)) {
    std::uint64_t prev = 0;
    for (const Term& t : terms_) {
      if (t.index == 0) throw std::invalid_argument("combination index must be positive");
      if (t.index <= prev) throw std::invalid_argument("combination indices must strictly increase");
      if (t.coeff == 0) throw std::invalid_argument("combination coefficients must be nonzero");
      if (t.coeff > kMaxCoeff || t.coeff < -kMaxCoeff)
        throw std::invalid_argument("combination coefficient out of range");
      prev = t.index;
    }
  }

  const std::vector<Term>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  std::uint64_t weight() const {
    std::uint64_t w = 0;
    for (const Term& t : terms_) w += static_cast<std::uint64_t>(std::llabs(t.coeff));
    return w;
  }

  std::uint64_t max_index() const {
    if (terms_.empty()) throw std::logic_error("empty combination has no max index");
    return terms_.back().index;
  }

  /// Evaluates sum m_i * term_of(k_i); `zero` supplies the group identity
  /// (the empty combination denotes 0).
  template <typename TermFn>
  Element eval(TermFn&& term_of, const Element& zero) const {
    Element acc = zero;
    for (const Term& t : terms_) acc = acc + scalar_mul(Int(t.coeff), term_of(t.index));
    return acc;
  }

  friend bool operator==(const Combination&, const Combination&) = default;

 private:
  std::vector<Term> terms_;
};

}  // namespace prufer
