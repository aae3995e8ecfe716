#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "prufer/element.hpp"
#include "prufer/sequences.hpp"

/*
 * Characters of Z(2^infinity) and the von Neumann radical at finite
 * torsion levels.
 *
 * chi_1 is the natural embedding into T = R/Z; an integer multiple
 * m chi_1 sends a/2^n to m a / 2^n mod 1, and a 2-adic integer acts on
 * a/2^n through its residue mod 2^n.  Truncated residues therefore
 * evaluate exactly as long as the precision covers the element's
 * exponent - anything less is an error, never a silent rounding.
 *
 * Everything here is exact dyadic arithmetic: circle values are reduced
 * fractions num/2^exp in [0,1), the norm is min(q, 1-q), and every
 * threshold comparison is a rational comparison.  m chi_1 is continuous
 * on the topology built from the d-sequence iff m x = 0, i.e. 2^{k0}
 * divides m; that exact classification is the ground truth against which
 * the windowed numeric classifier is checked.
 */

namespace prufer {

/// Exact dyadic point of the circle R/Z, reduced, 0 <= q < 1.
class CircleValue {
 public:
  CircleValue() = default;

  explicit CircleValue(const Element& x) {
    if (x.prime() != 2) throw std::invalid_argument("circle values here are dyadic (p = 2)");
    num_ = x.num();
    exp_ = x.exp();
  }

  static CircleValue zero() { return CircleValue(); }

  const Int& num() const { return num_; }
  std::uint64_t exp() const { return exp_; }
  bool is_zero() const { return exp_ == 0; }

  Element as_element() const { return Element::make(2, num_, exp_); }

  CircleValue operator+(const CircleValue& o) const {
    return CircleValue(as_element() + o.as_element());
  }
  CircleValue operator-() const { return CircleValue(-as_element()); }
  CircleValue operator-(const CircleValue& o) const { return CircleValue(as_element() - o.as_element()); }

  /// Distance to 0 on the circle: min(q, 1-q), again an exact dyadic.
  CircleValue norm() const {
    if (is_zero()) return CircleValue();
    if (2 * num_ <= (Int(1) << exp_)) return *this;
    return CircleValue(Element::make(2, (Int(1) << exp_) - num_, exp_));
  }

  friend bool operator==(const CircleValue&, const CircleValue&) = default;

  friend bool operator<(const CircleValue& a, const CircleValue& b) {
    const std::uint64_t e = a.exp_ > b.exp_ ? a.exp_ : b.exp_;
    return (a.num_ << (e - a.exp_)) < (b.num_ << (e - b.exp_));
  }
  friend bool operator<=(const CircleValue& a, const CircleValue& b) { return !(b < a); }

  std::string str() const { return as_element().str(); }

  static CircleValue parse(std::string_view s) { return CircleValue(Element::parse(s)); }

 private:
  Int num_ = 0;
  std::uint64_t exp_ = 0;
};

/// n1/2^e1 <= n2/2^e2, exact.
inline bool dyadic_leq(const Int& n1, std::uint64_t e1, const Int& n2, std::uint64_t e2) {
  const std::uint64_t e = e1 > e2 ? e1 : e2;
  return (n1 << (e - e1)) <= (n2 << (e - e2));
}

/// A continuous-character candidate: m * chi_1, or a 2-adic integer
/// truncated to a residue mod 2^precision.
class Character {
 public:
  static Character integer(Int m) {
    Character c;
    c.padic_ = false;
    c.m_ = std::move(m);
    return c;
  }

  static Character truncated_padic(Int residue, std::uint64_t precision) {
    if (precision == 0) throw std::invalid_argument("padic precision must be positive");
    Character c;
    c.padic_ = true;
    c.precision_ = precision;
    const Int mod = Int(1) << precision;
    c.m_ = residue % mod;
    if (c.m_ < 0) c.m_ += mod;
    return c;
  }

  bool is_padic() const { return padic_; }
  const Int& coefficient() const { return m_; }
  std::uint64_t precision() const { return precision_; }

  /// Exact evaluation in T.  Truncated 2-adics require their precision to
  /// cover the element's exponent.
  CircleValue evaluate(const Element& a) const {
    if (a.prime() != 2) throw std::invalid_argument("characters act on Z(2^inf)");
    if (padic_ && precision_ < a.exp())
      throw std::invalid_argument("padic precision 2^" + std::to_string(precision_) +
                                  " is insufficient for an element of exponent " +
                                  std::to_string(a.exp()));
    return CircleValue(scalar_mul(m_, a));
  }

  /// CLI spelling: `m:<int>` or `padic:<residue>@<precision>`.
  std::string str() const {
    if (!padic_) return "m:" + m_.str();
    return "padic:" + m_.str() + "@" + std::to_string(precision_);
  }

  static Character parse(std::string_view s) {
    const auto bad = [&] {
      throw std::invalid_argument("malformed character '" + std::string(s) +
                                  "' (expected m:<int> or padic:<residue>@<precision>)");
    };
    if (s.rfind("m:", 0) == 0) {
      try {
        return integer(Int(std::string(s.substr(2))));
      } catch (const std::exception&) {
        bad();
      }
    }
    if (s.rfind("padic:", 0) == 0) {
      const auto at = s.find('@');
      if (at == std::string_view::npos) bad();
      try {
        return truncated_padic(Int(std::string(s.substr(6, at - 6))),
                               std::stoull(std::string(s.substr(at + 1))));
      } catch (const std::invalid_argument&) {
        bad();
      }
    }
    bad();
    return integer(0);  // unreachable
  }

 private:
  bool padic_ = false;
  Int m_ = 0;
  std::uint64_t precision_ = 0;
};

/// m chi_1 is continuous on the d-topology iff m x = 0, iff 2^{k0} | m.
inline bool converges_exact(const Int& m, const RadicalTarget& target) {
  return scalar_mul(m, target.x).is_zero();
}

/// Exact circle norms of chi along the first K terms of seq.
inline std::vector<std::pair<std::uint64_t, CircleValue>> tail_profile(const Character& chi,
                                                                       const Sequence& seq,
                                                                       std::uint64_t K) {
  std::vector<std::pair<std::uint64_t, CircleValue>> out;
  out.reserve(K);
  for (std::uint64_t k = 1; k <= K; ++k) out.emplace_back(k, chi.evaluate(seq.term(k)).norm());
  return out;
}

struct ClassifyReport {
  long long m_lo = 0, m_hi = 0;
  std::uint64_t K = 0;
  CircleValue epsilon;
  std::vector<long long> accepted;       // by the windowed heuristic
  std::vector<long long> rejected;
  std::vector<long long> disagreements;  // heuristic vs the exact classifier
};

/// Windowed numeric classifier for m chi_1 along d_1..d_K.  Only the
/// b-positions (odd d-indices) discriminate: chi(e_k) -> 0 for every
/// integer character, so the heuristic accepts m iff every b-position in
/// the second half of the prefix has norm <= epsilon.  Ground truth is
/// converges_exact; the report flags all disagreements.
inline ClassifyReport classify_prefix(long long m_lo, long long m_hi, const RadicalTarget& target,
                                      std::uint64_t K, const CircleValue& epsilon) {
  if (m_lo > m_hi) throw std::invalid_argument("empty m range");
  ClassifyReport report;
  report.m_lo = m_lo;
  report.m_hi = m_hi;
  report.K = K;
  report.epsilon = epsilon;

  const Sequence d = Sequence::d(target);
  std::vector<Element> b_terms;  // b-positions in the second half of 1..K
  for (std::uint64_t k = K / 2 + 1; k <= K; ++k)
    if (k % 2 == 1) b_terms.push_back(d.term(k));

  for (long long m = m_lo; m <= m_hi; ++m) {
    bool ok = true;
    for (const Element& t : b_terms)
      if (!(Character::integer(Int(m)).evaluate(t).norm() <= epsilon)) {
        ok = false;
        break;
      }
    (ok ? report.accepted : report.rejected).push_back(m);
    if (ok != converges_exact(Int(m), target)) report.disagreements.push_back(m);
  }
  return report;
}

/// Residues a (of a/2^N) of the cyclic subgroup generated by x inside <e_N>.
inline std::vector<std::uint64_t> cyclic_residues(const Element& x, std::uint64_t N) {
  if (x.prime() != 2) throw std::invalid_argument("p = 2 required");
  if (x.exp() > N) throw std::invalid_argument("x does not lie in the requested level");
  if (N > 30) throw std::invalid_argument("level too large for exhaustive residues");
  const std::uint64_t mod = std::uint64_t(1) << N;
  const std::uint64_t xr =
      static_cast<std::uint64_t>(x.num()) << (N - x.exp());
  std::vector<bool> in(mod, false);
  std::uint64_t a = 0;
  do {
    in[a] = true;
    a = (a + xr) & (mod - 1);
  } while (a != 0);
  std::vector<std::uint64_t> out;
  for (std::uint64_t r = 0; r < mod; ++r)
    if (in[r]) out.push_back(r);
  return out;
}

struct RadicalReport {
  std::uint64_t level = 0;           // N: computation inside <e_N>
  Element generator;                 // generates the computed intersection
  std::uint64_t size_exp = 0;        // subgroup size 2^{size_exp}
  std::vector<std::uint64_t> residues;  // numerators a of a/2^N in the subgroup
  std::vector<long long> accepted_m;    // characters entering the intersection
  bool degenerate = false;           // no nonzero accepted character in range
};

/// Intersection of ker(m chi_1) over all accepted m in [m_lo, m_hi],
/// restricted to <e_N> and computed by exhaustive kernel enumeration.
/// For the d-topology this is the level-N shadow of the radical and must
/// equal <e_{k0}> = <x>.
inline RadicalReport radical_at_level(const RadicalTarget& target, long long m_lo, long long m_hi,
                                      std::uint64_t N) {
  if (N < target.k0) throw std::invalid_argument("level must be at least k0");
  if (N > 30) throw std::invalid_argument("level too large for exhaustive kernels");
  if (m_lo > m_hi) throw std::invalid_argument("empty m range");

  RadicalReport report;
  report.level = N;
  const std::uint64_t mod = std::uint64_t(1) << N;
  std::vector<bool> keep(mod, true);

  bool any_nonzero = false;
  for (long long m = m_lo; m <= m_hi; ++m) {
    if (!converges_exact(Int(m), target)) continue;
    report.accepted_m.push_back(m);
    if (m == 0) continue;  // the zero character kills nothing
    any_nonzero = true;
    const std::uint64_t mm = static_cast<std::uint64_t>(((m % static_cast<long long>(mod)) +
                                                         static_cast<long long>(mod))) &
                             (mod - 1);
    for (std::uint64_t a = 0; a < mod; ++a)
      if (keep[a] && ((mm * a) & (mod - 1)) != 0) keep[a] = false;
  }
  report.degenerate = !any_nonzero;

  for (std::uint64_t a = 0; a < mod; ++a)
    if (keep[a]) report.residues.push_back(a);

  std::uint64_t size = report.residues.size();
  std::uint64_t s = 0;
  while ((std::uint64_t(1) << s) < size) ++s;
  report.size_exp = s;
  report.generator = s == 0 ? Element::zero(2) : Element::e(2, s);
  return report;
}

struct PadicProbeReport {
  std::vector<std::pair<std::uint64_t, CircleValue>> norms;  // along e_1..e_K
  CircleValue max_tail_norm;  // over the second half of the prefix
  bool looks_nonconvergent = false;  // max tail norm >= 1/4
  // Heuristic witness only: a finite window never decides convergence.
};

/// Evaluates a truncated 2-adic along e_1..e_K and reports whether the
/// tail norms stay at or above 1/4, the signature of a residue pattern
/// that is not eventually an integer within the window.
inline PadicProbeReport nonconvergent_padic_probe(const Int& residue, std::uint64_t precision,
                                                  std::uint64_t K) {
  if (precision < K)
    throw std::invalid_argument("probe requires precision >= K");
  PadicProbeReport report;
  const Character chi = Character::truncated_padic(residue, precision);
  report.norms = tail_profile(chi, Sequence::e(2), K);
  const CircleValue quarter = CircleValue(Element::make(2, 1, 2));
  for (std::uint64_t k = K / 2 + 1; k <= K; ++k) {
    const CircleValue& n = report.norms[k - 1].second;
    if (report.max_tail_norm < n) report.max_tail_norm = n;
  }
  report.looks_nonconvergent = quarter <= report.max_tail_norm;
  return report;
}

}  // namespace prufer
