#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "prufer/combination.hpp"
#include "prufer/element.hpp"
#include "prufer/sequences.hpp"

/*
 * Windowed enumeration of the combination sets
 *
 *   A(l,m)_a = { m_1 a_{k_1} + ... + m_h a_{k_h} :
 *                m <= k_1 < ... < k_h, m_i != 0, sum |m_i| <= l },
 *
 * truncated to indices k_i <= M.  The truncation is an artifact knob: the
 * enumerated window is exhaustive for [m, M] and every report carries the
 * truncation parameters, while statements about the untruncated sets are
 * delivered as analytic order-bound certificates elsewhere.
 *
 * Enumeration order (fixed, so witnesses are deterministic): combinations
 * by increasing h, then index subsets lexicographically, then coefficient
 * vectors by increasing total weight and lexicographic position order
 * with 1 < -1 < 2 < -2 < ...  The empty combination is excluded; a zero
 * value arising from cancellation stays in the window with its witness.
 */

namespace prufer {

/// Thrown when an enumeration would exceed the combination-count cap;
/// silent truncation would invalidate every certificate downstream.
class resource_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultCombinationCap = 10'000'000;

struct WindowParams {
  std::uint64_t l = 1;        // weight budget sum |m_i| <= l
  std::uint64_t m = 1;        // minimum index
  std::uint64_t M = 1;        // maximum index (truncation)
  std::uint64_t n_level = 0;  // torsion level 2^n for A[2^n] checks

  void validate() const {
    if (l == 0) throw std::invalid_argument("window requires l >= 1");
    if (m == 0) throw std::invalid_argument("window requires m >= 1");
    if (m > M) throw std::invalid_argument("window requires m <= M");
  }
};

struct WindowEntry {
  Element value;
  Combination witness;  // first combination reaching the value in enumeration order
};

struct Window {
  WindowParams params;
  std::vector<WindowEntry> entries;  // sorted by value (exp, num)
  std::uint64_t combination_count = 0;

  bool contains(const Element& x) const {
    for (const WindowEntry& e : entries)
      if (e.value == x) return true;
    return false;
  }
};

namespace detail {

inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k, std::uint64_t cap) {
  if (k > n) return 0;
  Int r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
    if (r > cap) return cap + 1;
  }
  return static_cast<std::uint64_t>(r);
}

// Number of coefficient vectors of length h with nonzero entries and
// total weight <= l: sum over w of 2^h * C(w-1, h-1).
inline std::uint64_t coeff_vector_count(std::uint64_t h, std::uint64_t l, std::uint64_t cap) {
  if (h >= 63) return cap + 1;  // sign choices alone overflow any sane cap
  std::uint64_t total = 0;
  for (std::uint64_t w = h; w <= l; ++w) {
    std::uint64_t c = binomial(w - 1, h - 1, cap);
    if (c > cap / (std::uint64_t(1) << h)) return cap + 1;
    total += (std::uint64_t(1) << h) * c;
    if (total > cap) return cap + 1;
  }
  return total;
}

// Coefficient vectors for h positions, ordered by total weight then
// lexicographically with per-position order 1, -1, 2, -2, ...
inline void coeff_vectors(std::uint64_t h, std::uint64_t l, std::vector<std::vector<long long>>& out) {
  out.clear();
  for (std::uint64_t w = h; w <= l; ++w) {
    std::vector<long long> cur(h);
    // compositions of w into h positive parts, then all sign choices
    const auto rec = [&](auto&& self, std::uint64_t pos, std::uint64_t left) -> void {
      if (pos + 1 == h) {
        cur[pos] = static_cast<long long>(left);
        std::vector<long long> signs = cur;
        const auto sign_rec = [&](auto&& sself, std::uint64_t i) -> void {
          if (i == h) {
            out.push_back(signs);
            return;
          }
          signs[i] = cur[i];
          sself(sself, i + 1);
          signs[i] = -cur[i];
          sself(sself, i + 1);
        };
        sign_rec(sign_rec, 0);
        return;
      }
      for (std::uint64_t v = 1; v + (h - pos - 1) <= left; ++v) {
        cur[pos] = static_cast<long long>(v);
        self(self, pos + 1, left - v);
      }
    };
    rec(rec, 0, w);
  }
}

}  // namespace detail

/// Exhaustive enumeration of the truncated window.  Throws resource_error
/// if the combination count would exceed `cap`.
inline Window enumerate_window(const Sequence& seq, const WindowParams& params,
                               std::uint64_t cap = kDefaultCombinationCap) {
  params.validate();
  const std::uint64_t width = params.M - params.m + 1;
  const std::uint64_t h_max = params.l < width ? params.l : width;

  std::uint64_t predicted = 0;
  for (std::uint64_t h = 1; h <= h_max; ++h) {
    const std::uint64_t subsets = detail::binomial(width, h, cap);
    const std::uint64_t vectors = detail::coeff_vector_count(h, params.l, cap);
    if (subsets > cap || vectors > cap || (vectors != 0 && subsets > cap / vectors))
      predicted = cap + 1;
    else
      predicted += subsets * vectors;
    if (predicted > cap)
      throw resource_error("window [" + std::to_string(params.m) + "," + std::to_string(params.M) +
                           "] with l=" + std::to_string(params.l) + " exceeds the combination cap " +
                           std::to_string(cap));
  }

  std::vector<Element> terms(width);
  for (std::uint64_t i = 0; i < width; ++i) terms[i] = seq.term(params.m + i);
  const Element zero = Element::zero(seq.prime());

  Window window;
  window.params = params;
  std::map<Element, Combination> seen;

  std::vector<std::uint64_t> subset;
  std::vector<std::vector<long long>> vectors;
  for (std::uint64_t h = 1; h <= h_max; ++h) {
    detail::coeff_vectors(h, params.l, vectors);
    subset.assign(h, 0);
    const auto subsets_rec = [&](auto&& self, std::uint64_t pos, std::uint64_t from) -> void {
      if (pos == h) {
        for (const auto& vec : vectors) {
          ++window.combination_count;
          Element acc = zero;
          std::vector<Term> ts(h);
          for (std::uint64_t i = 0; i < h; ++i) {
            ts[i] = Term{params.m + subset[i], vec[i]};
            acc = acc + scalar_mul(Int(vec[i]), terms[subset[i]]);
          }
          seen.emplace(acc, Combination(std::move(ts)));
        }
        return;
      }
      for (std::uint64_t i = from; i + (h - pos) <= width; ++i) {
        subset[pos] = i;
        self(self, pos + 1, i + 1);
      }
    };
    subsets_rec(subsets_rec, 0, 0);
  }

  window.entries.reserve(seen.size());
  for (auto& [value, witness] : seen) window.entries.push_back(WindowEntry{value, std::move(witness)});
  return window;
}

/// Result of checking A[2^n] against a truncated window.
struct IntersectionReport {
  WindowParams params;
  bool empty = true;                   // no nonzero window element of order <= 2^n
  std::vector<WindowEntry> witnesses;  // the offenders otherwise
};

/// Checks whether every nonzero element of the window has order > 2^{n_level}.
inline IntersectionReport check_torsion_intersection(const Sequence& seq, const WindowParams& params,
                                                     std::uint64_t cap = kDefaultCombinationCap) {
  const Window w = enumerate_window(seq, params, cap);
  IntersectionReport report;
  report.params = params;
  for (const WindowEntry& e : w.entries) {
    if (e.value.is_zero()) continue;
    if (e.value.order().k <= params.n_level) report.witnesses.push_back(e);
  }
  report.empty = report.witnesses.empty();
  return report;
}

/// In Z(p^infinity) only the p-part of a general torsion level matters:
/// A[n] = A[p^{v_p(n)}].  Returns that exponent.
inline std::uint64_t torsion_exponent(Int n, long long p) {
  if (n <= 0) throw std::invalid_argument("torsion level must be positive");
  std::uint64_t v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

struct M0Search {
  std::optional<std::uint64_t> m0;  // smallest m <= m_cap with empty intersection
  std::uint64_t stable_through = 0; // emptiness verified on [m0, stable_through] only
};

/// Smallest m <= m_cap whose window [m, M] avoids A[2^{n_level}] outside 0.
/// A desk-scale certificate for the truncated window, not a proof for the
/// untruncated set.
inline M0Search search_m0(const Sequence& seq, std::uint64_t l, std::uint64_t n_level,
                          std::uint64_t M, std::uint64_t m_cap,
                          std::uint64_t cap = kDefaultCombinationCap) {
  if (m_cap > M) throw std::invalid_argument("search_m0 requires m_cap <= M");
  M0Search result;
  result.stable_through = M;
  for (std::uint64_t m = 1; m <= m_cap; ++m) {
    if (check_torsion_intersection(seq, WindowParams{l, m, M, n_level}, cap).empty) {
      result.m0 = m;
      return result;
    }
  }
  return result;
}

/// Finite certificate consistent with o-exponent gaps diverging: the
/// differences n_{k+1} - n_k must be strictly increasing from
/// `window_start` (1-based difference index) onward.
struct GapGrowthCert {
  bool ok = true;
  std::vector<long long> diffs;
};

inline GapGrowthCert gap_growth_certificate(const std::vector<Order>& orders,
                                            std::size_t window_start = 1) {
  GapGrowthCert cert;
  if (orders.empty()) throw std::invalid_argument("gap_growth_certificate requires orders");
  for (std::size_t i = 0; i + 1 < orders.size(); ++i) {
    if (orders[i].p != orders[i + 1].p)
      throw std::invalid_argument("gap_growth_certificate requires a single prime");
    cert.diffs.push_back(static_cast<long long>(orders[i + 1].k) - static_cast<long long>(orders[i].k));
  }
  const std::size_t from = window_start == 0 ? 0 : window_start - 1;
  for (std::size_t i = from; i + 1 < cert.diffs.size(); ++i)
    if (cert.diffs[i + 1] <= cert.diffs[i]) cert.ok = false;
  return cert;
}

}  // namespace prufer
