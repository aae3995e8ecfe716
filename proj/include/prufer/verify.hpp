#pragma once

#include <chrono>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "prufer/canonical.hpp"
#include "prufer/characters.hpp"
#include "prufer/construction.hpp"
#include "prufer/element.hpp"
#include "prufer/sequences.hpp"
#include "prufer/window.hpp"

/*
 * The verification suite: nine exact, oracle-backed criteria at desk
 * scale.  The quick profile runs the canonical scales; the full profile
 * roughly doubles the caps.  Every check is an exact comparison - there
 * is no floating point and no tolerance anywhere in this suite.
 */

namespace prufer::verify {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct Profile {
  bool full = false;

  // 1. canonical form soundness
  std::uint64_t level() const { return full ? 18 : 16; }
  // 2. lambda bound windows
  std::uint64_t lambda_M() const { return full ? 28 : 20; }
  // 3. f-law range
  long long f_range() const { return full ? 16 : 8; }
  // 4. randomized order-bound instances per statement
  int random_instances() const { return full ? 20000 : 10000; }
  // 5, 9. order-law / limit-bound depth
  std::uint64_t k_max() const { return full ? 7 : 6; }
  // 6. window truncation
  std::uint64_t window_M() const { return full ? 10 : 8; }
  // 7. classification sweep
  long long m_sweep() const { return full ? 128 : 64; }
  std::uint64_t classify_K() const { return full ? 14 : 12; }
  // 8. radical levels and character range
  std::uint64_t radical_N() const { return full ? 13 : 12; }
  long long radical_m() const { return full ? 32 : 16; }
};

namespace detail {

inline std::vector<Element> classification_targets() {
  return {Element::e(2, 1), Element::e(2, 2), Element::e(2, 3), 3 * Element::e(2, 2)};
}

inline std::vector<Element> order_law_targets() {
  return {Element::e(2, 1), Element::e(2, 2), 3 * Element::e(2, 2)};
}

template <typename Fn>
inline CriterionResult timed(int id, std::string name, Fn&& fn) {
  CriterionResult r;
  r.id = id;
  r.name = std::move(name);
  const auto t0 = std::chrono::steady_clock::now();
  r.pass = fn(r.detail);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

// Random canonical vector: `count` distinct n-keys below `key_max`,
// coefficients drawn from {-1, 1, 2}.
inline Element random_canonical(std::mt19937_64& rng, std::size_t count, std::uint64_t key_max) {
  std::vector<std::uint64_t> keys;
  std::uniform_int_distribution<std::uint64_t> key_dist(1, key_max);
  while (keys.size() < count) {
    const std::uint64_t k = key_dist(rng);
    bool dup = false;
    for (std::uint64_t existing : keys) dup = dup || existing == k;
    if (!dup) keys.push_back(k);
  }
  static constexpr int kSigma[3] = {-1, 1, 2};
  Element acc = Element::zero(2);
  std::uniform_int_distribution<int> sigma_dist(0, 2);
  for (std::uint64_t k : keys)
    acc = acc + scalar_mul(Int(kSigma[sigma_dist(rng)]), Element::e(2, 2 * k));
  return acc;
}

// Random combination over e with weight <= l (possibly empty).
inline Combination random_weighted_combination(std::mt19937_64& rng, std::uint64_t l,
                                               std::uint64_t index_max) {
  std::uniform_int_distribution<std::uint64_t> weight_dist(0, l);
  const std::uint64_t w = weight_dist(rng);
  if (w == 0) return Combination();
  std::uniform_int_distribution<std::uint64_t> h_dist(1, w);
  const std::uint64_t h = h_dist(rng);
  std::vector<std::uint64_t> idx;
  std::uniform_int_distribution<std::uint64_t> idx_dist(1, index_max);
  while (idx.size() < h) {
    const std::uint64_t k = idx_dist(rng);
    bool dup = false;
    for (std::uint64_t existing : idx) dup = dup || existing == k;
    if (!dup) idx.push_back(k);
  }
  std::sort(idx.begin(), idx.end());
  // split weight w into h positive magnitudes
  std::vector<long long> mags(h, 1);
  std::uniform_int_distribution<std::uint64_t> pos_dist(0, h - 1);
  for (std::uint64_t rest = w - h; rest > 0; --rest) ++mags[pos_dist(rng)];
  std::vector<Term> terms(h);
  std::uniform_int_distribution<int> sign_dist(0, 1);
  for (std::uint64_t i = 0; i < h; ++i)
    terms[i] = Term{idx[i], sign_dist(rng) ? mags[i] : -mags[i]};
  return Combination(std::move(terms));
}

}  // namespace detail

/// 1. Canonicalization is value-preserving with coefficients in
/// {-1,0,1,2} over all of <e_level>, and evaluation of coefficient
/// vectors over indices {2,...,2*(level/2)} is injective.
inline CriterionResult criterion_canonical_soundness(const Profile& p) {
  return detail::timed(1, "canonical form soundness (exhaustive level + injectivity)",
                       [&](std::string& detail) {
    const std::uint64_t N = p.level();
    std::uint64_t checked = 0;
    for (Int a = 0; a < (Int(1) << N); ++a) {
      const Element x = Element::make(2, a, N);
      const CanonicalForm cf = canonicalize(x);
      for (const auto& [n, sigma] : cf.coeffs)
        if (sigma < -1 || sigma > 2 || sigma == 0) return false;
      if (cf.eval() != x) return false;
      ++checked;
    }
    // Independent injectivity route: pure integer evaluation of all
    // 4^(N/2) vectors, no Element arithmetic involved.
    const std::uint64_t half = N / 2;
    const std::uint64_t mask = (std::uint64_t(1) << N) - 1;
    std::vector<bool> seen(std::uint64_t(1) << N, false);
    const std::uint64_t total = std::uint64_t(1) << (2 * half);
    for (std::uint64_t code = 0; code < total; ++code) {
      std::uint64_t value = 0;
      std::uint64_t c = code;
      for (std::uint64_t n = 1; n <= half; ++n) {
        static constexpr long long kSigma[4] = {0, 1, 2, -1};
        const std::uint64_t sigma = static_cast<std::uint64_t>(kSigma[c & 3]);
        c >>= 2;
        // sigma * e_{2n} = sigma * 2^{N-2n} / 2^N, all mod 2^N
        value = (value + (sigma << (N - 2 * n))) & mask;
      }
      if (seen[value]) return false;
      seen[value] = true;
    }
    detail = std::to_string(checked) + " elements canonicalized, " + std::to_string(total) +
             " vectors injective";
    return true;
  });
}

/// 2. lambda(z) <= 4l across the truncated windows A(l, 1..M)_e.
inline CriterionResult criterion_lambda_bound(const Profile& p) {
  return detail::timed(2, "support bound lambda(z) <= 4l on weight-l windows",
                       [&](std::string& detail) {
    std::uint64_t checked = 0;
    for (std::uint64_t l = 1; l <= 3; ++l) {
      const Window w = enumerate_window(Sequence::e(2), WindowParams{l, 1, p.lambda_M(), 0});
      for (const WindowEntry& e : w.entries) {
        if (canonicalize(e.value).lambda() > 4 * l) return false;
        ++checked;
      }
    }
    detail = std::to_string(checked) + " window elements within bound";
    return true;
  });
}

/// 3. The five laws of f(x) = max(-2x, x) on integer boxes.
inline CriterionResult criterion_f_laws(const Profile& p) {
  return detail::timed(3, "f-function laws (exhaustive integer box)", [&](std::string& detail) {
    const long long R = p.f_range();
    std::uint64_t checked = 0;
    for (long long a = -R; a <= R; ++a) {
      for (long long b = -R; b <= R; ++b) {
        const long long ab = b < 0 ? -b : b;
        const long long fa = f_weight(a), fb = f_weight(b);
        if (fa > 2 * (a < 0 ? -a : a)) return false;
        if ((fa <= ab) != (2 * a >= -ab && a <= ab)) return false;
        if ((fa >= ab) != (2 * a <= -ab || a >= ab)) return false;
        if (f_weight(a + b) > fa + fb) return false;
        if (a >= -1 && a <= 2 && fa + fb > f_weight(a + 4 * b)) return false;
        ++checked;
      }
    }
    detail = std::to_string(checked) + " pairs";
    return true;
  });
}

/// 4. Randomized structured instances of the three order-bound
/// statements, exact order against analytic bound.
inline CriterionResult criterion_order_bounds_random(const Profile& p) {
  return detail::timed(4, "order-bound certificates on randomized structured instances",
                       [&](std::string& detail) {
    const int N = p.random_instances();

    {  // support bound: lambda(y) > lambda(z)
      std::mt19937_64 rng(0x5eed0001);
      std::uniform_int_distribution<std::size_t> ly_dist(1, 6);
      for (int i = 0; i < N; ++i) {
        const std::size_t ly = ly_dist(rng);
        std::uniform_int_distribution<std::size_t> lz_dist(0, ly - 1);
        const Element y = detail::random_canonical(rng, ly, 24);
        const Element z = detail::random_canonical(rng, lz_dist(rng), 24);
        if (!order_bound_supports(y, z).holds) return false;
      }
    }
    {  // spaced-sum bound; n_1 > l_1 keeps the first summand alive
      std::mt19937_64 rng(0x5eed0002);
      std::uniform_int_distribution<std::size_t> t_dist(1, 5);
      std::uniform_int_distribution<long long> nu_dist(-64, 64);
      std::uniform_int_distribution<std::uint64_t> start_dist(1, 4);
      std::uniform_int_distribution<std::uint64_t> slack_dist(0, 2);
      for (int i = 0; i < N; ++i) {
        const std::size_t t = t_dist(rng);
        std::vector<SpacedTerm> y_terms;
        std::uint64_t n = 0;
        for (std::size_t j = 0; j < t; ++j) {
          long long nu = 0;
          while (nu == 0) nu = nu_dist(rng);
          if (j == 0)
            n = ceil_log4(Int(nu)) + start_dist(rng);
          else
            n += ceil_log4(Int(nu)) + 1 + slack_dist(rng);
          y_terms.push_back(SpacedTerm{nu, n});
        }
        std::uniform_int_distribution<std::size_t> lz_dist(0, t - 1);
        const Element z = detail::random_canonical(rng, lz_dist(rng), 40);
        const SpacedBoundCert cert = order_bound_spaced(y_terms, z);
        if (!cert.holds || !cert.min_support_holds) return false;
      }
    }
    {  // scaled-sum bound (mu != 0: the support argument needs it)
      std::mt19937_64 rng(0x5eed0003);
      std::uniform_int_distribution<std::uint64_t> l_dist(1, 3);
      std::uniform_int_distribution<std::uint64_t> start_dist(1, 3);
      std::uniform_int_distribution<std::uint64_t> slack_dist(0, 2);
      std::uniform_int_distribution<int> sign_dist(0, 1);
      for (int i = 0; i < N; ++i) {
        const std::uint64_t l = l_dist(rng);
        std::uniform_int_distribution<long long> mu_dist(1, static_cast<long long>(l));
        const long long mu = sign_dist(rng) ? mu_dist(rng) : -mu_dist(rng);
        const std::size_t t = 4 * l + 1 + slack_dist(rng);
        std::vector<std::uint64_t> n_indices;
        std::uint64_t n = l + start_dist(rng);  // n_1 > l >= ceil(log4|mu|)
        for (std::size_t j = 0; j < t; ++j) {
          if (j > 0) n += l + 1 + slack_dist(rng);
          n_indices.push_back(n);
        }
        const Combination z = detail::random_weighted_combination(rng, l, 50);
        if (!order_bound_scaled_sum(l, mu, n_indices, z).holds) return false;
      }
    }
    detail = std::to_string(3 * p.random_instances()) + " instances, zero violations";
    return true;
  });
}

/// 5. o(b_k) = 2^{2k^3} exactly, k0 <= k <= k_max.
inline CriterionResult criterion_order_law(const Profile& p) {
  return detail::timed(5, "order law o(b_k) = 2^(2k^3)", [&](std::string& detail) {
    std::uint64_t checked = 0;
    for (const Element& x : detail::order_law_targets()) {
      const RadicalTarget target = RadicalTarget::of(x);
      for (std::uint64_t k = target.k0; k <= p.k_max(); ++k) {
        if (!order_law_b(target, k).holds) return false;
        ++checked;
      }
    }
    detail = std::to_string(checked) + " (k, x) pairs exact, top exponent " +
             std::to_string(2 * p.k_max() * p.k_max() * p.k_max());
    return true;
  });
}

/// 6. Window certificates: torsion intersections empty from m0 on, and
/// the cross-term chain passes on every e x b pair.
inline CriterionResult criterion_window_certificates(const Profile& p) {
  return detail::timed(6, "T-sequence window certificates (torsion + cross terms)",
                       [&](std::string& detail) {
    const RadicalTarget target = RadicalTarget::of(Element::e(2, 1));
    std::uint64_t pairs = 0, vacuous = 0;
    for (std::uint64_t l = 1; l <= 2; ++l) {
      for (std::uint64_t n = 0; n <= 3; ++n) {
        const TSequenceCertificate cert = certify_tsequence(target, l, n, p.window_M());
        if (!cert.pass) return false;
        if (cert.vacuous) ++vacuous;
        for (const CrossTermCertificate& c : cert.cross_checks) pairs += c.pairs.size();
      }
    }
    detail = std::to_string(pairs) + " cross pairs verified, " + std::to_string(vacuous) +
             " vacuous (l,n) windows";
    return true;
  });
}

/// 7. The windowed classifier agrees with the exact dual-group
/// membership test 2^{k0} | m on the whole sweep.
inline CriterionResult criterion_dual_classification(const Profile& p) {
  return detail::timed(7, "dual-group classification agreement", [&](std::string& detail) {
    const CircleValue eps(Element::make(2, 1, 8));
    std::uint64_t checked = 0;
    for (const Element& x : detail::classification_targets()) {
      const ClassifyReport r =
          classify_prefix(-p.m_sweep(), p.m_sweep(), RadicalTarget::of(x), p.classify_K(), eps);
      if (!r.disagreements.empty()) return false;
      checked += r.accepted.size() + r.rejected.size();
    }
    detail = std::to_string(checked) + " characters classified, zero disagreements";
    return true;
  });
}

/// 8. The kernel intersection at every level N in [k0, N_max] is exactly
/// <e_{k0}> = <x>.
inline CriterionResult criterion_radical_identity(const Profile& p) {
  return detail::timed(8, "radical identity at finite levels", [&](std::string& detail) {
    std::uint64_t levels = 0;
    for (const Element& x : detail::classification_targets()) {
      const RadicalTarget target = RadicalTarget::of(x);
      for (std::uint64_t N = target.k0; N <= p.radical_N(); ++N) {
        const RadicalReport r = radical_at_level(target, -p.radical_m(), p.radical_m(), N);
        if (r.degenerate) return false;
        if (r.size_exp != target.k0) return false;
        if (r.generator != Element::e(2, target.k0)) return false;
        if (r.residues != cyclic_residues(x, N)) return false;
        if (r.residues != cyclic_residues(Element::e(2, target.k0), N)) return false;
        ++levels;
      }
    }
    detail = std::to_string(levels) + " (x, N) levels, all equal to <x>";
    return true;
  });
}

/// 9. Exact circle distance from chi_1(b_k) to -x is within
/// (k+1) / 2^{2(k^3-k^2)}.
inline CriterionResult criterion_limit_bound(const Profile& p) {
  return detail::timed(9, "limit bound |chi_1(b_k) - (-x)| <= (k+1)/2^(2(k^3-k^2))",
                       [&](std::string& detail) {
    std::uint64_t checked = 0;
    for (const Element& x : detail::classification_targets()) {
      const RadicalTarget target = RadicalTarget::of(x);
      const Sequence b = Sequence::b(target);
      for (std::uint64_t k = target.k0; k <= p.k_max(); ++k) {
        const CircleValue dist =
            (CircleValue(b.term(k)) - CircleValue(-target.x)).norm();
        if (!dyadic_leq(dist.num(), dist.exp(), Int(k + 1), 2 * (k * k * k - k * k)))
          return false;
        ++checked;
      }
    }
    detail = std::to_string(checked) + " (x, k) distances within bound";
    return true;
  });
}

inline std::vector<CriterionResult> run_all(const Profile& p) {
  return {criterion_canonical_soundness(p), criterion_lambda_bound(p),
          criterion_f_laws(p),              criterion_order_bounds_random(p),
          criterion_order_law(p),           criterion_window_certificates(p),
          criterion_dual_classification(p), criterion_radical_identity(p),
          criterion_limit_bound(p)};
}

}  // namespace prufer::verify
