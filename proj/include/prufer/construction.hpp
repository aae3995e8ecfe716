#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "prufer/canonical.hpp"
#include "prufer/element.hpp"
#include "prufer/sequences.hpp"
#include "prufer/window.hpp"

/*
 * Certificates for the properties of the sequences b and d.
 *
 * The layered desk-scale argument that d is a T-sequence with the intended
 * dual runs:  windows over e and over b avoid the torsion level A[2^n]
 * from some m on (found exhaustively), the threshold
 * m0 = max{M1, M2, 4l + n + k0} clears the analytic hypotheses, and every
 * cross sum z + w with z from the e-window and w from the b-window beats
 * 4^{(k_h-1)^3} by the order-bound chain, with the chain re-checked
 * against the exactly computed order of each pair.  The unbounded tail is
 * covered by those analytic bounds, not by enumeration, and every report
 * says which window it actually inspected.
 */

namespace prufer {

/// o(b_k) = 2^{2 k^3}, valid for k >= k0.
struct OrderLawCert {
  std::uint64_t k = 0;
  std::uint64_t claimed_exp = 0;  // 2 k^3
  Order actual;
  bool holds = false;
};

inline OrderLawCert order_law_b(const RadicalTarget& target, std::uint64_t k) {
  if (k < target.k0)
    throw std::invalid_argument("order law for b_k is only claimed for k >= k0");
  OrderLawCert cert;
  cert.k = k;
  cert.claimed_exp = 2 * k * k * k;
  cert.actual = Sequence::b(target).term(k).order();
  cert.holds = cert.actual.p == 2 && cert.actual.k == cert.claimed_exp;
  return cert;
}

/// m0 = max{M1, M2, 4l + n + k0} with the component breakdown.
struct M0Certificate {
  std::uint64_t m0 = 0;
  std::uint64_t M1 = 0;
  std::uint64_t M2 = 0;
  std::uint64_t formula = 0;  // 4l + n + k0
};

inline M0Certificate m0_certificate(const RadicalTarget& target, std::uint64_t l,
                                    std::uint64_t n_level, std::uint64_t M1, std::uint64_t M2) {
  M0Certificate cert;
  cert.M1 = M1;
  cert.M2 = M2;
  cert.formula = 4 * l + n_level + target.k0;
  cert.m0 = std::max({M1, M2, cert.formula});
  return cert;
}

/// One cross pair z + w, z from the e-window, w from the b-window.
struct CrossTermPair {
  Element z;
  Element w;
  std::uint64_t k_h = 0;  // top b-index of the witness of w
  long long m_h = 0;      // its coefficient
  ScaledSumBoundCert scaled;  // o(m_h y + z) against 4^{n_{t-4l} - l - 1}
  long long chain_exp4 = 0;   // k_h^3 - k_h^2 - l - 1, the chain's floor bound
  long long tail_exp4 = 0;    // (k_h - 1)^3
  Order direct;               // o(w + z), computed exactly
  bool x_separated = false;   // k0 < 2 (k_h - 1)^3
  bool chain_holds = false;   // analytic chain delivers o(w+z) > 4^{(k_h-1)^3}
  bool direct_holds = false;  // exact order beats 4^{(k_h-1)^3} and 2^{n_level}
  bool consistent = false;    // exact orders reproduce the max-rule steps
  bool pass = false;
};

struct CrossTermCertificate {
  std::uint64_t l = 0;
  std::uint64_t n_level = 0;
  std::uint64_t m = 0;
  std::uint64_t M = 0;
  std::vector<CrossTermPair> pairs;
  bool vacuous = false;  // one of the windows had no nonzero element
  bool all_pass = true;
};

/// Verifies the order chain on every nonzero pair of the truncated
/// windows A(l,m..M)_e x A(l,m..M)_b.  Requires m > 4l so that the
/// scaled-sum hypotheses (t = k_h + 1 > 4l, gaps of size k_h > l) hold
/// for every pair.
inline CrossTermCertificate cross_term_certificate(const RadicalTarget& target, std::uint64_t l,
                                                   std::uint64_t n_level, std::uint64_t m,
                                                   std::uint64_t M,
                                                   std::uint64_t cap = kDefaultCombinationCap) {
  if (m <= 4 * l)
    throw std::invalid_argument("cross_term_certificate requires m > 4l");
  CrossTermCertificate cert;
  cert.l = l;
  cert.n_level = n_level;
  cert.m = m;
  cert.M = M;

  const Sequence seq_e = Sequence::e(2);
  const Sequence seq_b = Sequence::b(target);
  const WindowParams params{l, m, M, n_level};
  const Window we = enumerate_window(seq_e, params, cap);
  const Window wb = enumerate_window(seq_b, params, cap);

  bool any = false;
  for (const WindowEntry& ze : we.entries) {
    if (ze.value.is_zero()) continue;
    for (const WindowEntry& wbe : wb.entries) {
      if (wbe.value.is_zero()) continue;
      any = true;

      CrossTermPair pair;
      pair.z = ze.value;
      pair.w = wbe.value;
      pair.k_h = wbe.witness.max_index();
      pair.m_h = wbe.witness.terms().back().coeff;

      const std::uint64_t kh = pair.k_h;
      std::vector<std::uint64_t> n_indices;
      n_indices.reserve(kh + 1);
      for (std::uint64_t s : b_subscripts(kh)) n_indices.push_back(s / 2);
      pair.scaled = order_bound_scaled_sum(l, pair.m_h, n_indices, ze.witness);

      pair.chain_exp4 = static_cast<long long>(kh * kh * kh - kh * kh) -
                        static_cast<long long>(l) - 1;
      pair.tail_exp4 = static_cast<long long>((kh - 1) * (kh - 1) * (kh - 1));
      pair.x_separated = static_cast<long long>(target.k0) < 2 * pair.tail_exp4;
      pair.chain_holds =
          pair.scaled.holds && pair.scaled.bound_floor.exp4 == pair.chain_exp4 &&
          pair.chain_exp4 > pair.tail_exp4 && pair.x_separated &&
          2 * pair.tail_exp4 > static_cast<long long>(n_level);

      // Exact recomputation of the max-rule steps.
      const Element y_val = [&] {
        Element acc = Element::zero(2);
        for (std::uint64_t s : b_subscripts(kh)) acc = acc + Element::e(2, s);
        return acc;
      }();
      const Element mh_y_z = scalar_mul(Int(pair.m_h), y_val) + ze.value;
      const Element mh_b_z = scalar_mul(Int(pair.m_h), seq_b.term(kh)) + ze.value;
      const Element minus_mh_x = scalar_mul(Int(-pair.m_h), target.x);
      const Element rest = wbe.value - scalar_mul(Int(pair.m_h), seq_b.term(kh));
      pair.direct = (wbe.value + ze.value).order();

      const std::uint64_t max1 = std::max(minus_mh_x.order().k, mh_y_z.order().k);
      pair.consistent = mh_b_z.order().k == max1 && rest.order().k < mh_b_z.order().k &&
                        pair.direct.k == mh_b_z.order().k;
      pair.direct_holds = static_cast<long long>(pair.direct.k) > 2 * pair.tail_exp4 &&
                          pair.direct.k > n_level;
      pair.pass = pair.chain_holds && pair.direct_holds && pair.consistent;
      cert.all_pass = cert.all_pass && pair.pass;
      cert.pairs.push_back(std::move(pair));
    }
  }
  cert.vacuous = !any;
  return cert;
}

/// The full desk-scale certificate bundle for one (l, n) pair:
/// order laws and gap growth for b, window emptiness thresholds, the m0
/// assembly, per-m torsion checks on both windows, and the cross-term
/// chain.
struct TSequenceCertificate {
  RadicalTarget target;
  std::uint64_t l = 0;
  std::uint64_t n_level = 0;
  std::uint64_t M = 0;
  std::vector<OrderLawCert> order_laws;
  GapGrowthCert gap_growth;
  M0Search m1_search;  // over e
  M0Search m2_search;  // over b
  std::optional<M0Certificate> m0;
  std::vector<IntersectionReport> e_checks;  // m = m0..M
  std::vector<IntersectionReport> b_checks;
  std::vector<CrossTermCertificate> cross_checks;
  bool vacuous = false;  // m0 > M: nothing to enumerate at this truncation
  bool pass = false;
};

inline TSequenceCertificate certify_tsequence(const RadicalTarget& target, std::uint64_t l,
                                              std::uint64_t n_level, std::uint64_t M,
                                              std::uint64_t order_law_count = 6,
                                              std::uint64_t cap = kDefaultCombinationCap) {
  TSequenceCertificate cert;
  cert.target = target;
  cert.l = l;
  cert.n_level = n_level;
  cert.M = M;

  bool ok = true;
  std::vector<Order> b_orders;
  for (std::uint64_t k = target.k0; k <= target.k0 + order_law_count; ++k) {
    cert.order_laws.push_back(order_law_b(target, k));
    ok = ok && cert.order_laws.back().holds;
    b_orders.push_back(cert.order_laws.back().actual);
  }
  cert.gap_growth = gap_growth_certificate(b_orders, 1);
  ok = ok && cert.gap_growth.ok;

  cert.m1_search = search_m0(Sequence::e(2), l, n_level, M, M, cap);
  cert.m2_search = search_m0(Sequence::b(target), l, n_level, M, M, cap);
  if (!cert.m1_search.m0 || !cert.m2_search.m0) {
    cert.pass = false;
    return cert;
  }
  cert.m0 = m0_certificate(target, l, n_level, *cert.m1_search.m0, *cert.m2_search.m0);

  if (cert.m0->m0 > M) {
    cert.vacuous = true;
    cert.pass = ok;
    return cert;
  }
  for (std::uint64_t m = cert.m0->m0; m <= M; ++m) {
    const WindowParams params{l, m, M, n_level};
    cert.e_checks.push_back(check_torsion_intersection(Sequence::e(2), params, cap));
    cert.b_checks.push_back(check_torsion_intersection(Sequence::b(target), params, cap));
    ok = ok && cert.e_checks.back().empty && cert.b_checks.back().empty;
    cert.cross_checks.push_back(cross_term_certificate(target, l, n_level, m, M, cap));
    ok = ok && cert.cross_checks.back().all_pass;
  }
  cert.pass = ok;
  return cert;
}

}  // namespace prufer
