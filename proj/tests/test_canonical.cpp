#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <random>

#include "prufer/canonical.hpp"
#include "prufer/sequences.hpp"

using namespace prufer;

namespace {

// Brute-force oracle: search all coefficient vectors over n-keys 1..key_max
// with entries in {-1,0,1,2} for the (unique) one evaluating to x.
std::map<std::uint64_t, int> canonical_by_search(const Element& x, std::uint64_t key_max) {
  static constexpr int kSigma[4] = {0, 1, 2, -1};
  std::map<std::uint64_t, int> found;
  bool any = false;
  const std::uint64_t total = std::uint64_t(1) << (2 * key_max);
  for (std::uint64_t code = 0; code < total; ++code) {
    Element acc = Element::zero(2);
    std::uint64_t c = code;
    for (std::uint64_t n = 1; n <= key_max; ++n) {
      acc = acc + scalar_mul(Int(kSigma[c & 3]), Element::e(2, 2 * n));
      c >>= 2;
    }
    if (acc == x) {
      REQUIRE_FALSE(any);  // uniqueness
      any = true;
      c = code;
      for (std::uint64_t n = 1; n <= key_max; ++n) {
        if (kSigma[c & 3] != 0) found[n] = kSigma[c & 3];
        c >>= 2;
      }
    }
  }
  REQUIRE(any);
  return found;
}

std::map<std::uint64_t, int> as_map(const CanonicalForm& cf) {
  return {cf.coeffs.begin(), cf.coeffs.end()};
}

Combination combo(std::initializer_list<Term> ts) { return Combination(std::vector<Term>(ts)); }

}  // namespace

TEST_CASE("f_weight") {
  CHECK(f_weight(0LL) == 0);
  CHECK(f_weight(-1LL) == 2);
  CHECK(f_weight(2LL) == 2);
  CHECK(f_weight(Int(-10)) == 20);
}

TEST_CASE("f laws on a small box") {
  for (long long a = -8; a <= 8; ++a) {
    for (long long b = -8; b <= 8; ++b) {
      const long long ab = b < 0 ? -b : b;
      CHECK(f_weight(a) <= 2 * (a < 0 ? -a : a));
      CHECK((f_weight(a) <= ab) == (2 * a >= -ab && a <= ab));
      CHECK((f_weight(a) >= ab) == (2 * a <= -ab || a >= ab));
      CHECK(f_weight(a + b) <= f_weight(a) + f_weight(b));
      if (a >= -1 && a <= 2) CHECK(f_weight(a) + f_weight(b) <= f_weight(a + 4 * b));
    }
  }
}

TEST_CASE("even-support reduction") {
  const auto r1 = to_even_support(combo({{1, 1}}));
  CHECK(r1.terms() == std::vector<Term>{{2, 2}});
  const auto r2 = to_even_support(combo({{2, 1}}));
  CHECK(r2.terms() == std::vector<Term>{{2, 1}});
  const auto r3 = to_even_support(combo({{1, 1}, {2, 1}}));
  CHECK(r3.terms() == std::vector<Term>{{2, 3}});

  // value preserved, weight at most doubled, all indices even
  std::mt19937_64 rng(42);
  std::uniform_int_distribution<std::uint64_t> idx(1, 20);
  std::uniform_int_distribution<long long> coeff(-5, 5);
  const Sequence e = Sequence::e(2);
  for (int trial = 0; trial < 500; ++trial) {
    std::map<std::uint64_t, long long> terms;
    for (int j = std::uniform_int_distribution<int>(1, 5)(rng); j > 0; --j) {
      const long long c = coeff(rng);
      if (c != 0) terms[idx(rng)] = c;
    }
    std::vector<Term> ts;
    for (const auto& [k, m] : terms) ts.push_back(Term{k, m});
    const Combination c{Combination(std::move(ts))};
    const Combination even = to_even_support(c);
    REQUIRE(eval_combination(c, e) == eval_combination(even, e));
    REQUIRE(even.weight() <= 2 * c.weight());
    for (const Term& t : even.terms()) REQUIRE(t.index % 2 == 0);
  }
}

TEST_CASE("canonicalize matches the exhaustive-search oracle") {
  // 3 e_2 = -e_2
  const Element x1 = 3 * Element::e(2, 2);
  CHECK(as_map(canonicalize(x1)) == canonical_by_search(x1, 5));
  CHECK(as_map(canonicalize(x1)) == std::map<std::uint64_t, int>{{1, -1}});
  // 4 e_4 = e_2
  const Element x2 = 4 * Element::e(2, 4);
  CHECK(as_map(canonicalize(x2)) == std::map<std::uint64_t, int>{{1, 1}});
  // identity case
  CHECK(as_map(canonicalize(Element::e(2, 2))) == std::map<std::uint64_t, int>{{1, 1}});
  // 5 e_4 = e_2 + e_4
  const Element x3 = 5 * Element::e(2, 4);
  CHECK(as_map(canonicalize(x3)) == canonical_by_search(x3, 5));
  CHECK(as_map(canonicalize(x3)) == std::map<std::uint64_t, int>{{1, 1}, {2, 1}});
  // zero
  CHECK(canonicalize(Element::zero(2)).coeffs.empty());
  CHECK_THROWS_AS(canonicalize(Element::e(3, 1)), std::invalid_argument);
}

TEST_CASE("canonicalize is value-preserving with coefficients in {-1,0,1,2}") {
  for (Int a = 0; a < 4096; ++a) {
    const Element x = Element::make(2, a, 12);
    const CanonicalForm cf = canonicalize(x);
    REQUIRE(cf.value == x);
    REQUIRE(cf.eval() == x);
    for (const auto& [n, sigma] : cf.coeffs) {
      REQUIRE(sigma >= -1);
      REQUIRE(sigma <= 2);
      REQUIRE(sigma != 0);
    }
  }
}

TEST_CASE("canonicalization never raises the f-potential of an even-support combination") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::uint64_t> key(1, 12);  // even index 2*key <= 24
  std::uniform_int_distribution<long long> coeff(-6, 6);
  for (int trial = 0; trial < 2000; ++trial) {
    std::map<std::uint64_t, long long> sigma;
    std::uint64_t weight = 0;
    while (true) {
      const long long c = coeff(rng);
      const std::uint64_t w = static_cast<std::uint64_t>(c < 0 ? -c : c);
      if (c == 0 || weight + w > 12) break;
      sigma[2 * key(rng)] = c;
      weight += w;
    }
    std::vector<Term> ts;
    Int f_in = 0;
    for (const auto& [k, m] : sigma) {
      ts.push_back(Term{k, m});
      f_in += f_weight(Int(m));
    }
    if (ts.empty()) continue;
    const CanonicalForm cf = canonicalize(Combination(std::move(ts)));
    REQUIRE(cf.f_total() <= f_in);
  }
}

TEST_CASE("base-4 signed expansion") {
  CHECK(expand_base4(2) == std::vector<int>{2});
  CHECK(expand_base4(3) == std::vector<int>{-1, 1});
  CHECK(expand_base4(6) == std::vector<int>{2, 1});
  CHECK_THROWS_AS(expand_base4(0), std::invalid_argument);

  // Property: digits reconstruct m, stay in {-1,0,1,2}, and there are at
  // most ceil(log4|m|) + 1 of them.
  for (long long m = -256; m <= 256; ++m) {
    if (m == 0) continue;
    const auto digits = expand_base4(m);
    Int value = 0, pow = 1;
    for (int d : digits) {
      REQUIRE(d >= -1);
      REQUIRE(d <= 2);
      value += d * pow;
      pow <<= 2;
    }
    REQUIRE(value == m);
    REQUIRE(digits.size() <= ceil_log4(Int(m)) + 1);
  }
}

TEST_CASE("support") {
  CHECK(support(Element::zero(2)).lambda_set.empty());
  // 3 e_6 = -e_6 + e_4
  CHECK(support(3 * Element::e(2, 6)).lambda_set == std::vector<std::uint64_t>{2, 3});
  CHECK(support(Element::e(2, 2) + Element::e(2, 4)).lambda_set == std::vector<std::uint64_t>{1, 2});
}

TEST_CASE("support of m e_{2n} sits in the predicted strip") {
  CHECK(support_of_multiple(3, 3).lambda_set == std::vector<std::uint64_t>{2, 3});
  CHECK(support_of_multiple(1, 5).lambda_set == std::vector<std::uint64_t>{5});
  CHECK(support_of_multiple(2, 4).lambda_set == std::vector<std::uint64_t>{4});
  CHECK_THROWS_AS(support_of_multiple(0, 3), std::invalid_argument);
  CHECK_THROWS_AS(support_of_multiple(17, 2), std::invalid_argument);  // n <= ceil(log4 17)

  for (long long m = -64; m <= 64; ++m) {
    if (m == 0) continue;
    const std::uint64_t l = ceil_log4(Int(m));
    for (std::uint64_t n = l + 1; n <= 12; ++n) {
      const SupportReport s = support_of_multiple(m, n);
      REQUIRE(s.lambda_count() >= 1);
      for (std::uint64_t key : s.lambda_set) {
        REQUIRE(key >= n - l);
        REQUIRE(key <= n);
      }
      // Dual route: the signed base-4 digits of m placed at keys n-i are
      // already canonical, so they must reproduce the computed support.
      const auto digits = expand_base4(m);
      std::vector<std::uint64_t> expected;
      for (std::size_t i = digits.size(); i-- > 0;)
        if (digits[i] != 0) expected.push_back(n - i);
      REQUIRE(s.lambda_set == expected);
    }
  }
}

TEST_CASE("disjoint supports add") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> sigma_pick(0, 2);
  static constexpr int kSigma[3] = {-1, 1, 2};
  for (int trial = 0; trial < 500; ++trial) {
    // split keys 1..10 into two disjoint sets over <e_20>
    Element y1 = Element::zero(2), y2 = Element::zero(2);
    std::vector<std::uint64_t> s1, s2;
    for (std::uint64_t n = 1; n <= 10; ++n) {
      switch (std::uniform_int_distribution<int>(0, 2)(rng)) {
        case 0:
          y1 = y1 + scalar_mul(Int(kSigma[sigma_pick(rng)]), Element::e(2, 2 * n));
          s1.push_back(n);
          break;
        case 1:
          y2 = y2 + scalar_mul(Int(kSigma[sigma_pick(rng)]), Element::e(2, 2 * n));
          s2.push_back(n);
          break;
        default:
          break;
      }
    }
    REQUIRE(support(y1).lambda_set == s1);
    REQUIRE(support(y2).lambda_set == s2);
    std::vector<std::uint64_t> both;
    std::merge(s1.begin(), s1.end(), s2.begin(), s2.end(), std::back_inserter(both));
    REQUIRE(support(y1 + y2).lambda_set == both);
    REQUIRE(support(y1 + y2).lambda_count() == s1.size() + s2.size());
  }
}

TEST_CASE("support-size bound on weight-l combinations") {
  // every z in the truncated A(l,1)_e has lambda(z) <= 4l (checked at
  // acceptance scale elsewhere; spot-check l = 1 exhaustively here)
  for (std::uint64_t k1 = 1; k1 <= 10; ++k1) {
    CHECK(canonicalize(Element::e(2, k1)).lambda() <= 4);
    CHECK(canonicalize(-Element::e(2, k1)).lambda() <= 4);
  }
}

TEST_CASE("order bound from supports") {
  // y = e_2+e_4+e_6, z = e_2: Lambda(y) = {1,2,3}, lambda(z) = 1, so the
  // bound is 4^{k_2 - 1} = 4^1 and o(y-z) = o(e_4+e_6) = 2^6
  const Element y = Element::e(2, 2) + Element::e(2, 4) + Element::e(2, 6);
  const auto cert = order_bound_supports(y, Element::e(2, 2));
  CHECK(cert.bound.exp4 == 1);
  CHECK(cert.actual == Order{2, 6});
  CHECK(cert.holds);

  const auto edge = order_bound_supports(Element::e(2, 2), Element::zero(2));
  CHECK(edge.bound.exp4 == 0);
  CHECK(edge.actual == Order{2, 2});
  CHECK(edge.holds);

  const auto third = order_bound_supports(Element::e(2, 2) + Element::e(2, 4), Element::e(2, 6));
  CHECK(third.bound.exp4 == 0);
  CHECK(third.actual == Order{2, 6});
  CHECK(third.holds);

  CHECK_THROWS_AS(order_bound_supports(Element::e(2, 2), Element::e(2, 4)),
                  std::invalid_argument);  // lambda(y) = lambda(z)
}

TEST_CASE("order bound for spaced sums") {
  // y = e_2 + e_8 + e_14: nu = (1,1,1), n = (1,4,7), z = 0: the bound
  // index is t - lambda(z) = 3, so 4^{n_3 - l_3 - 1} = 4^6 < o(y) = 2^14
  const auto cert = order_bound_spaced(
      {SpacedTerm{1, 1}, SpacedTerm{1, 4}, SpacedTerm{1, 7}}, Element::zero(2));
  CHECK(cert.bound.exp4 == 6);
  CHECK(cert.actual == Order{2, 14});
  CHECK(cert.holds);
  CHECK(cert.t == 3);
  CHECK(cert.lambda_y == 3);
  CHECK(cert.min_support_holds);

  // y = 3 e_6 + e_14: nu = (3,1), n = (3,7), z = e_2: bound 4^{3-1-1} = 4
  const auto second =
      order_bound_spaced({SpacedTerm{3, 3}, SpacedTerm{1, 7}}, Element::e(2, 2));
  CHECK(second.bound.exp4 == 1);
  CHECK(second.lambda_y == 3);
  CHECK(second.lambda_z == 1);
  CHECK(second.actual == Order{2, 14});
  CHECK(second.holds);

  const auto edge = order_bound_spaced({SpacedTerm{1, 1}}, Element::zero(2));
  CHECK(edge.bound.exp4 == 0);
  CHECK(edge.actual == Order{2, 2});
  CHECK(edge.holds);

  // rejections
  CHECK_THROWS_AS(order_bound_spaced({}, Element::zero(2)), std::invalid_argument);
  CHECK_THROWS_AS(order_bound_spaced({SpacedTerm{0, 1}}, Element::zero(2)),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      order_bound_spaced({SpacedTerm{1, 1}, SpacedTerm{3, 2}}, Element::zero(2)),
      std::invalid_argument);  // gap 1 < 2 - 1 fails
  CHECK_THROWS_AS(order_bound_spaced({SpacedTerm{64, 1}}, Element::zero(2)),
                  std::invalid_argument);  // n_1 <= ceil(log4 64): 64 e_2 = 0
  CHECK_THROWS_AS(
      order_bound_spaced({SpacedTerm{1, 1}}, Element::e(2, 2)),
      std::invalid_argument);  // lambda(z) = lambda(y)
}

TEST_CASE("order bound for scaled uniform sums") {
  // n = (1,3,5,7,9), l = 1, mu = 1, z = e_2: exponent n_1 - 2 = -1, the
  // bound degenerates below 1 and holds trivially
  const auto cert =
      order_bound_scaled_sum(1, 1, {1, 3, 5, 7, 9}, Combination({Term{2, 1}}));
  CHECK(cert.bound.exp4 == -1);
  CHECK(cert.bound_floor.exp4 == -1);
  CHECK(cert.holds);
  CHECK(cert.actual == Order{2, 18});

  // mu = 0 is accepted and reports what happened (no guarantee attached)
  const auto zero_mu = order_bound_scaled_sum(1, 0, {1, 3, 5, 7, 9}, Combination({Term{3, 1}}));
  CHECK(zero_mu.actual == Order{2, 3});
  CHECK(zero_mu.holds);  // o = 8 > 4^{-1}

  // n = (3,5,7,9,11), z = 0: bound 4^{3-1-1} = 4 < o(y) = 2^22
  const auto third = order_bound_scaled_sum(1, 1, {3, 5, 7, 9, 11}, Combination());
  CHECK(third.bound.exp4 == 1);
  CHECK(third.actual == Order{2, 22});
  CHECK(third.holds);

  // rejections
  CHECK_THROWS_AS(order_bound_scaled_sum(1, 2, {1, 3, 5, 7, 9}, Combination()),
                  std::invalid_argument);  // |mu| > l
  CHECK_THROWS_AS(order_bound_scaled_sum(1, 1, {1, 3, 5, 7}, Combination()),
                  std::invalid_argument);  // t <= 4l
  CHECK_THROWS_AS(order_bound_scaled_sum(1, 1, {1, 2, 5, 7, 9}, Combination()),
                  std::invalid_argument);  // gap violation
  CHECK_THROWS_AS(
      order_bound_scaled_sum(1, 1, {1, 3, 5, 7, 9}, Combination({Term{1, 2}})),
      std::invalid_argument);  // weight(z) > l
}
