#include <catch2/catch_amalgamated.hpp>

#include "prufer/element.hpp"

using namespace prufer;

namespace {

// Independent order oracle: repeated self-addition until zero.
std::uint64_t order_by_repeated_addition(const Element& x) {
  Element acc = x;
  std::uint64_t t = 1;
  while (!acc.is_zero()) {
    acc = acc + x;
    ++t;
  }
  return t;
}

}  // namespace

TEST_CASE("element construction reduces fully") {
  CHECK(Element::make(2, 1, 3) == Element::e(2, 3));
  CHECK(Element::make(2, 8, 3).is_zero());
  // 6/8 mod 1 reduces to 3/4
  CHECK(Element::make(2, 6, 3) == Element::make(2, 3, 2));
  CHECK(Element::make(2, -1, 2) == Element::make(2, 3, 2));
  CHECK(Element::make(3, 6, 2) == Element::make(3, 2, 1));

  CHECK(Element::e(2, 0).is_zero());
  CHECK(Element::e(2, 4) == Element::make(2, 1, 4));
  CHECK(Element::e(3, 2) == Element::make(3, 1, 2));

  CHECK_THROWS_AS(Element::make(4, 1, 1), std::invalid_argument);
  CHECK_THROWS_AS(Element::make(1, 0, 0), std::invalid_argument);
}

TEST_CASE("group operations") {
  const Element e1 = Element::e(2, 1), e2 = Element::e(2, 2);
  CHECK((e1 + e1).is_zero());
  CHECK(e1 + e2 == Element::make(2, 3, 2));
  CHECK(e2 + e2 == e1);
  CHECK((-e2) == Element::make(2, 3, 2));
  CHECK((e1 - e1).is_zero());
  CHECK(scalar_mul(Int(4), e2).is_zero());
  CHECK(scalar_mul(Int(-3), e2) == e2);  // -3/4 = 1/4 mod 1
  CHECK(scalar_mul(Int(0), e1).is_zero());

  CHECK_THROWS_AS(Element::e(2, 1) + Element::e(3, 1), std::invalid_argument);
}

TEST_CASE("orders") {
  CHECK(Element::zero(2).order() == Order{2, 0});
  CHECK(Element::e(2, 7).order() == Order{2, 7});
  CHECK((3 * Element::e(2, 4)).order() == Order{2, 4});
  CHECK(Order{2, 4}.str() == "2^4");
  CHECK(Order{2, 5}.value() == 32);
}

TEST_CASE("order of scalar multiples matches the repeated-addition oracle") {
  // o(m e_n) = 2^(n - min(n, v2(m)))
  for (std::uint64_t n = 1; n <= 12; ++n) {
    for (long long m = -64; m <= 64; ++m) {
      const Element x = m * Element::e(2, n);
      std::uint64_t v = 0;
      if (m == 0)
        v = n;
      else {
        long long a = m < 0 ? -m : m;
        while (a % 2 == 0 && v < n) {
          a /= 2;
          ++v;
        }
      }
      REQUIRE(x.order().k == n - v);
      if (!x.is_zero()) REQUIRE(Order{2, x.order().k}.value() == order_by_repeated_addition(x));
    }
  }
}

TEST_CASE("torsion levels") {
  const auto level0 = torsion_level(2, 0);
  REQUIRE(level0.size() == 1);
  CHECK(level0[0].is_zero());

  const auto level1 = torsion_level(2, 1);
  REQUIRE(level1.size() == 2);
  CHECK(level1[1] == Element::e(2, 1));

  const auto level2 = torsion_level(2, 2);
  REQUIRE(level2.size() == 4);
  CHECK(level2[0].is_zero());
  CHECK(level2[1] == Element::e(2, 1));
  CHECK(level2[2] == Element::e(2, 2));
  CHECK(level2[3] == Element::make(2, 3, 2));

  // Every element of <e_n> is killed by 2^n, and the level is sorted.
  const auto level6 = torsion_level(2, 6);
  REQUIRE(level6.size() == 64);
  for (std::size_t i = 0; i < level6.size(); ++i) {
    CHECK(scalar_mul(Int(64), level6[i]).is_zero());
    if (i > 0) CHECK(level6[i - 1] < level6[i]);
  }
}

TEST_CASE("round-trip through unreduced representations") {
  // make(p, num * p^j, exp + j) must reproduce the element for j >= 0.
  for (const Element& x : torsion_level(2, 10))
    for (std::uint64_t j = 0; j <= 4; ++j)
      REQUIRE(Element::make(2, x.num() << j, x.exp() + j) == x);
}

TEST_CASE("order of a sum with distinct orders is the max") {
  const auto level = torsion_level(2, 12);
  for (const Element& a : level) {
    for (const Element& b : level) {
      if (a.exp() >= b.exp()) continue;  // distinct orders, each unordered pair once
      REQUIRE((a + b).order().k == b.exp());
    }
  }
}

TEST_CASE("literal grammar") {
  CHECK(Element::parse("0").is_zero());
  CHECK(Element::parse("3/2^4") == Element::make(2, 3, 4));
  CHECK(Element::parse("-1/2^2") == Element::make(2, 3, 2));
  CHECK(Element::parse("6/2^3") == Element::make(2, 3, 2));  // reduced on parse
  CHECK(Element::parse("2/3^2") == Element::make(3, 2, 2));
  CHECK(Element::make(2, 3, 4).str() == "3/2^4");
  CHECK(Element::zero(2).str() == "0");
  CHECK(Element::parse(Element::make(2, 33041, 16).str()) == Element::make(2, 33041, 16));

  CHECK_THROWS_AS(Element::parse(""), std::invalid_argument);
  CHECK_THROWS_AS(Element::parse("3/2"), std::invalid_argument);
  CHECK_THROWS_AS(Element::parse("x/2^4"), std::invalid_argument);
  CHECK_THROWS_AS(Element::parse("3/4^2"), std::invalid_argument);  // non-prime base
  CHECK_THROWS_AS(Element::parse("3/2^"), std::invalid_argument);
}
