#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <sstream>
#include <vector>

#include "bmmparse/bool_matrix.hpp"
#include "bmmparse/text_io.hpp"
#include "support/matrix_helpers.hpp"

using namespace bmmparse;
using test_support::all_ones;
using test_support::identity;
using test_support::make_matrix;
using test_support::scalar_bmm;

TEST_CASE("entry get/set round trip and bounds") {
  BooleanMatrix a(3);
  REQUIRE_FALSE(a.get(1, 1));
  a.set(2, 3, true);
  REQUIRE(a.get(2, 3));
  a.set(2, 3, false);
  REQUIRE_FALSE(a.get(2, 3));
  REQUIRE_THROWS_AS(a.get(0, 1), std::out_of_range);
  REQUIRE_THROWS_AS(a.get(1, 4), std::out_of_range);
  REQUIRE_THROWS_AS(a.set(4, 1, true), std::out_of_range);
  REQUIRE_THROWS_AS(BooleanMatrix(0), std::invalid_argument);
}

TEST_CASE("popcount and all_zero") {
  BooleanMatrix a(70);
  REQUIRE(a.all_zero());
  REQUIRE(a.popcount() == 0);
  a.set(1, 1, true);
  a.set(70, 70, true);
  a.set(1, 65, true);  // second word of the row
  REQUIRE_FALSE(a.all_zero());
  REQUIRE(a.popcount() == 3);
}

TEST_CASE("reference product on pinned examples") {
  REQUIRE(naive_bmm(identity(2), identity(2)) == identity(2));
  REQUIRE(naive_bmm(make_matrix({"10", "00"}), make_matrix({"01", "00"})) ==
          make_matrix({"01", "00"}));
  REQUIRE(naive_bmm(all_ones(3), all_ones(3)) == all_ones(3));
}

TEST_CASE("word-parallel product equals scalar triple loop") {
  for (std::size_t m : {1, 2, 3, 5, 7, 13, 31, 40, 64, 65, 70}) {
    int v = 0;
    for (double density : {0.0, 0.25, 0.5, 1.0}) {
      const BooleanMatrix a = random_matrix(m, density, 1000 + m * 8 + v);
      const BooleanMatrix b = random_matrix(m, density, 2000 + m * 8 + v);
      ++v;
      REQUIRE(naive_bmm(a, b) == scalar_bmm(a, b));
    }
  }
}

TEST_CASE("blocked product equals reference product") {
  SECTION("100 random 16x16 pairs") {
    for (std::uint64_t s = 0; s < 100; ++s) {
      const BooleanMatrix a = random_matrix(16, 0.3, 10'000 + s);
      const BooleanMatrix b = random_matrix(16, 0.3, 20'000 + s);
      REQUIRE(four_russians_bmm(a, b) == naive_bmm(a, b));
    }
  }
  SECTION("mixed sizes and densities including 0 and 1") {
    for (std::size_t m : {1, 2, 5, 8, 17, 33, 63, 64}) {
      for (double density : {0.0, 0.1, 0.5, 0.9, 1.0}) {
        const BooleanMatrix a = random_matrix(m, density, 7 * m + 1);
        const BooleanMatrix b = random_matrix(m, density, 7 * m + 2);
        REQUIRE(four_russians_bmm(a, b) == naive_bmm(a, b));
      }
    }
  }
  SECTION("word-straddling blocks at m=65") {
    const BooleanMatrix a = random_matrix(65, 0.5, 31);
    const BooleanMatrix b = random_matrix(65, 0.5, 32);
    REQUIRE(four_russians_bmm(a, b) == scalar_bmm(a, b));
  }
  SECTION("identity absorption and zero annihilation") {
    const BooleanMatrix r = random_matrix(8, 0.4, 99);
    REQUIRE(four_russians_bmm(identity(8), r) == r);
    REQUIRE(four_russians_bmm(BooleanMatrix(8), r) == BooleanMatrix(8));
  }
}

TEST_CASE("boolean product equals thresholded integer product") {
  for (std::uint64_t s = 0; s < 20; ++s) {
    const std::size_t m = 6;
    const BooleanMatrix a = random_matrix(m, 0.4, 500 + s);
    const BooleanMatrix b = random_matrix(m, 0.4, 600 + s);
    const BooleanMatrix c = naive_bmm(a, b);
    for (std::size_t i = 1; i <= m; ++i) {
      for (std::size_t j = 1; j <= m; ++j) {
        unsigned sum = 0;
        for (std::size_t k = 1; k <= m; ++k) sum += (a.get(i, k) && b.get(k, j)) ? 1u : 0u;
        REQUIRE(c.get(i, j) == (sum >= 1));
      }
    }
  }
}

TEST_CASE("dimension mismatch is rejected") {
  REQUIRE_THROWS_AS(naive_bmm(BooleanMatrix(2), BooleanMatrix(3)), std::invalid_argument);
  REQUIRE_THROWS_AS(four_russians_bmm(BooleanMatrix(2), BooleanMatrix(3)),
                    std::invalid_argument);
}

TEST_CASE("random_matrix determinism and density endpoints") {
  REQUIRE(random_matrix(4, 0.0, 5).all_zero());
  REQUIRE(random_matrix(4, 1.0, 5) == all_ones(4));
  REQUIRE(random_matrix(4, 0.5, 42) == random_matrix(4, 0.5, 42));
  REQUIRE_FALSE(random_matrix(12, 0.5, 42) == random_matrix(12, 0.5, 43));
  REQUIRE_THROWS_AS(random_matrix(4, 1.5, 0), std::invalid_argument);
  REQUIRE_THROWS_AS(random_matrix(4, -0.1, 0), std::invalid_argument);
  const BooleanMatrix x = random_matrix(5, 0.5, 8);
  REQUIRE(matrices_equal(x, x));
}

TEST_CASE("matrix text format round trip and golden bytes") {
  const BooleanMatrix a = make_matrix({"10", "01"});
  std::ostringstream os;
  write_matrix(os, a);
  REQUIRE(os.str() == "2\n10\n01\n");
  std::istringstream is(os.str());
  REQUIRE(read_matrix(is) == a);
}

TEST_CASE("matrix text format rejects malformed input") {
  auto reject = [](const std::string& text) {
    std::istringstream is(text);
    REQUIRE_THROWS_AS(read_matrix(is), FormatError);
  };
  reject("");
  reject("x\n10\n01\n");
  reject("0\n");
  reject("2\n10\n");           // missing row
  reject("2\n101\n01\n");      // wrong row length
  reject("2\n10\n0x\n");       // bad entry
  reject("2\n10\n01\n1\n");    // trailing content
  reject("2\r\n10\n01\n");     // CR ending
}
