#include "steinerlab/numtheory.hpp"

#include <utility>
#include <vector>

#include "doctest.h"

using namespace steinerlab;

namespace {

// Oracle: enumerate Pell-Fermat solutions by perfect-square testing, no
// recurrence involved.
std::vector<PellSolution> brute_pell(long n, long s_bound) {
  std::vector<PellSolution> out;
  const BigInt disc = BigInt(n) * n - 4;
  for (long s = 0; s <= s_bound; ++s) {
    BigInt v = disc * s * s + 4;
    BigInt r = sqrt(v);
    if (r * r != v) continue;
    BigInt t_num = n * s + r;
    REQUIRE(mpz_even_p(t_num.get_mpz_t()));
    out.push_back(PellSolution{r, BigInt(s), t_num / 2});
  }
  return out;
}

// Oracle: all (s, t) with t > s >= 0 solving s^2 - N*s*t + t^2 = 1, found
// by scanning the grid.
std::vector<std::pair<BigInt, BigInt>> brute_unit_pairs(long n, long t_bound) {
  std::vector<std::pair<BigInt, BigInt>> out;
  for (long t = 1; t <= t_bound; ++t)
    for (long s = 0; s < t; ++s)
      if (s * s - n * s * t + t * t == 1) out.emplace_back(s, t);
  return out;
}

}  // namespace

TEST_CASE("chi of End E at hand-checked shapes") {
  CHECK(chi_end({3, 1, 2}) == -1);
  CHECK(chi_end({3, 2, 4}) == -4);
  CHECK(chi_end({3, 3, 8}) == 1);
  CHECK(chi_end({3, 8, 21}) == 1);
  CHECK(chi_end({3, 1, 4}) == 5);
  CHECK(chi_end({3, 2, 7}) == 11);
  CHECK(chi_end({4, 2, 5}) == -11);
  CHECK(chi_end({5, 1, 5}) == 1);
  CHECK_THROWS_AS(chi_end({2, 1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(chi_end({3, -1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(chi_end({3, 1, 0}), std::invalid_argument);
}

TEST_CASE("recurrence sequence ground truth") {
  auto seq3 = fibonacci_sequence(3, 7);
  std::vector<BigInt> expect3 = {0, 1, 3, 8, 21, 55, 144, 377};
  CHECK(seq3 == expect3);

  auto seq4 = fibonacci_sequence(4, 5);
  std::vector<BigInt> expect4 = {0, 1, 4, 15, 56, 209};
  CHECK(seq4 == expect4);

  // For N = 3 the terms are the even-indexed classical Fibonacci numbers;
  // cross-check against a plain Fibonacci iteration.
  BigInt f0 = 0, f1 = 1;
  for (const BigInt& a : fibonacci_sequence(3, 30)) {
    CHECK(a == f0);
    for (int step = 0; step < 2; ++step) {
      BigInt f2 = f0 + f1;
      f0 = f1;
      f1 = f2;
    }
  }

  for (long n = 3; n <= 12; ++n) {
    auto seq = fibonacci_sequence(n, 40);
    REQUIRE(seq.size() == 41);
    CHECK(seq[0] == 0);
    CHECK(seq[1] == 1);
    for (std::size_t k = 2; k < seq.size(); ++k) {
      CHECK(seq[k] == n * seq[k - 1] - seq[k - 2]);
      CHECK(seq[k] > seq[k - 1]);
    }
  }

  CHECK_THROWS_AS(fibonacci_sequence(2, 5), std::invalid_argument);
  CHECK_THROWS_AS(fibonacci_sequence(3, -1), std::invalid_argument);
}

TEST_CASE("consecutive terms solve the unit equation, Cassini form") {
  for (long n = 3; n <= 12; ++n) {
    auto seq = fibonacci_sequence(n, 40);
    for (std::size_t k = 0; k + 1 < seq.size(); ++k) {
      const BigInt& s = seq[k];
      const BigInt& t = seq[k + 1];
      CHECK(s * s - n * s * t + t * t == 1);
      if (k >= 1) CHECK(seq[k - 1] * seq[k + 1] == seq[k] * seq[k] - 1);
    }
  }
}

TEST_CASE("Pell ladder matches perfect-square enumeration") {
  for (long n : {3, 4, 5, 7}) {
    auto brute = brute_pell(n, 2000);
    auto fast = pell_solutions(n, 2000);
    REQUIRE(fast.size() == brute.size());
    for (std::size_t i = 0; i < fast.size(); ++i) {
      CHECK(fast[i].r == brute[i].r);
      CHECK(fast[i].s == brute[i].s);
      CHECK(fast[i].t == brute[i].t);
    }
  }

  // First rungs for N = 3, from the defining equation r^2 - 5s^2 = 4.
  auto p3 = pell_solutions(3, 8);
  REQUIRE(p3.size() == 4);
  CHECK(p3[0].r == 2);
  CHECK(p3[0].s == 0);
  CHECK(p3[0].t == 1);
  CHECK(p3[1].r == 3);
  CHECK(p3[1].s == 1);
  CHECK(p3[1].t == 3);
  CHECK(p3[2].r == 7);
  CHECK(p3[2].s == 3);
  CHECK(p3[2].t == 8);
  CHECK(p3[3].r == 18);
  CHECK(p3[3].s == 8);
  CHECK(p3[3].t == 21);

  CHECK(pell_solutions(3, -1).empty());
  CHECK_THROWS_AS(pell_solutions(2, 10), std::invalid_argument);
}

TEST_CASE("Pell solutions satisfy their defining identities at scale") {
  for (long n : {3, 6, 11}) {
    const BigInt disc = BigInt(n) * n - 4;
    auto seq = fibonacci_sequence(n, 45);
    auto sols = pell_solutions(n, seq[44]);
    REQUIRE(sols.size() == 45);
    for (std::size_t k = 0; k < sols.size(); ++k) {
      CHECK(sols[k].r * sols[k].r - disc * sols[k].s * sols[k].s == 4);
      CHECK(sols[k].s == seq[k]);
      CHECK(sols[k].t == seq[k + 1]);
      CHECK(2 * sols[k].t == n * sols[k].s + sols[k].r);
    }
  }
}

TEST_CASE("unit pairs match grid enumeration") {
  for (long n = 3; n <= 6; ++n) {
    auto brute = brute_unit_pairs(n, 1500);
    auto fast = fibonacci_pairs(n, 1500);
    CHECK(fast == brute);
  }
  auto pairs = fibonacci_pairs(3, 8);
  std::vector<std::pair<BigInt, BigInt>> expect = {{0, 1}, {1, 3}, {3, 8}};
  CHECK(pairs == expect);
  CHECK_THROWS_AS(fibonacci_pairs(2, 10), std::invalid_argument);
}

TEST_CASE("classifier: verdicts on known shapes") {
  auto r = classify({3, 1, 2});
  CHECK(r.verdict == Verdict::SimpleGeneric);
  CHECK(r.chi == -1);
  CHECK(!r.fib_index.has_value());
  CHECK(!r.is_bundle);  // rank t - s = 1 < N - 1
  CHECK(r.verdict_label() == "SimpleGeneric");

  r = classify({3, 3, 8});
  CHECK(r.verdict == Verdict::Exceptional);
  CHECK(r.chi == 1);
  REQUIRE(r.fib_index.has_value());
  CHECK(*r.fib_index == 2);
  CHECK(r.is_bundle);
  CHECK(r.verdict_label() == "Exceptional(2)");

  r = classify({3, 8, 21});
  CHECK(r.verdict == Verdict::Exceptional);
  REQUIRE(r.fib_index.has_value());
  CHECK(*r.fib_index == 3);

  r = classify({3, 0, 1});
  CHECK(r.verdict == Verdict::Exceptional);
  REQUIRE(r.fib_index.has_value());
  CHECK(*r.fib_index == 0);
  CHECK(!r.is_bundle);  // rank 1 < N - 1

  r = classify({3, 1, 4});
  CHECK(r.verdict == Verdict::NonSimpleAll);
  CHECK(r.chi == 5);
  CHECK(r.verdict_label() == "NonSimpleAll");

  r = classify({3, 2, 7});
  CHECK(r.verdict == Verdict::NonSimpleAll);
  CHECK(r.chi == 11);

  r = classify({4, 2, 5});
  CHECK(r.verdict == Verdict::SimpleGeneric);
  CHECK(r.chi == -11);

  CHECK_THROWS_AS(classify({3, 2, 2}), std::invalid_argument);
  CHECK_THROWS_AS(classify({3, 5, 2}), std::invalid_argument);
  CHECK_THROWS_AS(classify({2, 1, 2}), std::invalid_argument);
}

TEST_CASE("classifier partitions every shape in a grid") {
  for (long n : {3, 4, 5}) {
    auto units = brute_unit_pairs(n, 60);
    auto seq = fibonacci_sequence(n, 12);
    for (long t = 1; t <= 60; ++t) {
      for (long s = 0; s < t; ++s) {
        auto res = classify({n, s, t});
        BigInt chi = chi_end({n, s, t});
        CHECK(res.chi == chi);
        if (chi <= 0) CHECK(res.verdict == Verdict::SimpleGeneric);
        if (chi == 1) CHECK(res.verdict == Verdict::Exceptional);
        if (chi >= 2) CHECK(res.verdict == Verdict::NonSimpleAll);
        CHECK(res.is_bundle == (t - s >= n - 1));

        bool is_unit = false;
        for (const auto& [us, ut] : units)
          if (us == s && ut == t) is_unit = true;
        CHECK((res.verdict == Verdict::Exceptional) == is_unit);
        if (res.fib_index) {
          REQUIRE(*res.fib_index + 1 < static_cast<long long>(seq.size()));
          CHECK(seq[*res.fib_index] == s);
          CHECK(seq[*res.fib_index + 1] == t);
        }
      }
    }
  }
}
