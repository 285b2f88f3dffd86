#include "steinerlab/pencil.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <string>

#include "doctest.h"
#include "steinerlab/endo.hpp"

using namespace steinerlab;

TEST_CASE("monomial counting and enumeration") {
  CHECK(monomial_count(3, 0) == 1);
  CHECK(monomial_count(3, 1) == 3);
  CHECK(monomial_count(3, 2) == 6);
  CHECK(monomial_count(4, 2) == 10);
  CHECK(monomial_count(4, 3) == 20);
  CHECK(monomial_count(5, 2) == 15);
  CHECK_THROWS_AS(monomial_count(0, 1), std::invalid_argument);
  CHECK_THROWS_AS(monomial_count(3, -1), std::invalid_argument);

  auto deg1 = monomials_lex(3, 1);
  std::vector<std::vector<int>> want1 = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  CHECK(deg1 == want1);

  auto deg2 = monomials_lex(3, 2);
  std::vector<std::vector<int>> want2 = {{2, 0, 0}, {1, 1, 0}, {1, 0, 1},
                                         {0, 2, 0}, {0, 1, 1}, {0, 0, 2}};
  CHECK(deg2 == want2);

  for (long long n : {3, 4, 5}) {
    for (long long d : {0, 1, 2, 3}) {
      auto list = monomials_lex(n, d);
      CHECK(static_cast<long long>(list.size()) == monomial_count(n, d));
      std::set<std::vector<int>> uniq(list.begin(), list.end());
      CHECK(uniq.size() == list.size());
      for (std::size_t i = 0; i < list.size(); ++i) {
        int sum = 0;
        for (int e : list[i]) sum += e;
        CHECK(sum == d);
        if (i > 0) CHECK(list[i - 1] > list[i]);  // strictly decreasing lex
      }
    }
  }
}

TEST_CASE("from_slices validates and computes the rank flag") {
  BundleShape shape{3, 1, 2};
  std::vector<IntMatrix> slices(3, IntMatrix(2, 1));
  SteinerPencil zero = SteinerPencil::from_slices(shape, slices);
  CHECK(!zero.full_column_rank);

  slices[1].at(0, 0) = 4;
  SteinerPencil p = SteinerPencil::from_slices(shape, slices);
  CHECK(p.full_column_rank);

  CHECK_THROWS_WITH_AS(
      SteinerPencil::from_slices(shape, std::vector<IntMatrix>(2, IntMatrix(2, 1))),
      "from_slices: expected 3 slices, got 2", std::invalid_argument);
  std::vector<IntMatrix> bad(3, IntMatrix(2, 1));
  bad[1] = IntMatrix(3, 1);
  CHECK_THROWS_WITH_AS(SteinerPencil::from_slices(shape, bad),
                       "from_slices: slice 2 is 3x1, expected 2x1", std::invalid_argument);
}

TEST_CASE("sample_pencil: shape contract, determinism, rank statistics") {
  Rng rng(1);
  SteinerPencil p = sample_pencil(rng, {3, 1, 2}, -9, 9);
  REQUIRE(p.slices.size() == 3);
  for (const IntMatrix& m : p.slices) {
    CHECK(m.rows == 2);
    CHECK(m.cols == 1);
    for (long long v : m.data) {
      CHECK(v >= -9);
      CHECK(v <= 9);
    }
  }
  CHECK(p.full_column_rank);

  Rng r1(42), r2(42);
  CHECK(sample_pencil(r1, {3, 2, 5}, -9, 9) == sample_pencil(r2, {3, 2, 5}, -9, 9));

  // Stacked 9x1 column of a (3; 1, 3) sample is nonzero by the rank flag.
  Rng r3(9);
  SteinerPencil q = sample_pencil(r3, {3, 1, 3}, -9, 9);
  IntMatrix stacked = stack_slices(q);
  CHECK(stacked.rows == 9);
  CHECK(stacked.cols == 1);
  CHECK(q.full_column_rank);

  Rng r4(100);
  for (int i = 0; i < 100; ++i)
    CHECK(sample_pencil(r4, {3, 2, 5}, -9, 9).full_column_rank);

  Rng r5(0);
  CHECK_THROWS_AS(sample_pencil(r5, {3, 0, 2}, -9, 9), std::invalid_argument);
  CHECK_THROWS_AS(sample_pencil(r5, {3, 1, 2}, 5, 5), std::invalid_argument);
  CHECK_THROWS_AS(sample_pencil(r5, {2, 1, 2}, -9, 9), std::invalid_argument);
}

TEST_CASE("sample_graded: block sizes per column") {
  Rng rng(3);
  GradedResolution g = sample_graded(rng, 3, {2, 1, 1, 1, 1}, 16, -9, 9);
  REQUIRE(g.columns.size() == 5);
  CHECK(g.columns[0].rows == 6);  // six degree-2 monomials
  for (int j = 1; j < 5; ++j) CHECK(g.columns[j].rows == 3);
  for (const IntMatrix& c : g.columns) CHECK(c.cols == 16);

  Rng r2(4);
  GradedResolution one_col = sample_graded(r2, 4, {2}, 9, -9, 9);
  CHECK(one_col.columns[0].rows == 10);

  Rng r3(5), r4(5);
  CHECK(sample_graded(r3, 3, {2, 1}, 6, -9, 9) == sample_graded(r4, 3, {2, 1}, 6, -9, 9));

  Rng r5(6);
  CHECK_THROWS_AS(sample_graded(r5, 3, {0}, 4, -9, 9), std::invalid_argument);
  CHECK_THROWS_AS(sample_graded(r5, 3, {1, 2}, 4, -9, 9), std::invalid_argument);
  CHECK_THROWS_AS(sample_graded(r5, 3, {}, 4, -9, 9), std::invalid_argument);
  CHECK_THROWS_AS(sample_graded(r5, 2, {1}, 4, -9, 9), std::invalid_argument);
}

TEST_CASE("unit-twist conversion is a bijection") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Rng rng(seed);
    BundleShape shape{3 + static_cast<long long>(seed % 3), 1 + static_cast<long long>(seed % 2),
                      6 + static_cast<long long>(seed % 4)};
    SteinerPencil p = sample_pencil(rng, shape, -9, 9);
    GradedResolution g = to_graded(p);
    CHECK(g.all_unit_twists());
    CHECK(to_pencil(g) == p);
    CHECK(to_graded(to_pencil(g)) == g);
  }

  Rng rng(1);
  GradedResolution mixed = sample_graded(rng, 3, {2, 1}, 8, -9, 9);
  CHECK(!mixed.all_unit_twists());
  CHECK_THROWS_AS(to_pencil(mixed), std::invalid_argument);
}

TEST_CASE("decomposable witness: zero last row, bundle summand") {
  Rng rng(11);
  WitnessPencil w = decomposable_witness(rng, {3, 1, 4});
  CHECK(w.structure == WitnessStructure::DirectSumWithTrivial);
  CHECK(w.predicted_extra_dim == 2);
  CHECK(w.pencil.shape == BundleShape{3, 1, 4});
  CHECK(w.pencil.full_column_rank);
  for (const IntMatrix& m : w.pencil.slices)
    for (std::size_t c = 0; c < m.cols; ++c) CHECK(m.at(m.rows - 1, c) == 0);

  WitnessPencil w2 = decomposable_witness(rng, {4, 2, 6});
  CHECK(w2.pencil.shape == BundleShape{4, 2, 6});
  for (const IntMatrix& m : w2.pencil.slices)
    for (std::size_t c = 0; c < m.cols; ++c) CHECK(m.at(m.rows - 1, c) == 0);

  // t - s = N - 1 exactly is the excluded boundary.
  Rng r3(13);
  CHECK_THROWS_AS(decomposable_witness(r3, {3, 1, 3}), std::invalid_argument);
  CHECK_THROWS_AS(decomposable_witness(r3, {3, 0, 4}), std::invalid_argument);
}

TEST_CASE("block witness: declared zero pattern") {
  Rng rng(13);
  WitnessPencil w = block_witness(rng, 3, 1, 1, 3, 3);
  CHECK(w.structure == WitnessStructure::BlockDiagonal);
  CHECK(w.pencil.shape == BundleShape{3, 2, 6});
  CHECK(w.n1 + w.n2 == w.pencil.shape.twisted);
  CHECK(w.m1 + w.m2 == w.pencil.shape.untwisted);
  for (const IntMatrix& m : w.pencil.slices) {
    for (long long r = 0; r < w.m1; ++r)
      for (long long c = w.n1; c < w.n1 + w.n2; ++c)
        CHECK(m.at(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) == 0);
    for (long long r = w.m1; r < w.m1 + w.m2; ++r)
      for (long long c = 0; c < w.n1; ++c)
        CHECK(m.at(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) == 0);
  }

  Rng r2(17);
  WitnessPencil w2 = block_witness(r2, 3, 1, 2, 3, 5);
  CHECK(w2.pencil.shape == BundleShape{3, 3, 8});
  CHECK(w2.pencil.full_column_rank);

  Rng r3(18);
  CHECK_THROWS_AS(block_witness(r3, 3, 0, 1, 3, 3), std::invalid_argument);
  CHECK_THROWS_AS(block_witness(r3, 3, 1, 1, 3, 0), std::invalid_argument);
  CHECK_THROWS_AS(block_witness(r3, 2, 1, 1, 3, 3), std::invalid_argument);
}

TEST_CASE("witness pencils really measure extra intertwiners") {
  Rng rng(19);
  WitnessPencil dec = decomposable_witness(rng, {3, 2, 7});
  CHECK(intertwiner_dim(dec.pencil, KernelMode::Modular).dim >=
        static_cast<std::size_t>(dec.predicted_extra_dim));
  WitnessPencil blk = block_witness(rng, 4, 2, 1, 5, 4);
  CHECK(intertwiner_dim(blk.pencil, KernelMode::Modular).dim >=
        static_cast<std::size_t>(blk.predicted_extra_dim));
}

TEST_CASE("pencil text round trip") {
  Rng rng(23);
  SteinerPencil p = sample_pencil(rng, {3, 2, 5}, -9, 9);
  std::string text = to_text(p);
  SteinerPencil back = parse_pencil(text);
  CHECK(back == p);
  CHECK(to_text(back) == text);

  std::string hand = "steiner 3 1 2\n1\n2\n3\n4\n5\n6\n";
  SteinerPencil h = parse_pencil(hand);
  CHECK(h.shape == BundleShape{3, 1, 2});
  CHECK(h.slices[0].at(0, 0) == 1);
  CHECK(h.slices[0].at(1, 0) == 2);
  CHECK(h.slices[1].at(0, 0) == 3);
  CHECK(h.slices[1].at(1, 0) == 4);
  CHECK(h.slices[2].at(0, 0) == 5);
  CHECK(h.slices[2].at(1, 0) == 6);
  CHECK(h.full_column_rank);
  // Parser is whitespace agnostic; writer output is canonical.
  CHECK(parse_pencil("steiner 3 1 2 1 2 3 4 5 6") == h);
}

TEST_CASE("graded text round trip") {
  Rng rng(29);
  GradedResolution g = sample_graded(rng, 3, {2, 1, 1}, 7, -9, 9);
  std::string text = to_text(g);
  GradedResolution back = parse_graded(text);
  CHECK(back == g);
  CHECK(to_text(back) == text);

  SteinerPencil p = sample_pencil(rng, {3, 2, 4}, -9, 9);
  CHECK(to_pencil(parse_graded(to_text(to_graded(p)))) == p);
}

TEST_CASE("parse errors carry positions") {
  // Truncated inside the second slice: the message names the slice.
  try {
    parse_pencil("steiner 3 1 2\n1\n2\n3\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("slice 2") != std::string::npos);
    CHECK(e.line() == 5);
  }

  CHECK_THROWS_AS(parse_pencil(""), ParseError);
  CHECK_THROWS_AS(parse_pencil("steinr 3 1 2\n"), ParseError);
  CHECK_THROWS_AS(parse_pencil("steiner 2 1 2\n1 2 3 4"), ParseError);
  CHECK_THROWS_AS(parse_pencil("steiner 3 1 2\n1 2 3 4 5 x"), ParseError);
  CHECK_THROWS_AS(parse_pencil("steiner 3 1 2\n1 2 3 4 5 6 7"), ParseError);
  CHECK_THROWS_AS(parse_pencil("steiner 3 1 99999999999999999999\n"), ParseError);

  try {
    parse_pencil("steiner 3 1 2\n1\n2\n3\nx\n5\n6\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 5);
  }

  CHECK_THROWS_AS(parse_graded("graded 3\n"), ParseError);
  CHECK_THROWS_AS(parse_graded("graded 3 4\n"), ParseError);  // no columns
  CHECK_THROWS_AS(parse_graded("graded 3 4\ntwst 1\n"), ParseError);
  CHECK_THROWS_AS(parse_graded("graded 3 4\ntwist 0\n"), ParseError);
  CHECK_THROWS_AS(parse_graded("graded 3 2\ntwist 1\n1 2\n3 4\ntwist 2\n"), ParseError);
  CHECK_THROWS_AS(parse_graded("graded 3 2\ntwist 1\n1 2\n3 4\n5"), ParseError);
}

TEST_CASE("text file helpers") {
  std::string path = "steinerlab_test_pencil.tmp";
  Rng rng(31);
  SteinerPencil p = sample_pencil(rng, {3, 1, 3}, -9, 9);
  write_text_file(path, to_text(p));
  CHECK(parse_pencil(read_text_file(path)) == p);
  std::remove(path.c_str());
  CHECK_THROWS_AS(read_text_file("steinerlab_no_such_file.tmp"), std::runtime_error);
}
