#include <gtest/gtest.h>

#include "kippen/gallery.hpp"
#include "kippen/matrix_io.hpp"
#include "support/random_exact.hpp"

using namespace kippen;

namespace {

Matrix<Gaussian> reparse(const Matrix<Gaussian>& m) { return exact_gaussian(parse_matrix_file(format_matrix_file(m))); }

}  // namespace

TEST(MatrixFile, ParsesCommaAndWhitespaceRows) {
  auto f = parse_matrix_file(
      "# tower example row\n"
      "kippen-matrix v1\n"
      "mode exact\n"
      "size 2 3\n"
      "0, 1/2, -(1+i)/4   # trailing comment\n"
      "1 -1/5 2i\n");
  EXPECT_EQ(f.rows, 2u);
  EXPECT_EQ(f.cols, 3u);
  auto m = exact_gaussian(f);
  EXPECT_EQ(m(0, 2), Gaussian(gallery::q(-1, 4), gallery::q(-1, 4)));
  EXPECT_EQ(m(1, 1), Gaussian(gallery::q(-1, 5)));
  EXPECT_EQ(m(1, 2), Gaussian::i() * Gaussian(2));
  EXPECT_NEAR(f.numeric(0, 1).real(), 0.5, 0);
}

TEST(MatrixFile, RoundTripsGallery) {
  for (const auto& m : {gallery::tower_c(), gallery::p_not_q(), gallery::jordan(4)}) EXPECT_EQ(reparse(m), m);
}

TEST(MatrixFile, RoundTripsRandomExact) {
  kippen::testing::RandomExact rnd(11);
  for (std::size_t k = 0; k < 50; ++k) {
    auto m = rnd.gaussian_matrix(1 + k % 4, 1 + k % 5, 40, 17);
    EXPECT_EQ(reparse(m), m);
  }
  for (int k = 0; k < 20; ++k) {
    Matrix<Quad> m(2, 2);
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j) m(i, j) = rnd.quad(145);
    auto f = parse_matrix_file(format_matrix_file(m, FieldDescriptor::quadratic(145)));
    EXPECT_EQ(f.exact, m);
  }
}

TEST(MatrixFile, QuadraticField) {
  auto f = parse_matrix_file("kippen-matrix v1\nmode exact\nfield sqrt(145)\nsize 1 2\n(3+sqrt(145))/16, 1\n");
  EXPECT_EQ(f.exact(0, 0), (Quad(3) + Quad::sqrt_of(145)) / Quad(16));
  EXPECT_THROW(exact_gaussian(f), RadicandMismatch);
  auto again = parse_matrix_file(format_matrix_file(f.exact, f.field));
  EXPECT_EQ(again.exact(0, 0), f.exact(0, 0));
  EXPECT_THROW(parse_matrix_file("kippen-matrix v1\nfield sqrt(2)\nsize 1 1\nsqrt(3)\n"), RadicandMismatch);
}

TEST(MatrixFile, FloatModeNeedsOptIn) {
  auto f = parse_matrix_file("kippen-matrix v1\nmode float\nsize 1 3\n0.1, -0.25+1e-3i, -i\n");
  EXPECT_EQ(f.numeric(0, 1), cplx(-0.25, 1e-3));
  EXPECT_EQ(f.numeric(0, 2), cplx(0, -1));
  EXPECT_THROW(exact_gaussian(f), Error);
  auto m = exact_gaussian(f, true);
  EXPECT_EQ(m(0, 0), Gaussian(gallery::q(1, 10)));
  EXPECT_EQ(m(0, 1), Gaussian(gallery::q(-1, 4), gallery::q(1, 1000)));
  EXPECT_EQ(m(0, 2), Gaussian(Rational(0), Rational(-1)));
}

TEST(MatrixFile, FloatRoundTrip) {
  CMat c(2, 2);
  c << cplx(0.1, -0.3), cplx(1e-17, 0), cplx(0, 2.5), cplx(-1.0 / 3.0, 1.0 / 7.0);
  auto f = parse_matrix_file(format_matrix_file(c));
  EXPECT_EQ(f.mode, MatrixMode::floating);
  EXPECT_EQ(f.numeric, c);
}

TEST(MatrixFile, Errors) {
  EXPECT_THROW(parse_matrix_file("size 1 1\n0\n"), ParseError);
  EXPECT_THROW(parse_matrix_file("kippen-matrix v2\nsize 1 1\n0\n"), ParseError);
  EXPECT_THROW(parse_matrix_file("kippen-matrix v1\n0\n"), ParseError);
  EXPECT_THROW(parse_matrix_file("kippen-matrix v1\nsize 2 2\n0, 1\n"), ParseError);
  EXPECT_THROW(parse_matrix_file("kippen-matrix v1\nsize 1 2\n0\n"), ParseError);
  EXPECT_THROW(parse_matrix_file("kippen-matrix v1\nsize 1 1\n1/0\n"), ParseError);
  EXPECT_THROW(parse_matrix_file("kippen-matrix v1\nmode fuzzy\nsize 1 1\n0\n"), ParseError);
  EXPECT_THROW(parse_matrix_file("kippen-matrix v1\nmode float\nsize 1 1\n0.5x\n"), ParseError);
  try {
    parse_matrix_file("kippen-matrix v1\nsize 1 1\n1/2x\n");
    FAIL();
  } catch (const ParseError& e) {
    // offset points at the start of the row line
    EXPECT_EQ(e.offset(), 26u);
  }
}

TEST(MatrixFile, DataDirectoryFilesParse) {
  std::string dir = KIPPEN_DATA_DIR;
  EXPECT_EQ(exact_gaussian(read_matrix_file(dir + "/tower_c.kmat")), gallery::tower_c());
  EXPECT_EQ(exact_gaussian(read_matrix_file(dir + "/p_not_q.kmat")), gallery::p_not_q());
  EXPECT_EQ(exact_gaussian(read_matrix_file(dir + "/jordan3.kmat")), gallery::jordan(3));
  auto clean = read_matrix_file(dir + "/clean.kmat");
  EXPECT_EQ(clean.mode, MatrixMode::floating);
  EXPECT_EQ(clean.rows, 5u);
  EXPECT_THROW(read_matrix_file(dir + "/does_not_exist.kmat"), Error);
}
