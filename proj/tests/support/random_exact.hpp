#pragma once

#include <random>

#include "kippen/matrix.hpp"
#include "kippen/scalar.hpp"

namespace kippen::testing {

class RandomExact {
 public:
  explicit RandomExact(unsigned seed) : rng_(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }

  Rational rational(long max_num = 30, long max_den = 12) {
    long num = integer(-max_num, max_num);
    long den = integer(1, max_den);
    return Rational(mpz_class(num), mpz_class(den));
  }
  Gaussian gaussian(long max_num = 30, long max_den = 12) {
    return {rational(max_num, max_den), rational(max_num, max_den)};
  }
  Quad quad(long radicand) {
    return Quad(gaussian(), integer(0, 2) ? gaussian() : Gaussian(), radicand);
  }
  long squarefree_radicand() {
    static const long choices[] = {2, 3, 5, 6, 7, 10, 11, 13, 145};
    return choices[integer(0, 8)];
  }

  Matrix<Gaussian> gaussian_matrix(std::size_t r, std::size_t c, long max_num = 5, long max_den = 4) {
    Matrix<Gaussian> m(r, c);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m(i, j) = integer(0, 3) ? gaussian(max_num, max_den) : Gaussian();
    return m;
  }

  /// Random exact contraction: M / N with N^2 >= ||M||_F^2, so ||C|| <= 1.
  /// Strictly upper triangular when nilpotent is set.
  Matrix<Gaussian> contraction(std::size_t n, bool nilpotent, long max_num = 4) {
    Matrix<Gaussian> m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = nilpotent ? i + 1 : 0; j < n; ++j)
        if (integer(0, 3)) m(i, j) = Gaussian(Rational(integer(-max_num, max_num)), Rational(integer(-max_num, max_num)));
    Rational fro(0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) fro += m(i, j).norm2();
    long N = 1;
    while (Rational(N * N) < fro) ++N;
    N += integer(0, 2);
    return m * Gaussian(Rational(mpz_class(1), mpz_class(N)));
  }

  /// Random block shift: strictly block upper bidiagonal, random block sizes.
  Matrix<Gaussian> block_shift(std::size_t blocks, std::size_t max_block) {
    std::vector<std::size_t> sizes, offs{0};
    for (std::size_t b = 0; b < blocks; ++b) {
      sizes.push_back(static_cast<std::size_t>(integer(1, static_cast<long>(max_block))));
      offs.push_back(offs.back() + sizes.back());
    }
    Matrix<Gaussian> m(offs.back(), offs.back());
    for (std::size_t b = 0; b + 1 < blocks; ++b) m.set_block(offs[b], offs[b + 1], gaussian_matrix(sizes[b], sizes[b + 1], 3, 3));
    return m;
  }

  /// Block shift whose off-diagonal blocks are all nonzero, so it is never the zero matrix.
  Matrix<Gaussian> nonzero_block_shift(std::size_t blocks, std::size_t max_block) {
    std::vector<std::size_t> sizes, offs{0};
    for (std::size_t b = 0; b < blocks; ++b) {
      sizes.push_back(static_cast<std::size_t>(integer(1, static_cast<long>(max_block))));
      offs.push_back(offs.back() + sizes.back());
    }
    Matrix<Gaussian> m(offs.back(), offs.back());
    for (std::size_t b = 0; b + 1 < blocks; ++b) {
      Matrix<Gaussian> blk;
      do blk = gaussian_matrix(sizes[b], sizes[b + 1], 3, 3);
      while (blk == Matrix<Gaussian>(sizes[b], sizes[b + 1]));
      m.set_block(offs[b], offs[b + 1], blk);
    }
    return m;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace kippen::testing
