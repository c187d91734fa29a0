#include "gcf/int_matrix.hpp"

#include <utility>

#include "gcf/error.hpp"

namespace gcf {

IntMatrix IntMatrix::identity(std::size_t n) {
  IntMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

std::vector<Integer> IntMatrix::column(std::size_t j) const {
  std::vector<Integer> col(n_);
  for (std::size_t i = 0; i < n_; ++i) col[i] = (*this)(i, j);
  return col;
}

void IntMatrix::add_column_multiple(std::size_t r, std::size_t s,
                                    const Integer& a) {
  for (std::size_t i = 0; i < n_; ++i) (*this)(i, s) += a * (*this)(i, r);
}

void IntMatrix::swap_columns(std::size_t r, std::size_t s) {
  for (std::size_t i = 0; i < n_; ++i) std::swap((*this)(i, r), (*this)(i, s));
}

Integer IntMatrix::determinant() const {
  if (n_ == 0) return 1;
  std::vector<Integer> m = a_;
  auto at = [&](std::size_t i, std::size_t j) -> Integer& { return m[i * n_ + j]; };
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n_; ++k) {
    if (at(k, k) == 0) {
      std::size_t p = k + 1;
      while (p < n_ && at(p, k) == 0) ++p;
      if (p == n_) return 0;
      for (std::size_t j = 0; j < n_; ++j) std::swap(at(k, j), at(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n_; ++i) {
      for (std::size_t j = k + 1; j < n_; ++j) {
        Integer v = at(i, j) * at(k, k) - at(i, k) * at(k, j);
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        at(i, j) = v;
      }
    }
    prev = at(k, k);
  }
  Integer d = at(n_ - 1, n_ - 1);
  return sign < 0 ? Integer(-d) : d;
}

IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
  if (x.dim() != y.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "matrix product of unequal sizes");
  }
  const std::size_t n = x.dim();
  IntMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      if (x(i, k) == 0) continue;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += x(i, k) * y(k, j);
    }
  return out;
}

Rational determinant(std::vector<Rational> m, std::size_t n) {
  Rational det = 1;
  auto at = [&](std::size_t i, std::size_t j) -> Rational& { return m[i * n + j]; };
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    while (p < n && at(p, k) == 0) ++p;
    if (p == n) return 0;
    if (p != k) {
      for (std::size_t j = k; j < n; ++j) std::swap(at(k, j), at(p, j));
      det = -det;
    }
    det *= at(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (at(i, k) == 0) continue;
      Rational f = at(i, k) / at(k, k);
      for (std::size_t j = k; j < n; ++j) at(i, j) -= f * at(k, j);
    }
  }
  return det;
}

}  // namespace gcf
