#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "gcf/rational.hpp"

namespace gcf {

/// Square integer matrix, row-major. Used for unimodular substitutions:
/// a form Q becomes Q(P x), and the first column of P is the current
/// approximation vector.
class IntMatrix {
 public:
  IntMatrix() = default;
  explicit IntMatrix(std::size_t n) : n_(n), a_(n * n) {}

  static IntMatrix identity(std::size_t n);

  std::size_t dim() const { return n_; }
  Integer& operator()(std::size_t i, std::size_t j) { return a_[i * n_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const {
    return a_[i * n_ + j];
  }

  std::vector<Integer> column(std::size_t j) const;

  /// P <- P * (I + a E_rs): column s gains a times column r.
  void add_column_multiple(std::size_t r, std::size_t s, const Integer& a);
  void swap_columns(std::size_t r, std::size_t s);

  /// Exact determinant by fraction-free (Bareiss) elimination.
  Integer determinant() const;

  friend IntMatrix operator*(const IntMatrix& x, const IntMatrix& y);
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Integer> a_;
};

/// Exact determinant of an n x n rational matrix given row-major.
Rational determinant(std::vector<Rational> m, std::size_t n);

}  // namespace gcf
