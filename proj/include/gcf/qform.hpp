#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gcf/int_matrix.hpp"
#include "gcf/rational.hpp"

namespace gcf {

/// Upper-triangular storage indexed by (i, j) with i <= j.
template <class T>
class Triangle {
 public:
  Triangle() = default;
  explicit Triangle(std::size_t n) : n_(n), data_(n * (n + 1) / 2) {}

  std::size_t dim() const { return n_; }
  T& operator()(std::size_t i, std::size_t j) { return data_[offset(i, j)]; }
  const T& operator()(std::size_t i, std::size_t j) const {
    return data_[offset(i, j)];
  }
  const std::vector<T>& raw() const { return data_; }
  std::vector<T>& raw() { return data_; }

  friend bool operator==(const Triangle&, const Triangle&) = default;

 private:
  std::size_t offset(std::size_t i, std::size_t j) const {
    return i * n_ - i * (i + 1) / 2 + j;
  }
  std::size_t n_ = 0;
  std::vector<T> data_;
};

/// Symmetric positive definite matrix of a quadratic form
/// Q(x) = sum q_ij x_i x_j, validated on construction.
class FormMatrix {
 public:
  /// Throws NotSymmetric, NotPositiveDefinite (index = size of the first
  /// leading minor that is not > 0) or DimensionMismatch.
  static FormMatrix from_grid(const std::vector<std::vector<Rational>>& grid);
  static FormMatrix identity(std::size_t n);

  std::size_t dim() const { return n_; }
  const Rational& operator()(std::size_t i, std::size_t j) const {
    return q_[i * n_ + j];
  }
  std::vector<std::vector<Rational>> grid() const;

  /// D(Q) = |det Q|.
  Rational determinant() const;

  friend bool operator==(const FormMatrix&, const FormMatrix&) = default;

 private:
  FormMatrix(std::size_t n, std::vector<Rational> q) : n_(n), q_(std::move(q)) {}
  friend FormMatrix congruence(const FormMatrix& q, const IntMatrix& t);

  std::size_t n_ = 0;
  std::vector<Rational> q_;
};

FormMatrix form_from_matrix(const std::vector<std::vector<Rational>>& grid);

Rational evaluate(const FormMatrix& q, std::span<const Integer> x);

/// The form x -> Q(T x), i.e. the matrix T^T Q T. T must be unimodular.
FormMatrix congruence(const FormMatrix& q, const IntMatrix& t);

/// Q = sum_i b_i (x_i + sum_{j>i} mu_ij x_j)^2. mu(i, j) is meaningful for
/// i < j only; the diagonal of the triangle is fixed at 1.
struct RecursiveForm {
  std::vector<Rational> b;
  Triangle<Rational> mu;

  std::size_t dim() const { return b.size(); }
  friend bool operator==(const RecursiveForm&, const RecursiveForm&) = default;
};

RecursiveForm recursive_form(const FormMatrix& q);
FormMatrix from_recursive(const RecursiveForm& rf);

/// Leading subdeterminants B_ij (rows 1..i, columns 1..i-1 and j) and the
/// companion minors C_i (leading (i+1)-minor with row/column i deleted).
/// Indices here are zero-based: B(i, j) uses rows 0..i.
struct Minors {
  Triangle<Rational> B;
  std::vector<Rational> C;

  /// B_{i-1,i-1} with the convention B_{-1,-1} = 1.
  Rational B_prev(std::size_t i) const {
    return i == 0 ? Rational(1) : B(i - 1, i - 1);
  }
  friend bool operator==(const Minors&, const Minors&) = default;
};

Minors minors(const FormMatrix& q);

/// Substitution x_r -> x_r + a x_s (r < s), zero-based indices.
FormMatrix apply_shift(const FormMatrix& q, std::size_t r, std::size_t s,
                       const Integer& a);
/// Substitution x_r <-> x_{r+1}.
FormMatrix apply_swap(const FormMatrix& q, std::size_t r);

/// Closed-form updates of the recursive data under the same substitutions.
RecursiveForm shift_recursive(const RecursiveForm& rf, std::size_t r,
                              std::size_t s, const Integer& a);
RecursiveForm swap_recursive(const RecursiveForm& rf, std::size_t r);

/// Identifies one reducedness inequality. Ordering puts every size condition
/// before every Lovasz condition, then lowest (i, j).
enum class ConditionKind {
  SizeUpper,  // mu_ij <= 1/2,  i.e. B_ii - 2 B_ij >= 0
  SizeLower,  // mu_ij >= -1/2, i.e. B_ii + 2 B_ij >= 0
  Lovasz,     // omega b_i <= b_{i+1} + mu_{i,i+1}^2 b_i, i.e. C_i - omega B_ii >= 0
};

struct ConditionId {
  ConditionKind kind;
  std::size_t i;
  std::size_t j;

  friend bool operator==(const ConditionId&, const ConditionId&) = default;
  friend std::strong_ordering operator<=>(const ConditionId& x,
                                          const ConditionId& y);
};

std::string to_string(const ConditionId& id);

struct LllCheck {
  bool reduced = true;
  std::optional<ConditionId> first_violation;
};

void require_omega(const Rational& omega);

LllCheck is_lll_reduced(const RecursiveForm& rf, const Rational& omega,
                        bool partial);
LllCheck is_lll_reduced(const FormMatrix& q, const Rational& omega, bool partial);

struct Operation {
  enum class Kind { Shift, Swap };
  Kind kind;
  std::size_t r;
  std::size_t s;  // r + 1 for swaps
  Integer a;      // 0 for swaps

  static Operation shift(std::size_t r, std::size_t s, const Integer& a) {
    return {Kind::Shift, r, s, a};
  }
  static Operation swap(std::size_t r) { return {Kind::Swap, r, r + 1, 0}; }
  friend bool operator==(const Operation&, const Operation&) = default;
};

struct LllOptions {
  Rational omega{3, 4};
  bool partial = false;
  /// Swap cap; when unset it is 10 n^2 (bit size of largest entry) at
  /// omega = 1 and unlimited below 1.
  std::optional<std::size_t> iteration_cap;
};

struct ReductionResult {
  FormMatrix reduced;
  IntMatrix transform;
  std::size_t swap_count = 0;
  std::size_t shift_count = 0;
  std::vector<Operation> operations;
};

ReductionResult lll_reduce(const FormMatrix& q, const LllOptions& options = {});

/// Minkowski reducedness for binary and ternary forms via the finite
/// inequality sets. Throws UnsupportedDimension otherwise.
bool minkowski_reduced_small(const FormMatrix& q);

}  // namespace gcf
