#pragma once

// Brute-force ground truth for tests and cross-checks. Nothing in the main
// path depends on this.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "gcf/qform.hpp"
#include "gcf/rational.hpp"

namespace gcf::oracle {

struct BestApproxRecord {
  Integer q;
  std::vector<Integer> p;  // nearest lattice point to q alpha
  Rational err2;           // |p - q alpha|^2
};

/// Strictly improving records of min_p |p - q alpha|^2 over q = 1..q_max.
std::vector<BestApproxRecord> best_approximations(const std::vector<Rational>& alpha,
                                                  std::uint64_t q_max);

struct Fraction {
  Integer p, q;
  friend bool operator==(const Fraction&, const Fraction&) = default;
};

/// Convergents p_k/q_k of the regular continued fraction of x.
std::vector<Fraction> classical_cf(const Rational& x);

/// All nonzero x with Q(x) <= bound, both signs included, in a fixed order.
std::vector<std::vector<Integer>> enumerate_short_vectors(const FormMatrix& q,
                                                          const Rational& bound);

struct MinimaReport {
  std::size_t k = 0;
  std::vector<Rational> values;
  std::vector<std::vector<Integer>> witnesses;
};

/// mu_1..mu_k with witnesses, exhaustive over Q(x) <= bound. Throws
/// BoundTooSmall when fewer than k independent vectors lie below the bound.
MinimaReport successive_minima(const FormMatrix& q, std::size_t k, const Rational& bound);

struct Relation {
  std::vector<Integer> l;  // (l0, l1..ld)
  Rational value;          // l0 + l1 alpha_1 + ... + ld alpha_d
};

/// Minimizes |l0 + l.alpha| over nonzero integer vectors of max-norm <= height.
/// Ties: smaller Euclidean norm, then last nonzero entry positive, then
/// lexicographically smallest.
Relation relation_search(const std::vector<Rational>& alpha, const Integer& height);

/// Condition (M) checked directly: Q(e_i) <= Q(m) for every m with
/// gcd(m_i..m_n) = 1 and |m_j| <= box.
bool minkowski_by_enumeration(const FormMatrix& q, long box = 3);

}  // namespace gcf::oracle
