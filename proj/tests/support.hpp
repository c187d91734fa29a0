#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "gcf/geodesic.hpp"
#include "gcf/qform.hpp"
#include "gcf/rational.hpp"
#include "gcf/tform.hpp"

namespace gcf::test {

// 60 decimals each.
inline const char* const kSqrt2 = "1.414213562373095048801688724209698078569671875376948073176679";
inline const char* const kSqrt3 = "1.732050807568877293527446341505872366942805253810380628055806";
inline const char* const kPi = "3.141592653589793238462643383279502884197169399375105820974944";

inline Rational R(const std::string& s) { return parse_rational(s); }

inline SetupPtr setup_of(const std::vector<Rational>& alpha, Mode mode = Mode::Primary) {
  return std::make_shared<const ParamSetup>(ParamSetup::make(alpha, mode));
}

inline RunConfig config_of(const std::vector<Rational>& alpha, Mode mode = Mode::Primary,
                           Variant variant = Variant::Full) {
  RunConfig c;
  c.setup = setup_of(alpha, mode);
  c.variant = variant;
  return c;
}

/// Fixed-seed source of test data.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }

  Rational rational(long max_den, long span = 1) {
    const long den = uniform(1, max_den);
    return canonical(Rational(Integer(uniform(-span * den, span * den)), Integer(den)));
  }

  std::vector<Rational> rationals(std::size_t d, long max_den) {
    std::vector<Rational> out;
    for (std::size_t i = 0; i < d; ++i) out.push_back(rational(max_den));
    return out;
  }

  /// Positive definite integer form with |entries| <= bound: a random
  /// symmetric matrix if one of a few draws is definite, else M^T M.
  FormMatrix form(std::size_t n, long bound) {
    for (int attempt = 0; attempt < 50; ++attempt) {
      std::vector<std::vector<Rational>> g(n, std::vector<Rational>(n));
      for (std::size_t i = 0; i < n; ++i) {
        g[i][i] = uniform(1, bound);
        for (std::size_t j = i + 1; j < n; ++j) {
          g[i][j] = uniform(-bound, bound);
          g[j][i] = g[i][j];
        }
      }
      if (definite(g)) return FormMatrix::from_grid(g);
    }
    const long c = std::max(1L, std::min(4L, bound / long(n * 4)));
    for (;;) {
      std::vector<std::vector<long>> m(n, std::vector<long>(n));
      for (auto& row : m)
        for (long& x : row) x = uniform(-c, c);
      std::vector<std::vector<Rational>> g(n, std::vector<Rational>(n));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          for (std::size_t k = 0; k < n; ++k) g[i][j] += m[k][i] * m[k][j];
      if (definite(g)) return FormMatrix::from_grid(g);
    }
  }

  IntMatrix unimodular(std::size_t n, int steps, long coeff) {
    IntMatrix p = IntMatrix::identity(n);
    for (int k = 0; k < steps; ++k) {
      const std::size_t r = uniform(0, long(n) - 1);
      std::size_t s = uniform(0, long(n) - 1);
      if (s == r) s = (r + 1) % n;
      if (uniform(0, 3) == 0) {
        p.swap_columns(r, s);
      } else {
        p.add_column_multiple(r, s, Integer(uniform(-coeff, coeff)));
      }
    }
    return p;
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  static bool definite(const std::vector<std::vector<Rational>>& g) {
    const std::size_t n = g.size();
    for (std::size_t k = 1; k <= n; ++k) {
      std::vector<Rational> m;
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) m.push_back(g[i][j]);
      if (determinant(m, k) <= 0) return false;
    }
    return true;
  }

  std::mt19937_64 rng_;
};

}  // namespace gcf::test
