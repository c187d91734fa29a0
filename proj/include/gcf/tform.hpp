#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gcf/int_matrix.hpp"
#include "gcf/qform.hpp"
#include "gcf/rational.hpp"

namespace gcf {

/// c2 t^2 + c1 t + c0. Only ever produced as the product of two affine
/// functions on the way to an exact division.
struct TPoly {
  Rational c0, c1, c2;

  Rational operator()(const Rational& t) const { return (c2 * t + c1) * t + c0; }
  bool is_zero() const { return c0 == 0 && c1 == 0 && c2 == 0; }
  int degree() const { return c2 != 0 ? 2 : c1 != 0 ? 1 : 0; }

  friend TPoly operator+(const TPoly& x, const TPoly& y) {
    return {x.c0 + y.c0, x.c1 + y.c1, x.c2 + y.c2};
  }
  friend TPoly operator-(const TPoly& x, const TPoly& y) {
    return {x.c0 - y.c0, x.c1 - y.c1, x.c2 - y.c2};
  }
  friend bool operator==(const TPoly&, const TPoly&) = default;
};

/// u t + v.
struct AffineInT {
  Rational u, v;

  static AffineInT constant(const Rational& v) { return {0, v}; }

  Rational operator()(const Rational& t) const { return u * t + v; }
  bool is_zero() const { return u == 0 && v == 0; }

  friend AffineInT operator+(const AffineInT& x, const AffineInT& y) {
    return {x.u + y.u, x.v + y.v};
  }
  friend AffineInT operator-(const AffineInT& x, const AffineInT& y) {
    return {x.u - y.u, x.v - y.v};
  }
  friend AffineInT operator*(const Rational& k, const AffineInT& x) {
    return {k * x.u, k * x.v};
  }
  friend TPoly operator*(const AffineInT& x, const AffineInT& y) {
    return {x.v * y.v, x.u * y.v + x.v * y.u, x.u * y.u};
  }
  friend bool operator==(const AffineInT&, const AffineInT&) = default;
};

std::string to_string(const AffineInT& f);

/// Quotient q with q * den == num exactly; throws InexactDivision on a
/// nonzero remainder or a non-affine quotient.
AffineInT tpoly_exact_div(const TPoly& num, const AffineInT& den);

/// Direction of the sweep: the primary family runs t downwards to 0, the
/// dual family upwards to infinity.
enum class Sweep { Down, Up };

/// Sign of f at t0 - eps for infinitesimal eps > 0.
int sign_below(const AffineInT& f, const Rational& t0);
/// Sign of f at t0 + eps.
int sign_above(const AffineInT& f, const Rational& t0);
int sign_near(const AffineInT& f, const Rational& t0, Sweep dir);

enum class Mode { Primary, Dual };

inline Sweep sweep_of(Mode m) { return m == Mode::Primary ? Sweep::Down : Sweep::Up; }

/// The input numbers after nearest-integer normalization. The family is
///   primary: |x - alpha y|^2 + t y^2        variables (x_1..x_d, y)
///   dual:    t (y + alpha.x)^2 + |x|^2      variables (y, x_1..x_d)
struct ParamSetup {
  std::size_t d = 0;
  std::vector<Rational> alpha;    // normalized, |alpha_i| <= 1/2
  std::vector<Integer> offsets;   // original alpha_i = alpha_i + offsets_i
  Mode mode = Mode::Primary;

  static ParamSetup make(const std::vector<Rational>& original, Mode mode);

  std::size_t dim() const { return d + 1; }
  std::vector<Rational> original() const;
};

using SetupPtr = std::shared_ptr<const ParamSetup>;

/// Matrix of the family member at a concrete t > 0.
FormMatrix base_form(const ParamSetup& setup, const Rational& t);

/// Subdeterminants of Q_t(P x) as affine functions of t, plus P.
class DetState {
 public:
  DetState(SetupPtr setup, Triangle<AffineInT> b, std::vector<AffineInT> c,
           IntMatrix p);

  std::size_t dim() const { return p_.dim(); }
  const ParamSetup& setup() const { return *setup_; }
  const SetupPtr& setup_ptr() const { return setup_; }

  const AffineInT& B(std::size_t i, std::size_t j) const { return b_(i, j); }
  /// B_{i-1,i-1}, with B_{-1,-1} = 1.
  AffineInT B_prev(std::size_t i) const {
    return i == 0 ? AffineInT::constant(1) : b_(i - 1, i - 1);
  }
  const AffineInT& C(std::size_t i) const { return c_[i]; }
  const Triangle<AffineInT>& B_all() const { return b_; }
  const std::vector<AffineInT>& C_all() const { return c_; }
  const IntMatrix& P() const { return p_; }

  /// Same subdeterminants and transform (the setup is compared by value).
  friend bool operator==(const DetState& x, const DetState& y);

 private:
  SetupPtr setup_;
  Triangle<AffineInT> b_;
  std::vector<AffineInT> c_;
  IntMatrix p_;
};

/// Closed-form state for P = identity. Primary mode needs t_start >= 1;
/// dual mode needs the initial form reduced at t_start for every omega <= 1.
DetState init_state(SetupPtr setup, const Rational& t_start);

/// A condition g(t) >= 0 on the current state.
struct Condition {
  ConditionId id;
  AffineInT g;
};

std::vector<Condition> conditions(const DetState& state, const Rational& omega,
                                  bool partial);

struct CriticalT {
  Rational t;
  std::vector<ConditionId> violated;  // every condition with its root at t
};

/// Next t (moving in `dir` from t_now) past which some condition fails, or
/// nullopt when all conditions hold on the rest of the sweep. Throws
/// StateNotReduced if a condition already fails at t_now.
std::optional<CriticalT> critical_t(const DetState& state, const Rational& omega,
                                    bool partial, const Rational& t_now, Sweep dir);

DetState shift_update(const DetState& state, std::size_t r, std::size_t s,
                      const Integer& a);
DetState swap_update(const DetState& state, std::size_t r);

/// Independent path: minors of Q_t(P x) at t = 1, 2 interpolated to an affine
/// function, with t = 3 confirming affineness (NonAffineMinor otherwise).
DetState recompute_state(SetupPtr setup, const IntMatrix& p);

struct Snapshot {
  FormMatrix form;
  Minors minors;
};

Snapshot eval_at(const DetState& state, const Rational& t);

/// Polynomial identity C_i B_ii = B_{i+1,i+1} B_{i-1,i-1} + B_{i,i+1}^2,
/// integer slopes (primary mode), and det P = +-1. Returns the first
/// failure as text.
std::optional<std::string> check_state_invariants(const DetState& state);

}  // namespace gcf
