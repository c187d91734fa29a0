#include "gcf/tform.hpp"

#include <algorithm>
#include <utility>

#include "gcf/error.hpp"

namespace gcf {

std::string to_string(const AffineInT& f) {
  return "(" + to_string(f.u) + ")t + (" + to_string(f.v) + ")";
}

AffineInT tpoly_exact_div(const TPoly& num, const AffineInT& den) {
  if (den.is_zero()) {
    throw Error(ErrorCode::InexactDivision, "division by the zero polynomial");
  }
  if (den.u == 0) {
    if (num.c2 != 0) {
      throw Error(ErrorCode::InexactDivision,
                  "quadratic divided by a constant is not affine");
    }
    return {num.c1 / den.v, num.c0 / den.v};
  }
  const Rational q1 = num.c2 / den.u;
  const Rational q0 = (num.c1 - q1 * den.v) / den.u;
  if (num.c0 - q0 * den.v != 0) {
    throw Error(ErrorCode::InexactDivision, "nonzero remainder dividing by " +
                                                to_string(den));
  }
  return {q1, q0};
}

int sign_below(const AffineInT& f, const Rational& t0) {
  const int s = sgn(f(t0));
  return s != 0 ? s : -sgn(f.u);
}

int sign_above(const AffineInT& f, const Rational& t0) {
  const int s = sgn(f(t0));
  return s != 0 ? s : sgn(f.u);
}

int sign_near(const AffineInT& f, const Rational& t0, Sweep dir) {
  return dir == Sweep::Down ? sign_below(f, t0) : sign_above(f, t0);
}

ParamSetup ParamSetup::make(const std::vector<Rational>& original, Mode mode) {
  if (original.empty()) {
    throw Error(ErrorCode::ConfigInvalid, "at least one alpha is required");
  }
  ParamSetup s;
  s.d = original.size();
  s.mode = mode;
  for (const Rational& raw : original) {
    const Rational a = canonical(raw);
    Integer off = round_half_toward_zero(a);
    s.offsets.push_back(off);
    s.alpha.push_back(a - off);
  }
  return s;
}

std::vector<Rational> ParamSetup::original() const {
  std::vector<Rational> out;
  for (std::size_t i = 0; i < d; ++i) out.push_back(alpha[i] + offsets[i]);
  return out;
}

FormMatrix base_form(const ParamSetup& setup, const Rational& t_raw) {
  const Rational t = canonical(t_raw);
  const std::size_t n = setup.dim();
  const std::size_t d = setup.d;
  std::vector<std::vector<Rational>> g(n, std::vector<Rational>(n));
  if (setup.mode == Mode::Primary) {
    Rational tau = t;
    for (std::size_t i = 0; i < d; ++i) {
      g[i][i] = 1;
      g[i][d] = -setup.alpha[i];
      g[d][i] = -setup.alpha[i];
      tau += setup.alpha[i] * setup.alpha[i];
    }
    g[d][d] = tau;
  } else {
    g[0][0] = t;
    for (std::size_t i = 0; i < d; ++i) {
      g[0][i + 1] = t * setup.alpha[i];
      g[i + 1][0] = g[0][i + 1];
      for (std::size_t j = 0; j < d; ++j)
        g[i + 1][j + 1] = (i == j ? Rational(1) : Rational(0)) +
                          t * setup.alpha[i] * setup.alpha[j];
    }
  }
  return FormMatrix::from_grid(g);
}

DetState::DetState(SetupPtr setup, Triangle<AffineInT> b, std::vector<AffineInT> c,
                   IntMatrix p)
    : setup_(std::move(setup)), b_(std::move(b)), c_(std::move(c)), p_(std::move(p)) {}

bool operator==(const DetState& x, const DetState& y) {
  const ParamSetup& a = *x.setup_;
  const ParamSetup& b = *y.setup_;
  return a.alpha == b.alpha && a.offsets == b.offsets && a.mode == b.mode &&
         x.b_ == y.b_ && x.c_ == y.c_ && x.p_ == y.p_;
}

DetState init_state(SetupPtr setup, const Rational& t_start) {
  const ParamSetup& s = *setup;
  const std::size_t n = s.dim();
  const std::size_t d = s.d;
  Triangle<AffineInT> b(n);
  std::vector<AffineInT> c(n - 1, AffineInT::constant(0));
  if (s.mode == Mode::Primary) {
    if (t_start < 1) {
      throw Error(ErrorCode::InvalidStart, "primary sweep must start at t >= 1");
    }
    for (std::size_t i = 0; i < d; ++i) {
      b(i, i) = AffineInT::constant(1);
      b(i, d) = AffineInT::constant(-s.alpha[i]);
    }
    b(d, d) = {1, 0};
    for (std::size_t i = 0; i + 1 < d; ++i) c[i] = AffineInT::constant(1);
    c[d - 1] = {1, s.alpha[d - 1] * s.alpha[d - 1]};
  } else {
    const Rational& a0 = s.alpha[0];
    if (t_start <= 0 || t_start * (1 - a0 * a0) > 1) {
      throw Error(ErrorCode::InvalidStart,
                  "dual sweep must start at 0 < t <= 1/(1 - alpha_1^2)");
    }
    for (std::size_t i = 0; i < n; ++i) b(i, i) = {1, 0};
    for (std::size_t j = 1; j < n; ++j) b(0, j) = {s.alpha[j - 1], 0};
    c[0] = {a0 * a0, 1};
    for (std::size_t i = 1; i + 1 < n; ++i) c[i] = {1, 0};
  }
  return DetState(std::move(setup), std::move(b), std::move(c), IntMatrix::identity(n));
}

std::vector<Condition> conditions(const DetState& state, const Rational& omega,
                                  bool partial) {
  const std::size_t n = state.dim();
  std::vector<Condition> out;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      if (partial && j != i + 1) continue;
      const AffineInT& bii = state.B(i, i);
      const AffineInT twice = Rational(2) * state.B(i, j);
      out.push_back({{ConditionKind::SizeUpper, i, j}, bii - twice});
      out.push_back({{ConditionKind::SizeLower, i, j}, bii + twice});
    }
  for (std::size_t i = 0; i + 1 < n; ++i) {
    out.push_back({{ConditionKind::Lovasz, i, i + 1},
                   state.C(i) - omega * state.B(i, i)});
  }
  std::sort(out.begin(), out.end(),
            [](const Condition& x, const Condition& y) { return x.id < y.id; });
  return out;
}

std::optional<CriticalT> critical_t(const DetState& state, const Rational& omega,
                                    bool partial, const Rational& t_now, Sweep dir) {
  std::optional<CriticalT> best;
  for (const Condition& c : conditions(state, omega, partial)) {
    if (c.g(t_now) < 0) {
      throw Error(ErrorCode::StateNotReduced,
                  to_string(c.id) + " fails at t = " + to_string(t_now));
    }
    // Down: violated below the root when the slope is positive.
    // Up: violated above the root when the slope is negative.
    if (dir == Sweep::Down ? c.g.u <= 0 : c.g.u >= 0) continue;
    Rational root = -c.g.v / c.g.u;
    if (dir == Sweep::Down ? root <= 0 : false) continue;
    const bool better = !best || (dir == Sweep::Down ? root > best->t : root < best->t);
    if (better) {
      best = CriticalT{root, {c.id}};
    } else if (root == best->t) {
      best->violated.push_back(c.id);
    }
  }
  return best;
}

namespace {

void check_state_shift(std::size_t n, std::size_t r, std::size_t s) {
  if (r >= n || s >= n) throw Error(ErrorCode::IndexOutOfRange, "shift index out of range");
  if (r >= s) {
    throw Error(ErrorCode::ShiftDirectionInvalid, "shift x_r -> x_r + a x_s needs r < s");
  }
}

}  // namespace

DetState shift_update(const DetState& state, std::size_t r, std::size_t s,
                      const Integer& a) {
  check_state_shift(state.dim(), r, s);
  Triangle<AffineInT> b = state.B_all();
  std::vector<AffineInT> c = state.C_all();
  IntMatrix p = state.P();
  if (a == 0) return state;
  const Rational ar(a);
  for (std::size_t i = 0; i <= r; ++i) b(i, s) = b(i, s) + ar * state.B(i, r);
  if (s == r + 1) {
    c[r] = c[r] + Rational(2 * a) * state.B(r, s) + Rational(a * a) * state.B(r, r);
  }
  p.add_column_multiple(r, s, a);
  return DetState(state.setup_ptr(), std::move(b), std::move(c), std::move(p));
}

DetState swap_update(const DetState& state, std::size_t r) {
  const std::size_t n = state.dim();
  if (r + 1 >= n) throw Error(ErrorCode::IndexOutOfRange, "swap index out of range");
  Triangle<AffineInT> b = state.B_all();
  std::vector<AffineInT> c = state.C_all();
  IntMatrix p = state.P();
  const AffineInT& brr = state.B(r, r);
  const AffineInT& brr1 = state.B(r, r + 1);

  b(r, r) = state.C(r);
  for (std::size_t i = 0; i < r; ++i) {
    b(i, r) = state.B(i, r + 1);
    b(i, r + 1) = state.B(i, r);
  }
  for (std::size_t j = r + 2; j < n; ++j) {
    b(r, j) = tpoly_exact_div(brr1 * state.B(r, j) + state.B_prev(r) * state.B(r + 1, j), brr);
    b(r + 1, j) = tpoly_exact_div(
        state.B(r + 1, r + 1) * state.B(r, j) - brr1 * state.B(r + 1, j), brr);
  }
  c[r] = brr;
  if (r > 0) {
    const AffineInT& bx = state.B(r - 1, r + 1);
    c[r - 1] = tpoly_exact_div(state.B_prev(r - 1) * state.C(r) + bx * bx,
                               state.B(r - 1, r - 1));
  }
  if (r + 2 < n) {
    const AffineInT& bn = b(r + 1, r + 2);
    c[r + 1] = tpoly_exact_div(state.B(r + 2, r + 2) * state.C(r) + bn * bn,
                               state.B(r + 1, r + 1));
  }
  p.swap_columns(r, r + 1);
  DetState out(state.setup_ptr(), std::move(b), std::move(c), std::move(p));
#ifndef NDEBUG
  if (!(out == recompute_state(out.setup_ptr(), out.P()))) {
    throw Error(ErrorCode::InvariantViolation, "swap update disagrees with recomputation");
  }
#endif
  return out;
}

DetState recompute_state(SetupPtr setup, const IntMatrix& p) {
  const Integer det = p.determinant();
  if (det != 1 && det != -1) {
    throw Error(ErrorCode::NotUnimodular, "transform has determinant " + det.get_str());
  }
  const std::size_t n = setup->dim();
  Minors m1 = minors(congruence(base_form(*setup, 1), p));
  Minors m2 = minors(congruence(base_form(*setup, 2), p));
  Minors m3 = minors(congruence(base_form(*setup, 3), p));
  auto fit = [](const Rational& y1, const Rational& y2, const Rational& y3) {
    AffineInT f{y2 - y1, 2 * y1 - y2};
    if (f(3) != y3) {
      throw Error(ErrorCode::NonAffineMinor, "minor is not affine in t");
    }
    return f;
  };
  Triangle<AffineInT> b(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) b(i, j) = fit(m1.B(i, j), m2.B(i, j), m3.B(i, j));
  std::vector<AffineInT> c;
  for (std::size_t i = 0; i + 1 < n; ++i) c.push_back(fit(m1.C[i], m2.C[i], m3.C[i]));
  return DetState(std::move(setup), std::move(b), std::move(c), p);
}

Snapshot eval_at(const DetState& state, const Rational& t) {
  if (t <= 0) throw Error(ErrorCode::NonPositiveT, "t must be positive");
  FormMatrix form = congruence(base_form(state.setup(), t), state.P());
  Minors m = minors(form);
  return {std::move(form), std::move(m)};
}

std::optional<std::string> check_state_invariants(const DetState& state) {
  const std::size_t n = state.dim();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const AffineInT& bx = state.B(i, i + 1);
    if (!(state.C(i) * state.B(i, i) == state.B(i + 1, i + 1) * state.B_prev(i) + bx * bx)) {
      return "C identity fails at i = " + std::to_string(i);
    }
  }
  if (!(state.B(n - 1, n - 1) == AffineInT{1, 0})) return "B_nn is not t";
  if (state.setup().mode == Mode::Primary) {
    for (const AffineInT& f : state.B_all().raw())
      if (!is_integer(f.u)) return "non-integer slope in B: " + to_string(f);
    for (const AffineInT& f : state.C_all())
      if (!is_integer(f.u)) return "non-integer slope in C: " + to_string(f);
  }
  const Integer det = state.P().determinant();
  if (det != 1 && det != -1) return "det P = " + det.get_str();
  return std::nullopt;
}

}  // namespace gcf
