#include "gcf/geodesic.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "gcf/detail/lll_loop.hpp"
#include "gcf/error.hpp"

namespace gcf {

const char* to_string(Termination t, Mode mode) {
  switch (t) {
    case Termination::Exact: return "exact";
    case Termination::TLimit: return mode == Mode::Primary ? "t_min" : "t_max";
    case Termination::MaxEvents: return "max_events";
    case Termination::QMax: return "q_max";
  }
  return "?";
}

const char* to_string(Certificate::Verdict v) {
  switch (v) {
    case Certificate::Verdict::Certified: return "certified";
    case Certificate::Verdict::Inconclusive: return "inconclusive";
    case Certificate::Verdict::Refuted: return "refuted";
  }
  return "?";
}

void RunConfig::validate() const {
  if (!setup) throw Error(ErrorCode::ConfigInvalid, "missing alpha");
  require_omega(omega);
  if (t_start <= 0) throw Error(ErrorCode::ConfigInvalid, "t_start must be positive");
  if (stop.t_limit && *stop.t_limit <= 0) {
    throw Error(ErrorCode::ConfigInvalid, "t limit must be positive");
  }
  if (stop.q_max && *stop.q_max < 1) {
    throw Error(ErrorCode::ConfigInvalid, "q_max must be at least 1");
  }
}

namespace {

// Reduction of Q_{t0 -+ eps}: every comparison is decided by the sign of an
// affine function just past t0 in the sweep direction.
class ParametricBackend {
 public:
  ParametricBackend(DetState state, Rational t0, Sweep dir, Rational omega)
      : state_(std::move(state)), t0_(std::move(t0)), dir_(dir), omega_(std::move(omega)) {}

  std::size_t dim() const { return state_.dim(); }

  Integer shift_coefficient(std::size_t r, std::size_t s) const {
    const AffineInT& brr = state_.B(r, r);
    const AffineInT& brs = state_.B(r, s);
    const Rational m = brs(t0_) / brr(t0_);
    if (!is_integer(m) && is_integer(Rational(2 * m))) {
      // mu = m exactly at t0; which side of the half-integer we are on just
      // past t0 is the sign of B_rs - m B_rr (B_rr > 0).
      const int side = sign_near(brs - m * brr, t0_, dir_);
      if (side > 0) return -ceil(m);
      if (side < 0) return -floor(m);
    }
    return -round_half_toward_zero(m);
  }

  bool lovasz_violated(std::size_t i) const {
    return sign_near(state_.C(i) - omega_ * state_.B(i, i), t0_, dir_) < 0;
  }

  void shift(std::size_t r, std::size_t s, const Integer& a) {
    state_ = shift_update(state_, r, s, a);
    ops_.push_back(Operation::shift(r, s, a));
  }

  void swap(std::size_t r) {
    state_ = swap_update(state_, r);
    ops_.push_back(Operation::swap(r));
  }

  void verify(bool partial) const {
    for (const Condition& c : conditions(state_, omega_, partial)) {
      if (sign_near(c.g, t0_, dir_) < 0) {
        throw Error(ErrorCode::InvariantViolation,
                    "state not reduced after the event at t = " + to_string(t0_) +
                        ": " + to_string(c.id));
      }
    }
  }

  DetState& state() { return state_; }
  std::vector<Operation>& ops() { return ops_; }

 private:
  DetState state_;
  Rational t0_;
  Sweep dir_;
  Rational omega_;
  std::vector<Operation> ops_;
};

StepResult perform_event(const DetState& state, const Rational& t, const RunConfig& cfg,
                         std::size_t k) {
  ParametricBackend be(state, t, sweep_of(state.setup().mode), cfg.omega);
  detail::run_lll_loop(be, cfg.partial(), std::nullopt);
  be.verify(cfg.partial());
  Event ev;
  ev.k = k;
  ev.t = t;
  ev.ops = std::move(be.ops());
  ev.P_after = be.state().P();
  if (cfg.detail == TraceDetail::FullState) {
    ev.B = be.state().B_all();
    ev.C = be.state().C_all();
  }
  return {std::move(be.state()), std::move(ev)};
}

bool exact_end(const DetState& state) {
  const AffineInT& b00 = state.B(0, 0);
  return state.setup().mode == Mode::Primary ? b00.v == 0 : b00.u == 0;
}

// Size of a convergent for the q_max stop: q in the primary sweep, the
// largest coefficient of the relation in the dual sweep.
Integer size_of(const Convergent& c, Mode mode) {
  if (mode == Mode::Primary) return c.q;
  Integer h = abs(c.q);
  for (const Integer& x : c.p) h = std::max(h, Integer(abs(x)));
  return h;
}

}  // namespace

std::optional<StepResult> step(const DetState& state, const Rational& t_now,
                               const RunConfig& config, std::size_t k) {
  auto crit = critical_t(state, config.omega, config.partial(), t_now,
                         sweep_of(state.setup().mode));
  if (!crit) return std::nullopt;
  return perform_event(state, crit->t, config, k);
}

Trace run(const RunConfig& config) {
  config.validate();
  const ParamSetup& setup = *config.setup;
  const bool primary = setup.mode == Mode::Primary;
  const Sweep dir = sweep_of(setup.mode);
  const auto& lim = config.stop.t_limit;

  Trace tr;
  tr.config = config;
  DetState state = init_state(config.setup, config.t_start);
  Rational t_now = config.t_start;

  auto past_limit = [&](const Rational& t) {
    return lim && (primary ? t <= *lim : t >= *lim);
  };
  auto window_end = [&](const std::optional<CriticalT>& crit) -> std::optional<Rational> {
    if (crit && !past_limit(crit->t)) return crit->t;
    if (lim) return *lim;
    if (primary) return Rational(0);
    return std::nullopt;
  };

  for (;;) {
    auto crit = critical_t(state, config.omega, config.partial(), t_now, dir);
    if (config.stop.q_max) {
      auto c = convergent_of(setup, state.P());
      if (c && size_of(*c, setup.mode) > *config.stop.q_max) {
        tr.termination = Termination::QMax;
        tr.t_end = window_end(crit);
        break;
      }
    }
    if (!crit) {
      tr.termination = exact_end(state) ? Termination::Exact : Termination::TLimit;
      tr.t_end = window_end(crit);
      break;
    }
    if (past_limit(crit->t)) {
      tr.termination = Termination::TLimit;
      tr.t_end = *lim;
      break;
    }
    if (config.stop.max_events && tr.events.size() >= *config.stop.max_events) {
      tr.termination = Termination::MaxEvents;
      tr.t_end = crit->t;
      break;
    }
    StepResult r = perform_event(state, crit->t, config, tr.events.size() + 1);
    t_now = crit->t;
    state = std::move(r.state);
    tr.events.push_back(std::move(r.event));
  }
  tr.convergents = convergents(tr);
  return tr;
}

std::optional<Convergent> convergent_of(const ParamSetup& setup, const IntMatrix& P) {
  const std::size_t d = setup.d;
  const std::vector<Integer> col = P.column(0);
  const std::vector<Rational> alpha = setup.original();
  Convergent c;
  if (setup.mode == Mode::Primary) {
    c.q = col[d];
    if (c.q == 0) return std::nullopt;
    const int sg = sgn(c.q);
    c.q *= sg;
    for (std::size_t i = 0; i < d; ++i) {
      c.p.push_back(sg * col[i] + c.q * setup.offsets[i]);
      const Rational e = c.p[i] - c.q * alpha[i];
      c.err2 += e * e;
    }
    c.quality = c.err2 == 0 ? 0.0
                            : std::exp2(log2_abs(c.err2) + 2.0 / double(d) * log2_abs(c.q));
  } else {
    c.q = col[0];
    bool any = false;
    for (std::size_t i = 0; i < d; ++i) {
      c.p.push_back(col[i + 1]);
      any = any || col[i + 1] != 0;
      c.q -= col[i + 1] * setup.offsets[i];
    }
    if (!any) return std::nullopt;
    int sg = sgn(c.q);
    for (std::size_t i = 0; sg == 0 && i < d; ++i) sg = sgn(c.p[i]);
    c.q *= sg;
    Rational v = c.q;
    Integer h = 0;
    for (std::size_t i = 0; i < d; ++i) {
      c.p[i] *= sg;
      v += c.p[i] * alpha[i];
      h = std::max(h, Integer(abs(c.p[i])));
    }
    c.err2 = v * v;
    c.quality = c.err2 == 0 ? 0.0
                            : std::exp2(log2_abs(c.err2) + 2.0 * double(d) * log2_abs(h));
  }
  return c;
}

std::vector<Convergent> convergents(const Trace& trace) {
  const ParamSetup& setup = *trace.config.setup;
  const bool primary = setup.mode == Mode::Primary;
  std::vector<Convergent> out;

  auto add = [&](const IntMatrix& P, const Rational& from,
                 const std::optional<Rational>& to) {
    auto c = convergent_of(setup, P);
    if (!c) return;
    // `from` is where this P took over, `to` where it was replaced.
    Rational lo = primary ? to.value_or(Rational(0)) : from;
    std::optional<Rational> hi = primary ? std::optional<Rational>(from) : to;
    for (Convergent& e : out) {
      if (e.q == c->q && e.p == c->p) {
        e.t_lo = std::min(e.t_lo, lo);
        if (e.t_hi) e.t_hi = hi ? std::max(*e.t_hi, *hi) : hi;
        return;
      }
    }
    c->t_lo = lo;
    c->t_hi = hi;
    out.push_back(std::move(*c));
  };

  const std::size_t m = trace.events.size();
  const std::size_t n = setup.dim();
  add(IntMatrix::identity(n), trace.config.t_start,
      m > 0 ? std::optional<Rational>(trace.events[0].t) : trace.t_end);
  for (std::size_t k = 0; k < m; ++k) {
    add(trace.events[k].P_after, trace.events[k].t,
        k + 1 < m ? std::optional<Rational>(trace.events[k + 1].t) : trace.t_end);
  }
  return out;
}

bool quality_bound_holds(const Convergent& c, std::size_t d) {
  const Rational lhs = pow(c.err2, 2 * d) * pow(Rational(c.q), 4);
  return lhs <= pow(Rational(2), d * d);
}

Certificate certify_excellent(const DetState& state, const Rational& t,
                              const Rational& epsilon) {
  const ParamSetup& setup = state.setup();
  if (setup.mode != Mode::Primary) {
    throw Error(ErrorCode::ConfigInvalid, "certification applies to the primary sweep");
  }
  if (t <= 0) throw Error(ErrorCode::NonPositiveT, "t must be positive");
  if (epsilon <= 0) throw Error(ErrorCode::NonPositiveEpsilon, "epsilon must be positive");
  const Snapshot snap = eval_at(state, t);
  const LllCheck chk = is_lll_reduced(snap.form, Rational(3, 4), false);
  if (!chk.reduced) {
    throw Error(ErrorCode::StateNotReduced,
                "Q_t(P x) is not LLL-reduced at t = " + to_string(t) + ": " +
                    to_string(*chk.first_violation));
  }
  const std::size_t d = setup.d;
  // X > 2^{d+1} eps^{2d/(d+1)} t^{1/(d+1)}  <=>  X^{d+1} > 2^{(d+1)^2} eps^{2d} t
  const Rational rhs = pow(Rational(2), (d + 1) * (d + 1)) * pow(epsilon, 2 * d) * t;
  auto exceeds = [&](const Rational& x) { return pow(x, d + 1) > rhs; };

  const Rational& a = snap.form(0, 0);
  const Rational& b = snap.form(1, 1);
  Certificate out;
  if (exceeds(a)) {
    out.verdict = Certificate::Verdict::Refuted;
    return out;
  }
  if (exceeds(b) && b > pow(Rational(2), d) * a) {
    if (auto c = convergent_of(setup, state.P())) {
      out.verdict = Certificate::Verdict::Certified;
      out.p = c->p;
      out.q = c->q;
    }
  }
  return out;
}

Rational family_value(const ParamSetup& setup, const Rational& t,
                      const std::vector<Integer>& x) {
  const std::size_t d = setup.d;
  if (setup.mode == Mode::Primary) {
    const Integer& y = x[d];
    Rational v = t * y * y;
    for (std::size_t i = 0; i < d; ++i) {
      const Rational e = x[i] - setup.alpha[i] * y;
      v += e * e;
    }
    return v;
  }
  Rational lin = x[0];
  Rational v = 0;
  for (std::size_t i = 0; i < d; ++i) {
    lin += setup.alpha[i] * x[i + 1];
    v += x[i + 1] * x[i + 1];
  }
  return v + t * lin * lin;
}

RankReport rank_probe(const Trace& trace, const Rational& threshold,
                      const std::optional<std::vector<Integer>>& relation) {
  if (trace.events.size() < 2) {
    throw Error(ErrorCode::InsufficientTrace, "rank probe needs at least two events");
  }
  const ParamSetup& setup = *trace.config.setup;
  RankReport rep;
  auto sample = [&](const Rational& t, const IntMatrix& P) {
    RankSample s{t, {}};
    for (std::size_t i = 0; i < P.dim(); ++i) s.values.push_back(family_value(setup, t, P.column(i)));
    rep.samples.push_back(std::move(s));
  };
  for (const Event& e : trace.events) sample(e.t, e.P_after);
  if (trace.t_end) sample(*trace.t_end, trace.events.back().P_after);

  const RankSample& last = rep.samples.back();
  for (std::size_t i = 0; i < last.values.size(); ++i)
    if (last.values[i] < threshold) rep.candidates.push_back(i);

  if (relation) {
    if (relation->size() != setup.dim()) {
      throw Error(ErrorCode::DimensionMismatch, "relation must have d + 1 entries");
    }
    Integer norm2 = 0;
    for (const Integer& x : *relation) norm2 += x * x;
    if (norm2 == 0) throw Error(ErrorCode::ConfigInvalid, "relation must be nonzero");
    rep.floor = Rational(1) / Rational(norm2);
  }
  return rep;
}

}  // namespace gcf
