#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "gcf/int_matrix.hpp"
#include "gcf/qform.hpp"
#include "gcf/rational.hpp"
#include "gcf/tform.hpp"

namespace gcf {

enum class Variant { Full, Partial };
enum class TraceDetail { EventsOnly, FullState };

struct StopCriteria {
  /// t_min for the primary sweep, t_max for the dual sweep.
  std::optional<Rational> t_limit;
  std::optional<std::size_t> max_events;
  std::optional<Integer> q_max;

  friend bool operator==(const StopCriteria&, const StopCriteria&) = default;
};

struct RunConfig {
  SetupPtr setup;
  Rational omega{3, 4};
  Variant variant = Variant::Full;
  Rational t_start{1};
  StopCriteria stop;
  TraceDetail detail = TraceDetail::EventsOnly;

  bool partial() const { return variant == Variant::Partial; }
  /// Throws OmegaOutOfRange / ConfigInvalid / InvalidStart.
  void validate() const;
};

struct Event {
  std::size_t k = 0;  // 1-based
  Rational t;
  std::vector<Operation> ops;
  IntMatrix P_after;
  // Present with TraceDetail::FullState.
  std::optional<Triangle<AffineInT>> B;
  std::optional<std::vector<AffineInT>> C;
};

/// Primary mode: p/q approximates alpha, err2 = |p - q alpha|^2.
/// Dual mode: (q, p) is a small value of the linear form, err2 = (q + p.alpha)^2.
struct Convergent {
  std::vector<Integer> p;
  Integer q;
  Rational err2;
  double quality = 0;
  Rational t_lo;
  std::optional<Rational> t_hi;  // nullopt = unbounded (dual sweep)
};

enum class Termination { Exact, TLimit, MaxEvents, QMax };

/// "exact", "t_min" (or "t_max" for the dual sweep), "max_events", "q_max".
const char* to_string(Termination t, Mode mode = Mode::Primary);

struct Trace {
  RunConfig config;
  std::vector<Event> events;
  std::vector<Convergent> convergents;
  Termination termination = Termination::Exact;
  /// Far end of the last window: the stop time, or 0 / nullopt (dual) for
  /// natural termination.
  std::optional<Rational> t_end;
};

struct StepResult {
  DetState state;
  Event event;
};

/// One event: finds the next critical t from t_now and re-reduces just past
/// it. Returns nullopt when no condition fails on the rest of the sweep.
std::optional<StepResult> step(const DetState& state, const Rational& t_now,
                               const RunConfig& config, std::size_t k = 1);

Trace run(const RunConfig& config);

/// The convergent carried by P (first column), or nullopt when it has q = 0
/// (primary) or p = 0 (dual). The interval is left empty.
std::optional<Convergent> convergent_of(const ParamSetup& setup, const IntMatrix& P);

/// First columns of all P along the trace, deduplicated, each with the hull
/// of its validity windows.
std::vector<Convergent> convergents(const Trace& trace);

/// err2 <= 2^{d/2} q^{-2/d}, checked as err2^{2d} q^4 <= 2^{d^2}.
bool quality_bound_holds(const Convergent& c, std::size_t d);

struct Certificate {
  enum class Verdict { Certified, Inconclusive, Refuted };
  Verdict verdict = Verdict::Inconclusive;
  std::vector<Integer> p;  // set when certified
  Integer q;
};

const char* to_string(Certificate::Verdict v);

/// Decides whether P e1 is an approximation with ||q alpha|| <= eps q^{-1/d},
/// assuming Q_t(P x) is LLL-reduced (checked, omega = 3/4).
Certificate certify_excellent(const DetState& state, const Rational& t,
                              const Rational& epsilon);

/// Q_t(x) for the normalized family, valid for every t >= 0.
Rational family_value(const ParamSetup& setup, const Rational& t, const std::vector<Integer>& x);

struct RankSample {
  Rational t;
  std::vector<Rational> values;  // Q_t(P e_i), i = 1..n
};

struct RankReport {
  std::vector<RankSample> samples;
  /// Indices (0-based) below the threshold at the last sample.
  std::vector<std::size_t> candidates;
  /// 1/|l|^2 when a relation l = (l0, l1..ld) is supplied.
  std::optional<Rational> floor;
};

/// Values of the basis vectors at every event time and at the end of the
/// run (t = 0 included). Throws InsufficientTrace with fewer than two events.
RankReport rank_probe(const Trace& trace, const Rational& threshold,
                      const std::optional<std::vector<Integer>>& relation = std::nullopt);

}  // namespace gcf
