#include "gcf/trace_io.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

#include <json.hpp>

#include "gcf/error.hpp"

namespace gcf::io {

using json = nlohmann::ordered_json;

namespace {

json int_to_json(const Integer& x) {
  if (x.fits_slong_p()) return static_cast<std::int64_t>(x.get_si());
  return x.get_str();
}

Integer int_from_json(const json& j) {
  if (j.is_number_integer()) return Integer(static_cast<long>(j.get<std::int64_t>()));
  if (j.is_string()) return parse_integer(j.get<std::string>());
  throw Error(ErrorCode::ParseError, "expected an integer, got " + j.dump());
}

json rat_to_json(const Rational& x) { return to_string(x); }

Rational rat_from_json(const json& j) {
  if (!j.is_string()) throw Error(ErrorCode::ParseError, "expected \"num/den\", got " + j.dump());
  return parse_rational(j.get<std::string>());
}

json opt_rat(const std::optional<Rational>& x) {
  return x ? rat_to_json(*x) : json(nullptr);
}

std::optional<Rational> opt_rat_from(const json& j) {
  if (j.is_null()) return std::nullopt;
  return rat_from_json(j);
}

json matrix_to_json(const IntMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.dim(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.dim(); ++j) row.push_back(int_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

IntMatrix matrix_from_json(const json& j) {
  const std::size_t n = j.size();
  IntMatrix m(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (j[i].size() != n) throw Error(ErrorCode::ParseError, "P must be square");
    for (std::size_t k = 0; k < n; ++k) m(i, k) = int_from_json(j[i][k]);
  }
  return m;
}

json affine_to_json(const AffineInT& f) { return json::array({to_string(f.u), to_string(f.v)}); }

AffineInT affine_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2) throw Error(ErrorCode::ParseError, "expected [u, v]");
  return {rat_from_json(j[0]), rat_from_json(j[1])};
}

std::vector<Integer> ints_from_json(const json& j) {
  std::vector<Integer> out;
  for (const json& x : j) out.push_back(int_from_json(x));
  return out;
}

json config_to_json(const RunConfig& c) {
  const ParamSetup& s = *c.setup;
  const bool primary = s.mode == Mode::Primary;
  json alpha = json::array();
  for (const Rational& a : s.original()) alpha.push_back(rat_to_json(a));
  json stop;
  stop[primary ? "t_min" : "t_max"] = opt_rat(c.stop.t_limit);
  stop["max_events"] = c.stop.max_events ? json(*c.stop.max_events) : json(nullptr);
  stop["q_max"] = c.stop.q_max ? int_to_json(*c.stop.q_max) : json(nullptr);
  json j;
  j["alpha"] = std::move(alpha);
  j["mode"] = primary ? "primary" : "dual";
  j["omega"] = rat_to_json(c.omega);
  j["variant"] = c.variant == Variant::Full ? "full" : "partial";
  j["t_start"] = rat_to_json(c.t_start);
  j["stop"] = std::move(stop);
  j["detail"] = c.detail == TraceDetail::EventsOnly ? "events" : "full";
  return j;
}

RunConfig config_from_json(const json& j) {
  RunConfig c;
  std::vector<Rational> alpha;
  for (const json& a : j.at("alpha")) alpha.push_back(rat_from_json(a));
  const std::string mode = j.at("mode").get<std::string>();
  if (mode != "primary" && mode != "dual") throw Error(ErrorCode::ParseError, "bad mode " + mode);
  const bool primary = mode == "primary";
  c.setup = std::make_shared<const ParamSetup>(
      ParamSetup::make(alpha, primary ? Mode::Primary : Mode::Dual));
  c.omega = rat_from_json(j.at("omega"));
  const std::string variant = j.at("variant").get<std::string>();
  if (variant != "full" && variant != "partial") {
    throw Error(ErrorCode::ParseError, "bad variant " + variant);
  }
  c.variant = variant == "full" ? Variant::Full : Variant::Partial;
  c.t_start = rat_from_json(j.at("t_start"));
  const json& stop = j.at("stop");
  c.stop.t_limit = opt_rat_from(stop.at(primary ? "t_min" : "t_max"));
  if (!stop.at("max_events").is_null()) c.stop.max_events = stop["max_events"].get<std::size_t>();
  if (!stop.at("q_max").is_null()) c.stop.q_max = int_from_json(stop["q_max"]);
  const std::string detail = j.at("detail").get<std::string>();
  if (detail != "events" && detail != "full") throw Error(ErrorCode::ParseError, "bad detail " + detail);
  c.detail = detail == "events" ? TraceDetail::EventsOnly : TraceDetail::FullState;
  return c;
}

json event_to_json(const Event& e) {
  json ops = json::array();
  for (const Operation& op : e.ops) {
    json o;
    if (op.kind == Operation::Kind::Swap) {
      o["op"] = "swap";
      o["r"] = op.r;
    } else {
      o["op"] = "shift";
      o["r"] = op.r;
      o["s"] = op.s;
      o["a"] = int_to_json(op.a);
    }
    ops.push_back(std::move(o));
  }
  json j;
  j["k"] = e.k;
  j["t"] = rat_to_json(e.t);
  j["ops"] = std::move(ops);
  j["P"] = matrix_to_json(e.P_after);
  if (e.B) {
    json rows = json::array();
    const std::size_t n = e.B->dim();
    for (std::size_t i = 0; i < n; ++i) {
      json row = json::array();
      for (std::size_t k = i; k < n; ++k) row.push_back(affine_to_json((*e.B)(i, k)));
      rows.push_back(std::move(row));
    }
    j["B"] = std::move(rows);
  }
  if (e.C) {
    json c = json::array();
    for (const AffineInT& f : *e.C) c.push_back(affine_to_json(f));
    j["C"] = std::move(c);
  }
  return j;
}

Event event_from_json(const json& j) {
  Event e;
  e.k = j.at("k").get<std::size_t>();
  e.t = rat_from_json(j.at("t"));
  for (const json& o : j.at("ops")) {
    const std::string kind = o.at("op").get<std::string>();
    const std::size_t r = o.at("r").get<std::size_t>();
    if (kind == "swap") {
      e.ops.push_back(Operation::swap(r));
    } else if (kind == "shift") {
      e.ops.push_back(Operation::shift(r, o.at("s").get<std::size_t>(), int_from_json(o.at("a"))));
    } else {
      throw Error(ErrorCode::ParseError, "bad op " + kind);
    }
  }
  e.P_after = matrix_from_json(j.at("P"));
  if (j.contains("B")) {
    const json& rows = j["B"];
    Triangle<AffineInT> b(rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != rows.size() - i) throw Error(ErrorCode::ParseError, "bad B row");
      for (std::size_t k = 0; k < rows[i].size(); ++k) b(i, i + k) = affine_from_json(rows[i][k]);
    }
    e.B = std::move(b);
  }
  if (j.contains("C")) {
    std::vector<AffineInT> c;
    for (const json& f : j["C"]) c.push_back(affine_from_json(f));
    e.C = std::move(c);
  }
  return e;
}

json convergent_to_json(const Convergent& c) {
  json p = json::array();
  for (const Integer& x : c.p) p.push_back(int_to_json(x));
  json j;
  j["p"] = std::move(p);
  j["q"] = int_to_json(c.q);
  j["err2"] = rat_to_json(c.err2);
  j["quality_decimal"] = to_decimal(c.quality);
  j["t_interval"] = json::array({rat_to_json(c.t_lo), opt_rat(c.t_hi)});
  return j;
}

Convergent convergent_from_json(const json& j) {
  Convergent c;
  c.p = ints_from_json(j.at("p"));
  c.q = int_from_json(j.at("q"));
  c.err2 = rat_from_json(j.at("err2"));
  c.quality = std::stod(j.at("quality_decimal").get<std::string>());
  const json& iv = j.at("t_interval");
  if (!iv.is_array() || iv.size() != 2) throw Error(ErrorCode::ParseError, "bad t_interval");
  c.t_lo = rat_from_json(iv[0]);
  c.t_hi = opt_rat_from(iv[1]);
  return c;
}

std::string termination_text(const Trace& t) {
  return to_string(t.termination, t.config.setup->mode);
}

std::string interval_end(const std::optional<Rational>& x) {
  return x ? to_string(*x) : "inf";
}

}  // namespace

std::string to_json(const Trace& trace) {
  json j;
  j["config"] = config_to_json(trace.config);
  json events = json::array();
  for (const Event& e : trace.events) events.push_back(event_to_json(e));
  j["events"] = std::move(events);
  json convs = json::array();
  for (const Convergent& c : trace.convergents) convs.push_back(convergent_to_json(c));
  j["convergents"] = std::move(convs);
  j["termination"] = termination_text(trace);
  j["t_end"] = opt_rat(trace.t_end);
  return j.dump(2) + "\n";
}

Trace trace_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("invalid JSON: ") + e.what());
  }
  try {
    Trace t;
    t.config = config_from_json(j.at("config"));
    for (const json& e : j.at("events")) t.events.push_back(event_from_json(e));
    for (const json& c : j.at("convergents")) t.convergents.push_back(convergent_from_json(c));
    const std::string term = j.at("termination").get<std::string>();
    const Mode mode = t.config.setup->mode;
    bool found = false;
    for (Termination k : {Termination::Exact, Termination::TLimit, Termination::MaxEvents,
                          Termination::QMax}) {
      if (term == to_string(k, mode)) {
        t.termination = k;
        found = true;
      }
    }
    if (!found) throw Error(ErrorCode::ParseError, "bad termination " + term);
    t.t_end = opt_rat_from(j.at("t_end"));
    return t;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, std::string("malformed trace: ") + e.what());
  }
}

std::string to_csv(const Trace& trace) {
  std::ostringstream os;
  const std::size_t d = trace.config.setup->d;
  os << "q";
  for (std::size_t i = 1; i <= d; ++i) os << ",p" << i;
  os << ",err2,quality,t_lo,t_hi\n";
  for (const Convergent& c : trace.convergents) {
    os << c.q.get_str();
    for (const Integer& x : c.p) os << ',' << x.get_str();
    os << ',' << to_string(c.err2) << ',' << to_decimal(c.quality) << ',' << to_string(c.t_lo)
       << ',' << interval_end(c.t_hi) << '\n';
  }
  return os.str();
}

std::string to_table(const Trace& trace) {
  std::vector<std::vector<std::string>> rows;
  rows.push_back({"q", "p", "err2", "quality", "t_lo", "t_hi"});
  for (const Convergent& c : trace.convergents) {
    std::string p;
    for (std::size_t i = 0; i < c.p.size(); ++i) p += (i ? " " : "") + c.p[i].get_str();
    const double e = c.err2 == 0 ? 0.0 : std::exp2(log2_abs(c.err2));
    rows.push_back({c.q.get_str(), p, to_decimal(e), to_decimal(c.quality),
                    to_decimal(c.t_lo.get_d()), c.t_hi ? to_decimal(c.t_hi->get_d()) : "inf"});
  }
  std::vector<std::size_t> width(rows[0].size(), 0);
  for (const auto& r : rows)
    for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());

  std::ostringstream os;
  os << "events: " << trace.events.size() << "  termination: " << termination_text(trace)
     << "\n";
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) os << "  ";
      os << std::string(width[i] - r[i].size(), ' ') << r[i];
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace gcf::io
