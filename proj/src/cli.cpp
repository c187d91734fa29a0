#include "gcf/cli.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "gcf/error.hpp"
#include "gcf/geodesic.hpp"
#include "gcf/oracle.hpp"
#include "gcf/trace_io.hpp"

namespace gcf::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Rational flag_rational(const std::string& flag, const std::string& text) {
  try {
    return parse_rational(text);
  } catch (const Error& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

Integer flag_integer(const std::string& flag, const std::string& text) {
  try {
    return parse_integer(text);
  } catch (const Error& e) {
    throw UsageError(flag + ": " + e.what());
  }
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IOFailure, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct AlphaFlags {
  std::vector<std::string> alpha;
  std::string alpha_file;

  void add(CLI::App* app) {
    app->add_option("--alpha", alpha, "alpha as p/q or an exact decimal (repeatable)");
    app->add_option("--alpha-file", alpha_file, "file with one alpha per line, # comments");
  }

  std::vector<Rational> parse() const {
    std::vector<Rational> out;
    for (const std::string& a : alpha) out.push_back(flag_rational("--alpha", a));
    if (!alpha_file.empty()) {
      std::string text;
      try {
        text = read_file(alpha_file);
      } catch (const Error& e) {
        throw UsageError(std::string("--alpha-file: ") + e.what());
      }
      std::istringstream ls(text);
      std::string line;
      while (std::getline(ls, line)) {
        line = trim(line.substr(0, line.find('#')));
        if (!line.empty()) out.push_back(flag_rational("--alpha-file", line));
      }
    }
    if (out.empty()) throw UsageError("--alpha: at least one alpha is required");
    return out;
  }
};

struct RunFlags {
  AlphaFlags alphas;
  std::string omega = "3/4";
  std::string variant = "full";
  std::string t_start = "1";
  std::string t_min, t_max, q_max;
  std::optional<std::size_t> max_events;
  std::string detail = "events";

  void add(CLI::App* app, bool stops) {
    alphas.add(app);
    app->add_option("--omega", omega, "Lovasz parameter in [3/4, 1]")->capture_default_str();
    app->add_option("--variant", variant, "full, partial, or dual")
        ->check(CLI::IsMember({"full", "partial", "dual"}))
        ->capture_default_str();
    app->add_option("--t-start", t_start, "starting value of t")->capture_default_str();
    app->add_option("--detail", detail, "events or full")
        ->check(CLI::IsMember({"events", "full"}))
        ->capture_default_str();
    if (!stops) return;
    app->add_option("--t-min", t_min, "stop once the next event is at or below this t");
    app->add_option("--t-max", t_max, "dual sweep: stop once the next event is at or above this t");
    app->add_option("--max-events", max_events, "stop after this many events");
    app->add_option("--q-max", q_max, "stop after emitting a convergent with larger q");
  }

  RunConfig build() const {
    const bool dual = variant == "dual";
    RunConfig cfg;
    cfg.setup = std::make_shared<const ParamSetup>(
        ParamSetup::make(alphas.parse(), dual ? Mode::Dual : Mode::Primary));
    cfg.omega = flag_rational("--omega", omega);
    cfg.variant = variant == "partial" ? Variant::Partial : Variant::Full;
    cfg.t_start = flag_rational("--t-start", t_start);
    cfg.detail = detail == "full" ? TraceDetail::FullState : TraceDetail::EventsOnly;
    if (!t_min.empty()) {
      if (dual) throw UsageError("--t-min: not meaningful for the dual sweep (use --t-max)");
      cfg.stop.t_limit = flag_rational("--t-min", t_min);
    }
    if (!t_max.empty()) {
      if (!dual) throw UsageError("--t-max: only meaningful with --variant dual");
      cfg.stop.t_limit = flag_rational("--t-max", t_max);
    }
    cfg.stop.max_events = max_events;
    if (!q_max.empty()) cfg.stop.q_max = flag_integer("--q-max", q_max);
    try {
      cfg.validate();
    } catch (const Error& e) {
      const char* flag = e.code() == ErrorCode::OmegaOutOfRange ? "--omega" : "config";
      throw UsageError(std::string(flag) + ": " + e.what());
    }
    return cfg;
  }
};

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f || !(f << text)) throw Error(ErrorCode::IOFailure, "cannot write " + path);
}

std::string render(const Trace& tr, const std::string& format) {
  if (format == "json") return io::to_json(tr);
  if (format == "csv") return io::to_csv(tr);
  return io::to_table(tr);
}

std::string join(const std::vector<Integer>& v, const char* sep = " ") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i].get_str();
  return s;
}

FormMatrix parse_matrix(const std::string& text) {
  std::vector<std::vector<Rational>> grid;
  std::istringstream rows(text);
  std::string row;
  while (std::getline(rows, row, ';')) {
    std::vector<Rational> r;
    std::istringstream cells(row);
    std::string cell;
    while (std::getline(cells, cell, ',')) r.push_back(flag_rational("--matrix", trim(cell)));
    grid.push_back(std::move(r));
  }
  try {
    return FormMatrix::from_grid(grid);
  } catch (const Error& e) {
    throw UsageError(std::string("--matrix: ") + e.what());
  }
}

// Replays the trace's configuration and compares event by event, then
// recomputes every state from its transform and checks the invariants.
int check_trace(const std::string& path, std::ostream& out, std::ostream& err) {
  const std::string text = read_file(path);
  const Trace given = io::trace_from_json(text);
  const Trace again = run(given.config);

  const std::size_t m = std::min(given.events.size(), again.events.size());
  for (std::size_t k = 0; k < m; ++k) {
    Trace a, b;
    a.config = b.config = given.config;
    a.events = {given.events[k]};
    b.events = {again.events[k]};
    if (io::to_json(a) != io::to_json(b)) {
      err << "event " << given.events[k].k << " differs from the replay\n";
      return 1;
    }
  }
  if (given.events.size() != again.events.size()) {
    err << "event " << m + 1 << " differs from the replay (trace has " << given.events.size()
        << " events, replay has " << again.events.size() << ")\n";
    return 1;
  }
  if (io::to_json(given) != io::to_json(again)) {
    err << "convergents or termination differ from the replay\n";
    return 1;
  }

  const Sweep dir = sweep_of(given.config.setup->mode);
  for (const Event& e : given.events) {
    const DetState st = recompute_state(given.config.setup, e.P_after);
    if (auto bad = check_state_invariants(st)) {
      err << "event " << e.k << ": " << *bad << "\n";
      return 1;
    }
    for (const Condition& c : conditions(st, given.config.omega, given.config.partial())) {
      if (sign_near(c.g, e.t, dir) < 0) {
        err << "event " << e.k << ": not reduced past t_k (" << to_string(c.id) << ")\n";
        return 1;
      }
    }
  }
  out << "ok: " << given.events.size() << " events replayed, termination "
      << to_string(given.termination, given.config.setup->mode) << "\n";
  return 0;
}

}  // namespace

int run_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Geodesic continued fractions in exact rational arithmetic", "gcf"};
  app.require_subcommand(1);

  RunFlags run_flags;
  std::string format = "table", output;
  auto* run_cmd = app.add_subcommand("run", "run the algorithm and print the trace");
  run_flags.add(run_cmd, true);
  run_cmd->add_option("--format", format, "json, csv or table")
      ->check(CLI::IsMember({"json", "csv", "table"}))
      ->capture_default_str();
  run_cmd->add_option("-o,--output", output, "write to this file instead of stdout");

  RunFlags cert_flags;
  std::string cert_t, cert_eps;
  auto* cert_cmd = app.add_subcommand("certify", "test P e1 for an excellent approximation at t");
  cert_flags.add(cert_cmd, false);
  cert_cmd->add_option("--t", cert_t, "value of t")->required();
  cert_cmd->add_option("--epsilon", cert_eps, "target ||q alpha|| <= epsilon q^(-1/d)")->required();

  auto* oracle_cmd = app.add_subcommand("oracle", "brute-force reference computations");
  oracle_cmd->require_subcommand(1);
  AlphaFlags ba_alpha;
  std::uint64_t ba_qmax = 0;
  auto* ba_cmd = oracle_cmd->add_subcommand("best-approx", "best approximations by direct scan");
  ba_alpha.add(ba_cmd);
  ba_cmd->add_option("--q-max", ba_qmax, "largest q to scan")->required();
  std::string cf_alpha;
  auto* cf_cmd = oracle_cmd->add_subcommand("cf", "classical continued fraction convergents");
  cf_cmd->add_option("--alpha", cf_alpha, "the number")->required();
  std::string mat, min_bound;
  std::size_t min_k = 1;
  auto* min_cmd = oracle_cmd->add_subcommand("minima", "successive minima by enumeration");
  min_cmd->add_option("--matrix", mat, "rows separated by ';', entries by ','")->required();
  min_cmd->add_option("--k", min_k, "number of minima")->capture_default_str();
  min_cmd->add_option("--bound", min_bound, "enumeration radius")->required();
  AlphaFlags rel_alpha;
  std::string rel_height;
  auto* rel_cmd = oracle_cmd->add_subcommand("relation", "smallest |l0 + l.alpha| by search");
  rel_alpha.add(rel_cmd);
  rel_cmd->add_option("--height", rel_height, "max-norm bound")->required();

  std::string check_path;
  auto* check_cmd = app.add_subcommand("check", "replay a JSON trace and verify it");
  check_cmd->add_option("file", check_path, "trace file")->required();

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*run_cmd) {
      const RunConfig cfg = run_flags.build();
      write_output(output, render(run(cfg), format), out);
    } else if (*cert_cmd) {
      if (cert_flags.variant == "dual") throw UsageError("--variant: certify needs the primary sweep");
      RunConfig cfg = cert_flags.build();
      const Rational t = flag_rational("--t", cert_t);
      const Rational eps = flag_rational("--epsilon", cert_eps);
      if (t <= 0) throw UsageError("--t: must be positive");
      if (eps <= 0) throw UsageError("--epsilon: must be positive");
      cfg.stop.t_limit = t;
      const Trace tr = run(cfg);
      const IntMatrix P = tr.events.empty() ? IntMatrix::identity(cfg.setup->dim())
                                            : tr.events.back().P_after;
      const Certificate c = certify_excellent(recompute_state(cfg.setup, P), t, eps);
      out << to_string(c.verdict);
      if (c.verdict == Certificate::Verdict::Certified) {
        out << " p=(" << join(c.p, ", ") << ") q=" << c.q.get_str();
      }
      out << "\n";
    } else if (*ba_cmd) {
      if (ba_qmax < 1) throw UsageError("--q-max: must be at least 1");
      for (const auto& r : oracle::best_approximations(ba_alpha.parse(), ba_qmax)) {
        out << "q=" << r.q.get_str() << " p=(" << join(r.p, ", ") << ") err2=" << to_string(r.err2)
            << "\n";
      }
    } else if (*cf_cmd) {
      for (const auto& f : oracle::classical_cf(flag_rational("--alpha", cf_alpha))) {
        out << f.p.get_str() << "/" << f.q.get_str() << "\n";
      }
    } else if (*min_cmd) {
      const FormMatrix q = parse_matrix(mat);
      if (min_k < 1 || min_k > q.dim()) throw UsageError("--k: must lie in 1..n");
      const auto rep = oracle::successive_minima(q, min_k, flag_rational("--bound", min_bound));
      for (std::size_t i = 0; i < rep.values.size(); ++i) {
        out << "mu_" << i + 1 << " = " << to_string(rep.values[i]) << "  x=("
            << join(rep.witnesses[i], ", ") << ")\n";
      }
    } else if (*rel_cmd) {
      const Integer h = flag_integer("--height", rel_height);
      if (h < 1) throw UsageError("--height: must be at least 1");
      const auto rel = oracle::relation_search(rel_alpha.parse(), h);
      out << "l=(" << join(rel.l, ", ") << ") value=" << to_string(rel.value) << "\n";
    } else if (*check_cmd) {
      return check_trace(check_path, out, err);
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "error (" << to_string(e.code()) << "): " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace gcf::cli
