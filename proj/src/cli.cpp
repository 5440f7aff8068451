#include "toda/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <numbers>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "toda/identities.hpp"
#include "toda/interval.hpp"
#include "toda/volterra.hpp"

namespace toda::cli {

using nlohmann::json;

namespace {

/// Bad values that CLI11 cannot see, e.g. malformed rationals.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

Rational rational_arg(const std::string& text, const char* what) {
  try {
    return parse_rational(text);
  } catch (const std::exception&) {
    throw UsageError(std::string(what) + ": not a rational number: '" + text + "'");
  }
}

int sign_arg(const std::string& text) {
  if (text == "+" || text == "1" || text == "+1") return 1;
  if (text == "-" || text == "-1") return -1;
  throw UsageError("sign must be + or -, got '" + text + "'");
}

std::string real_text(Real x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.21Lg", x);
  return buf;
}

json real_json(Real x) {
  if (!std::isfinite(x)) return nullptr;
  return static_cast<double>(x);
}

/// Writes to `path`, or to `fallback` when the path is empty or "-".
void emit(const std::string& path, const std::string& text, std::ostream& fallback) {
  if (path.empty() || path == "-") {
    fallback << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot open '" + path + "' for writing");
  f << text;
}

struct IdentitiesArgs {
  IdentityOptions opt;
  std::string fault;
  std::string out;
};

struct SchurArgs {
  std::string mu, nu;
  bool negate = false;
};

struct VertexArgs {
  std::string nu = "[]", nubar = "[]", form = "def", q;
  std::string s = "0";
};

struct TauArgs {
  int a = 1, b = 1, deg = 2;
  std::string sign = "+", shift = "0", format = "text", out;
};

struct LaxArgs {
  int a = 1, b = 1, T = 8, deg = 4;
  std::string sign = "+", shift = "0", fault, out;
};

struct SimArgs {
  int a = 1, b = 1, sites = 12, k = 1, kmax = 3, record_every = 100;
  unsigned seed = 1;
  double dt = 1e-3, t_end = 1, amplitude = 0.1, drift_tol = 1e-8;
  std::string init = "wave", csv = "-", summary;
  bool order_check = false;
};

int cmd_identities(IdentitiesArgs& args, std::ostream& out) {
  args.opt.flip_sign = args.fault == "sign";
  Report r = run_identities(args.opt);
  json params = {{"vertex_weight", args.opt.vertex_weight},
                 {"symmetry_weight", args.opt.symmetry_weight},
                 {"schur_weight", args.opt.schur_weight},
                 {"shift_degree", args.opt.shift_degree}};
  if (!args.fault.empty()) params["fault"] = args.fault;
  emit(args.out, report_json("identities", params, r).dump(2) + "\n", out);
  return r.pass() ? kPass : kVerificationFailed;
}

int cmd_schur(const SchurArgs& args, std::ostream& out) {
  const Partition mu = parse_partition(args.mu);
  const Partition nu = parse_partition(args.nu);
  PowerSumPoly f = skew_schur(mu, nu, mu.weight());
  if (args.negate) f = negate_p(f);
  out << (f.is_zero() ? "0" : f.to_string()) << "\n";
  return kPass;
}

int cmd_vertex(const VertexArgs& args, std::ostream& out, long bits) {
  const Partition nu = parse_partition(args.nu), nb = parse_partition(args.nubar);
  VertexEngine e(std::max(nu.weight() + nb.weight(), 1));
  QFieldElem v;
  if (args.form == "def")
    v = e.vertex_def(nu, nb);
  else if (args.form == "hook")
    v = e.vertex_hook(nu, nb);
  else
    v = e.gamma_matrix_element(nu, nb);
  out << v.to_string() << "\n";
  if (!args.q.empty()) {
    Interval x = eval(v, rational_arg(args.q, "--q"), rational_arg(args.s, "--s"), bits);
    out << x.to_string() << "\n";
  }
  return kPass;
}

int cmd_tau(const TauArgs& args, std::ostream& out) {
  TauParams p{args.a, args.b, sign_arg(args.sign)};
  const Rational shift = rational_arg(args.shift, "--shift");
  TauTable t = tau_table(p, shift, args.deg);
  std::ostringstream text;
  if (args.format == "json") {
    json entries = json::array();
    for (const auto& [key, entry] : t.entries)
      entries.push_back({{"nu", key.first.to_string()},
                         {"nubar", key.second.to_string()},
                         {"exponent", entry.exponent.to_string()},
                         {"gamma", entry.gamma.to_string()}});
    json j = {{"schema", 1},
              {"command", "tau"},
              {"params", {{"a", p.a}, {"b", p.b}, {"sign", p.sign}, {"deg", args.deg}, {"shift", to_string(shift)}}},
              {"tau", to_string(p.tau())},
              {"global", t.global.to_string()},
              {"entries", entries}};
    text << j.dump(2) << "\n";
  } else {
    text << "# tau = " << to_string(p.tau()) << ", shift = " << to_string(shift) << ", global q^(" << t.global.to_string()
         << ")\n";
    for (const auto& [key, entry] : t.entries)
      text << key.first.to_string() << " " << key.second.to_string() << " : q^(" << entry.exponent.to_string()
           << ") * (" << entry.gamma.to_string() << ")\n";
  }
  emit(args.out, text.str(), out);
  return kPass;
}

int cmd_laxcheck(const LaxArgs& args, std::ostream& out) {
  SessionParams p{args.a, args.b, sign_arg(args.sign), args.T, rational_arg(args.shift, "--shift")};
  p.validate();
  Report r;
  if (args.fault == "sign") {
    // negative control: the Lambda^{-1} coefficient of W0 with the wrong sign
    Op W = build_W0(p);
    const long n = W.index_of(Rational(-1));
    W.set(n, -W.at(n));
    r = check_initial_relations(p, W, build_W0bar(p));
    r.append(check_LM_relation(p, W, build_W0bar(p)));
  } else {
    r = laxcheck(p, args.deg);
  }
  json params = {{"a", p.a}, {"b", p.b}, {"sign", p.sign}, {"T", p.T}, {"deg", args.deg}, {"shift", to_string(p.shift)}};
  if (!args.fault.empty()) params["fault"] = args.fault;
  emit(args.out, report_json("laxcheck", params, r).dump(2) + "\n", out);
  return r.pass() ? kPass : kVerificationFailed;
}

LatticeState initial_state(const SimArgs& args) {
  if (args.init == "wave")
    return make_state(args.a, args.b, args.sites, [&](int j) {
      return 1 + args.amplitude * std::sin(2 * std::numbers::pi_v<Real> * j / args.sites);
    });
  if (args.init == "random") {
    std::mt19937 rng(args.seed);
    std::uniform_real_distribution<double> d(-args.amplitude, args.amplitude);
    return make_state(args.a, args.b, args.sites, [&](int) { return 1 + d(rng); });
  }
  const Real c = args.init == "zero" ? 0 : 1;
  return make_state(args.a, args.b, args.sites, [c](int) { return c; });
}

int cmd_simulate(const SimArgs& args, std::ostream& out) {
  if (args.dt <= 0) throw UsageError("--dt must be positive");
  if (args.record_every < 1) throw UsageError("--record-every must be positive");
  const LatticeState s = initial_state(args);
  Trajectory tr = integrate(s, args.k, args.t_end, args.dt, args.record_every);

  std::ostringstream csv;
  csv << "t";
  for (int j = 0; j < s.size(); ++j) csv << ",u_" << j;
  for (int k = 1; k <= args.kmax; ++k) csv << ",H_" << k;
  csv << "\n";
  LatticeState cur = s;
  for (std::size_t i = 0; i < tr.times.size(); ++i) {
    cur.u = tr.states[i];
    csv << real_text(tr.times[i]);
    for (Real x : cur.u) csv << "," << real_text(x);
    for (Real h : conserved_quantities(cur, args.kmax)) csv << "," << real_text(h);
    csv << "\n";
  }
  emit(args.csv, csv.str(), out);

  DriftReport d = measure_drift(s, args.k, args.t_end, args.dt, args.kmax);
  bool pass = d.max_drift < args.drift_tol;
  json summary = {{"schema", 1},
                  {"command", "simulate"},
                  {"params",
                   {{"a", args.a},
                    {"b", args.b},
                    {"sites", args.sites},
                    {"k", args.k},
                    {"kmax", args.kmax},
                    {"dt", args.dt},
                    {"t_end", args.t_end},
                    {"init", args.init},
                    {"amplitude", args.amplitude}}},
                  {"H0", json::array()},
                  {"max_drift", real_json(d.max_drift)},
                  {"drift_tol", args.drift_tol},
                  {"order_ratio", nullptr}};
  for (Real h : d.H0) summary["H0"].push_back(real_json(h));
  if (args.order_check) {
    DriftReport half = measure_drift(s, args.k, args.t_end, args.dt / 2, args.kmax);
    summary["max_drift_half_step"] = real_json(half.max_drift);
    if (half.max_drift > 0) {
      const Real ratio = d.max_drift / half.max_drift;
      summary["order_ratio"] = real_json(ratio);
      pass = pass && ratio >= 8 && ratio <= 32;
    } else {
      pass = pass && d.max_drift == 0;
    }
  }
  summary["pass"] = pass;
  const std::string text = summary.dump(2) + "\n";
  if (!args.summary.empty())
    emit(args.summary, text, out);
  else if (!(args.csv.empty() || args.csv == "-"))
    out << text;
  return pass ? kPass : kVerificationFailed;
}

}  // namespace

Partition parse_partition(const std::string& text) {
  std::string t;
  for (char c : text)
    if (c != ' ') t += c;
  if (t.empty() || t == "\xE2\x88\x85" || t == "0" || t == "[]") return {};
  if (t.front() != '[') t = "[" + t + "]";
  try {
    return Partition::parse(t);
  } catch (const std::exception&) {
    throw UsageError("not a partition: '" + text + "'");
  }
}

json report_json(const std::string& command, const json& params, const Report& r) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    json res = json::array();
    for (const auto& x : c.residuals) res.push_back({{"power", to_string(x.power)}, {"value", x.value}});
    checks.push_back({{"name", c.name},
                      {"pass", c.pass},
                      {"first_offending", c.first_offending ? json(to_string(*c.first_offending)) : json(nullptr)},
                      {"detail", c.detail},
                      {"residuals", res}});
  }
  return {{"schema", 1}, {"command", command}, {"params", params}, {"pass", r.pass()}, {"checks", checks}};
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact checks and lattice simulations for the two-leg vertex Toda reduction", "toda"};
  app.config_formatter(std::make_shared<CLI::ConfigINI>());
  app.set_config("--config", "", "INI file with one [section] per subcommand");
  app.require_subcommand(1);
  app.fallthrough();
  long bits = default_precision_bits();
  app.add_option("--precision", bits, "Working precision in bits for numeric evaluation")
      ->check(CLI::Range(32L, 1L << 20));

  IdentitiesArgs ia;
  auto* id = app.add_subcommand("identities", "Schur, vertex and tau-table identity suite");
  id->add_option("--vertex-weight", ia.opt.vertex_weight, "Bound on |nu|+|nubar| for def = hook")
      ->check(CLI::NonNegativeNumber);
  id->add_option("--symmetry-weight", ia.opt.symmetry_weight)->check(CLI::NonNegativeNumber);
  id->add_option("--schur-weight", ia.opt.schur_weight)->check(CLI::NonNegativeNumber);
  id->add_option("--shift-degree", ia.opt.shift_degree)->check(CLI::NonNegativeNumber);
  id->add_option("--fault", ia.fault)->check(CLI::IsMember({"sign"}))->group("");
  id->add_option("--out", ia.out, "Report path (default stdout)");

  SchurArgs sa;
  auto* sc = app.add_subcommand("schur", "Print S_mu or S_{mu/nu} in the power sums");
  sc->add_option("--mu", sa.mu)->required();
  sc->add_option("--nu", sa.nu, "Inner partition for the skew function");
  sc->add_flag("--negate", sa.negate, "Apply p_k -> -p_k");

  VertexArgs va;
  auto* vx = app.add_subcommand("vertex", "Print a vertex value");
  vx->add_option("--nu", va.nu);
  vx->add_option("--nubar", va.nubar);
  vx->add_option("--form", va.form)->check(CLI::IsMember({"def", "hook", "gamma"}));
  vx->add_option("--q", va.q, "Also evaluate at this rational q in (0,1)");
  vx->add_option("--s", va.s, "Lattice coordinate for --q");

  TauArgs ta;
  auto* tu = app.add_subcommand("tau", "Tau-function coefficient table");
  tu->add_option("--a", ta.a)->check(CLI::PositiveNumber);
  tu->add_option("--b", ta.b)->check(CLI::PositiveNumber);
  tu->add_option("--sign", ta.sign);
  tu->add_option("--deg", ta.deg)->check(CLI::NonNegativeNumber);
  tu->add_option("--shift", ta.shift);
  tu->add_option("--format", ta.format)->check(CLI::IsMember({"text", "json"}));
  tu->add_option("--out", ta.out);

  LaxArgs la;
  auto* lx = app.add_subcommand("laxcheck", "Verify the initial-value relations");
  lx->add_option("--a", la.a)->check(CLI::PositiveNumber);
  lx->add_option("--b", la.b)->check(CLI::PositiveNumber);
  lx->add_option("--sign", la.sign);
  lx->add_option("--T", la.T, "Truncation order")->check(CLI::PositiveNumber);
  lx->add_option("--deg", la.deg, "Tau degree for the cross-check")->check(CLI::PositiveNumber);
  lx->add_option("--shift", la.shift);
  lx->add_option("--fault", la.fault)->check(CLI::IsMember({"sign"}))->group("");
  lx->add_option("--out", la.out);

  SimArgs ma;
  auto* sm = app.add_subcommand("simulate", "Integrate a reduced lattice flow");
  sm->add_option("--a", ma.a)->check(CLI::PositiveNumber);
  sm->add_option("--b", ma.b)->check(CLI::PositiveNumber);
  sm->add_option("--sites", ma.sites, "Coarse sites")->check(CLI::PositiveNumber);
  sm->add_option("--k,--flows", ma.k, "Flow index")->check(CLI::PositiveNumber);
  sm->add_option("--kmax,--invariants", ma.kmax, "Number of conserved quantities")->check(CLI::NonNegativeNumber);
  sm->add_option("--dt", ma.dt);
  sm->add_option("--t-end", ma.t_end);
  sm->add_option("--record-every", ma.record_every);
  sm->add_option("--init", ma.init)->check(CLI::IsMember({"wave", "random", "constant", "zero"}));
  sm->add_option("--amplitude", ma.amplitude);
  sm->add_option("--seed", ma.seed);
  sm->add_option("--drift-tol", ma.drift_tol);
  sm->add_flag("--order-check", ma.order_check, "Also run at dt/2 and require a ratio in [8,32]");
  sm->add_option("--csv", ma.csv, "Trajectory path (default stdout)");
  sm->add_option("--summary", ma.summary, "Summary JSON path");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kUsage;
  }

  std::string name = app.get_subcommands().front()->get_name();
  try {
    if (id->parsed()) return cmd_identities(ia, out);
    if (sc->parsed()) return cmd_schur(sa, out);
    if (vx->parsed()) return cmd_vertex(va, out, bits);
    if (tu->parsed()) return cmd_tau(ta, out);
    if (lx->parsed()) return cmd_laxcheck(la, out);
    return cmd_simulate(ma, out);
  } catch (const std::logic_error& e) {
    // NonCoprime, InvalidTau, DegreeBoundExceeded, UnsupportedFlow, bad values
    err << "error: " << name << ": " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << name << ": " << e.what() << "\n";
    return kVerificationFailed;
  }
}

}  // namespace toda::cli
