#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#if __has_include(<CLI11.hpp>)
#include <CLI11.hpp>
#else
#include <CLI/CLI.hpp>
#endif

#include "gini/conjectures.hpp"
#include "gini/errors.hpp"
#include "gini/means.hpp"
#include "gini/oracle.hpp"
#include "gini/parallel.hpp"
#include "gini/regions.hpp"
#include "gini/solver.hpp"
#include "records.hpp"

namespace gini::cli {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kClosedCellCap = 1e6;
constexpr double kSolverCellCap = 1e4;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double parse_real(const std::string& text, const char* what) {
  if (text == "inf" || text == "+inf") return kInf;
  double v = 0.0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || text.empty() || !std::isfinite(v))
    throw UsageError(std::string("malformed value for ") + what + ": '" + text + "'");
  return v;
}

// n as an integer >= 2, or 0 for "inf".
int parse_n(const std::string& text) {
  if (text == "inf") return 0;
  int v = 0;
  const char* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || v < 2) throw UsageError("--n must be an integer >= 2 or 'inf'");
  return v;
}

std::string format_g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

char status_letter(Status s) {
  switch (s) {
    case Status::Member: return 'M';
    case Status::NonMember: return 'N';
    case Status::Inconclusive: return 'I';
  }
  return '?';
}

int exit_for(Status s) {
  switch (s) {
    case Status::Member: return kMember;
    case Status::NonMember: return kNonMember;
    case Status::Inconclusive: return kInconclusive;
  }
  return kInconclusive;
}

struct BudgetFlags {
  SolverBudget budget;
  std::vector<CLI::Option*> options;

  void attach(CLI::App* cmd) {
    options.push_back(cmd->add_option("--seeds", budget.seeds, "local descents from the best lattice points")
                          ->check(CLI::NonNegativeNumber));
    options.push_back(cmd->add_option("--grid", budget.grid_per_axis, "lattice points per free coordinate")
                          ->check(CLI::NonNegativeNumber));
    options.push_back(cmd->add_option("--max-iters", budget.max_iters, "iterations per local descent")
                          ->check(CLI::NonNegativeNumber));
    options.push_back(cmd->add_option("--box-L", budget.box_L, "search box [L, 1/L] for unbounded intervals"));
    options.push_back(cmd->add_option("--seed", budget.rng_seed, "random seed"));
  }
  bool any_given() const {
    return std::any_of(options.begin(), options.end(), [](const CLI::Option* o) { return o->count() > 0; });
  }
};

class Timer {
 public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

json interval_json(double a, double b) { return {{"a", number(a)}, {"b", number(b)}}; }

json verdict_json(const Verdict& v) {
  json out{{"status", std::string(to_string(v.status))},
           {"condition", v.failed_condition},
           {"margin", v.margin ? number(*v.margin) : json(nullptr)},
           {"witness", to_json(v.witness)}};
  return out;
}

json verdict_json(const GammaNVerdict& v) {
  return {{"status", std::string(to_string(v.status))},
          {"decided_by", v.decided_by},
          {"witness", to_json(v.witness)},
          {"min_objective", number(v.min_objective)},
          {"argmin", v.argmin},
          {"candidates_examined", v.candidates_examined},
          {"kkt_candidates", v.kkt_candidates},
          {"ma3_candidates", v.ma3_candidates},
          {"ma3_changed_verdict", v.ma3_changed_verdict}};
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write '" + path + "'");
  f << text;
}

// ---- mean ------------------------------------------------------------------

struct MeanArgs {
  double p = 0.0;
  double q = 0.0;
  std::vector<double> x;
  double chi_t = 1.0;
  CLI::Option* chi_opt = nullptr;
};

int cmd_mean(const MeanArgs& a, const SolverBudget& budget, std::ostream& out) {
  Timer timer;
  const ParamPair pq{a.p, a.q};
  json result{{"mean", gini_mean(pq, a.x)}};
  json inputs{{"p", a.p}, {"q", a.q}, {"x", a.x}};
  if (a.chi_opt->count() > 0) {
    inputs["chi"] = a.chi_t;
    result["chi"] = chi(pq, a.chi_t);
    result["chi_prime"] = chi_prime(pq, a.chi_t);
  }
  json rec{{"command", "mean"},
           {"inputs", inputs},
           {"result", result},
           {"diagnostics", diagnostics(budget, 1)},
           {"timing_ms", timer.ms()}};
  out << rec.dump(2) << '\n';
  return kOk;
}

// ---- member ----------------------------------------------------------------

struct MemberArgs {
  double r = 0.0, s = 0.0, p = 0.0, q = 0.0;
  std::string a = "1", b = "2", n = "2";
  bool cross_check = false;
};

int cmd_member(const MemberArgs& m, const BudgetFlags& flags, std::ostream& out) {
  Timer timer;
  const int n = parse_n(m.n);
  if (n == 0 && (flags.any_given() || m.cross_check))
    throw UsageError("--n inf is decided in closed form; solver flags do not apply");
  const double a = parse_real(m.a, "--a");
  const double b = parse_real(m.b, "--b");
  const Interval interval(a, b);
  const ComparisonQuad quad{{m.r, m.s}, {m.p, m.q}};

  json result;
  Status status = Status::Inconclusive;
  std::optional<std::vector<double>> witness;
  if (n == 0) {
    const Verdict v = in_gamma_inf(quad, interval);
    result = verdict_json(v);
    result["route"] = "gamma_inf_closed_form";
    status = v.status;
    witness = v.witness;
  } else if (n == 2 && !m.cross_check) {
    const Verdict v = in_gamma2(quad, interval);
    result = verdict_json(v);
    result["route"] = "gamma2_closed_form";
    status = v.status;
    witness = v.witness;
  } else {
    const GammaNVerdict v = decide_gamma_n(quad, interval, n, flags.budget, m.cross_check);
    result = verdict_json(v);
    result["route"] = "decide_gamma_n";
    status = v.status;
    witness = v.witness;
  }
  if (witness) result["witness_margin"] = violation_margin(quad, *witness);

  json rec{{"command", "member"},
           {"inputs",
            {{"quad", to_json(quad)},
             {"interval", interval_json(a, b)},
             {"n", n == 0 ? json("inf") : json(n)},
             {"cross_check", m.cross_check}}},
           {"result", result},
           {"diagnostics", diagnostics(flags.budget, 1)},
           {"timing_ms", timer.ms()}};
  out << rec.dump(2) << '\n';
  return exit_for(status);
}

// ---- slice -----------------------------------------------------------------

struct SliceArgs {
  std::vector<std::string> fix;
  std::vector<std::string> sweep;
  std::string a = "1", b = "2", n = "2";
  int threads = 1;
  std::string json_path;
};

struct Axis {
  int index = 0;  // 0..3 for r, s, p, q
  std::string name;
  double lo = 0.0, hi = 0.0;
  int steps = 1;
  double at(int i) const { return steps == 1 ? lo : lo + (hi - lo) * i / (steps - 1); }
};

int param_index(const std::string& name) {
  static const std::vector<std::string> names{"r", "s", "p", "q"};
  const auto it = std::find(names.begin(), names.end(), name);
  if (it == names.end()) throw UsageError("unknown parameter '" + name + "' (expected r, s, p or q)");
  return static_cast<int>(it - names.begin());
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

int cmd_slice(const SliceArgs& sa, const BudgetFlags& flags, std::ostream& out) {
  Timer timer;
  const int n = parse_n(sa.n);
  if (n == 0 && flags.any_given()) throw UsageError("--n inf is decided in closed form; solver flags do not apply");
  const double a = parse_real(sa.a, "--a");
  const double b = parse_real(sa.b, "--b");
  const Interval interval(a, b);

  std::array<double, 4> base{};
  std::array<bool, 4> used{};
  if (sa.fix.size() != 2) throw UsageError("--fix needs exactly two assignments, e.g. r=0,s=0");
  for (const std::string& f : sa.fix) {
    const auto kv = split(f, '=');
    if (kv.size() != 2) throw UsageError("malformed --fix entry '" + f + "'");
    const int i = param_index(kv[0]);
    if (used[i]) throw UsageError("parameter '" + kv[0] + "' given twice");
    used[i] = true;
    base[i] = parse_real(kv[1], "--fix");
  }
  if (sa.sweep.size() != 2) throw UsageError("--sweep needs exactly two axes, e.g. p:-2:2:5,q:-2:2:5");
  std::array<Axis, 2> axes;
  for (std::size_t k = 0; k < 2; ++k) {
    const auto parts = split(sa.sweep[k], ':');
    if (parts.size() != 4) throw UsageError("malformed --sweep entry '" + sa.sweep[k] + "'");
    Axis& ax = axes[k];
    ax.index = param_index(parts[0]);
    if (used[ax.index]) throw UsageError("parameter '" + parts[0] + "' both fixed and swept");
    used[ax.index] = true;
    ax.name = parts[0];
    ax.lo = parse_real(parts[1], "--sweep");
    ax.hi = parse_real(parts[2], "--sweep");
    const double steps = parse_real(parts[3], "--sweep");
    if (steps < 1 || steps != std::floor(steps) || !std::isfinite(ax.lo) || !std::isfinite(ax.hi))
      throw UsageError("sweep steps must be a positive integer over finite bounds");
    ax.steps = static_cast<int>(std::min(steps, 1e9));
  }

  const double cells = static_cast<double>(axes[0].steps) * axes[1].steps;
  const double cap = (n == 0 || n == 2) ? kClosedCellCap : kSolverCellCap;
  if (cells > cap) throw ResourceError("slice has " + format_g17(cells) + " cells, cap is " + format_g17(cap));

  const auto total = static_cast<std::size_t>(cells);
  std::vector<Status> status(total);
  parallel_for(total, sa.threads, [&](std::size_t cell) {
    std::array<double, 4> v = base;
    v[axes[0].index] = axes[0].at(static_cast<int>(cell / axes[1].steps));
    v[axes[1].index] = axes[1].at(static_cast<int>(cell % axes[1].steps));
    const ComparisonQuad quad{{v[0], v[1]}, {v[2], v[3]}};
    if (n == 0)
      status[cell] = in_gamma_inf(quad, interval).status;
    else if (n == 2)
      status[cell] = in_gamma2(quad, interval).status;
    else
      status[cell] = decide_gamma_n(quad, interval, n, flags.budget).status;
  });

  std::string csv = axes[0].name + "," + axes[1].name + ",status\n";
  std::array<int, 3> counts{};
  for (std::size_t cell = 0; cell < total; ++cell) {
    const double u = axes[0].at(static_cast<int>(cell / axes[1].steps));
    const double w = axes[1].at(static_cast<int>(cell % axes[1].steps));
    csv += format_g17(u) + "," + format_g17(w) + "," + status_letter(status[cell]) + "\n";
    ++counts[static_cast<int>(status[cell])];
  }
  out << csv;

  if (!sa.json_path.empty()) {
    json fixed = json::object();
    static const char* names[] = {"r", "s", "p", "q"};
    for (int i = 0; i < 4; ++i)
      if (i != axes[0].index && i != axes[1].index) fixed[names[i]] = base[i];
    json sweep = json::array();
    for (const Axis& ax : axes) sweep.push_back({{"name", ax.name}, {"lo", ax.lo}, {"hi", ax.hi}, {"steps", ax.steps}});
    json rec{{"command", "slice"},
             {"inputs",
              {{"fixed", fixed},
               {"sweep", sweep},
               {"interval", interval_json(a, b)},
               {"n", n == 0 ? json("inf") : json(n)}}},
             {"result",
              {{"cells", total},
               {"member", counts[0]},
               {"non_member", counts[1]},
               {"inconclusive", counts[2]}}},
             {"diagnostics", diagnostics(flags.budget, sa.threads)},
             {"timing_ms", timer.ms()}};
    write_file(sa.json_path, rec.dump(2) + "\n");
  }
  return kOk;
}

// ---- conjecture ------------------------------------------------------------

struct ConjectureArgs {
  std::string which;
  int n = 3;
  std::string a = "1", b = "2";
  std::size_t samples = 100;
  std::uint64_t seed = 0;
  double box_L = 1e-2;
  std::string report_path;
  int threads = 1;
};

int cmd_conjecture(const ConjectureArgs& c, const BudgetFlags& flags, std::ostream& out) {
  Timer timer;
  QuadSampler sampler;
  sampler.count = c.samples;
  sampler.seed = c.seed;

  json inputs{{"which", c.which}, {"n", c.n}, {"samples", c.samples}, {"seed", c.seed}};
  json report;
  if (c.which == "c1") {
    if (c.n < 3) throw UsageError("c1 needs --n >= 3");
    const double a = parse_real(c.a, "--a");
    const double b = parse_real(c.b, "--b");
    const Interval interval(a, b);
    if (!(interval.theta() > 0.0)) throw UsageError("c1 needs a compact interval 0 < a < b < inf");
    inputs["interval"] = interval_json(a, b);
    report = to_json(run_conjecture1_sweep(interval, c.n, sampler, flags.budget, c.threads));
  } else {
    if (c.n < 2) throw UsageError("m2 needs --n >= 2");
    if (!(c.box_L > 0.0 && c.box_L < 1.0)) throw UsageError("--box-L must lie in (0, 1)");
    inputs["box_L"] = c.box_L;
    std::vector<M2Entry> entries;
    report = to_json(run_conjectureM2_sweep(c.n, c.box_L, sampler, c.threads, &entries));
    json list = json::array();
    for (const M2Entry& e : entries) list.push_back(to_json(e));
    report["entries"] = list;
  }
  report["settings"] = inputs;

  if (!c.report_path.empty()) write_file(c.report_path, report.dump(2) + "\n");
  json rec{{"command", "conjecture"},
           {"inputs", inputs},
           {"result", report},
           {"diagnostics", diagnostics(flags.budget, c.threads)},
           {"timing_ms", timer.ms()}};
  out << rec.dump(2) << '\n';
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Comparison of Gini means: evaluation, membership, slices, conjecture sweeps", "ginicmp"};
  app.require_subcommand(1, 1);

  MeanArgs mean_args;
  auto* mean = app.add_subcommand("mean", "evaluate G_{p,q}(x)");
  mean->add_option("--p", mean_args.p)->required();
  mean->add_option("--q", mean_args.q)->required();
  mean->add_option("--x", mean_args.x, "comma-separated positive sample")->required()->delimiter(',');
  mean_args.chi_opt = mean->add_option("--chi", mean_args.chi_t, "also report chi and chi' at t");

  MemberArgs member_args;
  BudgetFlags member_budget;
  auto* member = app.add_subcommand("member", "decide membership of ((r,s),(p,q)) in Gamma_n([a,b])");
  for (auto [name, ptr] : {std::pair{"--r", &member_args.r}, std::pair{"--s", &member_args.s},
                           std::pair{"--p", &member_args.p}, std::pair{"--q", &member_args.q}})
    member->add_option(name, *ptr)->required();
  member->add_option("--a", member_args.a, "left end (>= 0)")->capture_default_str();
  member->add_option("--b", member_args.b, "right end, 'inf' allowed")->capture_default_str();
  member->add_option("--n", member_args.n, "integer >= 2 or 'inf'")->capture_default_str();
  member->add_flag("--cross-check", member_args.cross_check, "cross-check n = 2 against the minimizer");
  member_budget.attach(member);

  SliceArgs slice_args;
  BudgetFlags slice_budget;
  auto* slice = app.add_subcommand("slice", "CSV membership map over a two-parameter lattice");
  slice->add_option("--fix", slice_args.fix, "two assignments, e.g. r=0,s=0")->required()->delimiter(',');
  slice->add_option("--sweep", slice_args.sweep, "two axes name:lo:hi:steps")->required()->delimiter(',');
  slice->add_option("--a", slice_args.a)->capture_default_str();
  slice->add_option("--b", slice_args.b)->capture_default_str();
  slice->add_option("--n", slice_args.n)->capture_default_str();
  slice->add_option("--threads", slice_args.threads)->check(CLI::PositiveNumber)->capture_default_str();
  slice->add_option("--json", slice_args.json_path, "also write a JSON record to this file");
  slice_budget.attach(slice);

  ConjectureArgs conj_args;
  BudgetFlags conj_budget;
  auto* conj = app.add_subcommand("conjecture", "agreement sweep for a conjectured characterization");
  conj->add_option("--which", conj_args.which)->required()->check(CLI::IsMember({"c1", "m2"}));
  conj->add_option("--n", conj_args.n)->capture_default_str();
  conj->add_option("--a", conj_args.a)->capture_default_str();
  conj->add_option("--b", conj_args.b)->capture_default_str();
  conj->add_option("--samples", conj_args.samples)->capture_default_str();
  conj->add_option("--seed", conj_args.seed)->capture_default_str();
  conj->add_option("--box-L", conj_args.box_L)->capture_default_str();
  conj->add_option("--report", conj_args.report_path, "write the report JSON to this file");
  conj->add_option("--threads", conj_args.threads)->check(CLI::PositiveNumber)->capture_default_str();
  for (auto [name, ptr] : {std::pair{"--seeds", &conj_budget.budget.seeds},
                           std::pair{"--grid", &conj_budget.budget.grid_per_axis},
                           std::pair{"--max-iters", &conj_budget.budget.max_iters}})
    conj->add_option(name, *ptr)->check(CLI::NonNegativeNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (mean->parsed()) return cmd_mean(mean_args, SolverBudget{}, out);
    if (member->parsed()) return cmd_member(member_args, member_budget, out);
    if (slice->parsed()) return cmd_slice(slice_args, slice_budget, out);
    if (conj->parsed()) return cmd_conjecture(conj_args, conj_budget, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kUsage;
  } catch (const ResourceError& e) {
    err << "resource error: " << e.what() << '\n';
    return kResource;
  } catch (const SolverError& e) {
    err << "solver error: " << e.what() << '\n';
    return kResource;
  }
  return kUsage;
}

}  // namespace gini::cli
