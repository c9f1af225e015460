#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "rfsum/arith_sieve.hpp"
#include "rfsum/error.hpp"
#include "rfsum/mean_values.hpp"
#include "rfsum/ramanujan.hpp"
#include "rfsum/report.hpp"
#include "rfsum/rf_series.hpp"
#include "rfsum/singular.hpp"

namespace rfsum::cli {
namespace {

using nlohmann::json;

struct Globals {
  unsigned threads = 1;
  std::string csv_path;
  std::string json_path;
  std::string cache_dir;
  std::uint64_t memory_mb = kDefaultMemoryBudget >> 20;
};

// What a subcommand hands back to the driver.
struct Outcome {
  std::string csv;
  json report;
  std::optional<std::uint64_t> sieve_bound;
  int exit_code = kOk;
};

template <typename T>
std::vector<T> parse_list(const std::string& text, const char* what) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::istringstream is(item);
    T value{};
    if (!(is >> value) || !(is >> std::ws).eof()) {
      throw InvalidArgument(std::string("cannot parse ") + what + " entry '" + item + "'");
    }
    out.push_back(value);
  }
  if (out.empty()) throw InvalidArgument(std::string(what) + " list is empty");
  return out;
}

Weight parse_weight(const std::string& s) { return s == "lambda" ? Weight::lambda : Weight::lambda1; }

class Context {
 public:
  explicit Context(const Globals& g) : globals_(g) {}

  ReduceOptions reduce() const { return ReduceOptions{std::max(1u, globals_.threads)}; }

  const SieveTables& sieve(std::uint64_t bound) {
    bound_ = bound;
    tables_.emplace(load_or_build_sieve(bound, cache_dir(), globals_.memory_mb << 20));
    return *tables_;
  }

  std::optional<std::uint64_t> bound() const { return bound_; }

  std::optional<std::filesystem::path> cache_dir() const {
    if (!globals_.cache_dir.empty()) return std::filesystem::path(globals_.cache_dir);
    if (const char* env = std::getenv(kCacheDirEnv); env && *env) return std::filesystem::path(env);
    return std::nullopt;
  }

  std::uint64_t memory_budget() const { return globals_.memory_mb << 20; }

 private:
  const Globals& globals_;
  std::optional<SieveTables> tables_;
  std::optional<std::uint64_t> bound_;
};

Outcome mean_outcome(const std::vector<MeanValueReport>& reports, Context& ctx) {
  Outcome o;
  std::ostringstream csv;
  write_mean_csv_header(csv);
  json arr = json::array();
  for (const auto& r : reports) {
    write_mean_csv(csv, r);
    arr.push_back(json::parse(to_json(r)));
  }
  o.csv = csv.str();
  o.report = reports.size() == 1 ? arr.front() : arr;
  o.sieve_bound = ctx.bound();
  return o;
}

std::vector<MeanValueReport> with_companion(MeanValueReport primary, const MeanValueReport& other) {
  return {std::move(primary), other};
}

// --- subcommand bodies ------------------------------------------------------

struct SieveArgs {
  std::uint64_t n = 0;
  std::string cache;
};

Outcome do_sieve(const SieveArgs& a, Context& ctx, json& extra) {
  if (a.n == 0) throw InvalidArgument("--n must be >= 1");
  std::optional<SieveTables> tables;
  std::string source = "built";
  if (!a.cache.empty()) {
    const std::filesystem::path path(a.cache);
    if (std::filesystem::exists(path)) {
      tables.emplace(load_sieve(path));
      if (tables->bound() != a.n) {
        throw InvalidArgument("cache " + a.cache + " holds bound " +
                              std::to_string(tables->bound()) + ", not " + std::to_string(a.n));
      }
      source = "loaded";
    } else {
      tables.emplace(build_sieve(a.n, ctx.memory_budget()));
      save_sieve(*tables, path);
    }
  } else {
    tables.emplace(build_sieve(a.n, ctx.memory_budget()));
  }
  Outcome o;
  const std::string checksum = hex64(tables->checksum());
  o.csv = "bound,checksum\n" + std::to_string(tables->bound()) + "," + checksum + "\n";
  o.report = {{"bound", tables->bound()}, {"checksum", checksum}};
  o.sieve_bound = tables->bound();
  extra["sieve_source"] = source;
  return o;
}

struct CsumArgs {
  std::int64_t q = 1;
  std::int64_t n = 0;
  std::optional<double> x;
};

Outcome do_csum(const CsumArgs& a, Context& ctx) {
  Outcome o;
  std::ostringstream csv;
  if (a.x) {
    if (a.q < 0) throw InvalidArgument("--q must be >= 0");
    const double v = cq_real(static_cast<std::uint64_t>(a.q), *a.x);
    csv << "q,x,value\n" << a.q << ',' << format_real(*a.x) << ',' << format_real(v) << '\n';
    o.report = {{"q", a.q}, {"x", *a.x}, {"value", v}};
  } else {
    if (a.q < 0) throw InvalidArgument("--q must be >= 0");
    const auto& t = ctx.sieve(static_cast<std::uint64_t>(std::max<std::int64_t>(a.q, 1)));
    const auto v = cq_int(t, a.q, a.n);
    csv << "q,n,value\n" << a.q << ',' << a.n << ',' << v << '\n';
    o.report = {{"q", a.q}, {"n", a.n}, {"value", v}};
    o.sieve_bound = ctx.bound();
  }
  o.csv = csv.str();
  return o;
}

struct AutocorrArgs {
  std::uint64_t gap = 2;
  std::uint64_t n = 0;
  std::string weights = "lambda1";
};

Outcome do_autocorr(const AutocorrArgs& a, Context& ctx) {
  if (a.gap == 0) throw InvalidArgument("--gap must be >= 1");
  const auto& t = ctx.sieve(a.n + a.gap);
  return mean_outcome({pair_autocorrelation(t, a.gap, a.n, parse_weight(a.weights), ctx.reduce())},
                      ctx);
}

struct ConjdArgs {
  std::uint64_t a = 1, b = 2, l = 1, n = 0;
  std::string weights = "lambda1";
};

Outcome do_conjd(const ConjdArgs& a, Context& ctx) {
  validate_conjecture_d(a.a, a.b, a.l);
  const auto& t = ctx.sieve(std::max(a.n, (a.b * a.n + a.l) / a.a));
  return mean_outcome(
      {conjecture_d_mean(t, a.a, a.b, a.l, a.n, parse_weight(a.weights), ctx.reduce())}, ctx);
}

struct TupleArgs {
  std::string offsets = "0,2";
  std::uint64_t n = 0;
  std::uint64_t p = kDefaultPrimeBound;
};

Outcome do_tuple(const TupleArgs& a, Context& ctx) {
  const auto spec = make_tuple_spec(parse_list<std::uint64_t>(a.offsets, "offset"));
  if (!spec.admissible) {
    throw InvalidArgument("tuple " + a.offsets + " is inadmissible: p=" +
                          std::to_string(spec.obstructing_prime) + " divides the product for every n");
  }
  const auto& t = ctx.sieve(a.n + spec.offsets.back());
  auto result = tuple_mean(t, spec, a.n, ctx.reduce(), a.p);
  auto o = mean_outcome(with_companion(result.lambda, result.lambda1), ctx);
  o.report = {{"reports", o.report}, {"constant", json::parse(to_json(result.constant))}};
  return o;
}

struct PntArgs {
  std::uint64_t n = 0;
  std::string weights = "lambda1";
  bool stream = false;
};

Outcome do_pnt(const PntArgs& a, Context& ctx) {
  if (a.stream) {
    if (a.weights != "lambda1") throw InvalidArgument("--stream supports only lambda1 weights");
    return mean_outcome({pnt_mean_streamed(a.n)}, ctx);
  }
  const auto& t = ctx.sieve(a.n);
  return mean_outcome({pnt_mean(t, a.n, parse_weight(a.weights), ctx.reduce())}, ctx);
}

struct PolyArgs {
  std::int64_t q = 1;
  std::string poly = "1,0,1";
  std::uint64_t n = 0;
};

Outcome do_polymean(const PolyArgs& a, Context& ctx) {
  if (a.q < 1) throw InvalidArgument("--q must be >= 1");
  const auto coeffs = parse_list<std::int64_t>(a.poly, "coefficient");
  const auto& t = ctx.sieve(static_cast<std::uint64_t>(a.q));
  return mean_outcome({polynomial_cq_mean(t, a.q, coeffs, a.n, ctx.reduce())}, ctx);
}

struct GoldbachArgs {
  std::uint64_t n = 1;
  std::int64_t q1 = 1, q2 = 1;
};

Outcome do_goldbach(const GoldbachArgs& a, Context& ctx) {
  if (a.q1 < 1 || a.q2 < 1) throw InvalidArgument("--q1 and --q2 must be >= 1");
  const auto& t = ctx.sieve(static_cast<std::uint64_t>(std::max(a.q1, a.q2)));
  const auto v = goldbach_correlation(t, a.n, a.q1, a.q2);
  Outcome o;
  o.csv = "N,q1,q2,value\n" + std::to_string(a.n) + "," + std::to_string(a.q1) + "," +
          std::to_string(a.q2) + "," + std::to_string(v) + "\n";
  o.report = {{"N", a.n}, {"q1", a.q1}, {"q2", a.q2}, {"value", v}};
  o.sieve_bound = ctx.bound();
  return o;
}

struct OrthArgs {
  std::int64_t r = 1, s = 1, m = 0;
  std::uint64_t n = 0;
};

Outcome do_orth(const OrthArgs& a, Context& ctx) {
  if (a.r < 1 || a.s < 1) throw InvalidArgument("--r and --s must be >= 1");
  const auto& t = ctx.sieve(static_cast<std::uint64_t>(std::max(a.r, a.s)));
  return mean_outcome({cq_orthogonality(t, a.r, a.s, a.m, a.n, ctx.reduce())}, ctx);
}

struct CqMeanArgs {
  std::int64_t q = 1;
  std::uint64_t n = 0;
};

Outcome do_cqmean(const CqMeanArgs& a, Context& ctx) {
  if (a.q < 1) throw InvalidArgument("--q must be >= 1");
  const auto& t = ctx.sieve(static_cast<std::uint64_t>(a.q));
  return mean_outcome({cq_mean(t, a.q, a.n, ctx.reduce())}, ctx);
}

struct SingularArgs {
  std::string form = "C2";
  std::string params;
  std::uint64_t p = kDefaultPrimeBound;
  std::uint64_t q0 = 0;
};

Outcome do_singular(const SingularArgs& a, Context& ctx) {
  std::vector<SingularConstant> rows;
  json raw = nullptr;
  auto single = [&](const char* what) {
    const auto v = parse_list<std::uint64_t>(a.params, what);
    if (v.size() != 1) throw InvalidArgument(std::string("--params takes one ") + what);
    return v.front();
  };
  if (a.form == "C2") {
    rows.push_back(twin_constant(a.p));
  } else if (a.form == "pair") {
    rows.push_back(pair_constant(single("gap"), a.p));
  } else if (a.form == "conjd") {
    const auto v = parse_list<std::uint64_t>(a.params, "a,b,l");
    if (v.size() != 3) throw InvalidArgument("--params for conjd is a,b,l");
    rows.push_back(conjecture_d_constant(v[0], v[1], v[2], a.p));
  } else if (a.form == "tuple") {
    rows.push_back(tuple_constant(make_tuple_spec(parse_list<std::uint64_t>(a.params, "offset")), a.p));
  } else if (a.form == "series" || a.form == "series_wk") {
    const auto h = single("h");
    // Both rearrangements plus the pair constant they are compared with.
    if (a.form == "series") {
      rows.push_back(series_constant(h, a.p));
      rows.push_back(series_wk(h, a.p));
    } else {
      rows.push_back(series_wk(h, a.p));
      rows.push_back(series_constant(h, a.p));
    }
    if (h % 2 == 0) rows.push_back(pair_constant(h, a.p));
    if (a.q0 > 0) {
      const auto& t = ctx.sieve(a.q0);
      auto trace_json = [&](bool squared) {
        json arr = json::array();
        for (const auto& [q, v] : raw_series_trace(t, h, a.q0, squared)) arr.push_back({q, v});
        return arr;
      };
      raw = {{"series", trace_json(false)}, {"series_wk", trace_json(true)}};
    }
  } else {
    throw InvalidArgument("--form must be one of C2, pair, conjd, tuple, series, series_wk");
  }
  Outcome o;
  std::ostringstream csv;
  write_constant_csv_header(csv);
  json arr = json::array();
  for (const auto& c : rows) {
    write_constant_csv(csv, c);
    arr.push_back(json::parse(to_json(c)));
  }
  o.csv = csv.str();
  o.report = {{"constants", arr}};
  if (!raw.is_null()) o.report["raw_partial_sums"] = raw;
  o.sieve_bound = ctx.bound();
  return o;
}

struct AbelArgs {
  double x = 1.0;
  std::string zs = "0.9,0.99,0.999";
  double eps = kDefaultAbelEpsilon;
};

Outcome do_abel(const AbelArgs& a, Context& ctx) {
  const auto zs = parse_list<double>(a.zs, "z");
  std::uint64_t q_max = 1;
  for (const double z : zs) q_max = std::max(q_max, required_Q(z, a.eps));
  AbelTrace trace;
  const bool integral = std::isfinite(a.x) && a.x >= 1.0 && std::floor(a.x) == a.x;
  if (integral) {
    const auto n = static_cast<std::int64_t>(a.x);
    const auto& t = ctx.sieve(std::max<std::uint64_t>(q_max, static_cast<std::uint64_t>(n)));
    trace = abel_ladder(t, n, zs, a.eps);
  } else {
    const auto& t = ctx.sieve(q_max);
    trace = abel_ladder_real(t, a.x, zs, a.eps);
  }
  Outcome o;
  std::ostringstream csv;
  write_abel_csv(csv, trace);
  o.csv = csv.str();
  o.report = json::parse(to_json(trace));
  o.sieve_bound = ctx.bound();
  return o;
}

struct RfArgs {
  std::string fn = "sigma";
  std::int64_t arg = 1;
  std::uint64_t q = 1000;
};

Outcome do_rf(const RfArgs& a, Context& ctx) {
  RfExpansion e;
  const auto arg = static_cast<std::uint64_t>(std::max<std::int64_t>(a.arg, 1));
  if (a.fn == "sigma") {
    e = sigma_rf(ctx.sieve(std::max(a.q, arg)), a.arg, a.q);
  } else if (a.fn == "divisor") {
    e = divisor_rf(ctx.sieve(std::max(a.q, arg)), a.arg, a.q);
  } else if (a.fn == "circle") {
    e = circle_lattice_rf(ctx.sieve(2 * a.q), a.arg, a.q);
  } else {
    throw InvalidArgument("--fn must be sigma, divisor or circle");
  }
  Outcome o;
  std::ostringstream csv;
  write_rf_csv_header(csv);
  write_rf_csv(csv, e);
  o.csv = csv.str();
  o.report = json::parse(to_json(e));
  o.sieve_bound = ctx.bound();
  return o;
}

struct PropsArgs {
  std::int64_t qmax = 50;
  std::int64_t nmax = 200;
};

Outcome do_props(const PropsArgs& a, Context& ctx) {
  if (a.qmax < 1 || a.nmax < 1) throw InvalidArgument("--qmax and --nmax must be >= 1");
  const auto& t = ctx.sieve(static_cast<std::uint64_t>(std::max(a.qmax * a.qmax, a.nmax)));
  const auto report = check_property_catalog(t, a.qmax, a.nmax);
  Outcome o;
  std::ostringstream csv;
  write_property_csv(csv, report);
  o.csv = csv.str();
  o.report = json::parse(to_json(report));
  o.sieve_bound = ctx.bound();
  o.exit_code = report.all_passed() ? kOk : kCheckFailed;
  return o;
}

json collect_options(const CLI::App& app) {
  json params = json::object();
  for (const CLI::Option* opt : app.get_options()) {
    const std::string name = opt->get_single_name();
    if (name.empty() || name == "help") continue;
    if (opt->count() > 0) {
      const auto& results = opt->results();
      params[name] = results.size() == 1 ? json(results.front()) : json(results);
    } else if (!opt->get_default_str().empty()) {
      params[name] = opt->get_default_str();
    }
  }
  return params;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ramanujan sums, Ramanujan-Fourier expansions and Hardy-Littlewood mean values",
               "rfsum"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--threads", g.threads, "Worker threads for the reductions")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--csv", g.csv_path, "Write CSV here instead of stdout");
  app.add_option("--json", g.json_path, "Write the JSON report and run manifest here");
  app.add_option("--cache-dir", g.cache_dir,
                 std::string("Sieve cache directory (default: $") + kCacheDirEnv + ")");
  app.add_option("--memory-mb", g.memory_mb, "Memory budget for sieve tables in MiB")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  Context ctx(g);
  json extra = json::object();
  std::function<Outcome()> action;

  SieveArgs sieve_args;
  auto* sieve = app.add_subcommand("sieve", "Build (or load) sieve tables and print a checksum");
  sieve->add_option("--n", sieve_args.n, "Table bound N")->required();
  sieve->add_option("--cache", sieve_args.cache, "Binary table file to reuse or create");
  sieve->callback([&] { action = [&] { return do_sieve(sieve_args, ctx, extra); }; });

  CsumArgs csum_args;
  auto* csum = app.add_subcommand("csum", "Print the Ramanujan sum c_q(n) (or c_q(x) with --x)");
  csum->add_option("--q", csum_args.q)->required();
  auto* csum_n = csum->add_option("--n", csum_args.n);
  csum->add_option("--x", csum_args.x, "Real argument")->excludes(csum_n);
  csum->callback([&] { action = [&] { return do_csum(csum_args, ctx); }; });

  AutocorrArgs ac_args;
  auto* autocorr = app.add_subcommand("autocorr", "Mean of w(n) w(n+h) against the pair constant");
  autocorr->add_option("--gap", ac_args.gap)->required();
  autocorr->add_option("--n", ac_args.n)->required()->check(CLI::PositiveNumber);
  autocorr->add_option("--weights", ac_args.weights)
      ->check(CLI::IsMember({"lambda", "lambda1"}))
      ->capture_default_str();
  autocorr->callback([&] { action = [&] { return do_autocorr(ac_args, ctx); }; });

  ConjdArgs cd_args;
  auto* conjd = app.add_subcommand("conjd", "Mean of w(n) w((bn+l)/a) over a | bn+l");
  conjd->add_option("--a", cd_args.a)->required();
  conjd->add_option("--b", cd_args.b)->required();
  conjd->add_option("--l", cd_args.l)->required();
  conjd->add_option("--n", cd_args.n)->required()->check(CLI::PositiveNumber);
  conjd->add_option("--weights", cd_args.weights)
      ->check(CLI::IsMember({"lambda", "lambda1"}))
      ->capture_default_str();
  conjd->callback([&] { action = [&] { return do_conjd(cd_args, ctx); }; });

  TupleArgs tu_args;
  auto* tuple = app.add_subcommand("tuple", "Mean of prod w(n + o_i) against the tuple constant");
  tuple->add_option("--offsets", tu_args.offsets, "Comma list starting at 0")->required();
  tuple->add_option("--n", tu_args.n)->required()->check(CLI::PositiveNumber);
  tuple->add_option("--p", tu_args.p, "Euler product prime bound")->capture_default_str();
  tuple->callback([&] { action = [&] { return do_tuple(tu_args, ctx); }; });

  PntArgs pnt_args;
  auto* pnt = app.add_subcommand("pnt", "Mean of w(n) against 1");
  pnt->add_option("--n", pnt_args.n)->required()->check(CLI::PositiveNumber);
  pnt->add_option("--weights", pnt_args.weights)
      ->check(CLI::IsMember({"lambda", "lambda1"}))
      ->capture_default_str();
  pnt->add_flag("--stream", pnt_args.stream, "Use the segmented stream instead of full tables");
  pnt->callback([&] { action = [&] { return do_pnt(pnt_args, ctx); }; });

  PolyArgs poly_args;
  auto* polymean = app.add_subcommand("polymean", "Mean of c_q(f(n)) and its exact period limit");
  polymean->add_option("--q", poly_args.q)->required();
  polymean->add_option("--poly", poly_args.poly, "Coefficients, highest degree first")->required();
  polymean->add_option("--n", poly_args.n)->required()->check(CLI::PositiveNumber);
  polymean->callback([&] { action = [&] { return do_polymean(poly_args, ctx); }; });

  GoldbachArgs gb_args;
  auto* goldbach = app.add_subcommand("goldbach", "Exact sum_{n<=2N} c_q1(n) c_q2(2N-n)");
  goldbach->add_option("--n", gb_args.n)->required()->check(CLI::PositiveNumber);
  goldbach->add_option("--q1", gb_args.q1)->required();
  goldbach->add_option("--q2", gb_args.q2)->required();
  goldbach->callback([&] { action = [&] { return do_goldbach(gb_args, ctx); }; });

  OrthArgs orth_args;
  auto* orth = app.add_subcommand("orth", "Mean of c_r(n) c_s(n+m) and its exact period limit");
  orth->add_option("--r", orth_args.r)->required();
  orth->add_option("--s", orth_args.s)->required();
  orth->add_option("--m", orth_args.m)->capture_default_str();
  orth->add_option("--n", orth_args.n)->required()->check(CLI::PositiveNumber);
  orth->callback([&] { action = [&] { return do_orth(orth_args, ctx); }; });

  CqMeanArgs cqm_args;
  auto* cqmean = app.add_subcommand("cqmean", "Mean of c_q(n) and its exact period limit");
  cqmean->add_option("--q", cqm_args.q)->required();
  cqmean->add_option("--n", cqm_args.n)->required()->check(CLI::PositiveNumber);
  cqmean->callback([&] { action = [&] { return do_cqmean(cqm_args, ctx); }; });

  SingularArgs sg_args;
  auto* singular = app.add_subcommand("singular", "Hardy-Littlewood constants as Euler products");
  singular->add_option("--form", sg_args.form)
      ->check(CLI::IsMember({"C2", "pair", "conjd", "tuple", "series", "series_wk"}))
      ->capture_default_str();
  singular->add_option("--params", sg_args.params, "h | a,b,l | offsets, depending on --form");
  singular->add_option("--p", sg_args.p, "Prime bound P")->capture_default_str();
  singular->add_option("--q0", sg_args.q0, "Also trace raw partial sums up to q0 (series forms)");
  singular->callback([&] { action = [&] { return do_singular(sg_args, ctx); }; });

  AbelArgs abel_args;
  auto* abel = app.add_subcommand("abel", "Abel ladder of the Lambda_1 power series");
  abel->add_option("--x", abel_args.x, "Evaluation point")->required();
  abel->add_option("--zs", abel_args.zs, "Strictly increasing z values in (0,1)")
      ->capture_default_str();
  abel->add_option("--eps", abel_args.eps, "Tail bound target")->capture_default_str();
  abel->callback([&] { action = [&] { return do_abel(abel_args, ctx); }; });

  RfArgs rf_args;
  auto* rf = app.add_subcommand("rf", "Truncated sigma, divisor or circle R-F expansion trace");
  rf->add_option("--fn", rf_args.fn)
      ->check(CLI::IsMember({"sigma", "divisor", "circle"}))
      ->capture_default_str();
  rf->add_option("--arg", rf_args.arg, "n (or a for circle)")->required();
  rf->add_option("--q", rf_args.q, "Number of terms")->capture_default_str();
  rf->callback([&] { action = [&] { return do_rf(rf_args, ctx); }; });

  PropsArgs props_args;
  auto* props = app.add_subcommand("props", "Check the Ramanujan-sum property list");
  props->add_option("--qmax", props_args.qmax)->capture_default_str();
  props->add_option("--nmax", props_args.nmax)->capture_default_str();
  props->callback([&] { action = [&] { return do_props(props_args, ctx); }; });

  std::vector<std::string> argv_rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(argv_rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  Outcome outcome;
  try {
    outcome = action();
  } catch (const InvalidArgument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kCheckFailed;
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (g.csv_path.empty()) {
    out << outcome.csv;
  } else {
    std::ofstream f(g.csv_path, std::ios::binary | std::ios::trunc);
    if (!(f << outcome.csv)) {
      err << "error: " << g.csv_path << ": cannot write CSV\n";
      return kCheckFailed;
    }
  }

  if (!g.json_path.empty()) {
    const CLI::App* sub = app.get_subcommands().front();
    json params = collect_options(*sub);
    params.update(collect_options(app));
    json manifest = {{"command", json(std::vector<std::string>(args.begin(), args.end()))},
                     {"subcommand", sub->get_name()},
                     {"version", std::string(library_version())},
                     {"sieve_bound", outcome.sieve_bound ? json(*outcome.sieve_bound) : json()},
                     {"parameters", params},
                     {"duration_seconds", seconds},
                     {"output_checksum", hex64(fnv1a64(outcome.csv))},
                     {"exit_code", outcome.exit_code}};
    manifest.update(extra);
    const json doc = {{"manifest", manifest}, {"report", outcome.report}};
    std::ofstream f(g.json_path, std::ios::binary | std::ios::trunc);
    if (!(f << doc.dump(2) << '\n')) {
      err << "error: " << g.json_path << ": cannot write JSON\n";
      return kCheckFailed;
    }
  }
  return outcome.exit_code;
}

}  // namespace rfsum::cli
