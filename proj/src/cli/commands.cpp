// Copyright 2026 The brickwork Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "brickwork/analytic.hpp"
#include "brickwork/cli.hpp"
#include "brickwork/continuum.hpp"
#include "brickwork/dynamics.hpp"
#include "brickwork/errors.hpp"
#include "brickwork/parallel.hpp"
#include "brickwork/superop.hpp"

namespace brickwork::cli
{

namespace
{

// Raw option text; typed values are parsed after the merge with the config file.
struct Options
{
  std::string gamma = "pi/4";
  std::string x = "0.3293";
  std::string lambda;
  std::string epsilon = "0.4";
  std::string theta = "0";
  std::string output;
  std::string format = "csv";
  std::string config;
  std::string seed = "1";
  std::string tol_overrides;

  // ep-scan
  std::string gamma_grid = "pi/9,pi/4,pi/2";
  std::string x_grid = "0.3013,0.3293,0.3466";
  // bifurcate
  std::string sweep = "epsilon";
  std::string range;
  // evolve
  std::string delta = "0.01";
  std::string n_max = "200";
  std::string observable = "e3";
  // trotter
  std::string rate = "0.5";
  std::string time = "1";
  std::string n_list = "100,200,400";
};

struct Context
{
  std::string command;
  const Options *opt = nullptr;
  Tolerances tol;
  std::vector<std::pair<std::string, std::string>> resolved;
  bool x_given = false;
  bool lambda_given = false;
};

std::uint64_t parse_seed(const std::string &s)
{
  std::uint64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
  {
    throw InvalidArgument("seed must be a nonnegative integer, got '" + s + "'");
  }
  return v;
}

double log_lambda(const Context &c)
{
  if (c.lambda_given)
  {
    const double lam = parse_real(c.opt->lambda);
    if (!(lam > 0.0))
    {
      throw InvalidArgument("lambda must be positive on the easy plane");
    }
    return std::log(lam);
  }
  return parse_real(c.opt->x);
}

ParameterPoint point_of(const Context &c)
{
  return ParameterPoint::easy_plane(log_lambda(c), parse_real(c.opt->gamma),
                                    parse_real(c.opt->epsilon), parse_real(c.opt->theta));
}

Table base_table(const Context &c, std::string_view regime)
{
  Table t;
  t.metadata = {
      {"tool", std::string(kToolName)},
      {"version", std::string(kToolVersion)},
      {"command", c.command},
      {"seed", c.opt->seed},
      {"regime", std::string(regime)},
  };
  for (const auto &[k, v] : c.resolved)
  {
    t.metadata.emplace_back("config." + k, v);
  }
  return t;
}

std::string fmt(cplx z)
{
  return format_double(z.real()) + (z.imag() < 0 ? "" : "+") + format_double(z.imag()) + "i";
}

// Assigns 1-based labels to the eigenvalues of one sector: the matched analytic index when
// available, otherwise descending modulus with ties broken by argument.
std::vector<std::pair<int, cplx>> label_sector(const ComplexVector &numeric,
                                               const std::optional<ComplexVector> &analytic,
                                               int first_index)
{
  std::vector<std::pair<int, cplx>> out;
  if (analytic)
  {
    const SpectralMatch m = match_spectra(numeric, *analytic);
    for (Index i = 0; i < numeric.size(); ++i)
    {
      out.emplace_back(first_index + static_cast<int>(m.to_analytic[i]), numeric(i));
    }
  }
  else
  {
    std::vector<cplx> v(numeric.data(), numeric.data() + numeric.size());
    std::sort(v.begin(), v.end(),
              [](cplx a, cplx b)
              {
                if (std::abs(a) != std::abs(b))
                {
                  return std::abs(a) > std::abs(b);
                }
                if (std::arg(a) != std::arg(b))
                {
                  return std::arg(a) < std::arg(b);
                }
                return a.real() < b.real();
              });
    for (std::size_t i = 0; i < v.size(); ++i)
    {
      out.emplace_back(first_index + static_cast<int>(i), v[i]);
    }
  }
  std::sort(out.begin(), out.end(), [](const auto &a, const auto &b) { return a.first < b.first; });
  return out;
}

Table cmd_spectrum(const Context &c)
{
  const ParameterPoint p = point_of(c);
  const Superoperator s = build_superoperator(p, c.tol);
  const EigenSystem full = eig_general(s.T, c.tol);
  Table t = base_table(c, to_string(p.regime()));
  t.columns = {"index", "re_mu", "im_mu", "abs_mu", "source"};

  std::optional<AnalyticSpectrum> spec;
  if (p.theta() == 0.0)
  {
    spec = analytic_spectrum(p, c.tol);
    for (int j = 1; j <= 16; ++j)
    {
      const cplx m = spec->at(j);
      t.rows.push_back({static_cast<long long>(j), m.real(), m.imag(), std::abs(m),
                        std::string("analytic")});
    }
  }
  std::vector<std::pair<int, cplx>> numeric;
  for (const Sector sec : {Sector::Plus, Sector::Minus})
  {
    std::optional<ComplexVector> an;
    if (spec)
    {
      an = spec->sector_values(sec);
    }
    for (const auto &row :
         label_sector(eigenvalues(s.tau(sec)), an, sec == Sector::Plus ? 1 : 9))
    {
      numeric.push_back(row);
    }
  }
  for (const auto &[j, m] : numeric)
  {
    t.rows.push_back({static_cast<long long>(j), m.real(), m.imag(), std::abs(m),
                      std::string("numeric")});
  }

  t.metadata.emplace_back("near_defective", full.near_defective ? "true" : "false");
  t.metadata.emplace_back("min_biorthogonal_overlap", format_double(full.min_overlap));
  t.metadata.emplace_back("numeric_pair_9_10_distance",
                          format_double(std::abs(numeric[8].second - numeric[9].second)));
  if (spec)
  {
    const double dist = match_spectra(full.eigenvalues, spec->values()).max_distance;
    t.metadata.emplace_back("max_analytic_numeric_distance", format_double(dist));
    t.metadata.emplace_back("Q", fmt(spec->Q));
    if (spec->A)
    {
      t.metadata.emplace_back("discriminant_A", format_double(*spec->A));
    }
  }
  else
  {
    t.metadata.emplace_back("max_analytic_numeric_distance", "unavailable for theta != 0");
  }
  return t;
}

Table cmd_ep_scan(const Context &c)
{
  const std::vector<double> gammas = parse_grid(c.opt->gamma_grid);
  const std::vector<double> xs = parse_grid(c.opt->x_grid);
  const std::vector<EPRecord> recs = ep_scan(gammas, xs, c.tol);
  Table t = base_table(c, to_string(Regime::EasyPlane));
  t.columns = {"gamma", "x", "epsilon_ep", "re_mu0", "im_mu0", "certified"};
  std::size_t certified = 0;
  for (const auto &r : recs)
  {
    t.rows.push_back({r.point.gamma(), r.point.x(), r.point.epsilon(), r.mu0.real(),
                      r.mu0.imag(), r.certified});
    certified += r.certified ? 1 : 0;
  }
  t.metadata.emplace_back("grid_points", std::to_string(gammas.size() * xs.size()));
  t.metadata.emplace_back("records", std::to_string(recs.size()));
  t.metadata.emplace_back("certified", std::to_string(certified));
  return t;
}

Table cmd_bifurcate(const Context &c)
{
  const std::string &sweep = c.opt->sweep;
  if (sweep != "epsilon" && sweep != "x")
  {
    throw InvalidArgument("--sweep must be 'epsilon' or 'x'");
  }
  const std::string range =
      !c.opt->range.empty() ? c.opt->range : (sweep == "epsilon" ? "0.01:1:100" : "-1:1:101");
  const std::vector<double> values = parse_grid(range);
  const double gamma = parse_real(c.opt->gamma);
  const double theta = parse_real(c.opt->theta);
  const double x0 = log_lambda(c);
  const double eps0 = parse_real(c.opt->epsilon);
  if (sweep == "epsilon")
  {
    for (const double v : values)
    {
      require_epsilon(v);
    }
  }
  else
  {
    require_epsilon(eps0);
  }

  using Rows = std::vector<std::vector<Cell>>;
  std::vector<std::optional<Rows>> slots(values.size());
  std::vector<std::string> notices(values.size());
  parallel_for(values.size(),
               [&](std::size_t k)
               {
                 const double v = values[k];
                 const ParameterPoint p = sweep == "epsilon"
                                              ? ParameterPoint::easy_plane(x0, gamma, v, theta)
                                              : ParameterPoint::easy_plane(v, gamma, eps0, theta);
                 try
                 {
                   const Superoperator s = build_superoperator(p, c.tol);
                   std::optional<AnalyticSpectrum> spec;
                   if (theta == 0.0)
                   {
                     spec = analytic_spectrum(p, c.tol);
                   }
                   Rows rows;
                   for (const Sector sec : {Sector::Plus, Sector::Minus})
                   {
                     std::optional<ComplexVector> an;
                     if (spec)
                     {
                       an = spec->sector_values(sec);
                     }
                     for (const auto &[j, m] :
                          label_sector(eigenvalues(s.tau(sec)), an, sec == Sector::Plus ? 1 : 9))
                     {
                       rows.push_back({v, static_cast<long long>(j), std::string(to_string(sec)),
                                       m.real(), m.imag()});
                     }
                   }
                   slots[k] = std::move(rows);
                 }
                 catch (const SingularGate &e)
                 {
                   notices[k] = format_double(v) + " (" + e.what() + ")";
                 }
               });

  Table t = base_table(c, to_string(Regime::EasyPlane));
  t.metadata.emplace_back("sweep_range", range);
  t.columns = {"sweep_value", "index", "sector", "re_mu", "im_mu"};
  std::string skipped;
  for (std::size_t k = 0; k < values.size(); ++k)
  {
    if (slots[k])
    {
      for (auto &row : *slots[k])
      {
        t.rows.push_back(std::move(row));
      }
    }
    else
    {
      skipped += (skipped.empty() ? "" : "; ") + notices[k];
    }
  }
  t.metadata.emplace_back("skipped", skipped.empty() ? "none" : skipped);
  return t;
}

Table cmd_evolve(const Context &c)
{
  const ParameterPoint p = point_of(c);
  const double delta = parse_real(c.opt->delta);
  const std::size_t n_max = parse_count_list(c.opt->n_max).at(0);
  const Observable g = observable_by_name(c.opt->observable);
  const ProbeResult probe = sensitivity_probe(p, delta, g, sensing_initial_state(), n_max, c.tol);

  Table t = base_table(c, to_string(p.regime()));
  t.columns = {"series", "epsilon", "n", "re_value", "im_value", "rescaled"};
  const std::array<std::pair<const char *, const TrajectoryRecord *>, 3> series = {
      {{"center", &probe.center}, {"plus", &probe.plus}, {"minus", &probe.minus}}};
  const std::array<double, 3> eps = {p.epsilon(), p.epsilon() + delta, p.epsilon() - delta};
  for (std::size_t k = 0; k < series.size(); ++k)
  {
    const auto &[name, rec] = series[k];
    const RegimeClassification &cls = *rec->classification;
    const std::string prefix = std::string("series.") + name + ".";
    t.metadata.emplace_back(prefix + "epsilon", format_double(eps[k]));
    t.metadata.emplace_back(prefix + "ep_regime", std::string(to_string(cls.regime)));
    t.metadata.emplace_back(prefix + "classification", cls.message);
    t.metadata.emplace_back(prefix + "tail_drift", format_double(cls.drift));
    t.metadata.emplace_back(prefix + "tail_slope", format_double(cls.slope));
    t.metadata.emplace_back(prefix + "tail_r_squared", format_double(cls.r_squared));
    t.metadata.emplace_back(prefix + "mu_rescale", fmt(rec->mu_rescale));
    t.metadata.emplace_back(prefix + "expansion_checked", rec->expansion_checked ? "true" : "false");
    for (std::size_t n = 0; n <= rec->n_max; ++n)
    {
      t.rows.push_back({std::string(name), eps[k], static_cast<long long>(n),
                        rec->values[n].real(), rec->values[n].imag(), rec->rescaled[n]});
    }
  }
  return t;
}

Table cmd_trotter(const Context &c)
{
  const double gamma = parse_real(c.opt->gamma);
  const double rate = parse_real(c.opt->rate);
  const double time = parse_real(c.opt->time);
  const std::vector<std::size_t> ns = parse_count_list(c.opt->n_list);
  const TrotterReport rep = composite_trotter_check(gamma, rate, time, ns, parse_seed(c.opt->seed));
  Table t = base_table(c, to_string(Regime::EasyPlane));
  t.columns = {"n", "unitary_residual", "composite_error", "ratio"};
  for (const auto &r : rep.rows)
  {
    t.rows.push_back({static_cast<long long>(r.n), r.unitary_error, r.composite_error, r.ratio});
  }
  t.metadata.emplace_back("first_order_convergence", rep.first_order ? "true" : "false");
  return t;
}

struct Command
{
  const char *name;
  const char *help;
  std::function<Table(const Context &)> body;
  std::vector<std::string> extra;  // long names of command-specific options
};

const std::vector<Command> &commands()
{
  static const std::vector<Command> all = {
      {"spectrum", "All 16 eigenvalues, closed form and numeric", cmd_spectrum, {}},
      {"ep-scan", "Exceptional-point manifold sampled on a (gamma, x) grid", cmd_ep_scan,
       {"gamma-grid", "x-grid"}},
      {"bifurcate", "Sector eigenvalues along an epsilon or x sweep", cmd_bifurcate,
       {"sweep", "range"}},
      {"evolve", "Observable series at eps0 and eps0 +- delta", cmd_evolve,
       {"delta", "n-max", "observable"}},
      {"trotter", "Composite Trotter convergence against the Lindblad semigroup", cmd_trotter,
       {"rate", "time", "n-list"}},
  };
  return all;
}

void add_options(CLI::App &sub, Options &o, const Command &cmd)
{
  sub.add_option("--gamma", o.gamma, "Anisotropy angle, q = exp(i gamma)")->capture_default_str();
  auto *x = sub.add_option("--x", o.x, "log(lambda)")->capture_default_str();
  auto *lam = sub.add_option("--lambda", o.lambda, "Spectral parameter lambda > 0");
  x->excludes(lam);
  sub.add_option("--epsilon", o.epsilon, "Relaxation strength in (0, 1]")->capture_default_str();
  sub.add_option("--theta", o.theta, "Local rotation angle")->capture_default_str();
  sub.add_option("--output", o.output, "Output file (default: $" + std::string(kOutputDirEnv) +
                                           "/<command>.<format> or stdout)");
  sub.add_option("--format", o.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  sub.add_option("--config", o.config, "Flat key = value file; flags override it");
  sub.add_option("--seed", o.seed, "Seed for randomized sampling")->capture_default_str();
  sub.add_option("--tol-overrides", o.tol_overrides, "name=value[,name=value...]");
  for (const auto &name : cmd.extra)
  {
    std::string *target = nullptr;
    if (name == "gamma-grid") target = &o.gamma_grid;
    if (name == "x-grid") target = &o.x_grid;
    if (name == "sweep") target = &o.sweep;
    if (name == "range") target = &o.range;
    if (name == "delta") target = &o.delta;
    if (name == "n-max") target = &o.n_max;
    if (name == "observable") target = &o.observable;
    if (name == "rate") target = &o.rate;
    if (name == "time") target = &o.time;
    if (name == "n-list") target = &o.n_list;
    sub.add_option("--" + name, *target)->capture_default_str();
  }
}

bool has_flag(const std::vector<std::string> &args, const std::string &name)
{
  const std::string flag = "--" + name;
  return std::any_of(args.begin(), args.end(),
                     [&](const std::string &a) { return a == flag || a.starts_with(flag + "="); });
}

std::optional<std::string> flag_value(const std::vector<std::string> &args, const std::string &name)
{
  const std::string flag = "--" + name;
  for (std::size_t i = 0; i < args.size(); ++i)
  {
    if (args[i] == flag && i + 1 < args.size())
    {
      return args[i + 1];
    }
    if (args[i].starts_with(flag + "="))
    {
      return args[i].substr(flag.size() + 1);
    }
  }
  return std::nullopt;
}

void write_output(const Context &c, const Table &t, std::ostream &out)
{
  const bool json = c.opt->format == "json";
  const std::string text = json ? render_json(t) : render_csv(t);
  std::filesystem::path path = c.opt->output;
  if (path.empty())
  {
    if (const char *dir = std::getenv(kOutputDirEnv); dir && *dir)
    {
      std::filesystem::create_directories(dir);
      path = std::filesystem::path(dir) / (c.command + (json ? ".json" : ".csv"));
    }
  }
  if (path.empty())
  {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f || !(f << text))
  {
    throw InvalidArgument("cannot write output file '" + path.string() + "'");
  }
}

}  // namespace

int run(const std::vector<std::string> &raw, std::ostream &out, std::ostream &err)
{
  CLI::App app{"Exceptional points of a two-qubit brickwork circuit", std::string(kToolName)};
  app.require_subcommand(1);
  Options opt;
  std::map<std::string, CLI::App *> subs;
  for (const auto &cmd : commands())
  {
    CLI::App *sub = app.add_subcommand(cmd.name, cmd.help);
    add_options(*sub, opt, cmd);
    subs[cmd.name] = sub;
  }

  std::vector<std::string> args(raw.begin() + (raw.empty() ? 0 : 1), raw.end());
  Context ctx;
  ctx.opt = &opt;
  try
  {
    // Merge the config file: keys absent from the command line are appended as flags.
    if (!args.empty() && subs.count(args[0]))
    {
      if (const auto path = flag_value(args, "config"))
      {
        const bool has_point = has_flag(args, "x") || has_flag(args, "lambda");
        for (const auto &[key, value] : read_config_file(*path))
        {
          if (key == "config")
          {
            continue;
          }
          if (!subs[args[0]]->get_option_no_throw("--" + key))
          {
            throw InvalidArgument("config key '" + key + "' is not an option of " + args[0]);
          }
          if (has_flag(args, key) || ((key == "x" || key == "lambda") && has_point))
          {
            continue;
          }
          args.push_back("--" + key);
          args.push_back(value);
        }
      }
    }
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  }
  catch (const CLI::CallForHelp &e)
  {
    app.exit(e, out, err);
    return kOk;
  }
  catch (const CLI::ParseError &e)
  {
    app.exit(e, out, err);
    return kConfigError;
  }
  catch (const Error &e)
  {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  }

  const Command *cmd = nullptr;
  for (const auto &c : commands())
  {
    if (subs[c.name]->parsed())
    {
      cmd = &c;
    }
  }
  ctx.command = cmd->name;
  CLI::App *sub = subs[cmd->name];
  ctx.x_given = sub->get_option("--x")->count() > 0;
  ctx.lambda_given = sub->get_option("--lambda")->count() > 0;
  for (const CLI::Option *o : sub->get_options())
  {
    if (o->get_lnames().empty())
    {
      continue;
    }
    const std::string key = o->get_lnames().front();
    if (key == "help" || key == "config")
    {
      continue;
    }
    // Only one of x and lambda is in effect.
    if ((key == "x" && ctx.lambda_given) || (key == "lambda" && !ctx.lambda_given))
    {
      continue;
    }
    std::string value;
    if (o->count() > 0)
    {
      for (const auto &r : o->results())
      {
        value += (value.empty() ? "" : " ") + r;
      }
    }
    else
    {
      value = o->get_default_str();
    }
    ctx.resolved.emplace_back(key, value);
  }
  std::sort(ctx.resolved.begin(), ctx.resolved.end());

  try
  {
    ctx.tol.apply_overrides(opt.tol_overrides);
    parse_seed(opt.seed);
    const Table t = cmd->body(ctx);
    write_output(ctx, t, out);
    return kOk;
  }
  catch (const SingularGate &e)
  {
    err << "singular parameters: " << e.what() << '\n';
    return kSingularParameters;
  }
  catch (const InvalidArgument &e)
  {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  }
  catch (const UnsupportedAnalytic &e)
  {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  }
  catch (const std::exception &e)
  {
    err << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  }
}

int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
  std::vector<std::string> args(argv, argv + argc);
  return run(args, out, err);
}

}  // namespace brickwork::cli
