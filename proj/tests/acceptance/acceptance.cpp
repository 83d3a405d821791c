// Copyright 2026 The brickwork Authors
// SPDX-License-Identifier: Apache-2.0
//
// One line per acceptance criterion at its stated tolerance. Exit status is nonzero
// when any criterion fails.
#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "brickwork/analytic.hpp"
#include "brickwork/cli.hpp"
#include "brickwork/continuum.hpp"
#include "brickwork/dynamics.hpp"
#include "brickwork/superop.hpp"
#include "closed_form_blocks.hpp"
#include "test_support.hpp"

namespace
{

using namespace brickwork;
using testing::kPi;
using testing::max_abs;
using testing::point_a;

struct Outcome
{
  bool pass = false;
  std::string detail;
  std::vector<std::string> notes;
};

std::string fmt(const char *f, double v)
{
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string sci(double v) { return fmt("%.3e", v); }

// |mu9 - mu10| from the numeric tau_minus, labelled by proximity to the closed forms.
double numeric_pair_distance(const ParameterPoint &p)
{
  const AnalyticSpectrum a = analytic_spectrum(p);
  const ComplexVector num = eigenvalues(build_superoperator(p).tau_minus);
  const SpectralMatch m = match_spectra(num, a.sector_values(Sector::Minus));
  cplx m9, m10;
  for (Index i = 0; i < num.size(); ++i)
  {
    if (m.to_analytic[static_cast<std::size_t>(i)] == 0)
    {
      m9 = num(i);
    }
    if (m.to_analytic[static_cast<std::size_t>(i)] == 1)
    {
      m10 = num(i);
    }
  }
  return std::abs(m9 - m10);
}

// Defect diagnostics of the eigenpair of tau_minus nearest the coalesced value.
std::pair<double, double> pair_defect(const ParameterPoint &p)
{
  const AnalyticSpectrum a = analytic_spectrum(p);
  const cplx mu0 = 0.5 * (a.at(9) + a.at(10));
  const EigenSystem es = eig_general(build_superoperator(p).tau_minus);
  std::vector<Index> order(8);
  for (Index k = 0; k < 8; ++k)
  {
    order[static_cast<std::size_t>(k)] = k;
  }
  std::sort(order.begin(), order.end(), [&](Index i, Index j)
            { return std::abs(es.eigenvalues(i) - mu0) < std::abs(es.eigenvalues(j) - mu0); });
  const double split = std::abs(es.eigenvalues(order[0]) - es.eigenvalues(order[1]));
  const double overlap = std::min(es.overlap(order[0]), es.overlap(order[1]));
  return {split, overlap};
}

Outcome criterion1()
{
  struct Pt
  {
    double x, g, e;
  };
  const std::vector<Pt> pts{{0.3293, kPi / 4.0, 0.4}, {0.3466, kPi / 2.0, 0.5}, {0.3013, kPi / 9.0, 0.2}};
  Outcome o{true, "", {}};
  double worst = 0.0;
  for (const auto &p : pts)
  {
    const auto e = epsilon_EP(p.x, p.g);
    const double d = e ? std::abs(*e - p.e) : 1.0;
    worst = std::max(worst, d);
    o.pass = o.pass && e && d <= 5e-3;
    o.notes.push_back("x=" + fmt("%.4f", p.x) + " gamma=" + fmt("%.6f", p.g) +
                      " eps_EP=" + fmt("%.8f", e.value_or(-1.0)));
  }
  o.detail = "max |d eps| = " + sci(worst) + " (bound 5e-3)";
  return o;
}

Outcome criterion2()
{
  std::mt19937_64 rng(20260101);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k)
  {
    const ParameterPoint p = testing::random_easy_plane(rng, 1e-3);
    const double d =
        match_spectra(eig_general(build_superoperator(p).T).eigenvalues, analytic_spectrum(p).values())
            .max_distance;
    worst = std::max(worst, d);
  }
  return {worst <= 1e-9, "100 random easy-plane points, max distance " + sci(worst) + " (bound 1e-9)", {}};
}

Outcome criterion3()
{
  const double e0 = *epsilon_EP(0.3293, kPi / 4.0);
  std::vector<double> lx, ly, la;
  for (double d : {1e-6, 1e-5, 1e-4, 1e-3})
  {
    const ParameterPoint p = point_a(e0 + d);
    lx.push_back(std::log(d));
    ly.push_back(std::log(numeric_pair_distance(p)));
    const AnalyticSpectrum a = analytic_spectrum(p);
    la.push_back(std::log(std::abs(a.at(9) - a.at(10))));
  }
  auto fit = [&](const std::vector<double> &y)
  {
    const double n = static_cast<double>(lx.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t k = 0; k < lx.size(); ++k)
    {
      sx += lx[k];
      sy += y[k];
      sxx += lx[k] * lx[k];
      sxy += lx[k] * y[k];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
  };
  const double slope = fit(ly);
  return {std::abs(slope - 0.5) <= 0.05,
          "numeric log-log exponent " + fmt("%.6f", slope) + " (target 0.5 +- 0.05)",
          {"closed-form exponent " + fmt("%.6f", fit(la))}};
}

Outcome criterion4()
{
  // 1.39016 is the six-digit rounding of the manifold point at eps = 0.4.
  const double x_ep = *x_EP(0.4, kPi / 4.0);
  const ParameterPoint at = ParameterPoint::easy_plane(x_ep, kPi / 4.0, 0.4);
  const auto [split, overlap] = pair_defect(at);
  const bool flagged = eig_general(build_superoperator(at).tau_minus).near_defective;
  Outcome o{flagged && overlap < 1e-6 && split <= 1e-6,
            "lambda_EP=" + fmt("%.16g", std::exp(x_ep)) + ": overlap " + sci(overlap) +
                " (<1e-6), |mu9-mu10| " + sci(split) + " (<=1e-6), near_defective " +
                (flagged ? "true" : "false"),
            {}};
  const ParameterPoint literal = ParameterPoint::easy_plane(std::log(1.39016), kPi / 4.0, 0.4);
  const auto [ls, lo] = pair_defect(literal);
  o.notes.push_back("at the literal lambda=1.39016 (|eps - eps_EP| = " +
                    sci(std::abs(0.4 - *epsilon_EP(std::log(1.39016), kPi / 4.0))) +
                    "): overlap " + sci(lo) + ", |mu9-mu10| " + sci(ls));
  return o;
}

Outcome criterion5()
{
  const ComplexMatrix rho0 = sensing_initial_state();
  const std::vector<std::pair<double, EPRegime>> cases{
      {0.32, EPRegime::BelowEP}, {0.40, EPRegime::AtEP}, {0.48, EPRegime::AboveEP}};
  Outcome o{true, "", {}};
  std::string summary;
  for (const auto &[e, want] : cases)
  {
    const ParameterPoint p = ParameterPoint::easy_plane(std::log(1.39016), kPi / 4.0, e);
    const TrajectoryRecord r = observable_series(build_superoperator(p), rho0, observable_e3(), 200);
    const RegimeClassification c = classify_regime(p, r);
    bool ok = c.regime == want;
    if (want == EPRegime::BelowEP)
    {
      ok = ok && c.drift < 1e-4;
    }
    else if (want == EPRegime::AtEP)
    {
      ok = ok && c.r_squared > 0.999 && c.slope > 0.0;
    }
    else
    {
      ok = ok && c.peak_to_peak > 0.0 && c.trend <= 0.1;
    }
    o.pass = o.pass && ok;
    summary += fmt("eps=%.2f ", e) + std::string(to_string(c.regime)) + (ok ? "" : "(!)") + " ";
    o.notes.push_back(fmt("eps=%.2f", e) + ": drift " + sci(c.drift) + ", R^2 " +
                      fmt("%.6f", c.r_squared) + ", slope " + sci(c.slope) + ", trend " +
                      sci(c.trend) + ", " + c.message);
  }
  o.detail = summary + "(lambda=1.39016, n_max=200)";
  return o;
}

Outcome criterion6()
{
  const ParameterPoint p = point_a(0.32);
  const TrajectoryRecord r =
      observable_series(build_superoperator(p), sensing_initial_state(), observable_e3(), 200);
  const AnalyticSpectrum a = analytic_spectrum(p);
  const SensingCoefficients c = sensing_coefficients(p);
  double worst = 0.0;
  for (std::size_t n = 0; n <= 200; ++n)
  {
    const double k = static_cast<double>(n);
    const cplx two = c.gamma9 * std::pow(a.at(9), k) + c.gamma10 * std::pow(a.at(10), k);
    worst = std::max(worst, std::abs(r.values[n] - two) / std::abs(r.values[n]));
  }
  return {worst <= 1e-9 && c.identity_residual <= 1e-12,
          "max relative deviation " + sci(worst) + " (bound 1e-9), g identity residual " +
              sci(c.identity_residual) + " (bound 1e-12)",
          {}};
}

Outcome criterion7()
{
  const double e0 = *epsilon_EP(0.3293, kPi / 4.0);
  double above = 0.0;
  double below = 1e300;
  for (int k = 1; k < 1000; ++k)
  {
    const double e = k / 1000.0;
    const AnalyticSpectrum s = analytic_spectrum(point_a(e));
    const double gap = std::abs(std::abs(s.at(9)) - std::abs(s.at(10)));
    if (e > e0)
    {
      above = std::max(above, gap);
    }
    else if (e <= e0 - 0.01)
    {
      below = std::min(below, gap);
    }
  }
  return {above <= 1e-10 && below > 1e-4,
          "above EP max gap " + sci(above) + " (<=1e-10), below EP-0.01 min gap " + sci(below) +
              " (>1e-4)",
          {}};
}

Outcome criterion8()
{
  std::mt19937_64 rng(20260108);
  std::uniform_real_distribution<double> th(-kPi, kPi);
  double trace = 0.0, choi = 1e300, radius = 0.0;
  for (int k = 0; k < 100; ++k)
  {
    const Superoperator s = build_superoperator(testing::random_easy_plane(rng).with_theta(th(rng)));
    trace = std::max(trace, trace_preservation_defect(s.T));
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(choi_matrix(s.T));
    choi = std::min(choi, es.eigenvalues().minCoeff());
    radius = std::max(radius, std::abs(spectral_radius(s.T) - 1.0));
  }
  return {trace <= 1e-12 && choi >= -1e-10 && radius <= 1e-10,
          "trace defect " + sci(trace) + " (<=1e-12), Choi min eig " + sci(choi) +
              " (>=-1e-10), |rho(T)-1| " + sci(radius) + " (<=1e-10)",
          {}};
}

ComplexMatrix restrict_to(const ComplexMatrix &T, const std::array<Index, 8> &idx)
{
  ComplexMatrix b(8, 8);
  for (Index r = 0; r < 8; ++r)
    for (Index c = 0; c < 8; ++c)
      b(r, c) = T(idx[static_cast<std::size_t>(r)], idx[static_cast<std::size_t>(c)]);
  return b;
}

Outcome criterion9()
{
  std::mt19937_64 rng(20260109);
  double table = 0.0, diag_blocks = 0.0, off_blocks = 0.0, variant = 0.0, poly = 0.0;
  const SectorEmbedding &emb = sector_embedding();
  for (int k = 0; k < 20; ++k)
  {
    const ParameterPoint p = testing::random_easy_plane(rng);
    const Superoperator s = build_superoperator(p);
    const auto ref = testing::closed_form_sector_tables(p.q(), p.lambda(), p.epsilon());
    for (const auto &[tau, tab] : {std::pair{&s.tau_plus, &ref.plus}, std::pair{&s.tau_minus, &ref.minus}})
    {
      const ComplexMatrix d = *tau - *tab;
      table = std::max(table, max_abs(d));
      diag_blocks = std::max({diag_blocks, max_abs(d.topLeftCorner(4, 4)), max_abs(d.bottomRightCorner(4, 4))});
      off_blocks = std::max({off_blocks, max_abs(d.topRightCorner(4, 4)), max_abs(d.bottomLeftCorner(4, 4))});
    }
    // Jump factor K (x) K^H in place of K (x) conj(K).
    const GateSet g = build_gate_set(p);
    ComplexMatrix sum = ComplexMatrix::Zero(16, 16);
    for (const ComplexMatrix *kr : {&g.K1, &g.K2})
    {
      const ComplexMatrix m = kron(*kr, g.V);
      sum += kron(m, m.adjoint());
    }
    const ComplexMatrix v = kron(g.U, g.U.conjugate()) * sum;
    variant = std::max({variant, max_abs(restrict_to(v, emb.even) - ref.plus),
                        max_abs(restrict_to(v, emb.odd) - ref.minus)});
    const CharPolyFactors f = schur_char_poly(s.tau_minus, Sector::Minus, p);
    poly = std::max(poly, f.max_residual);
  }
  Outcome o{table <= 1e-12 && poly <= 1e-9,
            "tables vs projection max entry diff " + sci(table) + " (bound 1e-12); P1..P4 at numeric eigenvalues " +
                sci(poly) + " (bound 1e-9)",
            {}};
  o.notes.push_back("A/D blocks diff " + sci(diag_blocks) + ", B/C blocks diff " + sci(off_blocks));
  o.notes.push_back("tables vs projection of (U (x) conj U) sum (M (x) M^H), a non-trace-preserving variant: " +
                    sci(variant));
  return o;
}

Outcome criterion10()
{
  // The identity exp(-Gamma t / n)^n = exp(-Gamma t) is exact; in doubles the rounding of
  // eps is raised to the n-th power, so each case is held to (n + 1) units of roundoff.
  double spec = 0.0, numeric = 0.0, worst_ratio = 0.0;
  for (double Gamma : {0.1, 0.5, 2.0})
  {
    for (std::size_t n : {1u, 10u, 100u, 1000u})
    {
      const SpectralMapReport r = kraus_lindblad_spectral_map(Gamma, 1.0, n);
      spec = std::max(spec, r.spectral_difference);
      numeric = std::max(numeric, r.numeric_spectral_difference);
      const double ulp_bound = static_cast<double>(n + 1) * std::numeric_limits<double>::epsilon();
      worst_ratio = std::max(worst_ratio, r.spectral_difference / ulp_bound);
    }
  }
  const std::vector<std::size_t> ns{100, 200, 400};
  const TrotterReport t = composite_trotter_check(kPi / 4.0, 0.5, 1.0, ns);
  std::string ratios;
  bool halves = t.rows.size() == 3;
  for (std::size_t k = 1; k < t.rows.size(); ++k)
  {
    ratios += fmt("%.4f ", t.rows[k].ratio);
    halves = halves && std::abs(t.rows[k].ratio / 2.0 - 1.0) <= 0.3;
  }
  const bool exact = worst_ratio <= 1.0;
  return {exact && halves,
          "spectrum diff " + sci(spec) + " = " + fmt("%.2f", worst_ratio) +
              " of the (n+1) eps roundoff bound; Trotter ratios " + ratios + "(2 within 30%)",
          {"numerically powered channel vs closed form " + sci(numeric)}};
}

std::string slurp(const std::filesystem::path &p)
{
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome criterion11()
{
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "brickwork_acceptance_determinism";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::vector<std::vector<std::string>> runs{
      {"spectrum", "--epsilon", "0.32", "--seed", "3"},
      {"spectrum", "--theta", "0.4", "--format", "json"},
      {"ep-scan", "--x-grid", "-0.4:0.4:17"},
      {"bifurcate", "--lambda", "1.39016", "--range", "0.3:0.5:41"},
      {"evolve", "--lambda", "1.39016", "--epsilon", "0.4"},
      {"trotter", "--seed", "7", "--format", "json"}};
  bool same = true;
  std::size_t files = 0;
  for (std::size_t k = 0; k < runs.size(); ++k)
  {
    std::string blobs[2];
    for (int rep = 0; rep < 2; ++rep)
    {
      // Same path both times: the resolved config, output path included, is echoed.
      const fs::path out = dir / ("run" + std::to_string(k));
      std::vector<std::string> args{"brickwork"};
      args.insert(args.end(), runs[k].begin(), runs[k].end());
      args.push_back("--output");
      args.push_back(out.string());
      std::ostringstream so, se;
      if (cli::run(args, so, se) != cli::kOk)
      {
        return {false, runs[k][0] + " failed: " + se.str(), {}};
      }
      blobs[rep] = slurp(out);
      fs::remove(out);
      ++files;
    }
    same = same && !blobs[0].empty() && blobs[0] == blobs[1];
  }
  return {same, std::to_string(runs.size()) + " invocations, " + std::to_string(files) +
                    " files, byte-identical " + (same ? "yes" : "no"),
          {}};
}

}  // namespace

int main()
{
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"EP manifold reproduction", criterion1},
      {"analytic-numeric spectral equivalence", criterion2},
      {"square-root splitting", criterion3},
      {"Jordan certificate at EP", criterion4},
      {"EP regime classification", criterion5},
      {"two-term dynamics identity", criterion6},
      {"above/below modulus structure", criterion7},
      {"CPTP invariants", criterion8},
      {"sector block tables and quadratic factors", criterion9},
      {"continuum bridge", criterion10},
      {"determinism", criterion11},
  };
  int failed = 0;
  for (std::size_t k = 0; k < criteria.size(); ++k)
  {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try
    {
      o = criteria[k].second();
    }
    catch (const std::exception &e)
    {
      o = {false, std::string("exception: ") + e.what(), {}};
    }
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    std::printf("criterion %2zu %s  %s: %s [%.0f ms]\n", k + 1, o.pass ? "PASS" : "FAIL",
                criteria[k].first.c_str(), o.detail.c_str(), ms);
    for (const auto &n : o.notes)
    {
      std::printf("             info  %s\n", n.c_str());
    }
    failed += o.pass ? 0 : 1;
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
