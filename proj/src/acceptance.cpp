#include "sbtube/acceptance.hpp"

#include <cmath>
#include <functional>
#include <ostream>
#include <sstream>

#include "sbtube/euclid_baseline.hpp"
#include "sbtube/h3_transform.hpp"
#include "sbtube/isometry.hpp"
#include "sbtube/kos.hpp"
#include "sbtube/special_functions.hpp"

namespace sbtube {

namespace {

double rel_err(double got, double want) {
  return std::abs(got - want) / std::abs(want);
}

struct Checker {
  bool pass = true;
  std::ostringstream detail;
  int clauses = 0;

  void expect(bool ok, const std::string& what) {
    if (clauses++) detail << "; ";
    detail << what << (ok ? " ok" : " FAILED");
    if (!ok) pass = false;
  }
  void expect_rel(double got, double want, double tol,
                  const std::string& what) {
    const double e = rel_err(got, want);
    if (clauses++) detail << "; ";
    detail << what << " rel_err=" << e << " (tol " << tol << ")";
    if (!(e <= tol)) pass = false;
  }
};

using CriterionFn = std::function<void(Checker&)>;

void c1_global_isometry(Checker& ck) {
  const double t = 0.5;
  const double r_lim = 6.0 * std::sqrt(t) + M_PI;
  const QuadratureSpec quad;
  const auto heat = SpectralProfile::heat(0.3);
  const double want_heat = std::exp(-0.3) / std::pow(1.2 * M_PI, 1.5);
  ck.expect_rel(iso::gf_euclid(heat, t, r_lim, quad), want_heat, 1e-6,
                "heat(0.3) limit");
  const auto band = SpectralProfile::band(2.0);
  const double want_band = (1.0 / (2.0 * M_PI * M_PI)) * 8.0 / 3.0;
  ck.expect_rel(iso::gf_euclid(band, t, r_lim, quad), want_band, 1e-6,
                "band(2) limit");
}

void c2_cancellation_routes(Checker& ck) {
  const double t = 0.5;
  const QuadratureSpec quad;
  const auto p = SpectralProfile::heat(0.3);
  for (double R : {0.5, 0.5 * M_PI, 2.5}) {
    const double e = iso::gf_euclid(p, t, R, quad);
    const double g = iso::gf_geometric(p, t, R, quad);
    std::ostringstream name;
    name << "geometric@R=" << R;
    ck.expect_rel(g, e, 1e-7, name.str());
  }
  for (double R : {0.5, 1.0, 1.5}) {
    const double e = iso::gf_euclid(p, t, R, quad);
    const double d = iso::gf_direct(p, t, R, quad);
    std::ostringstream name;
    name << "direct@R=" << R;
    ck.expect_rel(d, e, 1e-5, name.str());
  }
  const double Rb = 0.5 * M_PI - 0.02;
  ck.expect_rel(iso::gf_direct(p, t, Rb, quad), iso::gf_euclid(p, t, Rb, quad),
                1e-4, "direct@pi/2-0.02");
}

void c3_blowup_witness(Checker& ck) {
  const double t = 0.5;
  const QuadratureSpec quad;
  const auto p = SpectralProfile::heat(0.3);
  const auto mid = iso::shell_integrand(p, t, 0.5 * M_PI, quad);
  const auto edge = iso::shell_integrand(p, t, M_PI - 1e-3, quad);
  const double growth = edge.raw / mid.raw;
  std::ostringstream g;
  g << "raw shell growth=" << growth << " (need >= 1000)";
  ck.expect(growth >= 1e3, g.str());
  const double limit = iso::shell_times_sin_limit(p, t, quad);
  ck.expect_rel(edge.times_sin, limit, 1e-2, "shell*sin stability");
}

void c4_partial_identity(Checker& ck) {
  const double t = 0.5;
  const QuadratureSpec quad;
  const auto p = SpectralProfile::heat(0.3);
  const double r_lim = 6.0 * std::sqrt(t) + M_PI;
  for (double R : {0.5, 1.0, 2.0, r_lim}) {
    const double e = iso::gf_euclid(p, t, R, quad);
    const double b = iso::gf_beta(p, t, R, quad);
    std::ostringstream name;
    name << "beta@R=" << R << " diff=" << std::abs(b - e);
    ck.expect(std::abs(b - e) <= 1e-12 * (1.0 + std::abs(e)), name.str());
  }
  bool nonneg = true;
  for (double R : {0.25, 0.5, 0.8, 1.0}) {
    iso::SeriesDiagnostics diag;
    const double s = iso::gf_series(p, t, R, quad, 80, &diag);
    nonneg = nonneg && diag.all_coefficients_nonnegative;
    std::ostringstream name;
    name << "series@R=" << R;
    ck.expect_rel(s, iso::gf_euclid(p, t, R, quad), 1e-7, name.str());
  }
  ck.expect(nonneg, "series coefficients nonnegative");
}

void c5_inversion(Checker& ck) {
  const double t = 0.5;
  const QuadratureSpec quad;
  const auto p = SpectralProfile::heat(0.4);
  const double f0 = h3::spherical_inverse(p, 0.0, quad);
  const double inv = iso::inversion_at_base(p, t, 30.0 * std::sqrt(t),
                                            iso::InversionRoute::Spectral, quad);
  ck.expect_rel(inv, f0, 1e-5, "base-point recovery");
  for (double R : {1.0, 2.0}) {
    const double sp =
        iso::inversion_at_base(p, t, R, iso::InversionRoute::Spectral, quad);
    const double dr =
        iso::inversion_at_base(p, t, R, iso::InversionRoute::Direct, quad);
    std::ostringstream name;
    name << "direct=spectral@R=" << R;
    ck.expect_rel(dr, sp, 1e-6, name.str());
  }
}

void c6_surjectivity(Checker& ck) {
  const double t = 0.5;
  const auto p = SpectralProfile::heat(0.3);
  const auto pF = h3::heat_apply(p, t);
  const auto rec = iso::surjectivity_reconstruct(pF, t);
  double worst = 0.0;
  const auto round = h3::heat_apply(rec, t);
  for (double xi = 0.0; xi <= 8.0; xi += 0.5)
    worst = std::max(worst, rel_err(round.value(xi), pF.value(xi)));
  std::ostringstream g;
  g << "round trip worst rel=" << worst;
  ck.expect(worst <= 1e-12, g.str());
  ck.expect(rel_err(rec.heat_time() + rec.extra_heat(), 0.3) <= 1e-14,
            "recovered heat time");
  bool raised = false;
  try {
    iso::surjectivity_reconstruct(SpectralProfile::heat(0.4), t);
  } catch (const FiniteLimitAbsent&) {
    raised = true;
  }
  ck.expect(raised, "FiniteLimitAbsent for t' < t");
}

void c7_euclid_baseline(Checker& ck) {
  auto gauss = [](double u) { return std::exp(-0.5 * u * u); };
  auto hermite = [](double u) { return u * std::exp(-0.5 * u * u); };
  for (double t : {0.25, 1.0}) {
    const auto f = e1d::SampledLine::from(11.0, 2201, gauss);
    const double bx = std::sqrt((1.0 + t) * 32.0) + 0.5;
    const double by = std::sqrt(t * (1.0 + t) * 32.0) + 0.5;
    const auto pair = e1d::isometry_check_1d(f, t, bx, by);
    std::ostringstream name;
    name << "gauss isometry t=" << t;
    ck.expect_rel(pair.second, pair.first, 1e-6, name.str());
    const double fx = e1d::inversion_check_1d(f, t, 0.3);
    std::ostringstream name2;
    name2 << "gauss inversion t=" << t;
    ck.expect_rel(fx, gauss(0.3), 1e-6, name2.str());
  }
  const double t = 0.25;
  const auto f = e1d::SampledLine::from(11.0, 2201, hermite);
  const double bx = std::sqrt((1.0 + t) * 32.0) + 0.5;
  const double by = std::sqrt(t * (1.0 + t) * 32.0) + 0.5;
  const auto pair = e1d::isometry_check_1d(f, t, bx, by);
  ck.expect_rel(pair.second, pair.first, 1e-6, "hermite isometry");
  ck.expect_rel(e1d::inversion_check_1d(f, t, 0.4), hermite(0.4), 1e-6,
                "hermite inversion");
}

void c8_kos_equivalence(Checker& ck) {
  const double t = 0.5;
  const QuadratureSpec quad;
  for (const auto& p :
       {SpectralProfile::heat(0.3), SpectralProfile::band(2.0)}) {
    const double k = kos::kos_isometry(p, t, quad);
    const double n = h3::plancherel_norm_sq(p, quad);
    ck.expect_rel(k, n, 1e-5, "shift isometry " + p.describe());
  }
  const double e1 =
      kos::gaussian_derivative_identity_check(preset_root_system("h3"), t);
  std::ostringstream g1;
  g1 << "rank1 gaussian identity err=" << e1;
  ck.expect(e1 <= 1e-12, g1.str());
  const double e2 =
      kos::gaussian_derivative_identity_check(preset_root_system("a2"), t);
  std::ostringstream g2;
  g2 << "a2 gaussian identity err=" << e2;
  ck.expect(e2 <= 1e-5, g2.str());
  const auto pair =
      kos::integration_by_parts_check(SpectralProfile::heat(0.3), t, quad);
  ck.expect_rel(pair.first, pair.second, 1e-5, "integration by parts");
}

void c9_kernel_masses(Checker& ck) {
  QuadratureSpec tight;
  tight.abs_tol = 1e-13;
  tight.rel_tol = 1e-12;
  {
    const double t = 0.5;
    const double rcap = std::sqrt(4.0 * t * 40.0) + 6.0 * std::sqrt(t);
    const double mass = integrate(
        [&](double r) {
          return std::exp(t) * h3::jc_half(r) * heat_gaussian(3, t, r) *
                 h3::polar_density(r);
        },
        0.0, rcap, tight);
    ck.expect_rel(mass, 1.0, 1e-10, "compact-side kernel mass t=0.5");
  }
  {
    const double t = 0.7;
    const double rcap = t + std::sqrt(2.0 * t * 40.0) + 6.0 * std::sqrt(t);
    const double mass = integrate(
        [&](double r) {
          return std::exp(-0.5 * t) * sinhc(r) *
                 std::exp(-r * r / (2.0 * t)) /
                 std::pow(2.0 * M_PI * t, 1.5) * h3::polar_density(r);
        },
        0.0, rcap, tight);
    ck.expect_rel(mass, 1.0, 1e-10, "noncompact kernel mass t=0.7");
  }
  for (double s : {0.25, 0.5, 1.0}) {
    const double got = h3::plancherel_norm_sq(SpectralProfile::heat(s), tight);
    const double want = std::exp(-s) / std::pow(4.0 * M_PI * s, 1.5);
    std::ostringstream name;
    name << "plancherel calibration s=" << s;
    ck.expect_rel(got, want, 1e-8, name.str());
  }
}

void c10_radialization(Checker& ck) {
  QuadratureSpec quad;
  quad.abs_tol = 1e-12;
  quad.rel_tol = 1e-11;
  const double sigma = 4.0;
  auto psi = [](const Eigen::VectorXd& y) { return h3::psi(2.0, y.norm()); };
  auto beta = [](double r) { return heat_gaussian(3, 0.25, r); };
  const auto pair = euclid_radialization_check(3, sigma, psi, beta, 1.0, quad);
  ck.expect_rel(pair.first, pair.second, 1e-8, "radialization identity");
}

void c11_impossibility(Checker& ck) {
  const double t = 0.5;
  QuadratureSpec quad;
  std::vector<double> grid;
  for (double xi = 0.5; xi <= 15.0 + 1e-9; xi += 0.5) grid.push_back(xi);
  const auto table = iso::no_invariant_density_demo(
      t, iso::truncated_alpha_density(t), grid, quad);
  bool bounded = true;
  for (std::size_t i = 0; i < table.xi.size(); ++i)
    if (table.bound_stat[i] > table.mass_constant * (1.0 + 1e-9))
      bounded = false;
  std::ostringstream g;
  g << "growth bound (M=" << table.mass_constant << ")";
  ck.expect(bounded, g.str());
  double ratio12 = 1.0;
  for (std::size_t i = 0; i < table.xi.size(); ++i)
    if (std::abs(table.xi[i] - 12.0) < 1e-9) ratio12 = table.ratio[i];
  std::ostringstream g2;
  g2 << "ratio@xi=12 = " << ratio12;
  ck.expect(ratio12 < 1e-10, g2.str());
}

}  // namespace

std::vector<CriterionResult> run_acceptance(std::ostream* live) {
  struct Item {
    int id;
    const char* name;
    CriterionFn fn;
  };
  const std::vector<Item> items = {
      {1, "global isometry limit", c1_global_isometry},
      {2, "analytic continuation route agreement", c2_cancellation_routes},
      {3, "blow-up witness and cancellation", c3_blowup_witness},
      {4, "partial isometry identity", c4_partial_identity},
      {5, "base-point inversion", c5_inversion},
      {6, "surjectivity reconstruction", c6_surjectivity},
      {7, "euclidean baseline", c7_euclid_baseline},
      {8, "shift-operator equivalence", c8_kos_equivalence},
      {9, "kernel masses and calibration", c9_kernel_masses},
      {10, "radialization identity", c10_radialization},
      {11, "impossibility bound", c11_impossibility},
  };
  std::vector<CriterionResult> results;
  for (const auto& item : items) {
    Checker ck;
    try {
      item.fn(ck);
    } catch (const std::exception& e) {
      ck.pass = false;
      if (ck.clauses++) ck.detail << "; ";
      ck.detail << "exception: " << e.what();
    }
    CriterionResult r;
    r.id = item.id;
    r.name = item.name;
    r.pass = ck.pass;
    r.detail = ck.detail.str();
    if (live)
      (*live) << "criterion " << r.id << " [" << (r.pass ? "PASS" : "FAIL")
              << "] " << r.name << ": " << r.detail << "\n";
    results.push_back(std::move(r));
  }
  return results;
}

}  // namespace sbtube
