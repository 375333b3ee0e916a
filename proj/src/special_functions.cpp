#include "sbtube/special_functions.hpp"

#include <cmath>
#include <random>
#include <vector>

namespace sbtube {

namespace {

int factorial(int n) {
  int f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

// Leading Taylor coefficient of A along the diagonal: the degree-p term of
// sum det(w) <w xi, Y>^p equals kappa * pi(xi) * pi(Y) with kappa constant.
double psi_norm_constant(const RootSystem& rs, const WeylGroup& w) {
  const int p = static_cast<int>(rs.positive_roots.size());
  Eigen::VectorXd xi0(rs.rank), y0(rs.rank);
  if (rs.rank == 1) {
    xi0 << 0.73;
    y0 << 0.41;
  } else {
    xi0 << 0.73, 0.29;
    y0 << 0.41, 0.67;
  }
  double sp = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i)
    sp += w.signs[i] * std::pow((w.elements[i] * xi0).dot(y0), p);
  const double kappa = sp / (factorial(p) * pi_poly(rs, xi0) * pi_poly(rs, y0));
  const double parity = (p % 2 == 0) ? 1.0 : -1.0;
  return parity / kappa;
}

bool is_orthogonal_pair(const RootSystem& rs) {
  return rs.rank == 2 && rs.positive_roots.size() == 2 &&
         std::abs(rs.positive_roots[0].dot(rs.positive_roots[1])) < 1e-12;
}

// Series evaluation of A / <gamma, Y> with the near-wall factor <gamma, Y>
// extracted exactly: pairing w with s_gamma w turns each power sum into a
// multiple of <gamma, Y> before any cancellation can occur.
double series_over_wall(const RootSystem& rs, const WeylGroup& w,
                        const Eigen::VectorXd& xi, const Eigen::VectorXd& Y,
                        const Eigen::VectorXd& gamma, int series_terms) {
  const Eigen::MatrixXd sg = reflection_matrix(gamma);
  const double gy2 = 2.0 * gamma.dot(Y) / gamma.squaredNorm();

  // Coset representatives of W / <s_gamma>.
  std::vector<int> reps;
  std::vector<bool> used(w.size(), false);
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (used[i]) continue;
    const Eigen::MatrixXd partner = sg * w.elements[i];
    for (std::size_t j = 0; j < w.size(); ++j) {
      if (j == i || used[j]) continue;
      if ((partner - w.elements[j]).cwiseAbs().maxCoeff() < 1e-9) {
        used[j] = true;
        break;
      }
    }
    used[i] = true;
    reps.push_back(static_cast<int>(i));
  }

  const int p = static_cast<int>(rs.positive_roots.size());
  const std::size_t nr = reps.size();
  std::vector<double> m(nr), e(nr), n(nr), sign(nr), xg(nr);
  for (std::size_t r = 0; r < nr; ++r) {
    const Eigen::VectorXd wxi = w.elements[reps[r]] * xi;
    m[r] = wxi.dot(Y);
    xg[r] = wxi.dot(gamma);
    e[r] = gy2 * xg[r];
    n[r] = m[r] - e[r];
    sign[r] = w.signs[reps[r]];
  }

  // A / <gamma,Y> = (2/|gamma|^2) sum_k (-1)^k/k! sum_reps det(w) <w xi, gamma> P_k
  // with P_k = sum_{j<k} M^j N^{k-1-j}.
  CompensatedSum acc;
  double inv_fact = 1.0 / factorial(p);
  for (int k = p; k <= p + series_terms; ++k) {
    if (k > p) inv_fact /= k;
    double sk = 0.0;
    for (std::size_t r = 0; r < nr; ++r) {
      double pk = 0.0;
      double mj = 1.0;
      for (int j = 0; j < k; ++j) {
        pk += mj * std::pow(n[r], k - 1 - j);
        mj *= m[r];
      }
      sk += sign[r] * xg[r] * pk;
    }
    const double term = ((k % 2 == 0) ? 1.0 : -1.0) * inv_fact * sk;
    acc.add(term);
  }
  return acc.value() * 2.0 / gamma.squaredNorm();
}

double psi_generic(const RootSystem& rs, const WeylGroup& w,
                   const Eigen::VectorXd& xi, const Eigen::VectorXd& Y,
                   const SphericalEvalConfig& cfg) {
  if (xi.norm() < 1e-9 || Y.norm() < 1e-9) return 1.0;
  const double c = psi_norm_constant(rs, w);
  const double px = pi_poly(rs, xi);
  const double py = pi_poly(rs, Y);
  if (std::abs(px * py) >= cfg.cancellation_threshold)
    return c * weyl_sum_A(rs, w, xi, Y) / (px * py);

  // Pick the slot closest (relatively) to a wall and extract that factor.
  auto min_pairing = [&](const Eigen::VectorXd& v, int* idx) {
    double best = 1e300;
    for (std::size_t i = 0; i < rs.positive_roots.size(); ++i) {
      const auto& a = rs.positive_roots[i];
      const double val = std::abs(a.dot(v)) / (a.norm() * v.norm());
      if (val < best) {
        best = val;
        *idx = static_cast<int>(i);
      }
    }
    return best;
  };
  int iy = 0, ix = 0;
  const double my = min_pairing(Y, &iy);
  const double mx = min_pairing(xi, &ix);

  // A and pi*pi are symmetric under swapping the slots.
  const Eigen::VectorXd& u = (mx < my) ? Y : xi;
  const Eigen::VectorXd& v = (mx < my) ? xi : Y;
  const Eigen::VectorXd& gamma = rs.positive_roots[(mx < my) ? ix : iy];

  double rest = pi_poly(rs, u);
  for (const auto& a : rs.positive_roots)
    if (&a != &gamma) rest *= a.dot(v);
  return c * series_over_wall(rs, w, u, v, gamma, cfg.series_terms) / rest;
}

}  // namespace

double weyl_sum_A(const RootSystem& rs, const WeylGroup& w,
                  const Eigen::VectorXd& xi, const Eigen::VectorXd& Y) {
  (void)rs;
  CompensatedSum acc;
  for (std::size_t i = 0; i < w.size(); ++i)
    acc.add(w.signs[i] * std::exp(-(w.elements[i] * xi).dot(Y)));
  return acc.value();
}

double psi_entire(const RootSystem& rs, const WeylGroup& w,
                  const Eigen::VectorXd& xi, const Eigen::VectorXd& Y,
                  const SphericalEvalConfig& cfg) {
  if (rs.rank == 1) {
    // Single-root closed form: sinh(u)/u with u = <a,xi><a,Y>/|a|^2.
    const auto& a = rs.positive_roots[0];
    return sinhc(a.dot(xi) * a.dot(Y) / a.squaredNorm());
  }
  if (is_orthogonal_pair(rs)) {
    double p = 1.0;
    for (const auto& a : rs.positive_roots)
      p *= sinhc(a.dot(xi) * a.dot(Y) / a.squaredNorm());
    return p;
  }
  return psi_generic(rs, w, xi, Y, cfg);
}

double psi_entire(const RootSystem& rs, const Eigen::VectorXd& xi,
                  const Eigen::VectorXd& Y, const SphericalEvalConfig& cfg) {
  if (rs.rank == 1 || is_orthogonal_pair(rs)) {
    static const WeylGroup dummy;
    return psi_entire(rs, dummy, xi, Y, cfg);
  }
  const WeylGroup w = build_weyl_group(rs);
  return psi_entire(rs, w, xi, Y, cfg);
}

double phi_continued(const RootSystem& rs, const Eigen::VectorXd& xi,
                     const Eigen::VectorXd& Y, const SphericalEvalConfig& cfg) {
  const double jc = jc_half(rs, Y);
  if (std::abs(jc) < 1e-14)
    throw SingularPoint("phi_continued: sine Jacobian vanishes");
  return psi_entire(rs, xi, Y, cfg) / jc;
}

double psi_euclidean(const RootSystem& rs, const WeylGroup& w,
                     const Eigen::VectorXd& xi, const Eigen::VectorXd& Y) {
  (void)rs;
  CompensatedSum acc;
  for (std::size_t i = 0; i < w.size(); ++i)
    acc.add(std::exp(-(w.elements[i] * xi).dot(Y)));
  return acc.value();
}

double heat_gaussian(int d, double t, double r) {
  if (!(t > 0.0)) throw DomainError("heat_gaussian: t must be positive");
  return std::exp(-r * r / (4.0 * t)) / std::pow(4.0 * M_PI * t, 0.5 * d);
}

double nu_c_unwrapped(const RootSystem& rs, double t2,
                      const Eigen::VectorXd& Y) {
  return std::exp(0.5 * t2 * rho_sq(rs)) / jc_half(rs, Y) *
         heat_gaussian(rs.dim_total(), 0.5 * t2, Y.norm());
}

double alpha_density(const RootSystem& rs, double t,
                     const Eigen::VectorXd& Y) {
  return std::exp(t * rho_sq(rs)) * jc_half(rs, Y) *
         heat_gaussian(rs.dim_total(), t, Y.norm());
}

double nu_nc(const RootSystem& rs, double t, const Eigen::VectorXd& Y) {
  return std::exp(-0.5 * t * rho_sq(rs)) / jnc_half(rs, Y) *
         heat_gaussian(rs.dim_total(), 0.5 * t, Y.norm());
}

double gaussian_ball_fraction(int d, double t, double s, double b) {
  if (!(t > 0.0)) throw DomainError("gaussian_ball_I: t must be positive");
  if (s < 0.0) throw DomainError("gaussian_ball_I: s must be nonnegative");
  if (b <= 0.0) return 0.0;
  const double rt = std::sqrt(t);
  if (d == 1 || d == 3) {
    const double xm = (b - 2.0 * t * s) / (2.0 * rt);
    const double xp = (b + 2.0 * t * s) / (2.0 * rt);
    double erf_part;
    if (xm >= 0.0)
      erf_part = 0.5 * (std::erf(xm) + std::erf(xp));
    else
      erf_part = 0.5 * (std::erfc(-xm) - std::erfc(xp));
    if (d == 1) return erf_part;
    // d == 3: subtract the boundary term of the radial integration by parts.
    const double tail =
        b * sinhc_scaled(s * b, -b * b / (4.0 * t) - t * s * s) /
        std::sqrt(M_PI * t);
    return erf_part - tail;
  }
  // General d: I = sum_k (t s^2)^k / k! * P(k + d/2, b^2/4t), scaled after.
  const double x = b * b / (4.0 * t);
  const double ts2 = t * s * s;
  CompensatedSum acc;
  double coeff = 1.0;  // (t s^2)^k / k!
  for (int k = 0; k <= 2000; ++k) {
    const double term = coeff * gamma_p(k + 0.5 * d, x);
    acc.add(term);
    if (k > ts2 && term < 1e-17 * std::abs(acc.value())) break;
    if (k == 2000)
      throw SeriesNotConverged("gaussian_ball_I: series cap reached");
    coeff *= ts2 / (k + 1);
  }
  return acc.value() * std::exp(-ts2);
}

double gaussian_ball_I(int d, double t, double s, double b) {
  return std::exp(t * s * s) * gaussian_ball_fraction(d, t, s, b);
}

double beta_R(const RootSystem& rs, double t, double lambda, double R) {
  const double r2 = rho_sq(rs);
  if (lambda < r2 - 1e-12)
    throw DomainError("beta_R: lambda below the spectral bottom");
  const double s = std::sqrt(std::max(0.0, lambda - r2));
  // e^{-t lambda} e^{t rho^2} I = e^{-t s^2} I exactly.
  return gaussian_ball_fraction(rs.dim_total(), t, s, 2.0 * R);
}

double sphere_moment(int d, int n) {
  if (d < 1 || n < 0) throw DomainError("sphere_moment: bad arguments");
  if (n % 2 == 1) return 0.0;
  double m = 1.0;
  for (int k = 2; k <= n; k += 2) m *= (k - 1.0) / (d + k - 2.0);
  return m;
}

double radial_average_exp(int d, double sigma_r2) {
  // sum_k (sigma r^2)^k m_{d,2k} / (2k)!; converges for all real arguments.
  CompensatedSum acc;
  double term = 1.0;
  acc.add(term);
  for (int k = 1; k <= 400; ++k) {
    const int n = 2 * k;
    // m_{d,2k}/(2k)! builds from m_{d,2k-2}/(2k-2)!
    term *= sigma_r2 * (n - 1.0) / ((d + n - 2.0) * n * (n - 1.0));
    acc.add(term);
    if (std::abs(term) < 1e-17 * (1.0 + std::abs(acc.value()))) break;
  }
  return acc.value();
}

std::pair<double, double> euclid_radialization_check(
    int d, double sigma,
    const std::function<double(const Eigen::VectorXd&)>& psi,
    const std::function<double(double)>& beta_radial, double R,
    const QuadratureSpec& quad) {
  if (d < 1 || d > 3)
    throw DomainError("euclid_radialization_check: d must be 1, 2 or 3");
  const double b = 2.0 * R;

  // Probe the eigenfunction property at 10 fixed pseudo-random points.
  std::mt19937 rng(20250811u);
  std::uniform_real_distribution<double> uni(-0.5, 0.5);
  const double h = 1e-3;
  const double probe_scale = b / std::sqrt(static_cast<double>(d));
  for (int p = 0; p < 10; ++p) {
    Eigen::VectorXd y(d);
    for (int i = 0; i < d; ++i) y[i] = uni(rng) * probe_scale;
    double lap = 0.0;
    const double center = psi(y);
    for (int i = 0; i < d; ++i) {
      Eigen::VectorXd e = Eigen::VectorXd::Zero(d);
      e[i] = h;
      lap += psi(y + e) - 2.0 * center + psi(y - e);
    }
    lap /= h * h;
    if (std::abs(lap - sigma * center) > 1e-5 * (1.0 + std::abs(sigma * center)))
      throw NotAnEigenfunction(
          "euclid_radialization_check: finite-difference probe failed");
  }

  const QuadratureSpec inner = quad.inner();
  double lhs = 0.0;
  if (d == 1) {
    lhs = integrate(
        [&](double y) {
          Eigen::VectorXd v(1);
          v << y;
          return psi(v) * beta_radial(std::abs(y));
        },
        -b, b, quad);
  } else if (d == 2) {
    lhs = integrate(
        [&](double th) {
          return integrate(
              [&](double r) {
                Eigen::VectorXd v(2);
                v << r * std::cos(th), r * std::sin(th);
                return psi(v) * beta_radial(r) * r;
              },
              0.0, b, inner);
        },
        0.0, 2.0 * M_PI, quad);
  } else {
    const QuadratureSpec mid = quad.inner();
    lhs = integrate(
        [&](double th) {
          return integrate(
              [&](double c) {
                const double sn = std::sqrt(std::max(0.0, 1.0 - c * c));
                return integrate(
                    [&](double r) {
                      Eigen::VectorXd v(3);
                      v << r * sn * std::cos(th), r * sn * std::sin(th), r * c;
                      return psi(v) * beta_radial(r) * r * r;
                    },
                    0.0, b, inner);
              },
              -1.0, 1.0, mid);
        },
        0.0, 2.0 * M_PI, quad);
  }

  const double surface = 2.0 * std::pow(M_PI, 0.5 * d) / std::tgamma(0.5 * d);
  Eigen::VectorXd origin = Eigen::VectorXd::Zero(d);
  const double psi0 = psi(origin);
  const double rhs =
      psi0 * surface *
      integrate(
          [&](double r) {
            return std::pow(r, d - 1) * beta_radial(r) *
                   radial_average_exp(d, sigma * r * r);
          },
          0.0, b, quad);
  return {lhs, rhs};
}

}  // namespace sbtube
