#include "sbtube/root_system.hpp"

#include <cmath>

#include "sbtube/numerics.hpp"

namespace sbtube {

namespace {

Eigen::VectorXd vec1(double x) {
  Eigen::VectorXd v(1);
  v << x;
  return v;
}

Eigen::VectorXd vec2(double x, double y) {
  Eigen::VectorXd v(2);
  v << x, y;
  return v;
}

bool same_matrix(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  return (a - b).cwiseAbs().maxCoeff() < 1e-9;
}

bool contains(const std::vector<Eigen::MatrixXd>& set,
              const Eigen::MatrixXd& m) {
  for (const auto& e : set)
    if (same_matrix(e, m)) return true;
  return false;
}

}  // namespace

RootSystem preset_root_system(const std::string& name) {
  RootSystem rs;
  if (name == "h3" || name == "a1") {
    rs.rank = 1;
    rs.positive_roots = {vec1(1.0)};
  } else if (name == "a1xa1") {
    rs.rank = 2;
    rs.positive_roots = {vec2(1.0, 0.0), vec2(0.0, 1.0)};
  } else if (name == "a2") {
    const double h = std::sqrt(3.0) / 2.0;
    rs.rank = 2;
    rs.positive_roots = {vec2(1.0, 0.0), vec2(-0.5, h), vec2(0.5, h)};
  } else {
    throw ConfigError("unknown root-system preset: " + name);
  }
  return rs;
}

void validate_root_system(const RootSystem& rs) {
  if (rs.rank < 1 || rs.rank > 2)
    throw ConfigError("root system: rank must be 1 or 2");
  const auto& roots = rs.positive_roots;
  if (roots.empty()) throw ConfigError("root system: no positive roots");
  for (const auto& a : roots) {
    if (a.size() != rs.rank)
      throw ConfigError("root system: root dimension mismatch");
    if (a.norm() < 1e-12) throw ConfigError("root system: zero root");
  }
  for (std::size_t i = 0; i < roots.size(); ++i)
    for (std::size_t j = 0; j < roots.size(); ++j) {
      if (i == j) continue;
      // Reduced: no positive root is a positive multiple of another.
      const double c = roots[i].dot(roots[j]) /
                       (roots[i].norm() * roots[j].norm());
      if (c > 1.0 - 1e-12)
        throw ConfigError("root system: not reduced");
    }
  // Closed under mutual reflection up to sign.
  for (const auto& a : roots) {
    const Eigen::MatrixXd s = reflection_matrix(a);
    for (const auto& b : roots) {
      const Eigen::VectorXd r = s * b;
      bool found = false;
      for (const auto& c : roots)
        if ((r - c).norm() < 1e-9 || (r + c).norm() < 1e-9) found = true;
      if (!found)
        throw ConfigError("root system: reflection of a root is not a root");
    }
  }
}

Eigen::MatrixXd reflection_matrix(const Eigen::VectorXd& alpha) {
  const int n = static_cast<int>(alpha.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n);
  m -= 2.0 / alpha.squaredNorm() * (alpha * alpha.transpose());
  return m;
}

WeylGroup build_weyl_group(const RootSystem& rs) {
  constexpr std::size_t kCap = 1024;
  std::vector<Eigen::MatrixXd> elems;
  elems.push_back(Eigen::MatrixXd::Identity(rs.rank, rs.rank));
  for (const auto& a : rs.positive_roots) {
    const Eigen::MatrixXd s = reflection_matrix(a);
    if (!contains(elems, s)) elems.push_back(s);
  }
  bool grew = true;
  while (grew) {
    grew = false;
    const std::size_t n = elems.size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const Eigen::MatrixXd p = elems[i] * elems[j];
        if (!contains(elems, p)) {
          elems.push_back(p);
          grew = true;
          if (elems.size() > kCap)
            throw ClosureOverflow("weyl closure exceeds 1024 elements");
        }
      }
  }
  WeylGroup w;
  w.elements = std::move(elems);
  w.signs.reserve(w.elements.size());
  for (const auto& m : w.elements)
    w.signs.push_back(m.determinant() > 0.0 ? 1 : -1);
  return w;
}

double pi_poly(const RootSystem& rs, const Eigen::VectorXd& v) {
  double p = 1.0;
  for (const auto& a : rs.positive_roots) p *= a.dot(v);
  return p;
}

double rho_sq(const RootSystem& rs) {
  Eigen::VectorXd rho = Eigen::VectorXd::Zero(rs.rank);
  for (const auto& a : rs.positive_roots) rho += a;
  return rho.squaredNorm();
}

double jc_half(const RootSystem& rs, const Eigen::VectorXd& Y) {
  double p = 1.0;
  for (const auto& a : rs.positive_roots) p *= sinc(a.dot(Y));
  return p;
}

double jnc_half(const RootSystem& rs, const Eigen::VectorXd& Y) {
  double p = 1.0;
  for (const auto& a : rs.positive_roots) p *= sinhc(a.dot(Y));
  return p;
}

double polar_density_constant(const RootSystem& rs) {
  const int d = rs.dim_total();
  const int n = rs.rank;
  const double omega_d =
      std::pow(M_PI, 0.5 * d) / std::tgamma(0.5 * d + 1.0);
  const auto wg = build_weyl_group(rs);
  // I_W = integral of pi(u)^2 over the unit sphere of the rank space.
  double iw;
  if (n == 1) {
    iw = 2.0 * pi_poly(rs, Eigen::VectorXd::Ones(1)) *
         pi_poly(rs, Eigen::VectorXd::Ones(1));
  } else {
    QuadratureSpec q;
    q.abs_tol = 1e-13;
    q.rel_tol = 1e-13;
    iw = integrate(
        [&](double th) {
          Eigen::VectorXd u(2);
          u << std::cos(th), std::sin(th);
          const double p = pi_poly(rs, u);
          return p * p;
        },
        0.0, 2.0 * M_PI, q);
  }
  return d * omega_d * static_cast<double>(wg.size()) / iw;
}

double polar_density(const RootSystem& rs, const Eigen::VectorXd& Y) {
  const double p = pi_poly(rs, Y);
  return polar_density_constant(rs) * p * p;
}

double r_max(const RootSystem& rs) {
  double max_len = 0.0;
  for (const auto& a : rs.positive_roots)
    max_len = std::max(max_len, a.norm());
  return M_PI / (2.0 * max_len);
}

bool in_omega(const RootSystem& rs, const Eigen::VectorXd& Y, double scale) {
  if (scale != 1.0 && scale != 2.0)
    throw DomainError("in_omega: scale must be 1 or 2");
  for (const auto& a : rs.positive_roots)
    if (std::abs(a.dot(Y)) >= scale * M_PI / 2.0) return false;
  return true;
}

}  // namespace sbtube
