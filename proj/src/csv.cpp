#include "sbtube/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace sbtube::csv {

std::string format_double(double v) {
  char buf[40];
  for (int prec = 15; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof(buf), "%.*g", prec, v);
    double back = 0.0;
    std::sscanf(buf, "%lf", &back);
    if (back == v) break;
  }
  return buf;
}

std::string tube_curve_csv(const iso::TubeCurve& curve,
                           const std::vector<std::string>& extra_comments) {
  std::ostringstream os;
  os << "# t = " << format_double(curve.t) << "\n";
  os << "# profile = " << curve.profile_desc << "\n";
  os << "# abs_tol = " << format_double(curve.quad.abs_tol)
     << ", rel_tol = " << format_double(curve.quad.rel_tol)
     << ", max_panels = " << curve.quad.max_panels << "\n";
  os << "# xi_cutoff = " << format_double(curve.xi_cutoff)
     << ", tail_bound = " << format_double(curve.tail_bound) << "\n";
  for (const auto& c : extra_comments) os << "# " << c << "\n";
  os << "R";
  for (const auto& name : iso::TubeCurve::route_names()) os << "," << name;
  os << "\n";
  for (std::size_t i = 0; i < curve.R_values.size(); ++i) {
    os << format_double(curve.R_values[i]);
    for (const auto& name : iso::TubeCurve::route_names()) {
      os << ",";
      const auto& col = curve.routes.at(name);
      if (i < col.size() && col[i]) os << format_double(*col[i]);
    }
    os << "\n";
  }
  return os.str();
}

std::string profile_csv(const SpectralProfile& p, double sup, int n) {
  if (sup <= 0.0) sup = p.compact_support() ? p.support_sup() : 10.0;
  std::ostringstream os;
  os << "xi,value\n";
  for (int i = 0; i < n; ++i) {
    const double xi = sup * i / (n - 1);
    os << format_double(xi) << "," << format_double(p.value(xi)) << "\n";
  }
  return os.str();
}

std::string radial_csv(const RadialFunction& f, double sup, int n) {
  if (sup <= 0.0) sup = f.is_heat() ? 12.0 : f.support_sup();
  std::ostringstream os;
  os << "r,value\n";
  for (int i = 0; i < n; ++i) {
    const double r = sup * i / (n - 1);
    os << format_double(r) << "," << format_double(f.value(r)) << "\n";
  }
  return os.str();
}

std::string table_csv(const std::vector<std::string>& comments,
                      const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows) {
  std::ostringstream os;
  for (const auto& c : comments) os << "# " << c << "\n";
  for (std::size_t j = 0; j < header.size(); ++j)
    os << (j ? "," : "") << header[j];
  os << "\n";
  for (const auto& row : rows) {
    for (std::size_t j = 0; j < row.size(); ++j) os << (j ? "," : "") << row[j];
    os << "\n";
  }
  return os.str();
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file: " + path);
  out << body;
}

}  // namespace sbtube::csv
