#pragma once

#include <string>
#include <vector>

#include "sbtube/isometry.hpp"
#include "sbtube/spectral_profile.hpp"

namespace sbtube::csv {

// Shortest round-trippable decimal form; deterministic across runs.
std::string format_double(double v);

// Tube curve: '#'-prefixed metadata lines, then
// R,euclid,geometric,direct,series,beta with empty cells outside a route's
// domain. LF line endings, '.' decimal separator.
std::string tube_curve_csv(const iso::TubeCurve& curve,
                           const std::vector<std::string>& extra_comments = {});

// Two-column serializations with headers "xi,value" / "r,value". Closed-form
// objects are sampled on n uniform nodes of [0, sup].
std::string profile_csv(const SpectralProfile& p, double sup = 0.0,
                        int n = 201);
std::string radial_csv(const RadialFunction& f, double sup = 0.0, int n = 201);

// Generic table with '#' comments, a header line, and empty-cell support.
std::string table_csv(const std::vector<std::string>& comments,
                      const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows);

void write_file(const std::string& path, const std::string& body);

}  // namespace sbtube::csv
