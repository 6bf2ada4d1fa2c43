#pragma once

// Sectioned plain-text file formats.
//
// Manifold file:
//   [manifold]
//   name = K3
//   chi = 24
//   sigma = -16
//   b_plus = 3
//   sw_simple_type = true
//   consistency = synthetic        (optional, default topological)
//   [form]
//   rank = 22
//   <rank gram rows, space-separated integers>
//   [w2]
//   <bit row>
//   [spinc]                        (repeated)
//   c1 = <integer row>
//   sw = <integer>
//
// KM file:
//   [km]
//   w = <integer row>
//   [term]                         (repeated)
//   a = <rational>
//   K = <integer row>
//
// Observation file:
//   [fit]
//   delta = 4
//   m = 0
//   [observation]                  (repeated)
//   label = <text>                 (optional)
//   manifold = <path, relative to the observation file>
//   w = <integer row>
//   lambda = <integer row>
//   lhs = witten | table
//   [lhs]                          (only after lhs = table)
//   <canonical series term lines, or 0>
//
// '#' starts a comment. Errors are Error(load) carrying the line number.

#include <filesystem>
#include <string>
#include <string_view>

#include "dsw/invariants.hpp"
#include "dsw/universal_fit.hpp"

namespace dsw {

ManifoldData parse_manifold(std::string_view text, const std::string& source = "<input>",
                            const ValidationOptions& opts = {});
ManifoldData load_manifold(const std::filesystem::path& path, const ValidationOptions& opts = {});
std::string serialize(const ManifoldData& m);

KMData parse_km(std::string_view text, const std::string& source = "<input>");
KMData load_km(const std::filesystem::path& path);
std::string serialize(const KMData& km);

/// Manifold paths resolve against `base_dir`.
FitProblem parse_fit_problem(std::string_view text, const std::filesystem::path& base_dir,
                             const std::string& source = "<input>");
FitProblem load_fit_problem(const std::filesystem::path& path);

/// "1,-2,0" -> (1,-2,0). Throws Error(invalid_argument).
LatticeVector parse_vector_csv(std::string_view text);

std::string read_file(const std::filesystem::path& path);

} // namespace dsw
