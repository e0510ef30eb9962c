#pragma once

#include <string>

#include "elastica/analysis.hpp"
#include "elastica/geometry.hpp"
#include "elastica/optimal_arc.hpp"
#include "elastica/solver.hpp"

namespace elastica::io {

// Body files. CSV: header-less "x,y" lines, counterclockwise, newline
// terminated, full precision (bodies round-trip bit-exactly). JSON: a plain
// array of [x, y] pairs.
void write_body_csv(const std::string& path, const geom::ConvexBody& body);
void write_body_json(const std::string& path, const geom::ConvexBody& body);

// Reads either format; throws ParseError (with 1-based line number for CSV)
// on malformed input. The returned body is NOT validated here so that the
// caller can map convexity violations to their own error channel.
geom::ConvexBody read_body_csv(const std::string& path);
geom::ConvexBody read_body_json(const std::string& path);
geom::ConvexBody read_body_auto(const std::string& path);  // by extension

// Convenience SVG rendering: the domain outline, the inscribed unit disk and
// the contact points. CSV/JSON are the contract formats; this is for eyes.
void write_domain_svg(const std::string& path, const arc::OptimalDomain& domain);

// Report serialization. All reals printed with 9 significant digits.
std::string functionals_json(const geom::FunctionalsReport& f);
std::string inequality_json(const analysis::InequalityReport& rep);
std::string solution_json(const solver::ElasticaSolution& sol, bool with_theta = true);
std::string ealpha_csv(const std::vector<analysis::EAlphaRow>& rows);

}  // namespace elastica::io
