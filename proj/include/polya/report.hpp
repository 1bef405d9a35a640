#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "polya/bounds.hpp"
#include "polya/format.hpp"
#include "polya/geometry.hpp"
#include "polya/lattice.hpp"
#include "polya/spectrum.hpp"
#include "polya/test_functions.hpp"

namespace polya {

/// Reads {"vertices": [[x, y], ...]} or a bare [[x, y], ...] array. Throws InputError.
ConvexPolygond parse_domain(const nlohmann::json& doc);
ConvexPolygond load_domain(const std::string& path);
nlohmann::json domain_json(const ConvexPolygond& p);

nlohmann::json to_json(const PackingResultd& packing);
nlohmann::json to_json(const TestFunctionPack& pack, double certificate);
nlohmann::json to_json(const BoundReport& report);
nlohmann::json to_json(const DimComparison& row);
nlohmann::json to_json(const NeumannSpectrum& s);

/// Columns: lambda,area,n_N,bound_polya,bound_kroger,bound_convex,packing_l,certificate,pass
void write_reports_csv(const std::vector<BoundReport>& rows, std::ostream& out);

/// Columns: d,kroger_coeff,levenshtein_density,remark_rhs,strict
void write_dim_table_csv(const std::vector<DimComparison>& rows, std::ostream& out);

/// Step plot of N(lambda) from the spectrum on [0, lambda_max] against the three linear bounds,
/// with report rows marked. Returns the SVG document.
std::string counting_svg(const NeumannSpectrum& spectrum, double area, double lambda_max,
                         const std::vector<BoundReport>& rows);

}  // namespace polya
