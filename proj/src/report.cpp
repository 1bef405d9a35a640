#include "polya/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <ostream>
#include <sstream>

#include "polya/errors.hpp"

namespace polya {
namespace {

using nlohmann::json;

json real_json(double x) {
  if (!std::isfinite(x)) return nullptr;
  return round_to_output(x);
}

// Twelve-digit output can end in zeros that carry no information.
std::string strip_trailing_zeros(std::string text) {
  if (text.find('.') == std::string::npos) return text;
  while (text.back() == '0') text.pop_back();
  if (text.back() == '.') text.pop_back();
  return text;
}

json point_json(const Point2d& p) { return json::array({real_json(p.x()), real_json(p.y())}); }

}  // namespace

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buffer[64];
  int precision = 1;
  for (; precision < 12; ++precision) {
    std::snprintf(buffer, sizeof buffer, "%.*e", precision - 1, x);
    if (std::strtod(buffer, nullptr) == x) break;
  }
  std::snprintf(buffer, sizeof buffer, "%.*e", precision - 1, x);
  const int exponent = std::atoi(std::strchr(buffer, 'e') + 1);
  if (exponent < -5 || exponent >= 15) {
    std::string text = buffer;
    const std::size_t e = text.find('e');
    return strip_trailing_zeros(text.substr(0, e)) + text.substr(e);
  }
  // Fixed notation with exactly the digits found above.
  std::snprintf(buffer, sizeof buffer, "%.*f", std::max(0, precision - 1 - exponent), x);
  return strip_trailing_zeros(buffer);
}

double round_to_output(double x) {
  if (!std::isfinite(x)) return x;
  return std::strtod(format_real(x).c_str(), nullptr);
}

ConvexPolygond parse_domain(const json& doc) {
  const json* list = &doc;
  if (doc.is_object()) {
    if (!doc.contains("vertices")) throw InputError("domain: object without \"vertices\"");
    list = &doc.at("vertices");
  }
  if (!list->is_array()) throw InputError("domain: vertices must be an array of [x, y] pairs");
  std::vector<Point2d> vertices;
  for (const json& v : *list) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
      throw InputError("domain: every vertex must be a numeric [x, y] pair");
    }
    vertices.emplace_back(v[0].get<double>(), v[1].get<double>());
  }
  try {
    return ConvexPolygond(std::move(vertices));
  } catch (const PreconditionError& e) {
    throw InputError(std::string("domain: ") + e.what());
  }
}

ConvexPolygond load_domain(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open domain file: " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::exception& e) {
    throw InputError("domain file " + path + " is not valid JSON: " + e.what());
  }
  return parse_domain(doc);
}

json domain_json(const ConvexPolygond& p) {
  json vertices = json::array();
  for (const Point2d& v : p.vertices()) vertices.push_back(point_json(v));
  return {{"vertices", vertices}};
}

json to_json(const PackingResultd& packing) {
  json points = json::array();
  for (const Point2d& x : packing.points) points.push_back(point_json(x));
  return {{"points", points},
          {"r", real_json(packing.r)},
          {"b", point_json(packing.shift)},
          {"count", packing.count()},
          {"guaranteed_min", real_json(packing.guaranteed_min)}};
}

json to_json(const TestFunctionPack& pack, double certificate) {
  json centers = json::array();
  for (const Point2d& x : pack.centers) centers.push_back(point_json(x));
  json quotients = json::array();
  for (const RayleighQuotient& q : pack.quotients) quotients.push_back(real_json(q.quotient));
  return {{"centers", centers},
          {"r", real_json(pack.r)},
          {"quotients", quotients},
          {"certificate", real_json(certificate)}};
}

json to_json(const BoundReport& report) {
  return {{"lambda", real_json(report.lambda)},
          {"area", real_json(report.area)},
          {"n_N", report.n_N},
          {"bound_polya", real_json(report.polya)},
          {"bound_kroger", real_json(report.kroger)},
          {"bound_convex", real_json(report.convex)},
          {"packing_l", report.packing_l},
          {"certificate", real_json(report.certificate)},
          {"pass", report.pass}};
}

json to_json(const DimComparison& row) {
  return {{"d", row.d},
          {"kroger_coeff", real_json(row.kroger_coeff)},
          {"levenshtein_density", real_json(row.levenshtein_density)},
          {"remark_rhs", real_json(row.remark_rhs)},
          {"strict", row.strict}};
}

json to_json(const NeumannSpectrum& s) {
  json values = json::array();
  for (double mu : s.eigenvalues) values.push_back(real_json(mu));
  return {{"eigenvalues", values},
          {"mesh_h", real_json(s.mesh_h)},
          {"domain_area", real_json(s.domain_area)},
          {"analytic", s.analytic}};
}

void write_reports_csv(const std::vector<BoundReport>& rows, std::ostream& out) {
  out << "lambda,area,n_N,bound_polya,bound_kroger,bound_convex,packing_l,certificate,pass\n";
  for (const BoundReport& r : rows) {
    out << format_real(r.lambda) << ',' << format_real(r.area) << ',' << r.n_N << ','
        << format_real(r.polya) << ',' << format_real(r.kroger) << ',' << format_real(r.convex) << ','
        << r.packing_l << ',' << format_real(r.certificate) << ',' << (r.pass ? "true" : "false") << '\n';
  }
}

void write_dim_table_csv(const std::vector<DimComparison>& rows, std::ostream& out) {
  out << "d,kroger_coeff,levenshtein_density,remark_rhs,strict\n";
  for (const DimComparison& r : rows) {
    out << r.d << ',' << format_real(r.kroger_coeff) << ',' << format_real(r.levenshtein_density) << ','
        << format_real(r.remark_rhs) << ',' << (r.strict ? "true" : "false") << '\n';
  }
}

std::string counting_svg(const NeumannSpectrum& spectrum, double area, double lambda_max,
                         const std::vector<BoundReport>& rows) {
  constexpr double kWidth = 640, kHeight = 420, kMargin = 50;
  const double x_max = std::max(lambda_max, 1e-12);
  const double n_top = static_cast<double>(counting_function(spectrum, std::min(lambda_max, spectrum.complete_up_to)));
  const WeylBounds top = bound_values(area, x_max, 2);
  const double y_max = std::max({n_top, top.polya, 1.0}) * 1.05;
  const auto sx = [&](double lambda) { return kMargin + (kWidth - 2 * kMargin) * lambda / x_max; };
  const auto sy = [&](double n) { return kHeight - kMargin - (kHeight - 2 * kMargin) * n / y_max; };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      << "<line x1=\"" << kMargin << "\" y1=\"" << sy(0) << "\" x2=\"" << kWidth - kMargin << "\" y2=\""
      << sy(0) << "\" stroke=\"black\"/>\n"
      << "<line x1=\"" << kMargin << "\" y1=\"" << sy(0) << "\" x2=\"" << kMargin << "\" y2=\""
      << kMargin << "\" stroke=\"black\"/>\n"
      << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 12 << "\" text-anchor=\"middle\">lambda (max "
      << format_real(x_max) << ")</text>\n"
      << "<text x=\"14\" y=\"" << kHeight / 2 << "\" transform=\"rotate(-90 14 " << kHeight / 2
      << ")\" text-anchor=\"middle\">N(lambda) (max " << format_real(y_max) << ")</text>\n";

  svg << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" points=\"";
  double level = 0.0;
  double x = 0.0;
  for (double mu : spectrum.eigenvalues) {
    if (mu > x_max) break;
    svg << format_real(sx(x)) << ',' << format_real(sy(level)) << ' ' << format_real(sx(mu)) << ','
        << format_real(sy(level)) << ' ';
    level += 1.0;
    x = mu;
  }
  svg << format_real(sx(x)) << ',' << format_real(sy(level)) << ' ' << format_real(sx(x_max)) << ','
      << format_real(sy(level)) << "\"/>\n";

  const struct {
    const char* name;
    const char* color;
    double value;
  } lines[] = {{"polya", "#1f77b4", top.polya},
               {"kroger", "#2ca02c", top.kroger},
               {"convex", "#d62728", convex_bound(area, x_max)}};
  double legend_y = kMargin;
  for (const auto& line : lines) {
    svg << "<line x1=\"" << sx(0) << "\" y1=\"" << sy(0) << "\" x2=\"" << sx(x_max) << "\" y2=\""
        << format_real(sy(line.value)) << "\" stroke=\"" << line.color << "\" stroke-dasharray=\"6 3\"/>\n"
        << "<text x=\"" << kMargin + 10 << "\" y=\"" << legend_y << "\" fill=\"" << line.color << "\">"
        << line.name << "</text>\n";
    legend_y += 16;
  }
  for (const BoundReport& row : rows) {
    if (row.lambda > x_max) continue;
    svg << "<circle cx=\"" << format_real(sx(row.lambda)) << "\" cy=\"" << format_real(sy(double(row.n_N)))
        << "\" r=\"3\" fill=\"" << (row.pass ? "black" : "red") << "\"/>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace polya
