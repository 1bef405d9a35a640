#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "polya/bounds.hpp"
#include "polya/errors.hpp"
#include "polya/format.hpp"
#include "polya/lattice.hpp"
#include "polya/report.hpp"
#include "polya/special_functions.hpp"
#include "polya/spectrum.hpp"

namespace {

using nlohmann::json;
using namespace polya;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string domain;
  std::string lambda;
  double h = 0.0;
  std::string out;
  std::vector<std::string> formats;
  std::string d_range = "3:24";
  double r = 0.0;
  int count = 20;
  std::vector<double> nus{0.0, 0.5, 1.0, 2.0};
  int samples = 10;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, sep)) parts.push_back(item);
  return parts;
}

double parse_number(const std::string& text, const char* what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw UsageError(std::string("cannot parse ") + what + " from '" + text + "'");
}

// "v" or "v1:v2:n" (n log-spaced values).
std::vector<double> parse_lambdas(const std::string& text) {
  const auto parts = split(text, ':');
  std::vector<double> values;
  if (parts.size() == 1) {
    values = {parse_number(parts[0], "--lambda")};
  } else if (parts.size() == 3) {
    const double lo = parse_number(parts[0], "--lambda");
    const double hi = parse_number(parts[1], "--lambda");
    const double n = parse_number(parts[2], "--lambda");
    if (n < 1 || n != std::floor(n) || !(lo > 0.0) || !(hi >= lo)) {
      throw UsageError("--lambda v1:v2:n needs 0 < v1 <= v2 and a positive integer n");
    }
    values = log_spaced(lo, hi, static_cast<int>(n));
  } else {
    throw UsageError("--lambda expects v or v1:v2:n");
  }
  for (double v : values) {
    if (!(v > 0.0) || !std::isfinite(v)) throw UsageError("--lambda values must be positive");
  }
  return values;
}

std::pair<int, int> parse_range(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 2) throw UsageError("--d-range expects a:b");
  const double a = parse_number(parts[0], "--d-range");
  const double b = parse_number(parts[1], "--d-range");
  if (a != std::floor(a) || b != std::floor(b) || a < 3 || b > 24 || a > b) {
    throw UsageError("--d-range needs integers 3 <= a <= b <= 24");
  }
  return {static_cast<int>(a), static_cast<int>(b)};
}

ConvexPolygond load(const RunConfig& cfg) {
  if (cfg.domain.empty()) throw UsageError("--domain is required");
  return load_domain(cfg.domain);
}

double mesh_size(const RunConfig& cfg, const ConvexPolygond& p) {
  return cfg.h > 0.0 ? cfg.h : p.diameter() / 60.0;
}

bool wants(const RunConfig& cfg, const std::string& format) {
  if (cfg.formats.empty()) return format == "csv";
  for (const auto& f : cfg.formats) {
    if (f == format) return true;
  }
  return false;
}

// Writes to <out>/<stem>.<ext>, or to stdout without --out.
void emit(const RunConfig& cfg, const std::string& stem, const std::string& ext, const std::string& body) {
  if (cfg.out.empty()) {
    std::cout << body;
    return;
  }
  std::filesystem::create_directories(cfg.out);
  const auto path = std::filesystem::path(cfg.out) / (stem + "." + ext);
  std::ofstream file(path);
  if (!file) throw InputError("cannot write " + path.string());
  file << body;
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

int run_bounds(const RunConfig& cfg) {
  struct Row {
    const char* name;
    const char* expression;
    double value;
  };
  const double pi = std::numbers::pi;
  const Row rows[] = {{"kroger", "1/(8 pi)", 1.0 / (8.0 * pi)},
                      {"convex", "1/(2 sqrt(3) j0^2)", convex_coefficient()},
                      {"polya", "1/(4 pi)", 1.0 / (4.0 * pi)}};
  const auto four = [](double v) {
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.4f", v);
    return std::string(buffer);
  };
  if (wants(cfg, "csv")) {
    std::ostringstream csv;
    csv << "bound,expression,coefficient,rounded\n";
    for (const Row& r : rows) csv << r.name << ',' << r.expression << ',' << format_real(r.value) << ',' << four(r.value) << '\n';
    emit(cfg, "bounds", "csv", csv.str());
  }
  if (wants(cfg, "json")) {
    json doc = json::array();
    for (const Row& r : rows) {
      doc.push_back({{"bound", r.name}, {"expression", r.expression}, {"coefficient", round_to_output(r.value)},
                     {"rounded", four(r.value)}});
    }
    emit(cfg, "bounds", "json", dump(doc));
  }
  return kOk;
}

int run_verify(const RunConfig& cfg) {
  const ConvexPolygond p = load(cfg);
  if (cfg.lambda.empty()) throw UsageError("--lambda is required");
  const std::vector<double> lambdas = parse_lambdas(cfg.lambda);
  double lambda_max = 0.0;
  for (double l : lambdas) lambda_max = std::max(lambda_max, l);

  const VerifyOptions options;
  NeumannSpectrum spectrum;
  if (auto exact = analytic_spectrum(p, lambda_max)) {
    spectrum = std::move(*exact);
  } else {
    spectrum = fem_spectrum_covering(p, mesh_size(cfg, p), lambda_max * (1.0 + options.fem_slack));
  }

  std::vector<BoundReport> rows;
  for (double l : lambdas) rows.push_back(verify_main_theorem(p, l, spectrum, options));

  if (wants(cfg, "csv")) {
    std::ostringstream csv;
    write_reports_csv(rows, csv);
    emit(cfg, "verify", "csv", csv.str());
  }
  if (wants(cfg, "json")) {
    json doc = {{"domain", domain_json(p)},
                {"spectrum", spectrum.analytic ? "analytic" : "fem"},
                {"mesh_h", spectrum.analytic ? json(nullptr) : json(round_to_output(spectrum.mesh_h))},
                {"reports", json::array()}};
    for (const BoundReport& r : rows) doc["reports"].push_back(to_json(r));
    emit(cfg, "verify", "json", dump(doc));
  }
  if (wants(cfg, "svg")) {
    try {
      emit(cfg, "verify", "svg", counting_svg(spectrum, p.area(), lambda_max, rows));
    } catch (const std::exception& e) {
      std::cerr << "warning: plot not written: " << e.what() << '\n';
    }
  }

  int status = kOk;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const BoundReport& r = rows[i];
    if (r.consistent()) continue;
    status = kFailed;
    std::cerr << "FAIL row " << i + 1 << ": lambda=" << format_real(r.lambda) << " n_N=" << r.n_N
              << " bound=" << format_real(r.convex) << " packing_l=" << r.packing_l
              << " certificate=" << format_real(r.certificate) << (r.pass ? "" : " [bound]")
              << (r.packing_ok ? "" : " [packing]") << (r.certificate_ok ? "" : " [certificate]")
              << (r.spectrum_ok ? "" : " [spectrum]") << '\n';
  }
  return status;
}

int run_spectrum(const RunConfig& cfg) {
  const ConvexPolygond p = load(cfg);
  if (cfg.count < 1) throw UsageError("--count must be positive");
  NeumannSpectrum s = cfg.lambda.empty()
                          ? fem_spectrum(p, mesh_size(cfg, p), cfg.count)
                          : fem_spectrum_covering(p, mesh_size(cfg, p), parse_lambdas(cfg.lambda).back());
  if (wants(cfg, "csv")) {
    std::ostringstream csv;
    write_spectrum_csv(s, csv);
    emit(cfg, "spectrum", "csv", csv.str());
  }
  if (wants(cfg, "json")) emit(cfg, "spectrum", "json", dump(to_json(s)));
  if (wants(cfg, "svg")) {
    try {
      emit(cfg, "spectrum", "svg", counting_svg(s, p.area(), trust_threshold(s), {}));
    } catch (const std::exception& e) {
      std::cerr << "warning: plot not written: " << e.what() << '\n';
    }
  }
  return kOk;
}

int run_lemma_check(const RunConfig& cfg) {
  if (cfg.samples < 1) throw UsageError("--samples must be positive");
  std::ostringstream csv;
  csv << "nu,s,lhs,rhs,gap,eq22_residual,ok\n";
  json doc = json::array();
  bool all_ok = true;
  for (double nu : cfg.nus) {
    const double j = bessel_zero(nu);
    for (int k = 1; k <= cfg.samples; ++k) {
      const double s = j * k / cfg.samples;
      const Lemma21Gap g = lemma21_gap(nu, s);
      const double eq22 = eq22_residual(nu, s);
      const bool ok = g.lhs <= g.rhs + 1e-9 && (k < cfg.samples || std::abs(g.lhs - g.rhs) <= 1e-8) &&
                      std::abs(eq22) <= 1e-9;
      all_ok = all_ok && ok;
      csv << format_real(nu) << ',' << format_real(s) << ',' << format_real(g.lhs) << ',' << format_real(g.rhs)
          << ',' << format_real(g.rhs - g.lhs) << ',' << format_real(eq22) << ',' << (ok ? "true" : "false") << '\n';
      doc.push_back({{"nu", round_to_output(nu)}, {"s", round_to_output(s)}, {"lhs", round_to_output(g.lhs)},
                     {"rhs", round_to_output(g.rhs)}, {"eq22_residual", round_to_output(eq22)}, {"ok", ok}});
    }
  }
  if (wants(cfg, "csv")) emit(cfg, "lemma", "csv", csv.str());
  if (wants(cfg, "json")) emit(cfg, "lemma", "json", dump(doc));
  if (!all_ok) std::cerr << "FAIL: a lemma-check row is marked ok=false\n";
  return all_ok ? kOk : kFailed;
}

int run_shift_search(const RunConfig& cfg) {
  const ConvexPolygond p = load(cfg);
  double r = cfg.r;
  if (!(r > 0.0)) {
    if (cfg.lambda.empty()) throw UsageError("shift-search needs --r or --lambda");
    r = bessel_j0_zero() / std::sqrt(parse_lambdas(cfg.lambda).front());
  }
  const PackingResultd packing = packing_points(p, r);
  if (wants(cfg, "csv")) {
    std::ostringstream csv;
    csv << "x,y\n";
    for (const Point2d& x : packing.points) csv << format_real(x.x()) << ',' << format_real(x.y()) << '\n';
    emit(cfg, "packing", "csv", csv.str());
  }
  if (wants(cfg, "json")) emit(cfg, "packing", "json", dump(to_json(packing)));
  const bool ok = static_cast<double>(packing.count()) >= packing.guaranteed_min - 1e-9;
  if (!ok) {
    std::cerr << "FAIL: " << packing.count() << " points, guaranteed " << format_real(packing.guaranteed_min) << '\n';
  }
  return ok ? kOk : kFailed;
}

int run_dim_table(const RunConfig& cfg) {
  const auto [a, b] = parse_range(cfg.d_range);
  const std::vector<DimComparison> rows = highdim_table(a, b);
  if (wants(cfg, "csv")) {
    std::ostringstream csv;
    write_dim_table_csv(rows, csv);
    emit(cfg, "dim_table", "csv", csv.str());
  }
  if (wants(cfg, "json")) {
    json doc = json::array();
    for (const DimComparison& r : rows) doc.push_back(to_json(r));
    emit(cfg, "dim_table", "json", dump(doc));
  }
  bool ok = true;
  for (const DimComparison& r : rows) {
    if (!r.strict) {
      ok = false;
      std::cerr << "FAIL: d=" << r.d << " is not strict\n";
    }
  }
  return ok ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified lower bounds for Neumann eigenvalue counts on convex polygons"};
  app.require_subcommand(1);
  // "--h" is the mesh size, so help is long-form only.
  app.set_help_flag("--help", "Print this help message and exit");
  RunConfig cfg;

  const auto add_output = [&cfg](CLI::App* sub, bool with_svg) {
    sub->add_option("--out", cfg.out, "Output directory (stdout when omitted)");
    auto* format = sub->add_option("--format", cfg.formats, "csv, json" + std::string(with_svg ? " or svg" : "") +
                                                                 "; repeatable (default csv)");
    format->check(with_svg ? CLI::IsMember({"csv", "json", "svg"}) : CLI::IsMember({"csv", "json"}));
    format->delimiter(',');
  };

  auto* verify = app.add_subcommand("verify", "Run the packing, certificate and counting pipeline");
  verify->add_option("--domain", cfg.domain, "Domain JSON file")->required();
  verify->add_option("--lambda", cfg.lambda, "v or v1:v2:n (log-spaced)")->required();
  verify->add_option("--h", cfg.h, "Mesh size (default diameter/60)")->check(CLI::PositiveNumber);
  add_output(verify, true);

  auto* spectrum = app.add_subcommand("spectrum", "Lowest FEM Neumann eigenvalues");
  spectrum->add_option("--domain", cfg.domain, "Domain JSON file")->required();
  spectrum->add_option("--h", cfg.h, "Mesh size (default diameter/60)")->check(CLI::PositiveNumber);
  spectrum->add_option("--count", cfg.count, "Number of eigenvalues");
  spectrum->add_option("--lambda", cfg.lambda, "Compute enough eigenvalues to count up to this value");
  add_output(spectrum, true);

  auto* bounds = app.add_subcommand("bounds", "Coefficient table of the planar bounds");
  add_output(bounds, false);

  auto* lemma = app.add_subcommand("lemma-check", "Bessel energy inequality and ODE residual grid");
  lemma->add_option("--nu", cfg.nus, "Orders (default 0 0.5 1 2)");
  lemma->add_option("--samples", cfg.samples, "Points per order in (0, j_nu]");
  add_output(lemma, false);

  auto* shift = app.add_subcommand("shift-search", "Triangular-lattice packing of 2r-separated points");
  shift->add_option("--domain", cfg.domain, "Domain JSON file")->required();
  shift->add_option("--r", cfg.r, "Half the point separation")->check(CLI::PositiveNumber);
  shift->add_option("--lambda", cfg.lambda, "Use r = j0 / sqrt(lambda)");
  add_output(shift, false);

  auto* dims = app.add_subcommand("dim-table", "Packing-based coefficient against the Kroger coefficient");
  dims->add_option("--d-range", cfg.d_range, "a:b with 3 <= a <= b <= 24");
  add_output(dims, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*verify) return run_verify(cfg);
    if (*spectrum) return run_spectrum(cfg);
    if (*bounds) return run_bounds(cfg);
    if (*lemma) return run_lemma_check(cfg);
    if (*shift) return run_shift_search(cfg);
    if (*dims) return run_dim_table(cfg);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const RangeError& e) {
    std::cerr << "error: " << e.what() << " (try a smaller --h)\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "FAIL: " << e.what() << '\n';
    return kFailed;
  }
  return kUsage;
}
