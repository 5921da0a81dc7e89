// qlab: command-line front end for the lattice-count, spectral and CM tools.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "qlab/cmpoints.hpp"
#include "qlab/error.hpp"
#include "qlab/harness.hpp"
#include "qlab/hecke.hpp"
#include "qlab/latcount.hpp"
#include "qlab/orders.hpp"
#include "qlab/precision.hpp"
#include "qlab/spectral.hpp"

using namespace qlab;

namespace {

enum Exit { kOk = 0, kOther = 1, kConfig = 2, kResource = 3, kPrecision = 4 };

// Writes through `fn` into `path`, or to stdout for "" and "-".
template <class Fn>
void emit(const std::string& path, Fn fn) {
  if (path.empty() || path == "-") {
    fn(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path);
  fn(out);
}

std::vector<long> parse_long_list(const std::string& text) {
  std::vector<long> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t pos = 0;
      out.push_back(std::stol(item, &pos));
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("not an integer in list: '" + item + "'");
    }
  }
  return out;
}

KernelSpec make_kernel(const std::string& kind, double X, double delta, const std::string& mass) {
  MassConvention mc;
  if (mass == "unit") mc = MassConvention::unit_mass;
  else if (mass == "half") mc = MassConvention::half_mass;
  else throw ConfigError("--mass must be unit or half");
  if (kind == "disc") return HardDisc{X};
  if (kind == "moll") return Mollifier{delta, mc};
  if (kind == "plus") return Smoothed{X, delta, +1, mc};
  if (kind == "minus") return Smoothed{X, delta, -1, mc};
  throw ConfigError("--kernel must be one of disc, moll, plus, minus");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lattice points, spectral transforms and CM points on arithmetic Shimura curves"};
  app.require_subcommand(1);
  app.set_config("--config", "", "INI file; [section] names match subcommands, flags override");

  long D = 6;
  std::string z_text = "i", w_text, z0_text = "i", out;
  double X = 100.0;
  unsigned workers = 0;
  long long budget = 1'000'000'000;

  auto* count = app.add_subcommand("count", "N(X; z, w) for the maximal order of discriminant D");
  count->add_option("--D", D, "discriminant")->capture_default_str();
  count->add_option("--z", z_text, "base point, e.g. 0.3+1.2i")->capture_default_str();
  count->add_option("--w", w_text, "second point (default z)");
  count->add_option("--X", X, "bound on 2 cosh(distance)")->required();
  count->add_option("--workers", workers, "threads (0 = all)");
  count->add_option("--budget", budget, "enumeration node budget");

  double xmin = 1e3, xmax = 1e5;
  int steps = 32;
  auto* scan = app.add_subcommand("scan", "error term E(X; z, z) on a log-spaced X grid");
  scan->add_option("--D", D)->capture_default_str();
  scan->add_option("--z", z_text)->capture_default_str();
  scan->add_option("--xmin", xmin)->capture_default_str();
  scan->add_option("--xmax", xmax)->capture_default_str();
  scan->add_option("--steps", steps)->capture_default_str();
  scan->add_option("--out", out, "CSV path (stdout if omitted)");
  scan->add_option("--workers", workers);

  std::string in_path, column = "E";
  double fixed_exponent = std::nan("");
  auto* fit = app.add_subcommand("fit", "power-law fit of |column| against X from a CSV");
  fit->add_option("--in", in_path)->required();
  fit->add_option("--column", column)->capture_default_str();
  fit->add_option("--exponent", fixed_exponent, "hold the exponent fixed");

  long d = -4;
  double rmax = 4.0;
  auto* cm = app.add_subcommand("cm", "CM points of discriminant d, as JSON");
  cm->add_option("--D", D)->capture_default_str();
  cm->add_option("--d", d)->required();
  cm->add_option("--z0", z0_text)->capture_default_str();
  cm->add_option("--rmax", rmax)->capture_default_str();
  cm->add_option("--out", out);

  auto* classnum = app.add_subcommand("classnum", "h(D, d) from CM points next to the Eichler value");
  classnum->add_option("--D", D)->capture_default_str();
  classnum->add_option("--d", d)->required();
  classnum->add_option("--rmax", rmax)->capture_default_str();

  std::string dlist_text, kernel_kind = "disc", mass = "unit", xgrid_text;
  double delta = 0.1;
  auto* equidist = app.add_subcommand("equidist", "discrete averages over CM points for several d");
  equidist->add_option("--D", D)->capture_default_str();
  equidist->add_option("--dlist", dlist_text, "comma separated, e.g. -3,-4,-19")->required();
  equidist->add_option("--kernel", kernel_kind)->capture_default_str();
  equidist->add_option("--X", X)->capture_default_str();
  equidist->add_option("--delta", delta)->capture_default_str();
  equidist->add_option("--mass", mass)->capture_default_str();
  equidist->add_option("--w0", z0_text)->capture_default_str();
  equidist->add_option("--rmax", rmax)->capture_default_str();
  equidist->add_option("--xgrid", xgrid_text, "also average E(X; z, z) over CM points at these X");
  equidist->add_option("--out", out);

  double tmin = 0.0, tmax = 50.0, tstep = 0.5;
  auto* shc = app.add_subcommand("shc", "Selberg/Harish-Chandra transform scan over real t");
  shc->add_option("--kernel", kernel_kind)->capture_default_str();
  shc->add_option("--X", X)->capture_default_str();
  shc->add_option("--delta", delta)->capture_default_str();
  shc->add_option("--mass", mass)->capture_default_str();
  shc->add_option("--tmin", tmin)->capture_default_str();
  shc->add_option("--tmax", tmax)->capture_default_str();
  shc->add_option("--tstep", tstep)->capture_default_str();
  shc->add_option("--out", out);

  long long n = 5;
  auto* hecke = app.add_subcommand("hecke", "number of orbits R(1)\\R(n)");
  hecke->add_option("--D", D)->capture_default_str();
  hecke->add_option("--n", n)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfig;
  }

  try {
    extended_precision_bits();  // validates QLAB_PRECISION_BITS up front
    EnumerationOptions eo;
    eo.workers = workers;
    eo.node_budget = budget;

    if (count->parsed()) {
      const UHPoint z = parse_uhpoint(z_text);
      const UHPoint w = w_text.empty() ? z : parse_uhpoint(w_text);
      const OrderBasis basis = catalog_order(D);
      const CountResult r = count_lattice(basis, z, w, X, eo);
      std::printf("D=%ld z=%s w=%s X=%.12g N=%lld boundary_hits=%lld elapsed=%.3fs\n", D,
                  z.to_string().c_str(), w.to_string().c_str(), X, r.count, r.boundary_hits,
                  r.elapsed);
    } else if (scan->parsed()) {
      ScanConfig cfg;
      cfg.D = D;
      cfg.z = parse_uhpoint(z_text);
      cfg.x_min = xmin;
      cfg.x_max = xmax;
      cfg.steps = steps;
      cfg.output = out;
      cfg.workers = workers;
      const auto rows = run_error_scan(cfg);
      emit(out, [&](std::ostream& os) { write_error_csv(os, rows); });
      double cmax = 0.0;
      for (const auto& r : rows) cmax = std::max(cmax, std::abs(r.normalized));
      std::fprintf(stderr, "max |E|/X^(2/3) = %.6g over %zu rows\n", cmax, rows.size());
    } else if (fit->parsed()) {
      const auto samples = read_csv_columns(in_path, column);
      const FitResult f = std::isnan(fixed_exponent) ? fit_power_law(samples)
                                                     : fit_fixed_exponent(samples, fixed_exponent);
      std::printf("coefficient=%.12g exponent=%.12g r_squared=%.6f residual_max=%.6g used=%d dropped=%d\n",
                  f.coefficient, f.exponent, f.r_squared, f.residual_max, f.used, f.dropped);
      if (column == "E" || column == "E_over_X23")
        std::printf("reference exponents: 2/3 (classical bound), 5/8 (conjectured-strength bound)\n");
    } else if (cm->parsed()) {
      CMSearchOptions so;
      so.z0 = parse_uhpoint(z0_text);
      so.r_max = rmax;
      const CMPointSet set = compute_cm_points(catalog_order(D), d, so);
      emit(out, [&](std::ostream& os) { os << cm_to_json(set) << '\n'; });
    } else if (classnum->parsed()) {
      CMSearchOptions so;
      so.r_max = rmax;
      const CMPointSet set = compute_cm_points(catalog_order(D), d, so);
      std::printf("D=%ld d=%ld h=%ld", D, d, set.h);
      if (is_fundamental_discriminant(d)) std::printf(" eichler=%ld", eichler_class_number_oracle(D, d));
      std::printf(" radius=%.2f\n", set.radius);
    } else if (equidist->parsed()) {
      EquidistConfig cfg;
      cfg.D = D;
      cfg.dlist = parse_long_list(dlist_text);
      cfg.kernel = make_kernel(kernel_kind, X, delta, mass);
      cfg.w0 = parse_uhpoint(z0_text);
      cfg.search.r_max = rmax;
      const EquidistReport rep = run_equidistribution(cfg);
      for (long s : rep.skipped) std::fprintf(stderr, "skipping d = %ld (no embedding)\n", s);
      std::string json = equidist_to_json(rep);
      if (!xgrid_text.empty()) {
        std::vector<double> xs;
        for (long v : parse_long_list(xgrid_text)) xs.push_back(static_cast<double>(v));
        const OrderBasis basis = catalog_order(D);
        std::ostringstream rows;
        rows << "d,X,average_E\n";
        for (const auto& r : rep.rows) {
          CMSearchOptions so = cfg.search;
          const CMPointSet set = compute_cm_points(basis, r.d, so);
          for (const auto& a : averaged_error_terms(basis, set, xs, default_eigendata(D)))
            rows << a.d << ',' << a.X << ',' << a.average_E << '\n';
        }
        std::fprintf(stderr, "%s", rows.str().c_str());
      }
      emit(out, [&](std::ostream& os) { os << json << '\n'; });
      std::fprintf(stderr, "%s\n", rep.summary.c_str());
    } else if (shc->parsed()) {
      const auto rows = shc_scan(make_kernel(kernel_kind, X, delta, mass), tmin, tmax, tstep);
      emit(out, [&](std::ostream& os) { write_shc_csv(os, rows); });
    } else if (hecke->parsed()) {
      const HeckeDegree h = hecke_degree(catalog_order(D), n, UHPoint(0.0, 1.0), eo);
      std::printf("D=%ld n=%lld orbits=%lld sigma1=%lld radius=%.2f\n", D, n, h.orbits, sigma1(n),
                  h.radius);
    }
  } catch (const ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kConfig;
  } catch (const DomainError& e) {
    std::fprintf(stderr, "invalid input: %s\n", e.what());
    return kConfig;
  } catch (const ResourceError& e) {
    std::fprintf(stderr, "resource budget exceeded: %s\n", e.what());
    return kResource;
  } catch (const PrecisionError& e) {
    std::fprintf(stderr, "precision failure: %s\n", e.what());
    return kPrecision;
  } catch (const NumericError& e) {
    std::fprintf(stderr, "numerical failure: %s (achieved %.3g)\n", e.what(), e.achieved_tolerance());
    return kPrecision;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kOther;
  }
  return kOk;
}
