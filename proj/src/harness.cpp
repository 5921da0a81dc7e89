#include "qlab/harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "qlab/error.hpp"

namespace qlab {

namespace {

std::string fmt12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace

std::vector<double> log_spaced(double x_min, double x_max, int steps) {
  if (!(x_min >= 2.0)) throw ConfigError("scan needs xmin >= 2");
  if (steps < 2) throw ConfigError("scan needs steps >= 2");
  if (!(x_max >= x_min)) throw ConfigError("scan needs xmax >= xmin");
  std::vector<double> xs;
  const double l0 = std::log(x_min), l1 = std::log(x_max);
  for (int i = 0; i < steps; ++i) {
    const double v = i == 0 ? x_min : i == steps - 1 ? x_max : std::exp(l0 + (l1 - l0) * i / (steps - 1));
    xs.push_back(v);
  }
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (!(xs[i] > xs[i - 1])) throw ConfigError("scan grid contains duplicate X values");
  return xs;
}

std::vector<ErrorSample> run_error_scan(const ScanConfig& cfg) {
  const auto xs = log_spaced(cfg.x_min, cfg.x_max, cfg.steps);
  const OrderBasis basis = catalog_order(cfg.D);
  const auto eig = cfg.eigendata.empty() ? default_eigendata(cfg.D) : cfg.eigendata;
  auto rows = error_terms(basis, cfg.z, xs, eig, {.workers = cfg.workers});
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.X < b.X; });
  return rows;
}

void write_error_csv(std::ostream& os, const std::vector<ErrorSample>& rows) {
  os << "X,N,M,E,E_over_X23\n";
  for (const auto& r : rows)
    os << fmt12(r.X) << ',' << r.N << ',' << fmt12(r.M) << ',' << fmt12(r.E) << ','
       << fmt12(r.normalized) << '\n';
}

void write_shc_csv(std::ostream& os, const std::vector<ShcRow>& rows) {
  os << "t_re,t_im,h_re,h_im\n";
  for (const auto& r : rows)
    os << fmt12(r.t_re) << ',' << fmt12(r.t_im) << ',' << fmt12(r.h_re) << ',' << fmt12(r.h_im)
       << '\n';
}

void write_kernel_csv(std::ostream& os, const RadialKernel& k) {
  os << "u,k\n";
  if (k.is_indicator()) {
    os << fmt12(0.0) << ',' << fmt12(k.height()) << '\n';
    os << fmt12(k.support()) << ',' << fmt12(k.height()) << '\n';
    return;
  }
  for (std::size_t i = 0; i < k.nodes().size(); ++i)
    os << fmt12(k.nodes()[i]) << ',' << fmt12(k.values()[i]) << '\n';
}

std::vector<std::pair<double, double>> read_csv_columns(const std::string& path,
                                                        const std::string& column) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  auto split = [](const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    return cells;
  };
  std::string line;
  if (!std::getline(in, line)) throw ConfigError(path + " is empty");
  const auto header = split(line);
  auto it = std::find(header.begin(), header.end(), column);
  if (it == header.end()) throw ConfigError("column '" + column + "' not found in " + path);
  const std::size_t col = static_cast<std::size_t>(it - header.begin());
  std::vector<std::pair<double, double>> out;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() <= col) throw ConfigError(path + ":" + std::to_string(lineno) + ": short row");
    try {
      out.emplace_back(std::stod(cells[0]), std::stod(cells[col]));
    } catch (const std::exception&) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": not a number");
    }
  }
  return out;
}

FitResult fit_power_law(const std::vector<std::pair<double, double>>& samples) {
  FitResult f;
  std::vector<double> lx, ly;
  for (const auto& [x, v] : samples) {
    if (v == 0.0) {
      ++f.dropped;
      continue;
    }
    if (!(x > 0.0)) throw DomainError("fit_power_law: X must be positive");
    lx.push_back(std::log(x));
    ly.push_back(std::log(std::abs(v)));
  }
  f.used = static_cast<int>(lx.size());
  if (f.used < 3) throw DomainError("fit_power_law: need at least 3 non-zero values");
  const double n = f.used;
  double mx = 0, my = 0;
  for (int i = 0; i < f.used; ++i) mx += lx[i] / n, my += ly[i] / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (int i = 0; i < f.used; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
    syy += (ly[i] - my) * (ly[i] - my);
  }
  if (sxx == 0.0) throw DomainError("fit_power_law: all X values coincide");
  f.exponent = sxy / sxx;
  const double intercept = my - f.exponent * mx;
  f.coefficient = std::exp(intercept);
  double ss_res = 0.0;
  for (int i = 0; i < f.used; ++i) {
    const double r = ly[i] - (intercept + f.exponent * lx[i]);
    ss_res += r * r;
    f.residual_max = std::max(f.residual_max, std::abs(r));
  }
  f.r_squared = syy > 0.0 ? std::clamp(1.0 - ss_res / syy, 0.0, 1.0) : 1.0;
  return f;
}

FitResult fit_fixed_exponent(const std::vector<std::pair<double, double>>& samples, double exponent) {
  FitResult f;
  f.exponent = exponent;
  double num = 0.0, den = 0.0;
  std::vector<std::pair<double, double>> kept;
  for (const auto& [x, v] : samples) {
    if (v == 0.0) {
      ++f.dropped;
      continue;
    }
    const double p = std::pow(x, exponent);
    num += std::abs(v) * p;
    den += p * p;
    kept.emplace_back(x, std::abs(v));
  }
  f.used = static_cast<int>(kept.size());
  if (f.used < 3) throw DomainError("fit_fixed_exponent: need at least 3 non-zero values");
  f.coefficient = num / den;
  double my = 0.0;
  for (const auto& [x, v] : kept) my += std::log(v) / f.used;
  double ss_res = 0.0, ss_tot = 0.0;
  for (const auto& [x, v] : kept) {
    const double r = std::log(v) - std::log(f.coefficient * std::pow(x, exponent));
    ss_res += r * r;
    ss_tot += (std::log(v) - my) * (std::log(v) - my);
    f.residual_max = std::max(f.residual_max, std::abs(r));
  }
  f.r_squared = ss_tot > 0.0 ? std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0) : 1.0;
  return f;
}

EquidistReport run_equidistribution(const EquidistConfig& cfg) {
  EquidistReport rep;
  if (cfg.dlist.empty()) {
    rep.summary = "no discriminants requested";
    return rep;
  }
  const OrderBasis basis = catalog_order(cfg.D);
  const RadialKernel k = radial_kernel(cfg.kernel);
  for (long d : cfg.dlist) {
    if (d >= 0 || !is_discriminant(d) || !embedding_criterion(cfg.D, d)) {
      rep.skipped.push_back(d);
      continue;
    }
    const CMPointSet set = compute_cm_points(basis, d, cfg.search);
    const DiscreteAverage avg = discrete_average(basis, set, cfg.w0, k);
    EquidistRow row;
    row.d = d;
    row.h = set.h;
    row.oracle = is_fundamental_discriminant(d) ? eichler_class_number_oracle(cfg.D, d) : 0;
    row.average = avg.average;
    row.integral = avg.integral;
    row.discrepancy = avg.discrepancy;
    rep.rows.push_back(row);
  }
  std::optional<double> ratio;
  bool consistent = true;
  for (const auto& r : rep.rows) {
    if (r.oracle == 0) continue;
    const double q = static_cast<double>(r.h) / static_cast<double>(r.oracle);
    if (!ratio) ratio = q;
    else if (std::abs(*ratio - q) > 1e-12) consistent = false;
  }
  if (ratio && consistent) rep.kappa = ratio;
  std::ostringstream s;
  s << rep.rows.size() << " discriminants, " << rep.skipped.size() << " skipped; ";
  if (rep.kappa) s << "h / Eichler = " << *rep.kappa << " for every row";
  else if (ratio) s << "h / Eichler ratio NOT constant";
  else s << "no fundamental discriminant to compare";
  rep.summary = s.str();
  return rep;
}

std::string equidist_to_json(const EquidistReport& report) {
  nlohmann::ordered_json j;
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& r : report.rows)
    j["rows"].push_back({{"d", r.d},
                         {"h", r.h},
                         {"eichler", r.oracle},
                         {"average", r.average},
                         {"integral", r.integral},
                         {"discrepancy", r.discrepancy}});
  j["skipped"] = report.skipped;
  if (report.kappa) j["kappa"] = *report.kappa;
  else j["kappa"] = nullptr;
  j["summary"] = report.summary;
  return j.dump(2);
}

std::vector<AveragedErrorRow> averaged_error_terms(const OrderBasis& basis, const CMPointSet& pts,
                                                   const std::vector<double>& Xs,
                                                   const std::vector<EigenDatum>& eigendata,
                                                   const std::optional<RadialKernel>& weight,
                                                   const UHPoint& w0) {
  std::vector<double> sums(Xs.size(), 0.0);
  for (const auto& p : pts.points) {
    const double f = weight ? automorphic_kernel_sum(basis, *weight, w0, p.point) : 1.0;
    const auto es = error_terms(basis, p.point, Xs, eigendata);
    for (std::size_t i = 0; i < Xs.size(); ++i) sums[i] += f * es[i].E;
  }
  std::vector<AveragedErrorRow> rows;
  for (std::size_t i = 0; i < Xs.size(); ++i)
    rows.push_back({pts.d, Xs[i], pts.points.empty() ? 0.0 : sums[i] / pts.points.size()});
  return rows;
}

}  // namespace qlab
