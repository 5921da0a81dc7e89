#pragma once

// Experiment drivers: error-term scans, power-law fits, equidistribution
// sweeps, and their CSV/JSON output.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qlab/cmpoints.hpp"
#include "qlab/spectral.hpp"

namespace qlab {

struct ScanConfig {
  long D = 6;
  UHPoint z{0.0, 1.0};
  double x_min = 1e3;
  double x_max = 1e5;
  int steps = 32;
  std::vector<EigenDatum> eigendata;  // empty: constant mode only
  std::uint64_t seed = 0;
  std::string output;
  unsigned workers = 0;
};

// steps log-spaced values from x_min to x_max inclusive. ConfigError if
// x_min < 2, steps < 2, x_max < x_min or two values coincide.
std::vector<double> log_spaced(double x_min, double x_max, int steps);

// Rows sorted by X; identical to error_term at each X.
std::vector<ErrorSample> run_error_scan(const ScanConfig& cfg);

// Header X,N,M,E,E_over_X23 then one %.12g row per sample.
void write_error_csv(std::ostream& os, const std::vector<ErrorSample>& rows);
void write_shc_csv(std::ostream& os, const std::vector<ShcRow>& rows);
void write_kernel_csv(std::ostream& os, const RadialKernel& k);

// (first column, named column) pairs from a CSV with a header line.
std::vector<std::pair<double, double>> read_csv_columns(const std::string& path,
                                                        const std::string& column);

struct FitResult {
  double coefficient = 0.0;
  double exponent = 0.0;
  double r_squared = 0.0;
  double residual_max = 0.0;  // max |log residual|
  int used = 0;
  int dropped = 0;  // zero values left out
};

// Least squares of log|value| on log X. Needs >= 3 non-zero values.
FitResult fit_power_law(const std::vector<std::pair<double, double>>& samples);

// value ~ c X^exponent with the exponent held fixed; c by least squares on
// the values themselves, r_squared and residual_max on the log scale.
FitResult fit_fixed_exponent(const std::vector<std::pair<double, double>>& samples, double exponent);

struct EquidistRow {
  long d = 0;
  long h = 0;
  long oracle = 0;  // Eichler value
  double average = 0.0;
  double integral = 0.0;
  double discrepancy = 0.0;
};

struct EquidistReport {
  std::vector<EquidistRow> rows;
  std::vector<long> skipped;  // inadmissible d
  std::optional<double> kappa;  // h / oracle when one ratio fits every row
  std::string summary;
};

struct EquidistConfig {
  long D = 6;
  std::vector<long> dlist;
  KernelSpec kernel = HardDisc{20.0};
  UHPoint w0{0.0, 1.0};
  CMSearchOptions search;
};

EquidistReport run_equidistribution(const EquidistConfig& cfg);
std::string equidist_to_json(const EquidistReport& report);

struct AveragedErrorRow {
  long d = 0;
  double X = 0.0;
  double average_E = 0.0;  // (1/h) sum f(z) E(X; z, z) over the CM points
};

// f = 1 when `weight` is empty, otherwise f(z) = sum_gamma k(u(gamma z, w0)).
std::vector<AveragedErrorRow> averaged_error_terms(const OrderBasis& basis, const CMPointSet& pts,
                                                   const std::vector<double>& Xs,
                                                   const std::vector<EigenDatum>& eigendata,
                                                   const std::optional<RadialKernel>& weight = {},
                                                   const UHPoint& w0 = {});

}  // namespace qlab
