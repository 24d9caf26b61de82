#pragma once

#include <filesystem>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cmx/cmx.hpp"
#include "cmx/models.hpp"

namespace cmx {

/// Row-oriented result of an experiment; every cell is already formatted.
struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> notes;  // annotations, not data
};

enum class Format { csv, json };

Format parse_format(std::string_view text);
void write_table(std::ostream& out, const Table& table, Format format);

struct RunSettings {
  int digits = kDefaultDigits;
  int significant = 10;  // decimal digits printed
  bool full = false;     // print at working precision instead
  int printed() const { return full ? digits : significant; }
};

// "5", "2,4,6", or "lo:hi[:step]".
std::vector<int> parse_orders(std::string_view spec);

// Rational grid: "a,b,c" or "lo:hi:n" (n evenly spaced points, ends included).
std::vector<Rational> parse_rational_grid(std::string_view spec);

// Interior angles theta_i = i pi / (2 (n + 1)), i = 1..n, mapped to
// xi = tan^2 theta rounded to 12 significant digits.
std::vector<Rational> theta_grid(int n);

/// Catalog name or path to a model JSON file.
ModelSpec load_model(std::string_view name_or_path, const ModelParams& params = {});
ModelSpec parse_model_json(std::string_view text);

// Cumulants in rational mode whenever the model is exact.
using AnyCumulants = std::variant<ConnectedMoments<Rational>, ConnectedMoments<BigFloat>>;
AnyCumulants compute_cumulants(const ModelSpec& model, int count, int digits);

Table moments_table(const ModelSpec& model, int jmax, const RunSettings& settings);
Table cumulants_table(const ModelSpec& model, int count, const RunSettings& settings);
Table cmx_table(const ModelSpec& model, std::span<const int> orders, const RunSettings& settings);
Table fit_table(const ModelSpec& model, std::span<const int> orders, const RunSettings& settings);
Table classify_table(const ModelSpec& model, std::span<const int> orders, const RunSettings& settings);

struct PadeSettings {
  Rational lo = 0;
  Rational hi = 20;
  int grid = 512;
  bool shoulders = true;
};

// Stationary points of [M/M] for each M; spectral-like models only (rational series).
Table pade_table(const ModelSpec& model, std::span<const int> orders, const PadeSettings& pade, const RunSettings& settings);
Table poles_table(const ModelSpec& model, std::span<const int> orders, const RunSettings& settings);

/// Exponents, A_0 and diagnosis over a grid of one catalog parameter.
/// Points run concurrently; rows come back in grid order. Degenerate pencils
/// become rows with a status, not errors.
Table run_scan(std::string_view family, std::string_view parameter, std::span<const Rational> grid,
               std::span<const int> orders, const ModelParams& fixed, const RunSettings& settings);

/// t, exact E(t) when a spectral oracle exists, then E^(M)(t) per order.
Table run_curve(const ModelSpec& model, std::span<const int> orders, std::span<const Rational> t_grid,
                const RunSettings& settings);

struct ReproduceOptions {
  RunSettings settings;
  int max_order = 30;  // table2 cap
  int theta_points = 256;
};

std::vector<std::string> reproduce_targets();
std::vector<Table> reproduce(std::string_view target, const ReproduceOptions& options);

// Writes one file per table into `out_dir`; returns the paths.
std::vector<std::filesystem::path> run_reproduce(std::string_view target, const std::filesystem::path& out_dir,
                                                 const ReproduceOptions& options, Format format);

}  // namespace cmx
