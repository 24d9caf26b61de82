// cmx: connected-moments expansion toolkit.

#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "cmx/errors.hpp"
#include "cmx/experiments.hpp"

namespace {

constexpr int kUsage = 2;
constexpr int kNumerical = 3;

struct Options {
  std::string model;
  std::vector<std::string> params;
  int digits = cmx::kDefaultDigits;
  std::string orders;
  std::string out;
  std::string format = "csv";
  int max_order = 30;
  bool full = false;
  int jmax = 10;
  std::string grid;
  std::string scan_param = "xi";
  int theta = 256;
  std::string t_grid = "0:6:61";
  std::string window = "0:20";
  int pade_grid = 512;
  bool poles = false;
  bool no_shoulders = false;
  std::string target;
};

cmx::ModelParams parse_params(const std::vector<std::string>& items) {
  cmx::ModelParams params;
  for (const auto& item : items) {
    auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw cmx::UsageError("--param expects key=value, got '" + item + "'");
    params[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return params;
}

cmx::ModelSpec model_of(const Options& o) {
  if (o.model.empty()) throw cmx::UsageError("--model is required");
  return cmx::load_model(o.model, parse_params(o.params));
}

std::vector<int> orders_of(const Options& o, const char* fallback) {
  return cmx::parse_orders(o.orders.empty() ? fallback : o.orders);
}

void emit(const Options& o, const cmx::Table& table) {
  const auto format = cmx::parse_format(o.format);
  for (const auto& note : table.notes) std::cerr << "note: " << note << '\n';
  if (o.out.empty()) {
    cmx::write_table(std::cout, table, format);
    return;
  }
  std::ofstream file(o.out);
  if (!file) throw cmx::UsageError("cannot write " + o.out);
  cmx::write_table(file, table, format);
}

cmx::PadeSettings pade_settings(const Options& o) {
  auto colon = o.window.find(':');
  if (colon == std::string::npos) throw cmx::UsageError("--window expects lo:hi");
  cmx::PadeSettings s;
  s.lo = cmx::parse_rational(o.window.substr(0, colon));
  s.hi = cmx::parse_rational(o.window.substr(colon + 1));
  s.grid = o.pade_grid;
  s.shoulders = !o.no_shoulders;
  return s;
}

int run(const std::string& command, const Options& o) {
  cmx::RunSettings settings{o.digits, 10, o.full};
  if (command == "moments") {
    emit(o, cmx::moments_table(model_of(o), o.jmax, settings));
  } else if (command == "cumulants") {
    emit(o, cmx::cumulants_table(model_of(o), o.jmax, settings));
  } else if (command == "cmx") {
    emit(o, cmx::cmx_table(model_of(o), orders_of(o, "1:10"), settings));
  } else if (command == "fit") {
    emit(o, cmx::fit_table(model_of(o), orders_of(o, "2"), settings));
  } else if (command == "classify") {
    emit(o, cmx::classify_table(model_of(o), orders_of(o, "2"), settings));
  } else if (command == "pade") {
    auto orders = orders_of(o, "5:8");
    emit(o, o.poles ? cmx::poles_table(model_of(o), orders, settings)
                    : cmx::pade_table(model_of(o), orders, pade_settings(o), settings));
  } else if (command == "scan") {
    if (o.model.empty()) throw cmx::UsageError("--model is required (a catalog family such as diagonal-xi)");
    auto grid = o.grid.empty() ? cmx::theta_grid(o.theta) : cmx::parse_rational_grid(o.grid);
    emit(o, cmx::run_scan(o.model, o.scan_param, grid, orders_of(o, "2"), parse_params(o.params), settings));
  } else if (command == "curve") {
    emit(o, cmx::run_curve(model_of(o), orders_of(o, "2"), cmx::parse_rational_grid(o.t_grid), settings));
  } else if (command == "reproduce") {
    cmx::ReproduceOptions ro{settings, o.max_order, o.theta};
    const auto format = cmx::parse_format(o.format);
    if (o.out.empty()) {
      for (const auto& table : cmx::reproduce(o.target, ro)) {
        for (const auto& note : table.notes) std::cerr << "note: " << note << '\n';
        if (format == cmx::Format::csv) std::cout << "# " << table.name << '\n';
        cmx::write_table(std::cout, table, format);
      }
    } else {
      for (const auto& path : cmx::run_reproduce(o.target, o.out, ro, format)) std::cerr << "wrote " << path.string() << '\n';
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Connected-moments expansion: moments, cumulants, CMX approximants, exponential fits, Pade"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&o](CLI::App* sub) {
    sub->add_option("--model", o.model, "catalog name or model JSON path");
    sub->add_option("--param", o.params, "catalog parameter key=value (repeatable)");
    sub->add_option("--digits", o.digits, "working precision in decimal digits")->check(CLI::Range(16, 100000));
    sub->add_option("--orders", o.orders, "order spec: 5 | 2,4,6 | lo:hi[:step]");
    sub->add_option("--out", o.out, "output file (directory for reproduce)");
    sub->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_flag("--full", o.full, "print decimals at working precision");
  };

  const std::map<std::string, std::string> commands{
      {"moments", "normalized moments mu_0..mu_jmax"},
      {"cumulants", "connected moments I_1..I_jmax"},
      {"cmx", "Knowles approximants E0^(m)"},
      {"fit", "exponents and amplitudes of E^(M)(t)"},
      {"classify", "convergence diagnosis from the exponents"},
      {"pade", "stationary points (or poles) of [M/M] Pade approximants"},
      {"scan", "exponents and A0 over a parameter grid"},
      {"curve", "E(t) and E^(M)(t) on a t grid"},
      {"reproduce", "regenerate a reference table or figure dataset"},
  };
  std::string chosen;
  for (const auto& [name, help] : commands) {
    auto* sub = app.add_subcommand(name, help);
    add_common(sub);
    sub->callback([&chosen, name = name] { chosen = name; });
    if (name == "moments" || name == "cumulants") sub->add_option("--jmax", o.jmax, "highest index")->check(CLI::PositiveNumber);
    if (name == "pade") {
      sub->add_option("--window", o.window, "search window lo:hi for stationary points");
      sub->add_option("--grid", o.pade_grid, "bracketing grid points")->check(CLI::PositiveNumber);
      sub->add_flag("--poles", o.poles, "list denominator roots instead");
      sub->add_flag("--no-shoulders", o.no_shoulders, "report true stationary points only");
    }
    if (name == "scan") {
      sub->add_option("--grid", o.grid, "parameter grid: a,b,c | lo:hi:n (default: theta grid)");
      sub->add_option("--scan-param", o.scan_param, "catalog parameter to vary");
      sub->add_option("--theta", o.theta, "theta grid points when --grid is absent")->check(CLI::PositiveNumber);
    }
    if (name == "curve") sub->add_option("--t-grid", o.t_grid, "t grid lo:hi:n or list");
    if (name == "reproduce") {
      sub->add_option("target", o.target, "table1 | table2 | fig1 | fig2 | fig3 | fig4 | pade-xi1")->required();
      sub->add_option("--max-order", o.max_order, "table2 order cap")->check(CLI::PositiveNumber);
      sub->add_option("--theta", o.theta, "theta grid points for fig1, fig3, fig4")->check(CLI::PositiveNumber);
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    return run(chosen, o);
  } catch (const cmx::UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const cmx::NonConvergence& e) {
    std::cerr << "numerical failure: " << e.what() << " (best residual " << e.best_residual() << ")\n";
    return kNumerical;
  } catch (const cmx::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  }
}
