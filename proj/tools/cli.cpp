#include "cli.hpp"

#include "htwave/algebra.hpp"
#include "htwave/error.hpp"
#include "htwave/io.hpp"
#include "htwave/laguerre.hpp"
#include "htwave/littlewood_paley.hpp"
#include "htwave/oscillatory.hpp"
#include "htwave/propagator.hpp"
#include "htwave/quadrature.hpp"
#include "htwave/spherical.hpp"
#include "htwave/strichartz.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace htwave::cli {

namespace {

using nlohmann::json;

// Flat JSON object {"flag-name": value}; arrays become multiple inputs. The
// items are applied to whichever subcommand was selected.
class JsonConfig : public CLI::Config {
 public:
  explicit JsonConfig(const CLI::App* root) : root_(root) {}

  std::string to_config(const CLI::App* app, bool default_also, bool, std::string) const override {
    json out = json::object();
    for (const CLI::Option* opt : app->get_options()) {
      if (opt->get_lnames().empty() || !opt->get_configurable()) continue;
      const std::string name = opt->get_lnames().front();
      if (opt->count() > 0)
        out[name] = opt->results().size() == 1 ? json(opt->results().front()) : json(opt->results());
      else if (default_also && !opt->get_default_str().empty())
        out[name] = opt->get_default_str();
    }
    return out.dump(2) + "\n";
  }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    json doc;
    try {
      input >> doc;
    } catch (const json::exception& e) {
      throw CLI::ConversionError("config file is not valid JSON: " + std::string(e.what()));
    }
    if (!doc.is_object()) throw CLI::ConversionError("config file must hold one JSON object");
    std::vector<CLI::ConfigItem> items;
    for (const auto& [key, value] : doc.items()) {
      CLI::ConfigItem item;
      if (!root_->get_subcommands().empty()) item.parents.push_back(root_->get_subcommands().front()->get_name());
      item.name = key;
      const auto text = [](const json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
      if (value.is_array()) {
        for (const auto& v : value) item.inputs.push_back(text(v));
      } else if (value.is_object()) {
        throw CLI::ConversionError("config key '" + key + "' must not be an object");
      } else {
        item.inputs.push_back(text(value));
      }
      items.push_back(std::move(item));
    }
    return items;
  }

 private:
  const CLI::App* root_;
};

// Raised after parsing for constraints CLI11 cannot express.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

const CLI::Validator kGrid(
    [](std::string& text) -> std::string {
      try {
        io::GridSpec::parse(text);
      } catch (const std::exception& e) {
        return std::string(e.what()) + " (expected min:max:count:log|linear)";
      }
      return {};
    },
    "min:max:count:log|linear");

const CLI::Validator kUnitInterval(
    [](std::string& text) -> std::string {
      double a = 0.0;
      try {
        a = std::stod(text);
      } catch (const std::exception&) {
        return "alpha must be a number";
      }
      return a > 0.0 && a < 1.0 ? std::string() : "alpha must lie in the open interval (0, 1)";
    },
    "in (0, 1)");

const CLI::Validator kExponent(
    [](std::string& text) -> std::string {
      try {
        strichartz::ExtRational::parse(text);
      } catch (const std::exception& e) {
        return e.what();
      }
      return {};
    },
    "rational or inf");

struct GroupFlags {
  std::string family = "heisenberg";
  int d = 1;
  int p = 1;
  std::string path;

  void attach(CLI::App* sub) {
    sub->add_option("--family", family, "built-in group family")
        ->check(CLI::IsMember({"heisenberg", "quaternionic"}))
        ->capture_default_str();
    sub->add_option("--d", d, "half the dimension of the first layer")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--p", p, "dimension of the centre")->check(CLI::PositiveNumber)->capture_default_str();
    sub->add_option("--group", path, "JSON group description {family, d, p, U}")->check(CLI::ExistingFile);
  }

  json load() const {
    std::ifstream in(path);
    json doc;
    try {
      in >> doc;
    } catch (const json::exception& e) {
      fail(ErrorCode::InvalidArgument, "group file is not valid JSON: " + std::string(e.what()));
    }
    return doc;
  }

  algebra::HTypeGroup resolve() const {
    if (!path.empty()) return algebra::group_from_json(load());
    return algebra::build_group(algebra::family_from_string(family), d, p);
  }
};

struct OutputFlags {
  std::string dir = "htw-out";
  bool plot = false;

  void attach(CLI::App* sub, bool with_plot) {
    sub->add_option("--out", dir, "output directory")->capture_default_str();
    if (with_plot) sub->add_flag("--plot", plot, "also write a log-log SVG chart");
  }

  std::string path(const std::string& name) const { return (std::filesystem::path(dir) / name).string(); }
};

struct Options {
  GroupFlags group;
  OutputFlags out;
  double alpha = 0.5;
  double t = 1.0;
  double r = 0.0;
  double rho = 0.0;
  double tail_tol = 0.0;
  double quad_tol = 0.0;
  int force_m = -1;
  std::string t_grid;
  std::string rho_grid;
  std::vector<double> r_grid;
  std::string q_text;
  std::string r_text;
  double besov_rho = 0.0;
  std::string besov_q = "2";
  std::string besov_r = "2";
  std::string window = "-20:6";
  double heat_s = 1.0;
  int m_max = 200;
  int lemma_m_max = 100;
};

json resolved_config(const CLI::App* sub) {
  json cfg = json::object();
  cfg["subcommand"] = sub->get_name();
  for (const CLI::Option* opt : sub->get_options()) {
    if (opt->get_lnames().empty() || opt->get_lnames().front() == "help" || opt->get_lnames().front() == "config")
      continue;
    const std::string name = opt->get_lnames().front();
    if (opt->count() > 0) {
      const auto& res = opt->results();
      cfg[name] = res.size() == 1 ? json(res.front()) : json(res);
    } else if (!opt->get_default_str().empty()) {
      cfg[name] = opt->get_default_str();
    }
  }
  return cfg;
}

json envelope(const CLI::App* sub) { return {{"version", kVersion}, {"config", resolved_config(sub)}}; }

void write_json(const std::string& path, const json& doc) { io::write_file(path, doc.dump(2) + "\n"); }

const char* kScanHeader = "t,rho,r,re,im,abs,m_used,tail_bound,quad_error\n";

void append_row(std::string& csv, double t, double rho, double r, std::complex<double> v, int m, double tail,
                double qerr) {
  csv += io::fmt(t) + "," + io::fmt(rho) + "," + io::fmt(r) + "," + io::fmt(v.real()) + "," + io::fmt(v.imag()) + "," +
         io::fmt(std::abs(v)) + "," + std::to_string(m) + "," + io::fmt(tail) + "," + io::fmt(qerr) + "\n";
}

std::string scan_csv(const std::vector<prop::ScanRow>& rows) {
  std::string csv = kScanHeader;
  for (const auto& row : rows)
    append_row(csv, row.t, row.rho, row.r, row.value, row.m_used, row.tail_bound, row.quad_error);
  return csv;
}

json fit_json(const osc::DecayFit& fit, const std::string& grid) {
  return {{"exponent", fit.exponent},
          {"intercept", fit.intercept},
          {"residual", fit.residual},
          {"window", {fit.t_min, fit.t_max}},
          {"grid", grid},
          {"samples", fit.samples}};
}

void maybe_plot(const OutputFlags& out, const std::string& file, const std::string& title, const std::string& xlabel,
                const std::string& ylabel, const std::vector<double>& x, const std::vector<double>& y,
                const osc::DecayFit& fit) {
  if (!out.plot) return;
  io::write_file(out.path(file), io::svg_loglog(title, xlabel, ylabel, x, y, io::LineFit{fit.exponent, fit.intercept}));
}

prop::ScanSettings scan_settings(const Options& o) {
  prop::ScanSettings s;
  if (!o.r_grid.empty()) s.r_grid = o.r_grid;
  s.tail_tol = o.tail_tol;
  s.quad_tol = o.quad_tol;
  return s;
}

int run_validate(const CLI::App* sub, const Options& o) {
  std::vector<Eigen::MatrixXd> U;
  json group_doc;
  if (o.group.path.empty()) {
    const auto group = o.group.resolve();
    U = group.U;
    group_doc = algebra::group_to_json(group);
  } else {
    group_doc = o.group.load();
    U = group_doc.contains("U") ? algebra::matrices_from_json(group_doc) : o.group.resolve().U;
  }
  const auto report = algebra::validate_structure(U);
  json out = envelope(sub);
  out["group"] = group_doc;
  out["ok"] = report.ok();
  json violations = json::array();
  for (const auto& v : report.violations)
    violations.push_back({{"condition", algebra::to_string(v.condition)}, {"i", v.i}, {"j", v.j},
                          {"deviation", v.deviation}});
  out["violations"] = violations;
  write_json(o.out.path("validation.json"), out);
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_kernel(const CLI::App* sub, const Options& o) {
  prop::PropagatorQuery q;
  q.group = o.group.resolve();
  q.alpha = o.alpha;
  q.t = o.t;
  q.r = o.r;
  q.rho = o.rho;
  if (o.tail_tol > 0.0) q.tail_tol = o.tail_tol;
  if (o.quad_tol > 0.0) q.quad_tol = o.quad_tol;
  prop::KernelOptions options;
  options.force_m = o.force_m;
  const auto k = prop::propagator_kernel(q, options);
  std::string csv = kScanHeader;
  append_row(csv, q.t, q.rho, q.r, k.value, k.m_used, k.tail_bound, k.quad_error);
  io::write_file(o.out.path("kernel.csv"), csv);
  json out = envelope(sub);
  out["re"] = k.value.real();
  out["im"] = k.value.imag();
  out["abs"] = std::abs(k.value);
  out["m_used"] = k.m_used;
  out["tail_bound"] = k.tail_bound;
  out["quad_error"] = k.quad_error;
  out["tail_converged"] = k.tail_converged;
  write_json(o.out.path("kernel.json"), out);
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_decay_fit(const CLI::App* sub, const Options& o) {
  const auto grid = io::GridSpec::parse(o.t_grid);
  const auto scan = prop::dispersive_sup_scan(o.group.resolve(), o.alpha, grid.values(), scan_settings(o));
  io::write_file(o.out.path("scan.csv"), scan_csv(scan.rows));
  json out = envelope(sub);
  out.update(fit_json(scan.fit, grid.str()));
  out["plateau"] = scan.plateau;
  out["tail_tol"] = scan.tail_tol;
  out["quad_tol"] = scan.quad_tol;
  out["tail_converged"] = scan.tail_converged;
  write_json(o.out.path("fit.json"), out);
  std::vector<double> x, y;
  for (const auto& row : scan.rows) {
    x.push_back(row.t);
    y.push_back(std::abs(row.value));
  }
  maybe_plot(o.out, "decay.svg", "sup |kernel| against t", "t", "sup |kernel|", x, y, scan.fit);
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_cone_scan(const CLI::App* sub, const Options& o) {
  const auto grid = io::GridSpec::parse(o.rho_grid);
  const auto scan = prop::spacetime_scan(o.group.resolve(), o.alpha, o.t, grid.values(), scan_settings(o));
  std::string csv = scan_csv(scan.rows);
  csv += scan_csv(scan.doubled_rows).substr(std::string(kScanHeader).size());
  io::write_file(o.out.path("cone.csv"), csv);
  json out = envelope(sub);
  out.update(fit_json(scan.fit, grid.str()));
  out["tail_tol"] = scan.tail_tol;
  out["doubling_ratio"] = scan.doubling_ratio;
  std::vector<double> ratios = scan.doubling_ratio;
  std::sort(ratios.begin(), ratios.end());
  out["doubling_median"] = ratios.empty() ? 0.0 : ratios[ratios.size() / 2];
  write_json(o.out.path("fit.json"), out);
  std::vector<double> x, y;
  for (const auto& row : scan.rows) {
    x.push_back(row.rho);
    y.push_back(std::abs(row.value));
  }
  maybe_plot(o.out, "cone.svg", "sup over r of |kernel| against rho", "rho", "sup |kernel|", x, y, scan.fit);
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_sharpness(const CLI::App* sub, const Options& o) {
  const auto group = o.group.resolve();
  const auto grid = io::GridSpec::parse(o.t_grid);
  const auto res = prop::sharpness_profile(group, o.alpha, grid.values(), {}, o.quad_tol);
  std::string csv = "t,re,im,abs,quad_error\n";
  for (std::size_t i = 0; i < res.t.size(); ++i)
    csv += io::fmt(res.t[i]) + "," + io::fmt(res.value[i].real()) + "," + io::fmt(res.value[i].imag()) + "," +
           io::fmt(std::abs(res.value[i])) + "," + io::fmt(res.quad_error[i]) + "\n";
  io::write_file(o.out.path("sharpness.csv"), csv);
  const auto hess = prop::hessian_at_critical(o.alpha, group.d, group.p);
  json out = envelope(sub);
  out.update(fit_json(res.fit, grid.str()));
  out["band"] = {{"lo", res.band_lo}, {"hi", res.band_hi}, {"ratio", res.band_ratio}};
  out["hessian"] = {{"eigenvalues", std::vector<double>(hess.eigenvalues.data(),
                                                        hess.eigenvalues.data() + hess.eigenvalues.size())},
                    {"determinant", hess.determinant},
                    {"fd_deviation", hess.fd_deviation},
                    {"gradient_norm", hess.gradient_norm}};
  write_json(o.out.path("fit.json"), out);
  std::vector<double> y;
  for (const auto& v : res.value) y.push_back(std::abs(v));
  maybe_plot(o.out, "sharpness.svg", "|u(t)| along the critical ray", "t", "|u|", res.t, y, res.fit);
  std::cout << out.dump(2) << "\n";
  return 0;
}

double exponent_value(const std::string& text) {
  const auto e = strichartz::ExtRational::parse(text);
  return e.infinite ? std::numeric_limits<double>::infinity() : e.value.to_double();
}

int run_besov(const CLI::App* sub, const Options& o) {
  const auto group = o.group.resolve();
  const auto colon = o.window.find(':');
  int j_lo = 0, j_hi = 0;
  try {
    if (colon == std::string::npos) throw std::invalid_argument("no colon");
    j_lo = std::stoi(o.window.substr(0, colon));
    j_hi = std::stoi(o.window.substr(colon + 1));
  } catch (const std::exception&) {
    throw UsageError("--window must be jlo:jhi with integers, got '" + o.window + "'");
  }
  if (j_lo > j_hi) throw UsageError("--window needs jlo <= jhi");
  const auto ell = quad::log_composite(1e-18, 80.0, 600);
  const auto f = lp::heat_profile(group.d, group.p, o.heat_s, o.m_max, ell);
  lp::BesovIndex idx{o.besov_rho, exponent_value(o.besov_q), exponent_value(o.besov_r)};
  lp::BesovOptions options;
  options.r = quad::composite(0.0, 6.0 * std::sqrt(static_cast<double>(group.d)), 12);
  options.rho = quad::composite(0.0, 12.0, 24);
  const auto res = lp::besov_norm(f, idx, j_lo, j_hi, options);
  json out = envelope(sub);
  out["rho"] = o.besov_rho;
  out["q"] = o.besov_q;
  out["r"] = o.besov_r;
  out["window"] = {j_lo, j_hi};
  out["norm"] = res.norm;
  out["edge_mass"] = res.edge_mass;
  out["window_ok"] = res.window_ok;
  out["pieces"] = res.pieces;
  out["l2_norm"] = spherical::plancherel_norm(f);
  write_json(o.out.path("besov.json"), out);
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_admissible(const CLI::App* sub, const Options& o) {
  using strichartz::ExtRational;
  if (o.q_text.empty() && o.r_text.empty()) throw UsageError("admissible needs --q, --r or both");
  json out = envelope(sub);
  try {
    strichartz::AdmissiblePair pair;
    if (!o.q_text.empty() && !o.r_text.empty())
      pair = strichartz::check_admissible(ExtRational::parse(o.q_text), ExtRational::parse(o.r_text), o.group.d,
                                          o.group.p);
    else if (!o.q_text.empty())
      pair = strichartz::admissible_from_q(ExtRational::parse(o.q_text), o.group.d, o.group.p);
    else
      pair = strichartz::admissible_from_r(ExtRational::parse(o.r_text), o.group.d, o.group.p);
    out["q"] = pair.q.str();
    out["r"] = pair.r.str();
    out["rho"] = pair.rho.str();
    out["valid"] = true;
    out["reason"] = "";
  } catch (const Error& e) {
    if (e.code() != ErrorCode::ExcludedEndpoint && e.code() != ErrorCode::NotAdmissible) throw;
    out["q"] = o.q_text.empty() ? json() : json(o.q_text);
    out["r"] = o.r_text.empty() ? json() : json(o.r_text);
    out["rho"] = json();
    out["valid"] = false;
    out["reason"] = e.what();
  }
  if (!o.q_text.empty() && o.r_text.empty()) {
    try {
      const auto line = strichartz::lebesgue_line(ExtRational::parse(o.q_text), o.group.d, o.group.p);
      out["lebesgue"] = {{"q", line.q.str()}, {"r", line.r.str()}, {"q_min", line.q_min.str()}, {"valid", true}};
    } catch (const Error& e) {
      if (e.code() != ErrorCode::OutOfRange) throw;
      out["lebesgue"] = {{"valid", false}, {"reason", e.what()}};
    }
  }
  write_json(o.out.path("admissible.json"), out);
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_lemma_checks(const CLI::App* sub, const Options& o) {
  json out = envelope(sub);

  std::string growth = "d,k,m,sup,bound_ratio\n";
  json growth_summary = json::array();
  for (int d = 1; d <= 2; ++d)
    for (int k = 0; k <= 1; ++k) {
      const auto rows = laguerre::laguerre_growth_check(d - 1, k, o.lemma_m_max);
      for (const auto& row : rows)
        growth += std::to_string(d) + "," + std::to_string(k) + "," + std::to_string(row.m) + "," +
                  io::fmt(row.sup_value) + "," + io::fmt(row.bound_ratio) + "\n";
      const auto s = laguerre::summarize(rows);
      growth_summary.push_back(
          {{"d", d}, {"k", k}, {"early_max", s.early_max}, {"late_max", s.late_max}, {"bounded", s.bounded()}});
    }
  io::write_file(o.out.path("growth.csv"), growth);
  out["laguerre_growth"] = growth_summary;

  json sphere = json::array();
  for (int p = 1; p <= 4; ++p) {
    double early = 0.0, late = 0.0;
    constexpr int n = 200000;
    for (int i = 0; i <= n; ++i) {
      const double xi = 1e4 * i / n;
      const double v = std::pow(xi, 0.5 * (p - 1)) * std::abs(spherical::sphere_fourier(p, xi));
      (xi <= 1e2 ? early : late) = std::max(xi <= 1e2 ? early : late, v);
    }
    sphere.push_back({{"p", p}, {"sup_to_1e2", early}, {"sup_1e2_to_1e4", late}, {"bounded", late <= 1.1 * early}});
  }
  out["sphere_fourier"] = sphere;

  const std::vector<double> ts{1e1, 1e2, 1e3, 1e4};
  const auto summarize_family = [](const std::vector<osc::StationaryRow>& rows) {
    std::vector<double> ratios;
    for (const auto& row : rows) ratios.push_back(row.bound_ratio);
    std::vector<double> sorted = ratios;
    std::sort(sorted.begin(), sorted.end());
    const double median = 0.5 * (sorted[(sorted.size() - 1) / 2] + sorted[sorted.size() / 2]);
    bool ok = true;
    for (const double r : ratios) ok = ok && r <= 2.0 * median && r >= 0.5 * median;
    return json{{"ratios", ratios}, {"median", median}, {"within_2x", ok}};
  };
  out["stationary_phase"] = {
      {"t", ts},
      {"fresnel", summarize_family(osc::stationary_phase_bound_check(osc::fresnel_family(ts), 1e-12))},
      {"wave_phase", summarize_family(osc::stationary_phase_bound_check(osc::wave_phase_family(o.alpha, ts), 1e-12))}};

  write_json(o.out.path("lemmas.json"), out);
  std::cout << out.dump(2) << "\n";
  return 0;
}

void write_diagnostic(const CLI::App* sub, const OutputFlags& out, const std::string& code, const std::string& what) {
  json diag = sub ? envelope(sub) : json{{"version", kVersion}};
  diag["error"] = code;
  diag["message"] = what;
  std::cerr << diag.dump(2) << "\n";
  try {
    write_json(out.path("error.json"), diag);
  } catch (const std::exception&) {
    // The diagnostic already went to stderr.
  }
}

}  // namespace

int parse_and_dispatch(int argc, char** argv) {
  CLI::App app{"Fractional wave propagators on H-type groups", "htwave-cli"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);
  app.fallthrough();
  app.config_formatter(std::make_shared<JsonConfig>(&app));
  app.set_config("--config", "", "JSON file of flag values for the subcommand; command-line flags win");
  app.allow_config_extras(CLI::config_extras_mode::error);

  Options o;
  const auto add_sub = [&](const std::string& name, const std::string& description) {
    CLI::App* sub = app.add_subcommand(name, description);
    sub->footer("--config FILE (JSON object of flag values) may be given with any subcommand.");
    return sub;
  };
  const auto add_alpha = [&](CLI::App* sub) {
    sub->add_option("--alpha", o.alpha, "fractional power")->check(kUnitInterval)->required();
  };
  const auto add_tolerances = [&](CLI::App* sub) {
    sub->add_option("--tail-tol", o.tail_tol, "series tail tolerance (0: default)")->check(CLI::NonNegativeNumber);
    sub->add_option("--quad-tol", o.quad_tol, "quadrature tolerance (0: default)")->check(CLI::NonNegativeNumber);
  };

  CLI::App* validate = add_sub("validate-group", "check the H-type structure conditions");
  o.group.attach(validate);
  o.out.attach(validate, false);

  CLI::App* kernel = add_sub("kernel", "evaluate the propagator kernel at one point");
  o.group.attach(kernel);
  add_alpha(kernel);
  kernel->add_option("--t", o.t, "time")->required();
  kernel->add_option("--r", o.r, "|z|")->check(CLI::NonNegativeNumber)->capture_default_str();
  kernel->add_option("--rho", o.rho, "|s|")->check(CLI::NonNegativeNumber)->capture_default_str();
  kernel->add_option("--force-m", o.force_m, "fixed truncation index (-1: automatic)")->capture_default_str();
  add_tolerances(kernel);
  o.out.attach(kernel, false);

  CLI::App* decay = add_sub("decay-fit", "sup scan over time and power-law fit");
  o.group.attach(decay);
  add_alpha(decay);
  decay->add_option("--t", o.t_grid, "time grid")->check(kGrid)->required();
  decay->add_option("--r-grid", o.r_grid, "radii |z| searched for the sup");
  add_tolerances(decay);
  o.out.attach(decay, true);

  CLI::App* cone = add_sub("cone-scan", "sup over r against rho at fixed t, and at 2t");
  o.group.attach(cone);
  add_alpha(cone);
  cone->add_option("--t", o.t, "time")->required();
  cone->add_option("--rho", o.rho_grid, "rho grid")->check(kGrid)->required();
  cone->add_option("--r-grid", o.r_grid, "radii |z| searched for the sup");
  add_tolerances(cone);
  o.out.attach(cone, true);

  CLI::App* sharp = add_sub("sharpness", "solution along the critical ray and the phase Hessian");
  o.group.attach(sharp);
  add_alpha(sharp);
  sharp->add_option("--t", o.t_grid, "time grid")->check(kGrid)->required();
  sharp->add_option("--quad-tol", o.quad_tol, "quadrature tolerance (0: default)")->check(CLI::NonNegativeNumber);
  o.out.attach(sharp, true);

  CLI::App* besov = add_sub("besov", "finite-window Besov norm of a heat-kernel profile");
  o.group.attach(besov);
  besov->add_option("--rho", o.besov_rho, "regularity index")->capture_default_str();
  besov->add_option("--q", o.besov_q, "Lebesgue exponent")->check(kExponent)->capture_default_str();
  besov->add_option("--r", o.besov_r, "summation exponent")->check(kExponent)->capture_default_str();
  besov->add_option("--window", o.window, "dyadic window jlo:jhi")->capture_default_str();
  besov->add_option("--s", o.heat_s, "heat time of the profile")->check(CLI::PositiveNumber)->capture_default_str();
  besov->add_option("--m-max", o.m_max, "Laguerre truncation")->check(CLI::NonNegativeNumber)->capture_default_str();
  o.out.attach(besov, false);

  CLI::App* adm = add_sub("admissible", "Strichartz exponent arithmetic");
  adm->add_option("--q", o.q_text, "time exponent")->check(kExponent);
  adm->add_option("--r", o.r_text, "space exponent")->check(kExponent);
  adm->add_option("--d", o.group.d, "half the dimension of the first layer")->check(CLI::PositiveNumber)->capture_default_str();
  adm->add_option("--p", o.group.p, "dimension of the centre")->check(CLI::PositiveNumber)->capture_default_str();
  o.out.attach(adm, false);

  CLI::App* lemmas = add_sub("lemma-checks", "Laguerre growth, sphere transform decay and stationary phase probes");
  lemmas->add_option("--m-max", o.lemma_m_max, "largest Laguerre degree")->check(CLI::PositiveNumber)->capture_default_str();
  lemmas->add_option("--alpha", o.alpha, "fractional power for the wave phase family")
      ->check(kUnitInterval)
      ->capture_default_str();
  o.out.attach(lemmas, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  CLI::App* sub = app.get_subcommands().front();

  try {
    std::filesystem::create_directories(o.out.dir);
    if (sub == validate) return run_validate(sub, o);
    if (sub == kernel) return run_kernel(sub, o);
    if (sub == decay) return run_decay_fit(sub, o);
    if (sub == cone) return run_cone_scan(sub, o);
    if (sub == sharp) return run_sharpness(sub, o);
    if (sub == besov) return run_besov(sub, o);
    if (sub == adm) return run_admissible(sub, o);
    return run_lemma_checks(sub, o);
  } catch (const UsageError& e) {
    std::cerr << e.what() << "\n\n" << sub->help();
    return 2;
  } catch (const Error& e) {
    write_diagnostic(sub, o.out, std::string(to_string(e.code())), e.what());
    return 1;
  } catch (const std::exception& e) {
    write_diagnostic(sub, o.out, "InternalError", e.what());
    return 1;
  }
}

}  // namespace htwave::cli
