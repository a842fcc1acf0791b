#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "prolate/blkernel.hpp"
#include "prolate/common.hpp"
#include "prolate/extrapolate.hpp"
#include "prolate/pswf.hpp"
#include "prolate/quadrature.hpp"
#include "prolate/version.hpp"

namespace {

using nlohmann::ordered_json;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct RunConfig {
  std::string subcommand;
  std::string format = "csv";
  std::string output;
  std::vector<std::pair<std::string, std::string>> echo;  // ordered config echo
  int threads = 1;
};

// table-shaped result: optional named sections, each a column header plus rows
struct Section {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

void emit(const RunConfig& cfg, const std::vector<Section>& sections) {
  std::ostringstream out;
  if (cfg.format == "csv") {
    out << "# tool: prolate " << prolate::version_string << "\n";
    out << "# subcommand: " << cfg.subcommand << "\n";
    for (const auto& kv : cfg.echo)
      out << "# " << kv.first << ": " << kv.second << "\n";
    bool first = true;
    for (const Section& s : sections) {
      if (!first) out << "\n";
      first = false;
      out << "# columns: ";
      for (std::size_t c = 0; c < s.columns.size(); ++c)
        out << (c ? "," : "") << s.columns[c];
      out << "\n";
      for (const auto& row : s.rows) {
        for (std::size_t c = 0; c < row.size(); ++c)
          out << (c ? "," : "") << fmt(row[c]);
        out << "\n";
      }
    }
  } else {
    ordered_json j;
    j["tool"] = "prolate";
    j["version"] = prolate::version_string;
    j["subcommand"] = cfg.subcommand;
    ordered_json e = ordered_json::object();
    for (const auto& kv : cfg.echo) e[kv.first] = kv.second;
    j["config"] = e;
    ordered_json secs = ordered_json::array();
    for (const Section& s : sections) {
      ordered_json js;
      js["columns"] = s.columns;
      ordered_json rows = ordered_json::array();
      for (const auto& row : s.rows) rows.push_back(row);
      js["rows"] = rows;
      secs.push_back(js);
    }
    j["sections"] = secs;
    out << j.dump(2) << "\n";
  }
  if (cfg.output.empty()) {
    std::cout << out.str();
  } else {
    std::ofstream f(cfg.output, std::ios::binary);
    if (!f) throw prolate::config_error("cannot open output file: " + cfg.output);
    f << out.str();
  }
}

prolate::QuadRule parse_quad(const std::string& spec, std::size_t auto_gauss) {
  if (spec.empty() || spec == "auto")
    return prolate::gauss_legendre_rule(auto_gauss);
  auto colon = spec.find(':');
  if (colon == std::string::npos)
    throw prolate::config_error("quadrature spec must be auto, gauss:N or lobatto:N");
  std::string kind = spec.substr(0, colon);
  long n = 0;
  try {
    n = std::stol(spec.substr(colon + 1));
  } catch (...) {
    throw prolate::config_error("bad quadrature size in: " + spec);
  }
  if (n < 2) throw prolate::config_error("quadrature size must be at least 2");
  if (kind == "gauss") return prolate::gauss_legendre_rule(static_cast<std::size_t>(n));
  if (kind == "lobatto") return prolate::lgl_rule(static_cast<std::size_t>(n));
  throw prolate::config_error("unknown quadrature kind: " + kind);
}

std::vector<double> parse_mus(const std::vector<double>& mu_list,
                              const std::string& mu_grid) {
  if (!mu_list.empty() && !mu_grid.empty())
    throw prolate::config_error("give either --mu values or --mu-grid, not both");
  if (!mu_list.empty()) return mu_list;
  std::string spec = mu_grid.empty() ? "1e-16:1:33" : mu_grid;
  double lo, hi;
  long count;
  char c1, c2;
  std::istringstream ss(spec);
  if (!(ss >> lo >> c1 >> hi >> c2 >> count) || c1 != ':' || c2 != ':' ||
      !(lo > 0.0) || !(hi > 0.0) || count < 1)
    throw prolate::config_error("mu grid must be lo:hi:count with lo,hi > 0");
  std::vector<double> mus(static_cast<std::size_t>(count));
  if (count == 1) {
    mus[0] = lo;
    return mus;
  }
  double llo = std::log10(lo), lhi = std::log10(hi);
  for (long i = 0; i < count; ++i)
    mus[static_cast<std::size_t>(i)] =
        std::pow(10.0, llo + (lhi - llo) * static_cast<double>(i) /
                                 static_cast<double>(count - 1));
  return mus;
}

std::size_t default_keep(double sigma) {
  return static_cast<std::size_t>(std::floor(2.0 * sigma / 3.14159265358979323846)) + 10;
}

int run_pswf(RunConfig& cfg, double sigma, const std::string& method,
             std::size_t n, std::size_t n_quad, std::size_t keep,
             const std::string& quad, std::size_t grid) {
  if (n_quad < n) throw prolate::config_error("n_quad must be at least n_basis");
  if (keep == 0) keep = default_keep(sigma);
  cfg.echo.push_back({"sigma", fmt(sigma)});
  cfg.echo.push_back({"method", method});
  cfg.echo.push_back({"n_basis", std::to_string(n)});
  cfg.echo.push_back({"n_quad", std::to_string(n_quad)});
  cfg.echo.push_back({"n_keep", std::to_string(keep)});

  std::vector<prolate::PswfSet> sets;
  std::vector<std::string> names;
  auto make = [&](const std::string& m) {
    if (m == "legendre") {
      sets.push_back(prolate::pswf_legendre_galerkin(sigma, keep, n));
    } else if (m == "bessel") {
      prolate::QuadRule rule = parse_quad(quad, n_quad);
      sets.push_back(prolate::pswf_bessel_ie(sigma, n, keep, rule));
    } else if (m == "sinc") {
      prolate::QuadRule rule = parse_quad(quad, n_quad);
      sets.push_back(prolate::pswf_sinc_ie(sigma, n / 2, keep, rule));
    } else {
      throw prolate::config_error("unknown method: " + m);
    }
    names.push_back(m);
  };
  if (method == "all") {
    make("legendre");
    make("bessel");
    make("sinc");
  } else {
    make(method);
  }

  std::vector<Section> out;
  Section tab;
  tab.columns.push_back("n");
  for (const std::string& m : names) tab.columns.push_back("lambda_" + m);
  for (std::size_t i = 0; i < keep; ++i) {
    std::vector<double> row{static_cast<double>(i)};
    for (const auto& s : sets) row.push_back(s.eigenvalues[i]);
    tab.rows.push_back(row);
  }
  out.push_back(std::move(tab));

  if (grid > 1) {
    Section g;
    g.columns.push_back("t");
    for (std::size_t fn = 0; fn < keep; ++fn)
      g.columns.push_back("phi" + std::to_string(fn) + "_" + names.back());
    std::vector<double> ts(grid);
    for (std::size_t i = 0; i < grid; ++i)
      ts[i] = -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(grid - 1);
    std::vector<std::vector<double>> vals;
    for (std::size_t fn = 0; fn < keep; ++fn)
      vals.push_back(prolate::eval_pswf(sets.back(), fn, ts));
    for (std::size_t i = 0; i < grid; ++i) {
      std::vector<double> row{ts[i]};
      for (std::size_t fn = 0; fn < keep; ++fn) row.push_back(vals[fn][i]);
      g.rows.push_back(row);
    }
    out.push_back(std::move(g));
  }
  emit(cfg, out);
  return 0;
}

int run_extrap(RunConfig& cfg, const std::string& signal, double sigma,
               const std::string& basis, const std::string& penalty, int nu,
               const std::vector<double>& mus, std::size_t n,
               std::size_t n_quad, double omega) {
  prolate::ExtrapolationProblem p;
  if (signal == "x1")
    p.observed = prolate::test_signal(1, sigma);
  else if (signal == "x2")
    p.observed = prolate::test_signal(2, sigma, nu);
  else if (signal == "x3")
    p.observed = prolate::test_signal(3, sigma);
  else
    throw prolate::config_error("unknown signal: " + signal);
  p.exact = p.observed;
  p.sigma = sigma;
  p.n_basis = n;
  p.n_quad = n_quad;
  if (basis == "bessel")
    p.basis = prolate::BasisTag::Bessel;
  else if (basis == "sinc")
    p.basis = prolate::BasisTag::Sinc;
  else
    throw prolate::config_error("unknown basis: " + basis);
  if (penalty == "standard")
    p.penalty = prolate::PenaltyKind::Standard;
  else if (penalty == "sobolev")
    p.penalty = prolate::PenaltyKind::Sobolev;
  else
    throw prolate::config_error("unknown penalty: " + penalty);

  cfg.echo.push_back({"signal", signal});
  cfg.echo.push_back({"sigma", fmt(sigma)});
  cfg.echo.push_back({"basis", basis});
  cfg.echo.push_back({"penalty", penalty});
  cfg.echo.push_back({"n_basis", std::to_string(n)});
  cfg.echo.push_back({"n_quad", std::to_string(n_quad)});
  cfg.echo.push_back({"omega", fmt(omega)});

  std::vector<prolate::SweepRow> rows =
      prolate::mu_sweep(p, mus, -omega, omega);

  Section sweep;
  sweep.columns = {"mu", "e_rel", "residual_norm", "solution_norm"};
  double best_mu = -1.0, best_err = 0.0;
  bool any = false;
  for (const auto& r : rows) {
    sweep.rows.push_back({r.mu, r.e_rel, r.residual_norm, r.solution_norm});
    if (!r.failed && (!any || r.e_rel < best_err)) {
      any = true;
      best_err = r.e_rel;
      best_mu = r.mu;
    }
  }
  if (!any) throw prolate::numerical_error("every mu in the sweep failed");

  prolate::ExtrapolationProblem pb = p;
  pb.mu = best_mu;
  prolate::ExtrapolationResult best = prolate::extrapolate(pb);

  Section grid;
  grid.columns = {"t", "x_exact", "x_extrap", "abs_err"};
  const std::size_t g = 201;
  for (std::size_t i = 0; i < g; ++i) {
    double t = -omega + 2.0 * omega * static_cast<double>(i) /
                            static_cast<double>(g - 1);
    double xe = p.exact(t);
    double xa = best.extrapolant(t);
    grid.rows.push_back({t, xe, xa, std::fabs(xe - xa)});
  }
  emit(cfg, {sweep, grid});
  return 0;
}

int run_kernel_eig(RunConfig& cfg, const std::string& kernel, double sigma,
                   const std::string& basis, std::size_t n, std::size_t keep,
                   const std::string& quad, std::size_t n_quad) {
  prolate::KernelSpec k = prolate::builtin_kernel(kernel, sigma);
  if (keep == 0) keep = default_keep(sigma);
  cfg.echo.push_back({"kernel", k.name});
  cfg.echo.push_back({"sigma", fmt(sigma)});
  cfg.echo.push_back({"basis", basis});
  cfg.echo.push_back({"n_basis", std::to_string(n)});
  cfg.echo.push_back({"n_keep", std::to_string(keep)});

  prolate::KernelEigenSet set;
  if (basis == "bessel") {
    // matched-resolution lobatto rule, applied verbatim to gram and moments
    prolate::QuadRule rule =
        quad.empty() || quad == "auto" ? prolate::lgl_rule(4 * n + 1)
                                       : parse_quad(quad, 4 * n);
    cfg.echo.push_back({"n_quad", std::to_string(rule.size())});
    set = prolate::kernel_eigen(k, prolate::BasisTag::Bessel, n, keep, rule);
  } else if (basis == "sinc") {
    prolate::QuadRule rule = parse_quad(quad, n_quad);
    cfg.echo.push_back({"n_quad", std::to_string(rule.size())});
    set = prolate::kernel_eigen(k, prolate::BasisTag::Sinc, n, keep, rule);
  } else {
    throw prolate::config_error("unknown basis: " + basis);
  }

  Section tab;
  tab.columns = {"n", "lambda"};
  for (std::size_t i = 0; i < set.eigenvalues.size(); ++i)
    tab.rows.push_back({static_cast<double>(i), set.eigenvalues[i]});
  emit(cfg, {tab});
  return 0;
}

int run_kernel_invert(RunConfig& cfg, const std::string& pair, int nu,
                      const std::string& basis, const std::string& penalty,
                      const std::vector<double>& mus, std::size_t n,
                      std::size_t n_quad) {
  prolate::SignalPair sp = prolate::test_signal_pair(pair, nu);
  prolate::KernelSpec k = prolate::builtin_kernel("K2", sp.sigma);
  prolate::BasisTag bt;
  if (basis == "bessel")
    bt = prolate::BasisTag::Bessel;
  else if (basis == "sinc")
    bt = prolate::BasisTag::Sinc;
  else
    throw prolate::config_error("unknown basis: " + basis);
  prolate::InvertConfig ic;
  if (penalty == "standard")
    ic.penalty = prolate::PenaltyKind::Standard;
  else if (penalty == "sobolev")
    ic.penalty = prolate::PenaltyKind::Sobolev;
  else
    throw prolate::config_error("unknown penalty: " + penalty);
  if (n_quad < n) throw prolate::config_error("n_quad must be at least n_basis");

  cfg.echo.push_back({"pair", pair});
  cfg.echo.push_back({"nu", std::to_string(nu)});
  cfg.echo.push_back({"sigma", fmt(sp.sigma)});
  cfg.echo.push_back({"basis", basis});
  cfg.echo.push_back({"penalty", penalty});
  cfg.echo.push_back({"n_basis", std::to_string(n)});
  cfg.echo.push_back({"n_quad", std::to_string(n_quad)});

  prolate::QuadRule rule = prolate::gauss_legendre_rule(n_quad);
  prolate::QuadRule err_rule = prolate::gauss_legendre_rule(400);

  Section sweep;
  sweep.columns = {"mu", "e_rel", "residual_norm", "solution_norm"};
  double best_mu = -1.0, best_err = 0.0;
  bool any = false;
  for (double mu : mus) {
    prolate::InvertConfig c = ic;
    c.mu = mu;
    try {
      prolate::InvertResult res = prolate::invert(k, sp.x, bt, n, c, rule);
      double e = prolate::relative_error(sp.y, res.evaluate, -1.0, 1.0, err_rule);
      sweep.rows.push_back({mu, e, res.residual_norm, res.solution_norm});
      if (!any || e < best_err) {
        any = true;
        best_err = e;
        best_mu = mu;
      }
    } catch (const prolate::numerical_error&) {
      double nan = std::nan("");
      sweep.rows.push_back({mu, nan, nan, nan});
    }
  }
  if (!any) throw prolate::numerical_error("every mu in the sweep failed");

  prolate::InvertConfig c = ic;
  c.mu = best_mu;
  prolate::InvertResult best = prolate::invert(k, sp.x, bt, n, c, rule);
  Section grid;
  grid.columns = {"t", "y_exact", "y_recovered", "abs_err"};
  const std::size_t g = 201;
  for (std::size_t i = 0; i < g; ++i) {
    double t = -1.0 + 2.0 * static_cast<double>(i) / static_cast<double>(g - 1);
    double ye = sp.y(t);
    double yr = best.evaluate(t);
    grid.rows.push_back({t, ye, yr, std::fabs(ye - yr)});
  }
  emit(cfg, {sweep, grid});
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;
  if (const char* tenv = std::getenv("PROLATE_THREADS")) {
    char* end = nullptr;
    long t = std::strtol(tenv, &end, 10);
    if (end == tenv || *end != '\0' || t < 1) {
      std::cerr << "PROLATE_THREADS must be a positive integer\n";
      return 2;
    }
    cfg.threads = static_cast<int>(t);
  }

  CLI::App app{"prolate bandlimited toolkit"};
  app.require_subcommand(1);

  double sigma = 8.0;
  std::string method = "bessel", quad = "auto", format = "csv", output;
  std::size_t n = 1000, n_quad = 4000, keep = 0, grid = 0;

  CLI::App* pswf = app.add_subcommand("pswf", "prolate eigenfunctions");
  pswf->add_option("--sigma", sigma, "bandlimit")->required();
  pswf->add_option("--method", method, "legendre|bessel|sinc|all");
  pswf->add_option("--n", n, "basis size (sinc uses n/2 translates each side)");
  pswf->add_option("--n-quad", n_quad, "quadrature points");
  pswf->add_option("--keep", keep, "eigenpairs to keep (0 = default rule)");
  pswf->add_option("--quad", quad, "auto|gauss:N|lobatto:N");
  pswf->add_option("--grid", grid, "also emit function values on this many points");

  std::string signal = "x1", basis = "bessel", penalty = "standard", mu_grid;
  std::vector<double> mu_list;
  int nu = 2;
  double omega = 5.0;
  std::size_t en = 400, en_quad = 1600;

  CLI::App* extrap = app.add_subcommand("extrap", "bandlimited extrapolation");
  extrap->add_option("--signal", signal, "x1|x2|x3")->required();
  extrap->add_option("--sigma", sigma, "bandlimit")->required();
  extrap->add_option("--basis", basis, "bessel|sinc");
  extrap->add_option("--penalty", penalty, "standard|sobolev");
  extrap->add_option("--nu", nu, "bump order for signal x2");
  extrap->add_option("--mu", mu_list, "explicit regularization values");
  extrap->add_option("--mu-grid", mu_grid, "lo:hi:count log grid");
  extrap->add_option("--n", en, "basis size");
  extrap->add_option("--n-quad", en_quad, "quadrature points");
  extrap->add_option("--omega", omega, "error interval half width");

  std::string kernel = "K1";
  std::size_t kn = 200, kn_quad = 4000, kkeep = 8;

  CLI::App* keig = app.add_subcommand("kernel-eig", "kernel eigenvalues");
  keig->add_option("--kernel", kernel, "K1|K2")->required();
  keig->add_option("--sigma", sigma, "band edge")->required();
  keig->add_option("--basis", basis, "bessel|sinc");
  keig->add_option("--n", kn, "basis size");
  keig->add_option("--keep", kkeep, "eigenvalues to keep (0 = default rule)");
  keig->add_option("--quad", quad, "auto|gauss:N|lobatto:N");
  keig->add_option("--n-quad", kn_quad, "sinc gram quadrature points");

  std::string pair = "pair1";
  int pnu = 4;
  std::size_t in = 400, in_quad = 1600;

  CLI::App* kinv = app.add_subcommand("kernel-invert", "kernel inverse problem");
  kinv->add_option("--pair", pair, "pair1|pair2")->required();
  kinv->add_option("--nu", pnu, "oscillation count");
  kinv->add_option("--basis", basis, "bessel|sinc");
  kinv->add_option("--penalty", penalty, "standard|sobolev");
  kinv->add_option("--mu", mu_list, "explicit regularization values");
  kinv->add_option("--mu-grid", mu_grid, "lo:hi:count log grid");
  kinv->add_option("--n", in, "basis size");
  kinv->add_option("--n-quad", in_quad, "quadrature points");

  for (CLI::App* sub : {pswf, extrap, keig, kinv}) {
    sub->add_option("--format", format, "csv|json");
    sub->add_option("--output", output, "output file (default stdout)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << e.what() << "\n";
    return 2;
  }

  cfg.format = format;
  cfg.output = output;
  if (cfg.format != "csv" && cfg.format != "json") {
    std::cerr << "format must be csv or json\n";
    return 2;
  }

  try {
    if (app.got_subcommand(pswf)) {
      cfg.subcommand = "pswf";
      return run_pswf(cfg, sigma, method, n, n_quad, keep, quad, grid);
    }
    if (app.got_subcommand(extrap)) {
      cfg.subcommand = "extrap";
      return run_extrap(cfg, signal, sigma, basis, penalty, nu,
                        parse_mus(mu_list, mu_grid), en, en_quad, omega);
    }
    if (app.got_subcommand(keig)) {
      cfg.subcommand = "kernel-eig";
      return run_kernel_eig(cfg, kernel, sigma, basis, kn, kkeep, quad, kn_quad);
    }
    if (app.got_subcommand(kinv)) {
      cfg.subcommand = "kernel-invert";
      return run_kernel_invert(cfg, pair, pnu, basis, penalty,
                               parse_mus(mu_list, mu_grid), in, in_quad);
    }
    std::cerr << "no subcommand\n";
    return 2;
  } catch (const prolate::config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const prolate::argument_error& e) {
    std::cerr << "argument error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "argument error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
