#include "cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <numbers>
#include <sstream>

#include "config.hpp"
#include "imex/channel_flow.hpp"
#include "imex/coeffs.hpp"
#include "imex/errors.hpp"
#include "imex/porous.hpp"
#include "imex/recipes.hpp"
#include "imex/spectra.hpp"
#include "imex/stability_diagram.hpp"

namespace imex::cli {

using nlohmann::json;
using cd = std::complex<double>;

namespace {

void write_output(const std::string& path, const std::string& content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
    return;
  }
  std::ofstream f(path);
  if (!f) throw ConfigError("cannot write " + path);
  f << content;
}

json complex_list(const std::vector<cd>& pts) {
  json arr = json::array();
  for (const auto& p : pts) arr.push_back({p.real(), p.imag()});
  return arr;
}

json result_json(const FeasibilityResult& r) {
  json j;
  j["feasible"] = r.feasible;
  if (r.delta_star) j["delta_star"] = *r.delta_star;
  if (r.delta) j["delta"] = *r.delta;
  if (r.sigma) j["sigma"] = *r.sigma;
  if (r.sigma_range) {
    j["sigma_min"] = r.sigma_range->first;
    j["sigma_max"] = std::isinf(r.sigma_range->second) ? json("inf") : json(r.sigma_range->second);
  }
  j["diagnostics"] = r.diagnostics;
  return j;
}

cd parse_point(const std::string& text) {
  const auto v = parse_double_list(text);
  if (v.size() == 1) return {v[0], 0.0};
  if (v.size() == 2) return {v[0], v[1]};
  throw ConfigError("point must be 're' or 're,im'");
}

// Default settings for each reproduce target.
ConvergenceConfig table2_defaults() {
  ConvergenceConfig c;
  c.orders = {1, 2, 3, 4, 5};
  c.ks = parse_k_ladder("2^0..2^-12");
  c.n = 64;
  c.delta = 0.1732;
  c.sigma = 2.69;
  c.t_final = 5.0;
  return c;
}

ConvergenceConfig table3_defaults() {
  ConvergenceConfig c;
  c.orders = {1, 2, 3, 4, 5};
  c.ks = parse_k_ladder("2^-3..2^-11");
  c.n = 64;
  c.delta = 0.19166;
  c.sigma = 13.8;
  c.t_final = 1.0;
  return c;
}

GaussianDecayConfig table4_defaults() {
  GaussianDecayConfig g;
  g.base.orders = {1, 2, 3};
  g.base.ks = parse_k_ladder("2^-2..2^-11");
  g.base.n = 32;
  g.base.delta = 0.794;
  g.base.sigma = 2.616;
  g.base.t_final = 1.0;
  return g;
}

int report_exit(const ConvergenceReport& rep) {
  for (const auto& r : rep.rows)
    if (r.unstable) return kInstability;
  return kOk;
}

std::string channel_sweep_csv(const WmaxSweep& s, int ny) {
  std::ostringstream o;
  o << "# Ny: " << ny << "\n# monotone_decreasing: " << (s.monotone_decreasing ? "true" : "false") << "\n";
  o << "xi,w_max,w_min\n";
  for (const auto& r : s.rows)
    o << format_double(r.xi) << "," << format_double(r.w_max) << "," << format_double(r.w_min) << "\n";
  return o.str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"ImEx multistep schemes: coefficients, stability diagrams, splitting recipes, test problems"};
  app.require_subcommand(1);
  int code = kOk;

  // coeffs
  auto* coeffs = app.add_subcommand("coeffs", "print scheme coefficients");
  int c_order = 0;
  double c_delta = 1.0;
  std::string c_format = "json";
  coeffs->add_option("--order", c_order, "order r in 1..5")->required();
  coeffs->add_option("--delta", c_delta, "delta in (0,1]")->required();
  coeffs->add_option("--format", c_format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  coeffs->callback([&] {
    const ImExScheme s = generate_scheme(c_order, c_delta);
    if (c_format == "csv") {
      std::ostringstream o;
      o << "j,a,b,c\n";
      for (int j = 0; j <= s.order; ++j)
        o << j << "," << format_double(s.a[j]) << "," << format_double(s.b[j]) << "," << format_double(s.c[j])
          << "\n";
      out << o.str();
    } else {
      json j{{"order", s.order}, {"delta", s.delta}, {"a", s.a}, {"b", s.b}, {"c", s.c}};
      out << j.dump(2) << "\n";
    }
  });

  // diagram
  auto* diagram = app.add_subcommand("diagram", "stability diagram boundary or membership");
  int d_order = 0, d_samples = 512;
  double d_delta = 1.0;
  std::string d_out, d_contains;
  diagram->add_option("--order", d_order)->required();
  diagram->add_option("--delta", d_delta)->required();
  diagram->add_option("--samples", d_samples, "boundary samples (>= 16)");
  diagram->add_option("--out", d_out, "output CSV (default stdout)");
  diagram->add_option("--contains", d_contains, "test membership of re,im");
  diagram->callback([&] {
    const StabilityDiagram d(d_order, d_delta);
    if (!d_contains.empty()) {
      const cd mu = parse_point(d_contains);
      const bool in = d.contains(mu);
      out << (in ? "inside" : "outside") << " max_root_modulus=" << format_double(d.max_root_modulus(mu)) << "\n";
      return;
    }
    const auto ext = d.extreme_points();
    std::ostringstream o;
    o << "# order: " << d_order << "\n# delta: " << format_double(d_delta) << "\n# m_l: " << format_double(ext.m_l)
      << "\n# m_r: " << format_double(ext.m_r) << "\nre,im\n";
    for (const auto& mu : d.boundary_locus(d_samples))
      o << format_double(mu.real()) << "," << format_double(mu.imag()) << "\n";
    write_output(d_out, o.str(), out);
  });

  // wp
  auto* wp = app.add_subcommand("wp", "generalized eigenvalues and W_p of a splitting pair");
  std::string w_pair, w_out;
  double w_p = 1.0, w_sigma = 0.0;
  int w_angles = 256;
  wp->add_option("--pair", w_pair, "JSON file with A, B (and optional null_basis)")->required();
  wp->add_option("--p", w_p);
  wp->add_option("--sigma", w_sigma, "if set, report the sets mapped by w -> 1 + w/sigma");
  wp->add_option("--angles", w_angles);
  wp->add_option("--out", w_out);
  wp->callback([&] {
    const SplittingPair s = parse_pair(load_json(w_pair));
    SpectralSet eig = generalized_eigenvalues(s);
    SpectralSet w = w_p_set(s, w_p, w_angles);
    if (w_sigma != 0.0) {
      eig = rescale(eig, w_sigma);
      w = rescale(w, w_sigma);
    }
    json j{{"p", w_p},
           {"restricted", w.restricted},
           {"eigenvalues", complex_list(eig.points)},
           {"hull", complex_list(w.points)},
           {"w_min_real", w.min_real()},
           {"w_max_real", w.max_real()}};
    if (w_sigma != 0.0) j["sigma"] = w_sigma;
    write_output(w_out, j.dump(2) + "\n", out);
  });

  // recipe
  auto* recipe = app.add_subcommand("recipe", "search for unconditionally stable parameters");
  recipe->require_subcommand(1);
  std::string r_pair;
  int r_order = 0;
  double r_p = 1.0, r_safety = 0.95, r_delta = 1.0;
  auto* rd = recipe->add_subcommand("delta", "fixed splitting, search delta");
  auto* rs = recipe->add_subcommand("sigma", "fixed scheme, search sigma (pair holds A0 and L)");
  auto* rj = recipe->add_subcommand("joint", "search delta and sigma (pair holds A0 and L)");
  for (auto* sc : {rd, rs, rj}) {
    sc->add_option("--pair", r_pair)->required();
    sc->add_option("--order", r_order)->required();
    sc->add_option("--p", r_p);
  }
  rd->add_option("--safety", r_safety);
  rj->add_option("--safety", r_safety);
  rs->add_option("--delta", r_delta);
  auto finish = [&](const FeasibilityResult& res) {
    out << result_json(res).dump(2) << "\n";
    if (!res.feasible) code = kInfeasible;
  };
  rd->callback([&] { finish(recipe_delta(r_order, parse_pair(load_json(r_pair)), r_p, r_safety)); });
  rs->callback([&] {
    finish(recipe_sigma(generate_scheme(r_order, r_delta), parse_pair(load_json(r_pair)), r_p));
  });
  rj->callback([&] { finish(recipe_joint(r_order, parse_pair(load_json(r_pair)), r_p, r_safety)); });

  auto* ri = recipe->add_subcommand("interval", "closed-form parameters for real interval sets");
  double i_dmin = 0.0, i_dmax = 0.0, i_eta = 0.1;
  std::optional<double> i_delta, i_sigma;
  ri->add_option("--order", r_order)->required();
  ri->add_option("--dmin", i_dmin)->required();
  ri->add_option("--dmax", i_dmax)->required();
  ri->add_option("--eta", i_eta);
  ri->add_option("--delta", i_delta, "check this pair instead of computing the optimum");
  ri->add_option("--sigma", i_sigma);
  ri->callback([&] {
    json j;
    if (i_delta || i_sigma) {
      if (!i_delta || !i_sigma) throw ConfigError("--delta and --sigma must be given together");
      const bool ok = interval_feasible(r_order, i_dmin, i_dmax, *i_delta, *i_sigma);
      j = {{"feasible", ok}, {"delta", *i_delta}, {"sigma", *i_sigma}};
      if (!ok) code = kInfeasible;
    } else {
      const IntervalParams p = optimal_interval_params(r_order, i_dmin, i_dmax, i_eta);
      const bool ok = interval_feasible(r_order, i_dmin, i_dmax, p.delta, p.sigma);
      j = {{"feasible", ok}, {"delta", p.delta}, {"sigma", p.sigma}, {"eta", i_eta}};
      if (!ok) code = kInfeasible;
    }
    out << j.dump(2) << "\n";
  });

  // diffusion1d
  auto* diff1d = app.add_subcommand("diffusion1d", "manufactured variable-coefficient diffusion convergence");
  std::string f_config, f_out;
  diff1d->add_option("--config", f_config)->required();
  diff1d->add_option("--out", f_out);
  diff1d->callback([&] {
    const json j = load_json(f_config);
    reject_unknown_keys(j, {"orders", "k", "N", "delta", "sigma", "t_final"});
    const ConvergenceReport rep = run_vardiff_convergence(convergence_config(j, table2_defaults()));
    write_output(f_out, rep.to_csv(), out);
    err << "wall time " << format_double(rep.wall_seconds) << " s\n";
    code = report_exit(rep);
  });

  // porous3d
  auto* porous = app.add_subcommand("porous3d", "3D porous medium convergence runs");
  porous->add_option("--config", f_config)->required();
  porous->add_option("--out", f_out);
  porous->callback([&] {
    const json j = load_json(f_config);
    reject_unknown_keys(j, {"problem", "orders", "k", "N", "delta", "sigma", "t_final", "a", "gamma", "substeps"});
    const std::string problem = j.value("problem", std::string("manufactured"));
    ConvergenceReport rep;
    if (problem == "manufactured") {
      rep = run_porous_convergence(convergence_config(j, table3_defaults()), j.value("a", 1.0),
                                   j.value("gamma", 5.0 / 3.0));
    } else if (problem == "gaussian") {
      GaussianDecayConfig g = table4_defaults();
      g.base = convergence_config(j, g.base);
      g.a = j.value("a", g.a);
      g.gamma = j.value("gamma", g.gamma);
      g.substeps = j.value("substeps", g.substeps);
      rep = run_gaussian_decay(g).report;
    } else {
      throw ConfigError("problem must be 'manufactured' or 'gaussian'");
    }
    write_output(f_out, rep.to_csv(), out);
    err << "wall time " << format_double(rep.wall_seconds) << " s\n";
    code = report_exit(rep);
  });

  // channel
  auto* channel = app.add_subcommand("channel", "Stokes channel mode analysis");
  channel->require_subcommand(1);
  double ch_lx = 2.0 * std::numbers::pi, ch_eta = 0.1, ch_k = 0.1;
  int ch_ny = 256, ch_order = 5, ch_angles = 256;
  long ch_steps = 100;
  std::string ch_xi, ch_out;
  auto* csw = channel->add_subcommand("sweep", "W_max over wavenumbers");
  csw->add_option("--Ny", ch_ny);
  csw->add_option("--xi", ch_xi, "comma list of wavenumbers")->default_str("1,2,5,10,25,50");
  csw->add_option("--out", ch_out);
  csw->callback([&] {
    const auto xis = parse_double_list(ch_xi.empty() ? "1,2,5,10,25,50" : ch_xi);
    write_output(ch_out, channel_sweep_csv(wmax_sweep(xis, ch_ny), ch_ny), out);
  });
  auto* cce = channel->add_subcommand("certify", "optimal (delta, sigma) for the first mode");
  auto* crun = channel->add_subcommand("run", "integrate the first mode with the certified pair");
  for (auto* sc : {cce, crun}) {
    sc->add_option("--Lx", ch_lx);
    sc->add_option("--Ny", ch_ny);
    sc->add_option("--order", ch_order);
    sc->add_option("--eta", ch_eta);
    sc->add_option("--angles", ch_angles);
  }
  crun->add_option("--k", ch_k);
  crun->add_option("--steps", ch_steps);
  crun->add_option("--out", ch_out);
  cce->callback([&] {
    const ChannelParameters p = channel_parameters(ch_lx, ch_ny, ch_order, ch_eta, ch_angles);
    json j{{"xi1", p.xi1},   {"w_max", p.w_max},         {"w_min", p.w_min},
           {"delta", p.delta}, {"sigma", p.sigma},       {"certified", p.certified},
           {"sbdf3_feasible", p.sbdf3_feasible}};
    out << j.dump(2) << "\n";
    if (!p.certified) code = kInfeasible;
  });
  crun->callback([&] {
    const ChannelParameters p = channel_parameters(ch_lx, ch_ny, ch_order, ch_eta, ch_angles);
    if (!p.certified) {
      code = kInfeasible;
      err << "pair not certified\n";
      return;
    }
    const ChannelMode mode = build_mode(p.xi1, ch_ny, p.sigma);
    Vector u0(ch_ny);
    for (int j = 0; j < ch_ny; ++j) u0[j] = std::sin(std::numbers::pi * (j + 1) * mode.h);
    const auto norms = integrate_mode(mode, generate_scheme(ch_order, p.delta), ch_k, ch_steps, u0);
    std::ostringstream o;
    o << "# delta: " << format_double(p.delta) << "\n# sigma: " << format_double(p.sigma) << "\nstep,norm\n";
    for (std::size_t i = 0; i < norms.size(); ++i) o << i << "," << format_double(norms[i]) << "\n";
    write_output(ch_out, o.str(), out);
  });

  // reproduce
  auto* repro = app.add_subcommand("reproduce", "rerun a published experiment");
  std::string rp_target, rp_out, rp_k, rp_kmin, rp_orders;
  int rp_n = 0;
  repro->add_option("target", rp_target, "table2 | table3 | table4 | channel")
      ->required()
      ->check(CLI::IsMember({"table2", "table3", "table4", "channel"}));
  repro->add_option("--out", rp_out);
  repro->add_option("--k", rp_k, "time step ladder, e.g. 2^-3..2^-9");
  repro->add_option("--orders", rp_orders, "comma list of orders");
  repro->add_option("--kmin", rp_kmin, "halve the default largest k down to this value");
  repro->add_option("--N", rp_n, "grid size override");
  repro->callback([&] {
    auto apply = [&](ConvergenceConfig& c) {
      if (!rp_k.empty()) c.ks = parse_k_ladder(rp_k);
      if (!rp_kmin.empty()) {
        const double kmin = parse_k_ladder(rp_kmin).front();
        std::vector<double> ks;
        for (double k = c.ks.front(); k >= kmin * (1.0 - 1e-12); k /= 2.0) ks.push_back(k);
        if (ks.empty()) throw ConfigError("--kmin is larger than the first time step");
        c.ks = ks;
      }
      if (!rp_orders.empty()) c.orders = parse_int_list(rp_orders);
      if (rp_n) c.n = rp_n;
    };
    ConvergenceReport rep;
    if (rp_target == "table2") {
      ConvergenceConfig c = table2_defaults();
      apply(c);
      rep = run_vardiff_convergence(c);
      rep.target = "table2 (1d variable-coefficient diffusion errors)";
    } else if (rp_target == "table3") {
      ConvergenceConfig c = table3_defaults();
      apply(c);
      rep = run_porous_convergence(c);
      rep.target = "table3 (3d porous medium manufactured-solution errors)";
    } else if (rp_target == "table4") {
      GaussianDecayConfig g = table4_defaults();
      apply(g.base);
      rep = run_gaussian_decay(g).report;
      rep.target = "table4 (3d decaying Gaussian, R_k self-convergence)";
    } else {
      const WmaxSweep s = wmax_sweep({1, 2, 5, 10, 25, 50}, rp_n ? rp_n : 256);
      write_output(rp_out, "# target: channel (W_max against wavenumber)\n" + channel_sweep_csv(s, rp_n ? rp_n : 256),
                   out);
      return;
    }
    write_output(rp_out, rep.to_csv(), out);
    err << "wall time " << format_double(rep.wall_seconds) << " s\n";
    code = report_exit(rep);
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kConfigError;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const ParameterError& e) {
    err << "parameter error: " << e.what() << "\n";
    return kConfigError;
  } catch (const DimensionError& e) {
    err << "dimension error: " << e.what() << "\n";
    return kConfigError;
  } catch (const InstabilityError& e) {
    err << "instability: " << e.what() << "\n";
    return kInstability;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  return code;
}

}  // namespace imex::cli
