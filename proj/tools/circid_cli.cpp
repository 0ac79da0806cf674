/*
   Copyright 2026 The circid Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "circid/circular.hpp"
#include "circid/cylindrical.hpp"
#include "circid/diophantine.hpp"
#include "circid/errors.hpp"
#include "circid/probe.hpp"
#include "output.hpp"
#include "run_config.hpp"

namespace circid::cli {
namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumeric = 3;

struct Output {
  std::string text;
  int code = 0;
};

Json params_json(const NamedParams& params) {
  Json j = Json::object();
  for (const auto& [k, v] : params) j[k] = v;
  return j;
}

Json header(const RunConfig& cfg) {
  Json j = Json::object();
  j["schema_version"] = "1";
  j["command"] = cfg.command;
  if (!cfg.family.empty()) j["family"] = cfg.family;
  return j;
}

Output emit_table(const RunConfig& cfg, const Table& table, Json head, bool incomplete,
                  bool json_default = false) {
  const OutputFormat f = cfg.output_format();
  const bool json = f == OutputFormat::kJson || (f == OutputFormat::kDefault && json_default);
  Output out;
  out.code = incomplete ? kExitNumeric : 0;
  if (!json) {
    out.text = to_csv(table);
    return out;
  }
  head["columns"] = table.columns;
  head["rows"] = table_rows_json(table);
  head["incomplete"] = incomplete;
  out.text = to_json_text(head);
  return out;
}

std::int64_t or_default(std::int64_t v, std::int64_t fallback) { return v < 0 ? fallback : v; }

ProbeConfig probe_config(const RunConfig& cfg) {
  ProbeConfig pc;
  pc.p_max = or_default(cfg.p_max, pc.p_max);
  if (cfg.epsilon > 0.0) pc.epsilon_dio = cfg.epsilon;
  pc.dio_count = static_cast<std::size_t>(or_default(cfg.count, pc.dio_count));
  pc.tol = cfg.tol;
  pc.sweep_cap = std::max(pc.sweep_cap, pc.p_max);
  return pc;
}

std::vector<double> theta_grid(const RunConfig& cfg) {
  if (!cfg.theta.empty()) return parse_real_list(cfg.theta, "theta");
  const std::int64_t n = or_default(cfg.n, 16);
  if (n < 1) throw DomainError("n must be positive");
  std::vector<double> out;
  for (std::int64_t k = 0; k < n; ++k) out.push_back(kTwoPi * k / n);
  return out;
}

Output cmd_density(const RunConfig& cfg) {
  const CircularModel model = make_circular(cfg.family, cfg.params);
  Table t{{"theta", "density"}, {}, {}};
  for (double th : theta_grid(cfg)) t.rows.push_back({th, density(model, th)});
  Json h = header(cfg);
  h["params"] = params_json(model.named_parameters());
  return emit_table(cfg, t, h, false);
}

Output cmd_moments(const RunConfig& cfg) {
  const CircularModel model = make_circular(cfg.family, cfg.params);
  const std::int64_t p_max = or_default(cfg.p_max, 10);
  Table t{{"p", "alpha", "beta"}, {}, {}};
  for (std::int64_t p = 0; p <= p_max; ++p) {
    const TrigMoment m = trig_moment_closed(model, p);
    t.rows.push_back({p, m.alpha, m.beta});
  }
  Json h = header(cfg);
  h["params"] = params_json(model.named_parameters());
  return emit_table(cfg, t, h, false);
}

Output cmd_mrl(const RunConfig& cfg) {
  const CircularModel model = make_circular(cfg.family, cfg.params);
  const std::int64_t p_max = or_default(cfg.p_max, 10);
  Table t{{"p", "value", "log_value"}, {}, {}};
  for (std::int64_t p = 0; p <= p_max; ++p) {
    const MrlEval m = mean_resultant_length(model, p);
    t.rows.push_back({p, m.value, m.log_value});
  }
  Json h = header(cfg);
  h["params"] = params_json(model.named_parameters());
  return emit_table(cfg, t, h, false);
}

Output cmd_sample(const RunConfig& cfg) {
  const std::int64_t n = or_default(cfg.n, 1000);
  if (n < 1) throw DomainError("n must be positive");
  Json h = header(cfg);
  h["seed"] = cfg.seed;
  Table t;
  if (is_cylindrical_family(cfg.family)) {
    const CylindricalModel model = make_cylindrical(cfg.family, cfg.params);
    h["params"] = params_json(model.named_parameters());
    t.columns = {"index", "theta", "x"};
    const auto draws = sample_cylindrical(model, static_cast<std::size_t>(n), cfg.seed);
    for (std::size_t i = 0; i < draws.size(); ++i) {
      t.rows.push_back({static_cast<std::int64_t>(i), draws[i].theta, draws[i].x});
    }
  } else {
    const CircularModel model = make_circular(cfg.family, cfg.params);
    h["params"] = params_json(model.named_parameters());
    t.columns = {"index", "theta"};
    const auto draws = sample(model, static_cast<std::size_t>(n), cfg.seed);
    for (std::size_t i = 0; i < draws.size(); ++i) {
      t.rows.push_back({static_cast<std::int64_t>(i), draws[i]});
    }
  }
  return emit_table(cfg, t, h, false);
}

Output cmd_diophantine(const RunConfig& cfg) {
  if (cfg.coeffs.empty()) throw DomainError("diophantine needs --coeffs");
  DiophantineQuery q;
  q.coeffs = parse_real_list(cfg.coeffs, "coeffs");
  if (cfg.epsilon > 0.0) q.epsilon = cfg.epsilon;
  q.p_max = or_default(cfg.p_max, q.p_max);
  const std::int64_t count = or_default(cfg.count, 12);
  if (count < 1) throw DomainError("count must be positive");
  IndexSequence seq;
  bool incomplete = false;
  std::string note;
  try {
    seq = find_indices(q, static_cast<std::size_t>(count));
  } catch (const ExhaustionError& e) {
    seq = e.partial();
    incomplete = true;
    note = e.what();
  }
  Table t{{"n", "p", "residual"}, {}, {}};
  for (std::size_t i = 0; i < seq.size(); ++i) {
    t.rows.push_back({static_cast<std::int64_t>(i + 1), seq.indices[i], seq.residuals[i]});
  }
  if (incomplete) {
    t.comments.push_back("incomplete: " + note);
    std::cerr << "circid: " << note << '\n';
  }
  Json h = header(cfg);
  h["coeffs"] = q.coeffs;
  h["epsilon"] = q.epsilon;
  h["p_max"] = q.p_max;
  return emit_table(cfg, t, h, incomplete);
}

Json certificate_json(const RunConfig& cfg, const SeparationCertificate& cert) {
  Json j = header(cfg);
  j["family"] = cert.family;
  j["params_1"] = params_json(cert.params_1);
  j["params_2"] = params_json(cert.params_2);
  j["step"] = cert.step;
  j["transform"] = std::string(to_string(cert.transform));
  j["classification"] = std::string(to_string(cert.result.kind));
  j["limit"] = {{"re", cert.result.center.real()}, {"im", cert.result.center.imag()}};
  j["dispersion"] = cert.result.dispersion;
  j["extrapolated"] = cert.result.extrapolated;
  j["separates"] = cert.separates();
  j["incomplete"] = cert.incomplete;
  if (cert.index_sequence) {
    j["index_sequence"] = {{"indices", cert.index_sequence->indices},
                           {"residuals", cert.index_sequence->residuals}};
  } else {
    j["index_sequence"] = nullptr;
  }
  Json ev = Json::object();
  ev["domain"] = std::string(to_string(cert.evidence.domain));
  ev["indices"] = cert.evidence.indices;
  if (!cert.evidence.abscissae.empty()) ev["abscissae"] = cert.evidence.abscissae;
  ev["log_magnitude"] = cert.evidence.log_magnitude;
  ev["phase"] = cert.evidence.phase;
  j["evidence"] = ev;
  j["diagnostics"] = cert.diagnostics;
  return j;
}

Output emit_certificate(const RunConfig& cfg, const SeparationCertificate& cert) {
  Output out;
  out.code = cert.incomplete ? kExitNumeric : 0;
  if (cfg.output_format() == OutputFormat::kCsv) {
    Table t{{"family", "step", "transform", "classification", "limit_re", "limit_im",
             "dispersion", "trace_length"},
            {},
            {}};
    t.rows.push_back({cert.family, static_cast<std::int64_t>(cert.step),
                      std::string(to_string(cert.transform)),
                      std::string(to_string(cert.result.kind)), cert.result.center.real(),
                      cert.result.center.imag(), cert.result.dispersion,
                      static_cast<std::int64_t>(cert.evidence.size())});
    if (cert.incomplete) t.comments.push_back("incomplete");
    out.text = to_csv(t);
  } else {
    out.text = to_json_text(certificate_json(cfg, cert));
  }
  if (cert.incomplete) std::cerr << "circid: probe incomplete\n";
  return out;
}

Output cmd_probe(const RunConfig& cfg) {
  const CircularModel m1 = make_circular(cfg.family, cfg.params_1);
  const CircularModel m2 = make_circular(cfg.family, cfg.params_2);
  return emit_certificate(cfg, probe_pair(m1, m2, probe_config(cfg)));
}

Output cmd_cyl_probe(const RunConfig& cfg) {
  const CylindricalModel m1 = make_cylindrical(cfg.family, cfg.params_1);
  const CylindricalModel m2 = make_cylindrical(cfg.family, cfg.params_2);
  return emit_certificate(cfg, conditional_ratio_probe(m1, m2, probe_config(cfg)));
}

Output cmd_check_conditions(const RunConfig& cfg) {
  const auto fam = parse_circular_family(cfg.family);
  if (!fam || *fam == CircularFamily::kMC) {
    throw DomainError("check-conditions needs --family sswc or ssvm");
  }
  const std::vector<double> psi =
      cfg.psi.empty() ? std::vector<double>{} : parse_real_list(cfg.psi, "psi");
  std::vector<std::pair<double, double>> pairs;
  // pairs are written a:b,c:d
  if (!cfg.pairs.empty()) {
    const std::string& text = cfg.pairs;
    std::size_t start = 0;
    while (start <= text.size()) {
      const std::size_t end = std::min(text.find(',', start), text.size());
      const std::string item = text.substr(start, end - start);
      const std::size_t colon = item.find(':');
      if (colon == std::string::npos) throw DomainError("pairs must be written a:b");
      const auto a = parse_real_list(item.substr(0, colon), "pairs");
      const auto b = parse_real_list(item.substr(colon + 1), "pairs");
      pairs.emplace_back(a.at(0), b.at(0));
      start = end + 1;
    }
  }
  if (psi.empty() && pairs.empty()) throw DomainError("check-conditions needs --psi or --pairs");
  const std::int64_t p_max = or_default(cfg.p_max, 400);
  const ConditionCheck check = check_theorem2_conditions(*fam, psi, pairs, p_max);

  if (cfg.output_format() == OutputFormat::kCsv) {
    Table t{{"record", "psi_1", "psi_2", "cond_i", "alpha_01", "cond_ii_inf", "cond_ii_analytic",
             "exponent", "fit_residual", "outcome"},
            {},
            {}};
    for (const auto& r : check.psi_reports) {
      t.rows.push_back({std::string("psi"), r.psi, std::string(),
                        std::string(r.cond_i ? "true" : "false"), r.alpha_01, r.cond_ii_inf,
                        r.cond_ii_analytic, r.cond_iii_exponent, r.cond_iii_residual,
                        std::string(r.passed ? "pass" : "fail")});
    }
    for (const auto& r : check.pair_reports) {
      t.rows.push_back({std::string("pair"), r.psi_1, r.psi_2, std::string(), std::string(),
                        std::string(), std::string(), r.exponent, std::string(),
                        std::string(to_string(r.limit))});
    }
    return {to_csv(t), 0};
  }
  Json j = header(cfg);
  j["p_max"] = p_max;
  Json reports = Json::array();
  for (const auto& r : check.psi_reports) {
    reports.push_back({{"psi", r.psi},
                       {"alpha_01", r.alpha_01},
                       {"cond_i", r.cond_i},
                       {"cond_ii_inf", r.cond_ii_inf},
                       {"cond_ii_analytic", r.cond_ii_analytic},
                       {"cond_ii_bound", r.cond_ii_bound},
                       {"cond_iii_exponent", r.cond_iii_exponent},
                       {"cond_iii_residual", r.cond_iii_residual},
                       {"passed", r.passed}});
  }
  Json pair_reports = Json::array();
  for (const auto& r : check.pair_reports) {
    pair_reports.push_back({{"psi_1", r.psi_1},
                            {"psi_2", r.psi_2},
                            {"exponent", r.exponent},
                            {"tail_log_ratio", r.tail_log_ratio},
                            {"limit", std::string(to_string(r.limit))}});
  }
  j["psi"] = reports;
  j["pairs"] = pair_reports;
  return {to_json_text(j), 0};
}

Output cmd_cyl_density(const RunConfig& cfg) {
  const CylindricalModel model = make_cylindrical(cfg.family, cfg.params);
  std::vector<double> thetas;
  if (!cfg.theta.empty()) {
    thetas = parse_real_list(cfg.theta, "theta");
  } else {
    const std::int64_t n = or_default(cfg.n, 8);
    if (n < 1) throw DomainError("n must be positive");
    for (std::int64_t k = 0; k < n; ++k) thetas.push_back(-kPi + kTwoPi * k / n);
  }
  const std::vector<double> xs =
      cfg.x.empty() ? std::vector<double>{0.5, 1.0, 2.0} : parse_real_list(cfg.x, "x");
  Table t{{"theta", "x", "joint", "conditional", "marginal"}, {}, {}};
  for (double th : thetas) {
    const double marginal = marginal_theta_density(model, th);
    for (double x : xs) {
      t.rows.push_back({th, x, joint_density(model, th, x), conditional_x_density(model, th, x),
                        marginal});
    }
  }
  Json h = header(cfg);
  h["params"] = params_json(model.named_parameters());
  return emit_table(cfg, t, h, false);
}

Output cmd_tau_limit(const RunConfig& cfg) {
  if (!cfg.family.empty() && cfg.family != "gpareto") {
    throw DomainError("tau-limit applies to the gpareto family only");
  }
  const CylindricalModel model = make_cylindrical("gpareto", cfg.params);
  GParetoParams gp = std::get<GParetoParams>(model.params());
  const std::vector<double> taus =
      cfg.taus.empty() ? std::vector<double>{gp.tau} : parse_real_list(cfg.taus, "taus");
  const int n = static_cast<int>(or_default(cfg.n, 50));
  Table t{{"tau", "sup_diff"}, {}, {}};
  for (double tau : taus) {
    gp.tau = tau;
    t.rows.push_back({tau, tau_limit_check(gp, n, n, 10.0)});
  }
  Json h = header(cfg);
  h["family"] = "gpareto";
  h["params"] = params_json(model.named_parameters());
  return emit_table(cfg, t, h, false);
}

void write_output(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw DomainError("cannot open output file '" + cfg.out + "'");
  f << text;
}

int run(int argc, char** argv) {
  CLI::App app{"circid: asymmetric circular and cylindrical distributions"};
  app.require_subcommand(1);
  RunConfig cfg;

  const auto common = [&](CLI::App* sub) {
    sub->add_option("--format", cfg.format, "csv or json");
    sub->add_option("--out", cfg.out, "output file (default stdout)");
  };
  const auto family = [&](CLI::App* sub, bool required) {
    auto* opt = sub->add_option("--family", cfg.family, "sswc|ssvm|mc|abeley|gpareto");
    if (required) opt->required();
  };
  const auto single = [&](CLI::App* sub) {
    family(sub, true);
    sub->add_option("--params", cfg.params, "k=v,k=v")->required();
  };
  const auto pair = [&](CLI::App* sub) {
    family(sub, true);
    sub->add_option("--p1", cfg.params_1, "first parameter vector")->required();
    sub->add_option("--p2", cfg.params_2, "second parameter vector")->required();
    sub->add_option("--p-max", cfg.p_max, "sweep length");
    sub->add_option("--eps", cfg.epsilon, "diophantine tolerance");
    sub->add_option("--count", cfg.count, "diophantine index count");
    sub->add_option("--tol", cfg.tol, "limit classification tolerance");
  };

  auto* density = app.add_subcommand("density", "circular density on a theta grid");
  single(density);
  density->add_option("--theta", cfg.theta, "comma-separated angles");
  density->add_option("--n", cfg.n, "grid size when --theta is absent");

  auto* moments = app.add_subcommand("moments", "closed-form trigonometric moments");
  single(moments);
  moments->add_option("--p-max", cfg.p_max, "largest order");

  auto* mrl = app.add_subcommand("mrl", "mean resultant lengths");
  single(mrl);
  mrl->add_option("--p-max", cfg.p_max, "largest order");

  auto* smp = app.add_subcommand("sample", "draw a sample");
  single(smp);
  smp->add_option("--n", cfg.n, "sample size");
  smp->add_option("--seed", cfg.seed, "random seed");

  auto* dio = app.add_subcommand("diophantine", "indices with p c_i pi near 0 mod 2pi");
  dio->add_option("--coeffs", cfg.coeffs, "comma-separated coefficients in [0, 2)")->required();
  dio->add_option("--eps", cfg.epsilon, "tolerance");
  dio->add_option("--count", cfg.count, "number of indices");
  dio->add_option("--p-max", cfg.p_max, "scan cap");

  auto* probe = app.add_subcommand("probe", "separation certificate for a circular pair");
  pair(probe);

  auto* cond = app.add_subcommand("check-conditions", "sine-skew identifiability conditions");
  family(cond, true);
  cond->add_option("--psi", cfg.psi, "comma-separated rho or kappa values");
  cond->add_option("--pairs", cfg.pairs, "psi pairs written a:b,c:d");
  cond->add_option("--p-max", cfg.p_max, "largest order");

  auto* cyl_density = app.add_subcommand("cyl-density", "cylindrical densities");
  single(cyl_density);
  cyl_density->add_option("--theta", cfg.theta, "comma-separated angles");
  cyl_density->add_option("--x", cfg.x, "comma-separated x values");
  cyl_density->add_option("--n", cfg.n, "theta grid size when --theta is absent");

  auto* cyl_probe = app.add_subcommand("cyl-probe", "separation certificate for a cylindrical pair");
  pair(cyl_probe);

  auto* tau = app.add_subcommand("tau-limit", "distance to the Abe-Ley limit as tau -> 0");
  family(tau, false);
  tau->add_option("--params", cfg.params, "gpareto parameters")->required();
  tau->add_option("--taus", cfg.taus, "comma-separated tau values");
  tau->add_option("--n", cfg.n, "grid size per axis");

  for (auto* sub : {density, moments, mrl, smp, dio, probe, cond, cyl_density, cyl_probe, tau}) {
    common(sub);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "circid: " << e.what() << '\n';
    return kExitValidation;
  }
  cfg.command = app.get_subcommands().front()->get_name();

  try {
    (void)cfg.output_format();
    Output out;
    if (cfg.command == "density") out = cmd_density(cfg);
    else if (cfg.command == "moments") out = cmd_moments(cfg);
    else if (cfg.command == "mrl") out = cmd_mrl(cfg);
    else if (cfg.command == "sample") out = cmd_sample(cfg);
    else if (cfg.command == "diophantine") out = cmd_diophantine(cfg);
    else if (cfg.command == "probe") out = cmd_probe(cfg);
    else if (cfg.command == "check-conditions") out = cmd_check_conditions(cfg);
    else if (cfg.command == "cyl-density") out = cmd_cyl_density(cfg);
    else if (cfg.command == "cyl-probe") out = cmd_cyl_probe(cfg);
    else out = cmd_tau_limit(cfg);
    write_output(cfg, out.text);
    return out.code;
  } catch (const DomainError& e) {
    std::cerr << "circid: " << e.what() << '\n';
    return kExitValidation;
  } catch (const NumericError& e) {
    std::cerr << "circid: " << e.what() << " (achieved error " << e.achieved_error() << ")\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "circid: " << e.what() << '\n';
    return kExitNumeric;
  }
}

}  // namespace
}  // namespace circid::cli

int main(int argc, char** argv) { return circid::cli::run(argc, argv); }
