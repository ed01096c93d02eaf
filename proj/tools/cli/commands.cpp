#include "cli/commands.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <thread>
#include <variant>

#include "cli/output.hpp"
#include "torusspec/bounds.hpp"
#include "torusspec/errors.hpp"
#include "torusspec/spectral.hpp"
#include "torusspec/variations.hpp"

namespace torusspec::cli {

namespace {

constexpr double kPi = std::numbers::pi;

bool flagged(const EigenMode& em, double tol) {
  return em.residual > tol * std::max(std::abs(em.value), 1.0);
}

ordered_json mode_json(const EigenMode& em, double tol) {
  ordered_json j;
  j["value"] = num(em.value);
  j["residual"] = num(em.residual);
  j["flagged"] = flagged(em, tol);
  return j;
}

ordered_json metric_info(const ConformalMetric& m, const std::string& spec) {
  ordered_json j;
  j["spec"] = spec;
  j["symmetric"] = m.symmetric();
  j["degenerate"] = m.degenerate();
  j["volume"] = num(m.volume());
  if (m.poly_form()) {
    const TrigPoly& p = m.h4_poly();
    ordered_json coeffs = ordered_json::array();
    coeffs.push_back(num(p.mean()));
    for (int n = 1; n <= p.degree(); ++n) {
      coeffs.push_back(num(p.a(n)));
      coeffs.push_back(num(p.b(n)));
    }
    j["h4"] = std::move(coeffs);
  }
  return j;
}

void emit(const RunConfig& cfg, const std::string& body, std::ostream& out) {
  if (cfg.out.empty()) {
    out << body;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw UsageError("cannot open output file: " + cfg.out);
  f << body;
  if (!f) throw UsageError("cannot write output file: " + cfg.out);
}

std::string effective_format(const RunConfig& cfg) {
  if (!cfg.format.empty()) return cfg.format;
  return cfg.command == "sweep" ? "csv" : "json";
}

ConformalMetric metric_for(const RunConfig& cfg) {
  if (!cfg.metric.empty()) {
    if (!cfg.family.empty())
      throw UsageError("--metric and --family are mutually exclusive");
    return parse_metric(cfg.metric, cfg.grid, cfg.metric_degree);
  }
  if (!cfg.family.empty()) {
    std::vector<double> es = sweep_values(cfg);
    if (es.size() != 1)
      throw UsageError("--family here needs exactly one --E value");
    return family_metric(cfg.family, es[0], cfg.grid, cfg.metric_degree);
  }
  throw UsageError("need --metric or --family");
}

// ---------------------------------------------------------------- spectrum

int cmd_spectrum_impl(const RunConfig& cfg, std::ostream& out) {
  ConformalMetric m = metric_for(cfg);
  const int N = cfg.trunc, M = cfg.grid;
  const double tol = cfg.residual_tol;

  // branch id -> modes, or an error string for unavailable branches
  struct Branch {
    std::string id;
    std::vector<EigenMode> modes;
    std::string error;
    std::vector<double> closed;  // l = 0 closed form, bypasses Galerkin
  };
  std::vector<Branch> branches;

  for (int k : cfg.laplace_k) {
    Branch b;
    b.id = "laplace k=" + std::to_string(k);
    b.modes = solve({OperatorKind::laplace, k, m, N, M}, cfg.count);
    branches.push_back(std::move(b));
  }
  for (int l : cfg.dirac_l) {
    Branch b;
    b.id = "dirac l=" + std::to_string(l);
    if (l == 0) {
      for (int n = 1; n <= cfg.count; ++n)
        b.closed.push_back(dirac_l0_closed_form(m, n, M));
    } else {
      try {
        b.modes = solve({OperatorKind::dirac, l, m, N, M}, cfg.count);
      } catch (const DegenerateMetric& e) {
        b.error = e.what();
      }
    }
    branches.push_back(std::move(b));
  }

  double max_residual = 0.0;
  for (const Branch& b : branches)
    for (const EigenMode& em : b.modes)
      max_residual = std::max(max_residual, em.residual);

  if (effective_format(cfg) == "csv") {
    std::ostringstream csv;
    csv << "branch,index,value,residual,flagged\r\n";
    for (const Branch& b : branches) {
      int i = 0;
      for (double v : b.closed)
        csv << csv_field(b.id) << "," << i++ << "," << fmt10(v) << ",0,false\r\n";
      for (const EigenMode& em : b.modes)
        csv << csv_field(b.id) << "," << i++ << "," << fmt10(em.value) << ","
            << fmt10(em.residual) << "," << (flagged(em, tol) ? "true" : "false")
            << "\r\n";
      if (!b.error.empty())
        csv << csv_field(b.id) << ",," << csv_field("error:degenerate") << ",,\r\n";
    }
    emit(cfg, csv.str(), out);
    return 0;
  }

  ordered_json doc;
  doc["schema"] = "torus-spec/1";
  doc["command"] = "spectrum";
  doc["metric"] = metric_info(m, cfg.metric.empty() ? cfg.family : cfg.metric);
  doc["truncation"] = N;
  doc["grid"] = M;
  ordered_json jb = ordered_json::array();
  for (const Branch& b : branches) {
    ordered_json e;
    e["branch"] = b.id;
    if (!b.error.empty()) {
      e["error"] = b.error;
    } else if (!b.closed.empty()) {
      ordered_json vals = ordered_json::array();
      for (double v : b.closed) vals.push_back(num(v));
      e["values"] = std::move(vals);
      e["method"] = "closed form";
    } else {
      ordered_json ms = ordered_json::array();
      for (const EigenMode& em : b.modes) ms.push_back(mode_json(em, tol));
      e["modes"] = std::move(ms);
    }
    jb.push_back(std::move(e));
  }
  doc["branches"] = std::move(jb);

  {
    ordered_json fp;
    FirstPositive lp = first_positive_laplace(m, N, M);
    fp["laplace"] = {{"value", num(lp.value)}, {"weight", lp.weight_index}};
    try {
      FirstPositive dp = first_positive_dirac(m, N, M);
      fp["dirac_sq"] = {{"value", num(dp.value)}, {"weight", dp.weight_index}};
    } catch (const DegenerateMetric& e) {
      fp["dirac_sq"] = {{"error", e.what()}};
    }
    doc["first_positive"] = std::move(fp);
  }
  doc["max_residual"] = num(max_residual);

  emit(cfg, doc.dump(2) + "\n", out);
  return 0;
}

// ------------------------------------------------------------------- sweep

// One sweep cell: a finite number or a short error token.
using Cell = std::variant<double, std::string>;

constexpr const char* kSweepColumns[] = {
    "E",          "mu1",           "mu2",
    "mu3",        "lam_l0",        "lam3sq",
    "bound_lower", "bound_upper",  "bound_rayleigh_mu",
    "bound_rayleigh_lam", "bound_potential_mean", "max_residual",
    "flagged"};
constexpr int kSweepWidth = 13;

std::string error_token(const Error& e) {
  if (dynamic_cast<const DegenerateMetric*>(&e)) return "error:degenerate";
  if (dynamic_cast<const NonPositiveMetric*>(&e)) return "error:nonpositive";
  if (dynamic_cast<const MetricNotSymmetric*>(&e)) return "error:asymmetric";
  if (dynamic_cast<const AntisymmetryViolated*>(&e)) return "error:asymmetric";
  return "error:solver";
}

std::vector<Cell> sweep_row(const RunConfig& cfg, double E) {
  std::vector<Cell> row(kSweepWidth, std::string("error:solver"));
  row[0] = E;

  ConformalMetric m = ConformalMetric::flat();
  try {
    m = family_metric(cfg.family, E, cfg.grid, cfg.metric_degree);
  } catch (const Error& e) {
    for (int i = 1; i < kSweepWidth; ++i) row[i] = std::string(error_token(e));
    return row;
  }

  const int N = cfg.trunc, M = cfg.grid;
  double max_residual = 0.0;
  double scale = 1.0;

  auto put = [&](int col, auto&& fn) {
    try {
      row[col] = fn();
    } catch (const Error& e) {
      row[col] = std::string(error_token(e));
    }
  };

  if (m.symmetric()) {
    try {
      SpectralFunctions sf = spectral_functions(m, N, M);
      row[1] = sf.mu1;
      row[2] = sf.mu2;
      row[3] = sf.mu3;
      row[4] = std::sqrt(dirac_l0_closed_form(m, 1, M));
      row[5] = sf.dirac_ok ? Cell(sf.lam23sq) : Cell(std::string("error:degenerate"));
      max_residual = sf.max_residual;
      scale = std::max({sf.mu1, sf.mu2, sf.mu3,
                        sf.dirac_ok ? sf.lam23sq : 0.0, 1.0});
    } catch (const Error& e) {
      for (int i = 1; i <= 5; ++i) row[i] = std::string(error_token(e));
    }
  } else {
    row[1] = std::string("error:asymmetric");
    row[2] = std::string("error:asymmetric");
    put(3, [&] {
      EigenMode em = solve({OperatorKind::laplace, 1, m, N, M}, 1).at(0);
      max_residual = std::max(max_residual, em.residual);
      scale = std::max(scale, std::abs(em.value));
      return em.value;
    });
    put(4, [&] { return std::sqrt(dirac_l0_closed_form(m, 1, M)); });
    put(5, [&] {
      EigenMode em = solve({OperatorKind::dirac, 1, m, N, M}, 1).at(0);
      max_residual = std::max(max_residual, em.residual);
      scale = std::max(scale, std::abs(em.value));
      return em.value;
    });
  }

  put(6, [&] { return conformal_sandwich(m).first; });
  put(7, [&] { return conformal_sandwich(m).second; });
  const TrigPoly sin1 = TrigPoly::harmonic_sin(1);
  put(8, [&] { return rayleigh_upper_laplace(m, sin1, M); });
  put(9, [&] { return rayleigh_upper_dirac(m, sin1, M); });
  put(10, [&] { return potential_mean_bound(m, 1, M); });

  row[11] = max_residual;
  row[12] = std::string(max_residual > cfg.residual_tol * scale ? "true" : "false");
  return row;
}

std::string cell_csv(const Cell& c) {
  if (std::holds_alternative<double>(c)) return fmt10(std::get<double>(c));
  return csv_field(std::get<std::string>(c));
}

int cmd_sweep_impl(const RunConfig& cfg, std::ostream& out) {
  if (cfg.family.empty()) throw UsageError("sweep needs --family");
  std::vector<double> es = sweep_values(cfg);

  std::vector<std::vector<Cell>> rows(es.size());
  const int jobs =
      std::max(1, std::min<int>(cfg.jobs, static_cast<int>(es.size())));
  if (jobs == 1) {
    for (std::size_t i = 0; i < es.size(); ++i) rows[i] = sweep_row(cfg, es[i]);
  } else {
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
      for (std::size_t i = next.fetch_add(1); i < es.size();
           i = next.fetch_add(1))
        rows[i] = sweep_row(cfg, es[i]);
    };
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  if (effective_format(cfg) == "json") {
    ordered_json doc;
    doc["schema"] = "torus-spec/1";
    doc["command"] = "sweep";
    doc["family"] = cfg.family;
    doc["truncation"] = cfg.trunc;
    doc["grid"] = cfg.grid;
    ordered_json cols = ordered_json::array();
    for (const char* c : kSweepColumns) cols.push_back(c);
    doc["columns"] = std::move(cols);
    ordered_json jrows = ordered_json::array();
    for (const auto& r : rows) {
      ordered_json jr = ordered_json::array();
      for (const Cell& c : r) {
        if (std::holds_alternative<double>(c))
          jr.push_back(num(std::get<double>(c)));
        else
          jr.push_back(std::get<std::string>(c));
      }
      jrows.push_back(std::move(jr));
    }
    doc["rows"] = std::move(jrows);
    emit(cfg, doc.dump(2) + "\n", out);
    return 0;
  }

  std::ostringstream csv;
  for (int i = 0; i < kSweepWidth; ++i)
    csv << (i ? "," : "") << kSweepColumns[i];
  csv << "\r\n";
  for (const auto& r : rows) {
    for (int i = 0; i < kSweepWidth; ++i) csv << (i ? "," : "") << cell_csv(r[i]);
    csv << "\r\n";
  }
  emit(cfg, csv.str(), out);
  return 0;
}

// -------------------------------------------------------------- variations

ordered_json branch_value(double v) {
  return std::isfinite(v) ? num(v) : ordered_json(nullptr);
}

int cmd_variations_impl(const RunConfig& cfg, std::ostream& out) {
  if (cfg.H.empty()) throw UsageError("variations needs --H");
  const TrigPoly H = parse_direction(cfg.H);
  const TrigPoly G = cfg.G.empty() ? TrigPoly() : parse_direction(cfg.G);
  std::vector<int> orders = cfg.orders;
  if (orders.empty()) orders = {1, 2};

  ordered_json doc;
  doc["schema"] = "torus-spec/1";
  doc["command"] = "variations";
  ordered_json reports = ordered_json::array();

  bool any_branch = false;
  for (int order : orders) {
    ordered_json r;
    r["order"] = order;
    if (order == 1 || order == 2) {
      VariationReport vr =
          order == 1 ? first_variation(H)
                     : second_variation(H, G, HypothesisPolicy::partial);
      r["mu1"] = branch_value(vr.mu1);
      r["mu2"] = branch_value(vr.mu2);
      r["mu3"] = branch_value(vr.mu3);
      r["lam1sq"] = branch_value(vr.lam1sq);
      r["lam23sq"] = branch_value(vr.lam23sq);
      ordered_json skipped = ordered_json::array();
      if (!std::isfinite(vr.mu1)) skipped.push_back("mu1");
      if (!std::isfinite(vr.mu2)) skipped.push_back("mu2");
      if (!std::isfinite(vr.mu3)) skipped.push_back("mu3");
      if (!std::isfinite(vr.lam1sq)) skipped.push_back("lam1sq");
      if (!std::isfinite(vr.lam23sq)) skipped.push_back("lam23sq");
      if (!skipped.empty()) r["skipped"] = std::move(skipped);
      if (std::isfinite(vr.mu1) || std::isfinite(vr.mu2) ||
          std::isfinite(vr.mu3) || std::isfinite(vr.lam1sq) ||
          std::isfinite(vr.lam23sq))
        any_branch = true;
      if (!vr.hypotheses_checked.empty()) {
        ordered_json hs = ordered_json::array();
        for (const HypothesisCheck& h : vr.hypotheses_checked)
          hs.push_back({{"name", h.name}, {"residual", num(h.residual)}});
        r["hypotheses"] = std::move(hs);
      }
    } else if (order == 4) {
      if (cfg.scheme == "printed" || cfg.scheme == "both")
        r["lam23sq_printed"] =
            num(fourth_variation_dirac(H, FourthOrderScheme::printed));
      if (cfg.scheme == "corrected" || cfg.scheme == "both")
        r["lam23sq_corrected"] =
            num(fourth_variation_dirac(H, FourthOrderScheme::corrected));
      any_branch = true;
    } else {
      throw UsageError("unsupported --order " + std::to_string(order) +
                       " (supported: 1, 2, 4)");
    }
    reports.push_back(std::move(r));
  }
  doc["reports"] = std::move(reports);

  if (!any_branch) {
    std::cerr << "variation hypotheses exclude every requested branch\n";
    return 4;
  }
  emit(cfg, doc.dump(2) + "\n", out);
  return 0;
}

// ------------------------------------------------------------------ spinor

int cmd_spinor_impl(const RunConfig& cfg, std::ostream& out) {
  if (cfg.l == 0)
    throw UsageError("spinor needs a nonzero weight --l");
  ConformalMetric m = metric_for(cfg);
  const int N = cfg.trunc, M = cfg.grid;

  EigenMode mode = solve({OperatorKind::dirac, cfg.l, m, N, M}, 1).at(0);
  TrigPoly series = spinor_square_expansion(mode, cfg.terms);

  ordered_json doc;
  doc["schema"] = "torus-spec/1";
  doc["command"] = "spinor";
  doc["metric"] = metric_info(m, cfg.metric.empty() ? cfg.family : cfg.metric);
  doc["l"] = cfg.l;
  doc["truncation"] = N;
  doc["grid"] = M;
  doc["lambda_sq"] = num(mode.value);
  doc["lambda"] = num(std::sqrt(std::max(mode.value, 0.0)));
  doc["residual"] = num(mode.residual);
  doc["flagged"] = flagged(mode, cfg.residual_tol);

  // |psi|^2 is h(t)^2 times this series; the series is normalised to mean 1.
  ordered_json exp;
  exp["mean"] = num(series.mean());
  ordered_json cs = ordered_json::array(), ss = ordered_json::array();
  for (int n = 1; n <= series.degree(); ++n) {
    cs.push_back(num(series.a(n)));
    ss.push_back(num(series.b(n)));
  }
  exp["cos"] = std::move(cs);
  exp["sin"] = std::move(ss);
  doc["norm_sq_series"] = std::move(exp);

  if (cfg.dump > 0) {
    ordered_json prof = ordered_json::array();
    for (int i = 0; i < cfg.dump; ++i) {
      double t = static_cast<double>(i) / cfg.dump;
      double density = std::sqrt(m.h4(t)) * series.eval(t);
      prof.push_back({{"t", num(t)},
                      {"norm", num(std::sqrt(std::max(density, 0.0)))}});
    }
    doc["profile"] = std::move(prof);
  }

  emit(cfg, doc.dump(2) + "\n", out);
  return 0;
}

// ------------------------------------------------------------------ bounds

const char* kind_name(BoundKind k) {
  switch (k) {
    case BoundKind::conformal_lower: return "conformal_lower";
    case BoundKind::conformal_upper: return "conformal_upper";
    case BoundKind::rayleigh_laplace: return "rayleigh_laplace";
    case BoundKind::rayleigh_dirac: return "rayleigh_dirac";
    case BoundKind::laplace_dirac_gap: return "laplace_dirac_gap";
    case BoundKind::positivity_quotient: return "positivity_quotient";
    case BoundKind::degenerate_limit: return "degenerate_limit";
    case BoundKind::potential_mean: return "potential_mean";
  }
  return "?";
}

int cmd_bounds_impl(const RunConfig& cfg, std::ostream& out) {
  const bool have_metric = !cfg.metric.empty() || !cfg.family.empty();
  if (!have_metric && cfg.limit_l == 0)
    throw UsageError("bounds needs --metric/--family or --limit-l");

  ordered_json doc;
  doc["schema"] = "torus-spec/1";
  doc["command"] = "bounds";
  ordered_json reports = ordered_json::array();

  auto report = [&](BoundKind kind, auto&& fn,
                    const char* witness = nullptr, int weight = 0) {
    ordered_json r;
    r["kind"] = kind_name(kind);
    if (weight != 0) r["l"] = weight;
    if (witness) r["witness"] = witness;
    try {
      r["value"] = num(fn());
    } catch (const Error& e) {
      r["error"] = e.what();
    }
    reports.push_back(std::move(r));
  };

  if (have_metric) {
    ConformalMetric m = metric_for(cfg);
    const int N = cfg.trunc, M = cfg.grid;
    doc["metric"] = metric_info(m, cfg.metric.empty() ? cfg.family : cfg.metric);

    report(BoundKind::conformal_lower,
           [&] { return conformal_sandwich(m).first; });
    report(BoundKind::conformal_upper,
           [&] { return conformal_sandwich(m).second; });
    const TrigPoly sin1 = TrigPoly::harmonic_sin(1);
    report(BoundKind::rayleigh_laplace,
           [&] { return rayleigh_upper_laplace(m, sin1, M); }, "sin(2 pi t)");
    report(BoundKind::rayleigh_dirac,
           [&] { return rayleigh_upper_dirac(m, sin1, M); }, "sin(2 pi t)");
    report(BoundKind::laplace_dirac_gap, [&] {
      FirstPositive lp = first_positive_laplace(m, N, M);
      if (!lp.mode) throw SingularQuotient("first Laplace mode unavailable");
      return laplace_dirac_gap_bound(m, *lp.mode, M);
    });
    report(BoundKind::positivity_quotient,
           [&] { return positivity_upper_bound(m, cfg.l, limit_witness(cfg.l), M); },
           "phi_l", cfg.l);
    report(BoundKind::potential_mean,
           [&] { return potential_mean_bound(m, cfg.l, M); }, nullptr, cfg.l);

    ordered_json solved;
    try {
      FirstPositive lp = first_positive_laplace(m, N, M);
      solved["mu_first"] = num(lp.value);
      solved["mu_weight"] = lp.weight_index;
    } catch (const Error& e) {
      solved["mu_first"] = nullptr;
      solved["error"] = e.what();
    }
    try {
      FirstPositive dp = first_positive_dirac(m, N, M);
      solved["lam_sq_first"] = num(dp.value);
      solved["lam_weight"] = dp.weight_index;
    } catch (const Error&) {
      solved["lam_sq_first"] = nullptr;
    }
    try {
      EigenMode em = solve({OperatorKind::dirac, cfg.l, m, N, M}, 1).at(0);
      solved["lam_sq_weight_l"] = num(em.value);
    } catch (const Error&) {
      solved["lam_sq_weight_l"] = nullptr;
    }
    doc["solved"] = std::move(solved);
  }

  if (cfg.limit_l != 0) {
    const int L = cfg.limit_l;
    ordered_json r;
    r["kind"] = kind_name(BoundKind::degenerate_limit);
    r["l"] = L;
    r["witness"] = "phi_l";
    try {
      double v = limit_quotient(L, limit_witness(L), cfg.grid);
      r["value"] = num(v);
      r["flat_value"] = num(4.0 * L * L * kPi * kPi);
      r["below_flat"] = v < 4.0 * L * L * kPi * kPi;
    } catch (const Error& e) {
      r["error"] = e.what();
    }
    reports.push_back(std::move(r));
  }

  doc["reports"] = std::move(reports);
  emit(cfg, doc.dump(2) + "\n", out);
  return 0;
}

}  // namespace

int cmd_spectrum(const RunConfig& cfg, std::ostream& out) {
  return cmd_spectrum_impl(cfg, out);
}
int cmd_sweep(const RunConfig& cfg, std::ostream& out) {
  return cmd_sweep_impl(cfg, out);
}
int cmd_variations(const RunConfig& cfg, std::ostream& out) {
  return cmd_variations_impl(cfg, out);
}
int cmd_spinor(const RunConfig& cfg, std::ostream& out) {
  return cmd_spinor_impl(cfg, out);
}
int cmd_bounds(const RunConfig& cfg, std::ostream& out) {
  return cmd_bounds_impl(cfg, out);
}

int run(const RunConfig& cfg) {
  try {
    if (cfg.command == "spectrum") return cmd_spectrum(cfg, std::cout);
    if (cfg.command == "sweep") return cmd_sweep(cfg, std::cout);
    if (cfg.command == "variations") return cmd_variations(cfg, std::cout);
    if (cfg.command == "spinor") return cmd_spinor(cfg, std::cout);
    if (cfg.command == "bounds") return cmd_bounds(cfg, std::cout);
    throw UsageError("unknown command: " + cfg.command);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const HypothesisViolated& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const SymmetryViolated& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const AntisymmetryViolated& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const NonPositiveMetric& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DegenerateMetric& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const MetricNotSymmetric& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const UndersampledGrid& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}

}  // namespace torusspec::cli
