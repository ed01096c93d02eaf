#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cli/commands.hpp"
#include "cli/config.hpp"

namespace {

using torusspec::cli::ERange;
using torusspec::cli::RunConfig;

void add_metric_options(CLI::App* c, RunConfig& cfg) {
  c->add_option("--metric", cfg.metric,
                "metric: flat | cos:N:E | expfam:E | fourier:[a0,a1,b1,...]");
  c->add_option("--family", cfg.family,
                "deformation family: cos:N | sin:N | expfam | fourier:[...]");
  c->add_option("--E", cfg.E, "family parameter (repeatable)");
  c->add_option_function<std::string>(
       "--E-range",
       [&cfg](const std::string& s) {
         ERange r;
         auto bad = [&] {
           throw CLI::ValidationError("--E-range",
                                      "expected start:stop:steps, got " + s);
         };
         std::vector<std::string> parts;
         std::size_t pos = 0;
         while (true) {
           std::size_t k = s.find(':', pos);
           parts.push_back(s.substr(pos, k - pos));
           if (k == std::string::npos) break;
           pos = k + 1;
         }
         if (parts.size() != 3) bad();
         try {
           std::size_t used = 0;
           r.start = std::stod(parts[0], &used);
           if (used != parts[0].size()) bad();
           r.stop = std::stod(parts[1], &used);
           if (used != parts[1].size()) bad();
           r.steps = std::stoi(parts[2], &used);
           if (used != parts[2].size()) bad();
         } catch (const std::logic_error&) {
           bad();
         }
         if (r.steps < 1) bad();
         cfg.e_range = r;
       },
       "evenly spaced parameters start:stop:steps");
  c->add_option("--trunc", cfg.trunc, "Fourier modes per sector")
      ->check(CLI::PositiveNumber);
  c->add_option("--grid", cfg.grid, "quadrature grid size")
      ->check(CLI::PositiveNumber);
  c->add_option("--metric-degree", cfg.metric_degree,
                "replace the conformal factor by its Fourier truncation to "
                "this degree before solving (0 = exact)")
      ->check(CLI::NonNegativeNumber);
}

void add_output_options(CLI::App* c, RunConfig& cfg) {
  c->add_option("--format", cfg.format, "output format")
      ->check(CLI::IsMember({"json", "csv"}));
  c->add_option("--out", cfg.out, "write to this file instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Eigenvalue curves, deformation derivatives and upper bounds for the\n"
      "Laplacian and the reduced spinor operator of S^1-invariant conformal\n"
      "metrics on the unit square torus."};
  app.require_subcommand(1);
  RunConfig cfg;

  CLI::App* spectrum = app.add_subcommand(
      "spectrum", "solve the low eigenvalues of one metric, branch by branch");
  add_metric_options(spectrum, cfg);
  add_output_options(spectrum, cfg);
  spectrum->add_option("--laplace-k", cfg.laplace_k,
                       "Fourier weights of the Laplace branches");
  spectrum->add_option("--dirac-l", cfg.dirac_l,
                       "spinor weights (l = 0 uses the closed form)");
  spectrum->add_option("--count", cfg.count, "eigenvalues per branch")
      ->check(CLI::PositiveNumber);
  spectrum->add_option("--residual-tol", cfg.residual_tol,
                       "relative residual above which a mode is flagged");

  CLI::App* sweep = app.add_subcommand(
      "sweep", "tabulate eigenvalues and bounds along a deformation family");
  add_metric_options(sweep, cfg);
  add_output_options(sweep, cfg);
  sweep->add_option("--jobs", cfg.jobs, "worker threads")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--residual-tol", cfg.residual_tol,
                    "relative residual above which a row is flagged");

  CLI::App* variations = app.add_subcommand(
      "variations",
      "derivatives of the eigenvalue branches at the flat metric");
  add_output_options(variations, cfg);
  variations->add_option("--H", cfg.H,
                         "first-order direction: cos:N[:amp] | sin:N[:amp] | "
                         "fourier:[...]");
  variations->add_option("--G", cfg.G, "second-order direction (default 0)");
  variations->add_option("--order", cfg.orders,
                         "derivative orders to report (1, 2, 4; repeatable)");
  variations->add_option("--scheme", cfg.scheme,
                         "fourth-order correction chain")
      ->check(CLI::IsMember({"printed", "corrected", "both"}));

  CLI::App* spinor = app.add_subcommand(
      "spinor", "first eigenmode of one spinor weight, with its density");
  add_metric_options(spinor, cfg);
  add_output_options(spinor, cfg);
  spinor->add_option("--l", cfg.l, "spinor weight (nonzero)");
  spinor->add_option("--terms", cfg.terms,
                     "harmonics kept in the density expansion")
      ->check(CLI::PositiveNumber);
  spinor->add_option("--dump", cfg.dump,
                     "also sample the spinor magnitude at this many points")
      ->check(CLI::NonNegativeNumber);

  CLI::App* bounds = app.add_subcommand(
      "bounds", "variational upper bounds next to the solved eigenvalues");
  add_metric_options(bounds, cfg);
  add_output_options(bounds, cfg);
  bounds->add_option("--l", cfg.l, "weight for the weight-dependent bounds");
  bounds->add_option("--limit-l", cfg.limit_l,
                     "also report the degenerate-limit quotient for this "
                     "weight");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  cfg.command = app.get_subcommands().front()->get_name();
  return torusspec::cli::run(cfg);
}
