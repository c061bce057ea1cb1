// Command-line front end for the vertex coupling library.

#include <iostream>

#include "CLI11.hpp"
#include "commands.hpp"

using namespace qvertex;
using namespace qvertex::cli;

int main(int argc, char** argv) {
  CLI::App app{"Quantum graph vertex couplings: forms, scattering matrices and filter designs"};
  app.require_subcommand(1);
  Streams io{std::cin, std::cout, std::cerr};
  int status = kOk;

  std::string path = "-";

  auto* validate_cmd = app.add_subcommand("validate", "check admissibility of a coupling document");
  validate_cmd->add_option("path", path, "document, or - for stdin");
  validate_cmd->callback([&] { status = cmd_validate(path, io); });

  std::string target;
  auto* convert_cmd = app.add_subcommand("convert", "rewrite a coupling in another canonical form");
  convert_cmd->add_option("path", path, "document, or - for stdin");
  convert_cmd->add_option("--to", target, "st, reverse-st, pqrs, unitary or projector")
      ->required()
      ->check(CLI::IsMember({"st", "reverse-st", "pqrs", "unitary", "projector"}));
  convert_cmd->callback([&] { status = cmd_convert(path, target, io); });

  double k = 1.0;
  auto* smatrix_cmd = app.add_subcommand("smatrix", "scattering matrix at one momentum");
  smatrix_cmd->add_option("path", path, "document, or - for stdin");
  smatrix_cmd->add_option("-k,--k", k, "momentum")->required();
  smatrix_cmd->callback([&] { status = cmd_smatrix(path, k, io); });

  SweepOptions sw;
  auto* sweep_cmd = app.add_subcommand("sweep", "probabilities |S_ij(k)|^2 on a momentum grid, as CSV");
  sweep_cmd->add_option("path", sw.path, "document, or - for stdin");
  sweep_cmd->add_option("--k-min", sw.k_min, "smallest momentum")->capture_default_str();
  sweep_cmd->add_option("--k-max", sw.k_max, "largest momentum")->capture_default_str();
  sweep_cmd->add_option("--points", sw.points, "grid size")->capture_default_str();
  sweep_cmd->add_option("--scale", sw.scale, "log or linear")
      ->check(CLI::IsMember({"log", "linear"}))
      ->capture_default_str();
  sweep_cmd->add_option("-o,--out", sw.out, "CSV file (default stdout)");
  sweep_cmd->callback([&] { status = cmd_sweep(sw, io); });

  FilterDemoOptions fd;
  FilterParams<double> fp;
  auto* filter_cmd = app.add_subcommand("filter-demo", "uniform-block filter coupling and its limit report");
  filter_cmd->add_option("--preset", fd.preset, "fig1 or fig2")->check(CLI::IsMember({"fig1", "fig2"}));
  auto* n_opt = filter_cmd->add_option("--n", fp.n, "vertex degree");
  auto* ra_opt = filter_cmd->add_option("--rA", fp.rank_A, "rank of A");
  auto* rb_opt = filter_cmd->add_option("--rB", fp.rank_B, "rank of B");
  auto* p_opt = filter_cmd->add_option("--p", fp.p, "P block constant");
  auto* q_opt = filter_cmd->add_option("--q", fp.q, "Q block constant");
  auto* r_opt = filter_cmd->add_option("--r", fp.r, "R block constant");
  auto* s_opt = filter_cmd->add_option("--s", fp.s, "S block constant");
  filter_cmd->add_option("--threshold", fd.threshold, "dominance ratio of probabilities")->capture_default_str();
  filter_cmd->add_option("--report", fd.report, "report file (default stderr)");
  filter_cmd->callback([&] {
    const bool explicit_params = *n_opt && *ra_opt && *rb_opt && *p_opt && *q_opt && *r_opt && *s_opt;
    if (explicit_params) fd.params = fp;
    status = cmd_filter_demo(fd, io);
  });

  Index n = 0, ra = 0, rb = 0;
  auto* params_cmd = app.add_subcommand("params", "parameter counts of a rank class");
  params_cmd->add_option("n", n, "vertex degree")->required();
  params_cmd->add_option("rA", ra, "rank of A")->required();
  params_cmd->add_option("rB", rb, "rank of B")->required();
  params_cmd->callback([&] { status = cmd_params(n, ra, rb, io); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kInputError;
  }
  return status;
}
