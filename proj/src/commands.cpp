#include "commands.hpp"

#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>

namespace qvertex::cli {

namespace {

constexpr double kStochasticTolerance = 1e-8;
constexpr double kLimitTolerance = 1e-6;

int guarded(Streams io, const std::function<int()>& body) {
  try {
    return body();
  } catch (const ParseError& e) {
    io.err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const Error& e) {
    io.err << "error: " << e.what() << '\n';
    return kDomainError;
  } catch (const std::exception& e) {
    io.err << "error: " << e.what() << '\n';
    return kInputError;
  }
}

std::string fixed(double x, int width = 10) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%*.6f", width, x);
  return buf;
}

std::string entry_name(Index i, Index j, Index n) {
  const std::string a = std::to_string(i + 1), b = std::to_string(j + 1);
  return n >= 10 ? "S" + a + "_" + b : "S" + a + b;
}

bool block_nonempty(const std::vector<Index>& blocks, Index mu) { return blocks[static_cast<std::size_t>(mu)] > 0; }

FilterParams<double> resolve_filter(const FilterDemoOptions& opt) {
  if (opt.preset == "fig1") return fig1_preset<double>();
  if (opt.preset == "fig2") return fig2_preset<double>();
  if (!opt.preset.empty()) throw ParseError("unknown preset \"" + opt.preset + "\" (fig1 or fig2)");
  if (!opt.params) throw ParseError("give --preset or all of n, rA, rB, p, q, r, s");
  return *opt.params;
}

std::string describe(const FilterParams<double>& fp) {
  return "uniform-block filter n=" + std::to_string(fp.n) + " r_A=" + std::to_string(fp.rank_A) +
         " r_B=" + std::to_string(fp.rank_B) + " p=" + format_number(fp.p) + " q=" + format_number(fp.q) +
         " r=" + format_number(fp.r) + " s=" + format_number(fp.s);
}

}  // namespace

std::string sweep_header(Index n, const std::vector<Index>& blocks) {
  std::string h = "k";
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) h += "," + entry_name(i, j, n);
  const auto nb = static_cast<Index>(blocks.size());
  for (Index mu = 0; mu < nb; ++mu)
    for (Index nu = 0; nu < nb; ++nu)
      if (block_nonempty(blocks, mu) && block_nonempty(blocks, nu))
        h += ",B" + std::to_string(mu + 1) + std::to_string(nu + 1);
  return h;
}

void write_sweep_csv(const SweepTable<double>& table, std::ostream& out) {
  out << sweep_header(table.n, table.blocks) << '\n';
  const auto nb = static_cast<Index>(table.blocks.size());
  for (Index row = 0; row < table.rows(); ++row) {
    const auto& p = table.probability[static_cast<std::size_t>(row)];
    out << format_number(table.k[static_cast<std::size_t>(row)]);
    for (Index i = 0; i < table.n; ++i)
      for (Index j = 0; j < table.n; ++j) out << ',' << format_number(p(i, j));
    for (Index mu = 0; mu < nb; ++mu)
      for (Index nu = 0; nu < nb; ++nu)
        if (block_nonempty(table.blocks, mu) && block_nonempty(table.blocks, nu))
          out << ',' << format_number(table.block_average(row, mu, nu));
    out << '\n';
  }
}

void write_filter_report(const FilterParams<double>& fp, double threshold, std::ostream& out) {
  const auto lim = amplitude_limits(fp);
  const auto blocks = fp.blocks();
  out << describe(fp) << '\n';
  out << "blocks " << blocks[0] << '-' << blocks[1] << '-' << blocks[2] << "  l_p=" << lim.l_p << " l_q=" << lim.l_q
      << " l_r=" << lim.l_r << "\n\n";

  out << "pair      high-k |S|   low-k |S|\n";
  out << "S12   " << fixed(lim.high_k.s12, 12) << fixed(lim.low_k.s12, 12) << '\n';
  out << "S23   " << fixed(lim.high_k.s23, 12) << fixed(lim.low_k.s23, 12) << '\n';
  out << "S31   " << fixed(lim.high_k.s31, 12) << fixed(lim.low_k.s31, 12) << "\n\n";

  out << "limit       closed form      matrix  difference\n";
  std::size_t mismatches = 0;
  for (const auto& row : compare_limits(fp)) {
    char diff[32];
    std::snprintf(diff, sizeof diff, "%12.2e", row.difference());
    char label[16];
    std::snprintf(label, sizeof label, "%-10s", row.label.c_str());
    out << label << fixed(row.closed_form, 12) << fixed(row.matrix, 12) << diff;
    if (row.difference() > kLimitTolerance) {
      out << "  MISMATCH";
      ++mismatches;
    }
    out << '\n';
  }
  out << "\nmismatches: " << mismatches << '\n';
  out << "classification: " << to_string(classify_branching(fp, threshold)) << " (threshold "
      << format_number(threshold) << ")\n";
}

int cmd_validate(const std::string& path, Streams io) {
  Json j;
  try {
    j = read_json(path, io.in);
  } catch (const ParseError& e) {
    io.err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return guarded(io, [&] {
    try {
      const auto doc = coupling_from_json(j);
      const auto& c = doc.coupling;
      io.out << "valid, r_A=" << c.rank_A() << ", r_B=" << c.rank_B()
             << ", params=" << parameter_count(c.n(), c.rank_A(), c.rank_B()) << '\n';
      return int(kOk);
    } catch (const Error& e) {
      io.out << "invalid, " << e.what() << '\n';
      return int(kDomainError);
    }
  });
}

int cmd_convert(const std::string& path, const std::string& target, Streams io) {
  return guarded(io, [&] {
    const auto doc = coupling_from_json(read_json(path, io.in));
    Json out = form_to_json(doc.coupling, target);
    if (!doc.blocks.empty()) out["blocks"] = doc.blocks;
    io.out << out.dump(2) << '\n';
    return int(kOk);
  });
}

int cmd_smatrix(const std::string& path, double k, Streams io) {
  return guarded(io, [&] {
    const auto doc = coupling_from_json(read_json(path, io.in));
    const auto s = smatrix_direct(doc.coupling, k);
    Json out = Json::object();
    out["n"] = s.n;
    out["k"] = s.k;
    out["S"] = matrix_to_json(s.entries);
    out["unitarity_defect"] = unitarity_defect(s.entries);
    out["bc_residual"] = bc_residual(doc.coupling, s);
    io.out << out.dump(2) << '\n';
    return int(kOk);
  });
}

int cmd_sweep(const SweepOptions& opt, Streams io) {
  return guarded(io, [&] {
    if (!(opt.k_min > 0) || !(opt.k_max > opt.k_min))
      throw Error(ErrorKind::InvalidArgument, "need 0 < k_min < k_max");
    if (opt.points < 2) throw Error(ErrorKind::InvalidArgument, "need at least two points");
    std::vector<double> grid;
    if (opt.scale == "log")
      grid = log_grid(opt.k_min, opt.k_max, opt.points);
    else if (opt.scale == "linear")
      grid = linear_grid(opt.k_min, opt.k_max, opt.points);
    else
      throw ParseError("scale must be log or linear");

    const auto doc = coupling_from_json(read_json(opt.path, io.in));
    const auto& c = doc.coupling;
    const auto table = sweep<double>(
        c.n(), [&c](double k) { return smatrix_direct(c, k).entries; }, grid, doc.blocks);
    for (Index row = 0; row < table.rows(); ++row)
      if (table.stochastic_defect(row) > kStochasticTolerance)
        throw Error(ErrorKind::InconsistentForm,
                    "row k=" + format_number(table.k[static_cast<std::size_t>(row)]) + " is not doubly stochastic");

    if (opt.out.empty()) {
      write_sweep_csv(table, io.out);
    } else {
      std::ofstream file(opt.out);
      if (!file) throw ParseError("cannot write " + opt.out);
      write_sweep_csv(table, file);
    }
    return int(kOk);
  });
}

int cmd_filter_demo(const FilterDemoOptions& opt, Streams io) {
  return guarded(io, [&] {
    const auto fp = resolve_filter(opt);
    CouplingDocument doc{pqrs_to_matrices(uniform_block_pqrs(fp)), opt.preset.empty() ? "filter" : opt.preset,
                         describe(fp), fp.blocks()};
    io.out << coupling_to_json(doc).dump(2) << '\n';
    if (opt.report.empty()) {
      write_filter_report(fp, opt.threshold, io.err);
    } else {
      std::ofstream file(opt.report);
      if (!file) throw ParseError("cannot write " + opt.report);
      write_filter_report(fp, opt.threshold, file);
    }
    return int(kOk);
  });
}

int cmd_params(Index n, Index rank_a, Index rank_b, Streams io) {
  return guarded(io, [&] {
    const auto params = parameter_count(n, rank_a, rank_b);
    const auto delta = delta_parameters(n, rank_a, rank_b);
    io.out << "params=" << params << ", delta=" << delta << ", subfamilies=" << subfamily_count(n) << '\n';
    return int(kOk);
  });
}

}  // namespace qvertex::cli
