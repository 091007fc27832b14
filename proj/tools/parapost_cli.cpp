// parapost: final-time maximum-norm error bounds for 1D parabolic problems.
//
//   parapost run   --method cn --M 64 [--K 0 | --K-scan] [--out report.csv]
//   parapost table --method bdf2 [--M-list 64,128,256] [--format md] [--out prefix]
//
// Exit status: 0 success, 2 invalid configuration, 1 numerical failure.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "parapost/kernels.hpp"
#include "parapost/tables.hpp"

namespace {

using namespace parapost;

struct Settings {
  std::string method = "euler";
  std::size_t M = 64;
  std::string M_list;
  bool M_list_given = false;
  std::size_t K = 0;
  bool K_scan = false;
  std::string problem = "paper";
  std::string mass = "consistent";
  bool sdirk_fhat = true;
  std::string format = "csv";
  std::string out;
  std::size_t ref_refine = 8;
  bool full = false;
  std::string elliptic = "guaranteed";
  std::size_t space_ratio = 1;
  bool sequential = false;
  std::string kernels = "auto";
};

std::vector<std::size_t> parse_list(const std::string& s) {
  std::string norm = s;
  std::replace(norm.begin(), norm.end(), ',', ' ');
  std::istringstream in(norm);
  std::vector<std::size_t> out;
  std::string tok;
  while (in >> tok) {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(tok, &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos != tok.size() || tok.front() == '-') {
      throw InvalidArgument("M-list: '" + tok + "' is not a positive integer");
    }
    out.push_back(static_cast<std::size_t>(v));
  }
  return out;
}

bool power_of_two(std::size_t v) { return v > 0 && (v & (v - 1)) == 0; }

MassMode mass_from_string(const std::string& s) {
  if (s == "consistent") return MassMode::Consistent;
  if (s == "lumped") return MassMode::Lumped;
  throw InvalidArgument("unknown mass mode '" + s + "' (expected consistent|lumped)");
}

RunConfig run_config(const Settings& s) {
  RunConfig cfg;
  cfg.steps = s.M;
  cfg.spatial_ratio = s.space_ratio;
  cfg.K = s.K;
  cfg.scan_K = s.K_scan;
  cfg.mass = mass_from_string(s.mass);
  cfg.elliptic = elliptic_kind_from_string(s.elliptic);
  cfg.sdirk_fhat = s.sdirk_fhat;
  return cfg;
}

// Writes to the named file, or stdout when the name is empty.
template <class F>
void emit(const std::string& path, F&& body) {
  if (path.empty()) {
    body(std::cout);
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidArgument("cannot open '" + path + "' for writing");
  body(f);
  if (!f) throw Error("write to '" + path + "' failed");
}

int cmd_run(const Settings& s) {
  const ProblemInstance inst = problem_by_name(s.problem);
  const Scheme scheme = scheme_from_string(s.method);
  if (s.format != "csv") throw InvalidArgument("run writes CSV only");
  if (s.M < 1) throw InvalidArgument("M must be positive");
  if (s.K >= s.M) {
    throw InvalidArgument("K = " + std::to_string(s.K) + " out of range 0.." +
                          std::to_string(s.M - 1));
  }
  const RunResult r = run_estimator(inst, scheme, run_config(s));
  emit(s.out, [&](std::ostream& os) { write_run_report(os, r.report); });
  std::fprintf(stderr, "%s M=%zu K=%zu eta=%s\n", std::string(to_string(scheme)).c_str(),
               s.M, r.report.K, format_sci(r.report.total).c_str());
  return 0;
}

int cmd_table(const Settings& s) {
  const ProblemInstance inst = problem_by_name(s.problem);
  std::vector<Scheme> schemes;
  if (s.method == "all") {
    schemes.assign(kAllSchemes.begin(), kAllSchemes.end());
  } else {
    schemes.push_back(scheme_from_string(s.method));
  }
  const TableFormat fmt = table_format_from_string(s.format);

  StudyOptions opts;
  opts.M_list = s.M_list_given ? parse_list(s.M_list) : default_M_list(s.full);
  for (std::size_t M : opts.M_list) {
    if (!power_of_two(M)) {
      throw InvalidArgument("M = " + std::to_string(M) + " is not a power of two");
    }
  }
  if (!opts.M_list.empty() &&
      s.K >= *std::min_element(opts.M_list.begin(), opts.M_list.end())) {
    throw InvalidArgument("K must be at most min(M-list) - 1");
  }
  if (s.ref_refine < 2 || s.ref_refine % 2 != 0) {
    throw InvalidArgument("ref-refine must be an even number >= 2");
  }
  opts.run = run_config(s);
  opts.ref_refine = s.ref_refine;
  opts.parallel = !s.sequential;

  std::optional<ReferenceSolution> ref;
  if (!opts.M_list.empty()) {
    ref = ReferenceSolution::compute(inst.problem, reference_options_for(opts));
    if (ref->warning()) std::fprintf(stderr, "warning: %s\n", ref->warning()->c_str());
  }

  const std::string ext = fmt == TableFormat::Csv ? ".csv" : ".md";
  for (Scheme scheme : schemes) {
    const StudyResult res =
        convergence_study(inst, scheme, opts, ref ? &*ref : nullptr);
    const std::string name(to_string(scheme));
    const std::string base = s.out.empty() ? "" : s.out + "_" + name;
    if (base.empty()) std::cout << "# " << display_name(scheme) << '\n';
    emit(base.empty() ? "" : base + "_errors" + ext, [&](std::ostream& os) {
      write_error_table(os, res.rows, fmt);
    });
    if (base.empty()) std::cout << '\n';
    emit(base.empty() ? "" : base + "_components" + ext, [&](std::ostream& os) {
      write_component_table(os, res.rows, fmt);
    });
    if (base.empty() && scheme != schemes.back()) std::cout << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  Settings s;
  CLI::App app{"Maximum-norm a posteriori error bounds for 1D parabolic problems"};
  app.set_config("--config", "", "key=value file supplying defaults");
  app.require_subcommand(1);
  app.fallthrough();

  app.add_option("--method", s.method,
                 "euler|cn|exeuler|bdf2|lobatto3c|sdirk2 (table also accepts all)");
  app.add_option("--M", s.M, "number of time steps (run)");
  auto* mlist = app.add_option("--M-list", s.M_list, "comma-separated M values (table)");
  app.add_option("--K", s.K, "split index, 0 <= K <= M-1");
  app.add_flag("--K-scan", s.K_scan, "use the K minimising the bound");
  app.add_option("--problem", s.problem, "built-in problem: paper|manufactured");
  app.add_option("--mass", s.mass, "consistent|lumped");
  app.add_option("--sdirk-fhat", s.sdirk_fhat,
                 "SDIRK stage loads from the linear interpolant of f (true|false)");
  app.add_option("--format", s.format, "csv|md");
  app.add_option("--out", s.out, "output file (run) or file prefix (table)");
  app.add_option("--ref-refine", s.ref_refine, "reference refinement factor");
  app.add_flag("--full", s.full, "M-list up to 16384");
  app.add_option("--elliptic", s.elliptic, "elliptic estimator: guaranteed|interior");
  app.add_option("--space-ratio", s.space_ratio, "spatial elements per time step");
  app.add_flag("--sequential", s.sequential, "run table rows one after another");
  app.add_option("--kernels", s.kernels, "auto|scalar|avx2|neon");

  auto* run = app.add_subcommand("run", "single run, per-step estimator report (CSV)");
  auto* table = app.add_subcommand("table", "convergence tables for a list of M");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  s.M_list_given = mlist->count() > 0;

  try {
    if (!kernels::select(s.kernels)) {
      throw InvalidArgument("kernel set '" + s.kernels + "' is not available");
    }
    if (run->parsed()) return cmd_run(s);
    if (table->parsed()) return cmd_table(s);
  } catch (const InvalidArgument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "numerical failure: %s\n", e.what());
    return 1;
  }
  return 2;
}
