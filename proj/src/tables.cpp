#include "parapost/tables.hpp"

#include <array>
#include <cmath>
#include <cstdio>

namespace parapost {
namespace {

std::string fmt(const char* spec, double v) {
  std::array<char, 64> buf{};
  std::snprintf(buf.data(), buf.size(), spec, v);
  return buf.data();
}

using Getter = double (*)(const ConvergenceRow&);

std::string order_between(const std::vector<ConvergenceRow>& rows, std::size_t i,
                          Getter get) {
  if (i == 0 || rows[i].M != 2 * rows[i - 1].M) return "";
  const double a = get(rows[i - 1]);
  const double b = get(rows[i]);
  if (!(a > 0.0) || !(b > 0.0)) return "";
  return format_order(measured_order(a, b));
}

struct Column {
  const char* csv;
  const char* md;
  Getter get;
};

const std::array<Column, 5> kComponentColumns{{
    {"eta_init", "eta_init", [](const ConvergenceRow& r) { return r.components.eta_init; }},
    {"eta_f", "eta_f", [](const ConvergenceRow& r) { return r.components.eta_f; }},
    {"eta_ell", "eta_ell^{M,K}", [](const ConvergenceRow& r) { return r.components.eta_ell_MK; }},
    {"eta_Psi", "eta_Psi", [](const ConvergenceRow& r) { return r.components.eta_big_psi; }},
    {"eta_delta_psi", "eta_delta_psi",
     [](const ConvergenceRow& r) { return r.components.eta_delta_psi; }},
}};

}  // namespace

TableFormat table_format_from_string(const std::string& s) {
  if (s == "csv") return TableFormat::Csv;
  if (s == "md" || s == "markdown") return TableFormat::Markdown;
  throw InvalidArgument("unknown format '" + s + "' (expected csv|md)");
}

std::string format_sci(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt("%.3e", v);
}

std::string format_order(double p) { return fmt("%.2f", p); }

void write_error_table(std::ostream& os, const std::vector<ConvergenceRow>& rows,
                       TableFormat f) {
  if (f == TableFormat::Csv) {
    os << "M,e_M,p_M,eta,chi_M,chi_fraction\n";
    for (const auto& r : rows) {
      os << r.M << ',' << format_sci(r.e) << ','
         << (r.p ? format_order(*r.p) : std::string()) << ',' << format_sci(r.eta)
         << ',' << format_sci(r.chi) << ',' << efficiency_fraction(r.chi) << '\n';
    }
    return;
  }
  os << "| M | e_M | p_M | eta^{M,K} | chi_M |\n";
  os << "|---:|---:|---:|---:|---:|\n";
  for (const auto& r : rows) {
    os << "| " << r.M << " | " << format_sci(r.e) << " | "
       << (r.p ? format_order(*r.p) : std::string("-")) << " | " << format_sci(r.eta)
       << " | " << efficiency_fraction(r.chi) << " |\n";
  }
}

void write_component_table(std::ostream& os,
                           const std::vector<ConvergenceRow>& rows,
                           TableFormat f) {
  if (f == TableFormat::Csv) {
    os << 'M';
    for (const auto& c : kComponentColumns) os << ',' << c.csv << ",p_" << c.csv;
    os << '\n';
    for (std::size_t i = 0; i < rows.size(); ++i) {
      os << rows[i].M;
      for (const auto& c : kComponentColumns) {
        os << ',' << format_sci(c.get(rows[i])) << ','
           << order_between(rows, i, c.get);
      }
      os << '\n';
    }
    return;
  }
  os << "| M |";
  for (const auto& c : kComponentColumns) os << ' ' << c.md << " |";
  os << "\n|---:|";
  for (std::size_t k = 0; k < kComponentColumns.size(); ++k) os << "---:|";
  os << '\n';
  for (std::size_t i = 0; i < rows.size(); ++i) {
    os << "| " << rows[i].M << " |";
    for (const auto& c : kComponentColumns) {
      os << ' ' << format_sci(c.get(rows[i]));
      const std::string p = order_between(rows, i, c.get);
      if (!p.empty()) os << " (" << p << ')';
      os << " |";
    }
    os << '\n';
  }
}

void write_run_report(std::ostream& os, const EstimatorReport& r) {
  os << "j,t,sigma,mu,chi,eta_ell,eta_ell_delta,eta_f,eta_delta_psi,eta_Psi,"
        "eta_init,total,K\n";
  const std::size_t n = r.t.size();
  for (std::size_t j = 0; j < n; ++j) {
    os << j << ',' << format_sci(r.t[j]) << ',' << format_sci(r.weights.sigma[j])
       << ',' << (j == 0 ? std::string() : format_sci(r.weights.mu[j])) << ','
       << (j == 0 ? std::string() : format_sci(r.weights.chi[j])) << ','
       << format_sci(r.eta_ell[j]) << ','
       << (j == 0 ? std::string() : format_sci(r.eta_ell_delta[j])) << ','
       << format_sci(r.f_terms[j]) << ',' << format_sci(r.delta_psi_terms[j]) << ','
       << format_sci(r.big_psi_terms[j]) << ",,,\n";
  }
  os << "total,,,,," << format_sci(r.eta_ell_MK) << ",," << format_sci(r.eta_f)
     << ',' << format_sci(r.eta_delta_psi) << ',' << format_sci(r.eta_big_psi) << ','
     << format_sci(r.eta_init) << ',' << format_sci(r.total) << ',' << r.K << '\n';
}

}  // namespace parapost
