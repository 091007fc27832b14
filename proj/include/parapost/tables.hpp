#pragma once

// CSV and markdown emitters. Numbers use scientific notation with four
// significant digits; rows are deterministic for a fixed configuration.

#include <ostream>
#include <string>
#include <vector>

#include "parapost/reference.hpp"

namespace parapost {

enum class TableFormat { Csv, Markdown };

TableFormat table_format_from_string(const std::string& s);

/// "%.3e"; "inf" / "nan" for non-finite values.
std::string format_sci(double v);

/// "%.2f"
std::string format_order(double p);

/// Error table: M, e_M, p_M, eta^{M,K}, chi_M (and its 1/n form).
void write_error_table(std::ostream& os, const std::vector<ConvergenceRow>& rows,
                       TableFormat fmt);

/// Component table: M, eta_init, eta_f, eta_ell, eta_Psi, eta_delta_psi with
/// measured orders between consecutive rows.
void write_component_table(std::ostream& os,
                           const std::vector<ConvergenceRow>& rows,
                           TableFormat fmt);

/// Per-step estimator report followed by a summary row.
void write_run_report(std::ostream& os, const EstimatorReport& r);

}  // namespace parapost
