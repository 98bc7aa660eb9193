#ifndef LOGHLS_REPORT_IO_HPP
#define LOGHLS_REPORT_IO_HPP

#include <string>

#include "loghls/flow.hpp"
#include "loghls/functionals.hpp"
#include "loghls/stationary.hpp"

namespace loghls {

/** Shortest round-trip decimal representation (17 significant digits). */
std::string format_float(double x);

/** Column header matching the report's alpha list:
 * "M, entropy, rel_entropy, potential, interaction, deficit@<a>..., free_energy". */
std::string report_csv_header(const FunctionalReport& rep);

/** One CSV data row in header order. */
std::string report_csv_row(const FunctionalReport& rep);

/** Flat key=value block, one pair per line. */
std::string report_keyvalue(const FunctionalReport& rep);

/** Whole-trace CSV: header
 * "t, mass, entropy, potential, interaction, deficit@<a>..., free_energy,
 *  gn_part, phi_part, dFdt_fd" followed by one row per record. */
std::string trace_csv(const FlowTrace& trace);

/** Diagnostics block for a stationary solve; j_value is the reduced
 * functional evaluated at the solution's potential. */
std::string stationary_keyvalue(const StationaryResult& result, double j_value);

/** Write content to path, creating parent directories; throws on failure. */
void write_text_file(const std::string& path, const std::string& content);

}  // namespace loghls

#endif
