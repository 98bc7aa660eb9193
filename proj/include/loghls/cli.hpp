#ifndef LOGHLS_CLI_HPP
#define LOGHLS_CLI_HPP

#include <string>
#include <vector>

#include "loghls/profiles.hpp"

namespace loghls {

/** Command-line harness entry point; args excludes the program name.
 *
 * Subcommands: deficit, flow, ddp, stationary, sweep, dissipation, dual,
 * oracle, scenarios. Artifacts are written under --out (overridden by the
 * LOGHLS_OUT environment variable). Returns 0 on success, 2 when a requested
 * check fails, 1 on usage or parameter errors.
 */
int run_cli(const std::vector<std::string>& args);

/** Parse a numeric literal with the conveniences "<x>pi" (e.g. "16pi",
 * "pi") and "<a>^<b>" (e.g. "2^-8") on top of plain decimals.
 * \throws std::invalid_argument on malformed input. */
double parse_scalar(const std::string& text);

/** Parse a density specification of the form
 * "reference" | "mu" | "gaussian:<sigma>" | "dilated:<lambda>" |
 * "bump[:<a>,<b>]" | "translated:<y>".
 * \throws std::invalid_argument on malformed input. */
TestDensitySpec parse_density_spec(const std::string& text);

}  // namespace loghls

#endif
