#ifndef LOGHLS_SCENARIOS_HPP
#define LOGHLS_SCENARIOS_HPP

#include <string>
#include <vector>

namespace loghls {

/** Grid parameters shared by the scenario runs. */
struct GridSpec {
    int n = 2048;
    double r_max = 200.0;
    double stretch = 3.0;
};

/** One verified quantity inside a scenario. Provenance says where the
 * target comes from: "analytic" for closed forms, "identity" for exact
 * algebraic/structural identities of the implementation, "oracle" for
 * independent numerical cross-checks. */
struct ScenarioCheck {
    enum class Mode { close, at_least, at_most, boolean };
    std::string label;
    Mode mode = Mode::close;
    double value = 0.0;
    double target = 0.0;     ///< reference value (close) or bound (at_least/at_most)
    double tolerance = 0.0;  ///< absolute comparison width for Mode::close
    std::string provenance;
    bool pass = false;
};

struct ScenarioResult {
    std::string name;
    std::vector<ScenarioCheck> checks;
    bool passed = false;
    double seconds = 0.0;
};

struct ScenarioEntry {
    std::string name;
    std::string summary;
    ScenarioResult (*run)(const GridSpec&);
};

/** All named scenarios in acceptance order. */
const std::vector<ScenarioEntry>& scenario_registry();

/** Run one scenario by name.
 * \throws std::invalid_argument for unknown names. */
ScenarioResult run_scenario(const std::string& name, const GridSpec& spec);

/** Human-readable one-line-per-check report. */
std::string format_scenario_result(const ScenarioResult& result);

}  // namespace loghls

#endif
