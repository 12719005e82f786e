#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

#include "pwlinf/classify.hpp"
#include "pwlinf/cycles.hpp"
#include "pwlinf/flow.hpp"
#include "pwlinf/params.hpp"
#include "pwlinf/series.hpp"
#include "pwlinf/unfold.hpp"

namespace pwlinf {

enum class SpecForm { Canonical, Lienard, Equilibrium };

/// A parameter file resolved to all parametrizations. Numbers may be given as
/// JSON numbers or as exact-rational strings "p/q", which are converted on
/// load; the original tokens are kept for provenance in reports.
struct SpecInput {
    SpecForm form = SpecForm::Canonical;
    SystemSpec canonical;
    EquilibriumSpec equilibrium;          ///< consistent (re-centered if needed)
    std::optional<LienardSpec> lienard;   ///< present when the input was Lienard
    double recenter_shift = 0.0;          ///< y-translation applied on load
    std::string source_echo;              ///< original document, compacted
};

/// Parse "p/q" rational or decimal token; plain JSON numbers pass through the
/// callers. Throws ParseError on malformed input.
[[nodiscard]] double parse_real_token(const std::string& token);

/// Shortest representation with up to 17 significant digits (value-exact).
[[nodiscard]] std::string format_real(double value);

[[nodiscard]] SpecInput parse_spec_json(const std::string& text);
[[nodiscard]] SpecInput load_spec_file(const std::filesystem::path& path);

/// JSON writers for the CLI-facing surfaces. Numbers are rendered with up to
/// 17 significant digits so reports round-trip exactly.
[[nodiscard]] std::string spec_json(const SpecInput& input);
[[nodiscard]] std::string classification_json(const InfinityClass& verdict);
[[nodiscard]] std::string series_json(const HalfReturnSeries& left,
                                      const HalfReturnSeries& right,
                                      const DisplacementSeries& deltas);
[[nodiscard]] std::string cycles_json(const CycleScan& scan);
[[nodiscard]] std::string unfolding_json(const UnfoldingResult& result);

/// CSV exports, 17 significant digits.
void write_orbit_csv(std::ostream& out, const TracedOrbit& orbit);
void write_region_csv(std::ostream& out, const RegionMap& map);
void write_cycles_csv(std::ostream& out, const CycleScan& scan);

}  // namespace pwlinf
