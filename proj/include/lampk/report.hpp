#pragma once

#include <optional>
#include <string>

#include "json.hpp"
#include "lampk/caps.hpp"
#include "lampk/kformula.hpp"

namespace lampk {

inline constexpr const char* kToolVersion = "lampk 1.0.0";

// Parsed problem description: either a JSON object or flat key=value lines.
struct ProblemSpec {
  std::optional<std::string> sigma;
  std::string gamma;
  std::optional<int> n;
  std::string variant = "all";  // literal | orbit | torsionfree | all
  Window window;
  std::map<std::string, long long> cap_overrides;
  std::map<std::string, std::pair<long long, long long>> table_overrides;

  static ProblemSpec parse_text(const std::string& text);
  static ProblemSpec parse_file(const std::string& path);

  Caps make_caps() const;
  BaseKTable make_table() const;
  nlohmann::ordered_json echo() const;
};

// Envelope JSON layout:
//   {version, input, results:[...], oracle:[{name,lhs,rhs,equal}],
//    discrepancies:[...], caveats:[...], timing_ms}
// timing_ms is the only field allowed to vary between identical runs.
nlohmann::ordered_json cmd_compute(const ProblemSpec& spec);
nlohmann::ordered_json cmd_verify(const std::optional<std::string>& grid_path,
                                  const Caps& caps, const BaseKTable& table);
nlohmann::ordered_json cmd_census(const std::string& gamma, int k_max, int radius,
                                  std::optional<std::string> sigma,
                                  std::optional<int> n, const Caps& caps);

// True when every must-pass verdict in the envelope passed.
bool envelope_ok(const nlohmann::ordered_json& envelope);

// Structural validation against the shipped schema; returns an error
// description on failure.
std::optional<std::string> validate_envelope(const nlohmann::ordered_json& envelope);

// Human-readable rendering for stdout.
std::string render_text(const nlohmann::ordered_json& envelope);

nlohmann::ordered_json report_to_json(const KReport& report);

}  // namespace lampk
