#pragma once

#include <string>

#include "json.hpp"

#include "hcbreak/analysis.hpp"
#include "hcbreak/attacks.hpp"
#include "hcbreak/chaos.hpp"

namespace hcbreak::report {

inline constexpr const char* kToolName = "hcbreak";
inline constexpr const char* kVersion = "1.0.0";

using Json = nlohmann::ordered_json;

/// Hex of the first 8 bytes (fewer if the sequence is shorter).
std::string fingerprint(ByteView k);

Json key_json(const chaos::SecretKey& key);

/// Header shared by every document: tool, version, kind, config.
Json document(const std::string& kind, Json config);

// Attack report schema:
//   guesses_tested, steps_evaluated, wall_time_ms, degenerate_pairs,
//   candidate_count, candidates[] { kL1, kL, passed_c0_check, passed_wrap_check,
//   fingerprint, consistent_c0?, second_pair?, score? }
void add_attack(Json& doc, const attacks::AttackReport& report, bool include_timing = true);

// cpa: positions, pair_evaluations, set sizes summary (min / max / mean)
// and the per-position sizes.
void add_cpa(Json& doc, const attacks::CpaResult& result);

void add_candidate_counts(Json& doc, const analysis::CandidateCountResult& result);
void add_termination(Json& doc, const analysis::TerminationProfile& profile);

/// "key_index,candidate_count" rows.
std::string candidate_counts_csv(const analysis::CandidateCountResult& result);

}  // namespace hcbreak::report
