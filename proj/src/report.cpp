#include "hcbreak/report.hpp"

#include <algorithm>
#include <cstdio>

namespace hcbreak::report {

std::string fingerprint(ByteView k) {
  std::string out;
  char buf[3];
  for (std::size_t i = 0; i < std::min<std::size_t>(8, k.size()); ++i) {
    std::snprintf(buf, sizeof buf, "%02x", k[i]);
    out += buf;
  }
  return out;
}

Json key_json(const chaos::SecretKey& key) {
  return Json{{"x0", key.initial.x}, {"y0", key.initial.y}, {"z0", key.initial.z},
              {"w0", key.initial.w}, {"n0", key.n0},        {"c0", key.c0}};
}

Json document(const std::string& kind, Json config) {
  Json doc;
  doc["tool"] = kToolName;
  doc["version"] = kVersion;
  doc["kind"] = kind;
  doc["config"] = std::move(config);
  return doc;
}

void add_attack(Json& doc, const attacks::AttackReport& report, bool include_timing) {
  doc["attack"] = report.attack;
  doc["guesses_tested"] = report.guesses_tested;
  doc["steps_evaluated"] = report.steps_evaluated;
  if (include_timing) {
    doc["wall_time_ms"] = std::chrono::duration<double, std::milli>(report.elapsed).count();
  }
  doc["degenerate_pairs"] = report.degenerate_pairs;
  doc["candidate_count"] = report.candidates.size();
  Json list = Json::array();
  for (const auto& cand : report.candidates) {
    Json item{{"kL1", cand.k_second_last},
              {"kL", cand.k_last},
              {"passed_c0_check", cand.passed_c0_check},
              {"passed_wrap_check", cand.passed_wrap_check},
              {"fingerprint", fingerprint(cand.k)}};
    if (!cand.consistent_c0.empty()) item["consistent_c0"] = cand.consistent_c0;
    if (cand.second) {
      item["second_pair"] = {{"passed_c0_check", cand.second->passed_c0_check},
                             {"passed_wrap_check", cand.second->passed_wrap_check}};
    }
    if (cand.score) item["score"] = *cand.score;
    list.push_back(std::move(item));
  }
  doc["candidates"] = std::move(list);
}

void add_cpa(Json& doc, const attacks::CpaResult& result) {
  doc["attack"] = "cpa";
  doc["positions"] = result.sets.size();
  doc["pair_evaluations"] = result.pair_evaluations;
  doc["first_position_uses_c0"] = result.first_position_uses_c0;
  std::size_t lo = SIZE_MAX, hi = 0, total = 0;
  Json sizes = Json::array();
  for (const auto& set : result.sets) {
    lo = std::min(lo, set.size());
    hi = std::max(hi, set.size());
    total += set.size();
    sizes.push_back(set.size());
  }
  doc["set_size"] = {{"min", lo},
                     {"max", hi},
                     {"mean", static_cast<double>(total) / static_cast<double>(result.sets.size())}};
  doc["set_sizes"] = std::move(sizes);
}

void add_candidate_counts(Json& doc, const analysis::CandidateCountResult& result) {
  Json hist = Json::object();
  for (const auto& [count, keys] : result.histogram) hist[std::to_string(count)] = keys;
  doc["histogram"] = std::move(hist);
  doc["summary"] = {{"keys", result.keys.size()},
                    {"fraction_unique", result.fraction_unique},
                    {"fraction_below_six", result.fraction_below_six},
                    {"median", result.median},
                    {"minimum", result.minimum},
                    {"maximum", result.maximum},
                    {"soundness_failures", result.soundness_failures}};
  if (result.mean_wrong_candidate_score) {
    doc["summary"]["mean_wrong_candidate_score"] = *result.mean_wrong_candidate_score;
  }
  Json keys = Json::array();
  for (std::size_t i = 0; i < result.keys.size(); ++i) {
    const auto& o = result.keys[i];
    Json item{{"index", i}, {"key", key_json(o.key)}, {"candidates", o.candidates},
              {"true_key_found", o.true_key_found}};
    if (o.wrong_candidate_score) item["wrong_candidate_score"] = *o.wrong_candidate_score;
    keys.push_back(std::move(item));
  }
  doc["keys"] = std::move(keys);
}

void add_termination(Json& doc, const analysis::TerminationProfile& profile) {
  doc["chain_length"] = profile.chain_length;
  doc["wrong_guesses"] = profile.wrong_guesses;
  // Trailing zero depths are dropped; they carry no information.
  std::size_t last = 0;
  for (std::size_t d = 0; d < profile.exact.size(); ++d) {
    if (profile.exact[d]) last = d;
  }
  Json exact = Json::array(), surviving = Json::array();
  for (std::size_t d = 0; d <= last; ++d) {
    exact.push_back(profile.exact[d]);
    surviving.push_back(profile.surviving[d]);
  }
  doc["exact_depth"] = std::move(exact);
  doc["surviving"] = std::move(surviving);
  doc["survival_fraction_depth1"] = profile.survival_fraction(1);
  Json accepted = Json::array();
  for (std::size_t i = 0; i < profile.accepted.size(); ++i) {
    accepted.push_back({{"kL1", profile.accepted[i] / 128}, {"kL", profile.accepted[i] % 128},
                        {"depth", profile.accepted_depths[i]}});
  }
  doc["accepted"] = std::move(accepted);
}

std::string candidate_counts_csv(const analysis::CandidateCountResult& result) {
  std::string out = "key_index,candidate_count\n";
  for (std::size_t i = 0; i < result.keys.size(); ++i) {
    out += std::to_string(i) + "," + std::to_string(result.keys[i].candidates) + "\n";
  }
  return out;
}

}  // namespace hcbreak::report
