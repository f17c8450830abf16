#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "family.hpp"

namespace wachlab {

inline constexpr const char* kAnalysisSchema = "wachlab-analysis/1";

inline nlohmann::ordered_json spec_to_json(const FamilySpec& spec) {
  nlohmann::ordered_json j;
  j["p"] = spec.p;
  j["f"] = spec.f;
  j["weights"] = spec.weights;
  j["types"] = spec.types;
  j["family"] = spec.family;
  j["a_symbolic"] = spec.a_symbolic;
  return j;
}

inline FamilySpec spec_from_json(const nlohmann::json& j) {
  FamilySpec spec;
  spec.p = j.at("p").get<long long>();
  spec.f = j.at("f").get<int>();
  spec.weights = j.at("weights").get<std::vector<long long>>();
  if (j.contains("types")) spec.types = j.at("types").get<std::vector<int>>();
  if (j.contains("family")) spec.family = j.at("family").get<int>();
  if (j.contains("a_symbolic")) spec.a_symbolic = j.at("a_symbolic").get<bool>();
  spec.validate();
  return spec;
}

inline nlohmann::ordered_json report_to_json(const AnalysisReport& rep) {
  nlohmann::ordered_json j;
  j["schema"] = kAnalysisSchema;
  j["spec"] = spec_to_json(rep.spec);
  j["character_ell"] = rep.character_ell.to_string();
  j["character_ell_exps"] = rep.character_ell.exps;
  j["character_s"] = rep.character_s.to_string();
  j["character_s_exps"] = rep.character_s.exps;
  j["unramified"] = rep.character_ell.unram.to_string();
  j["reduction"] = {
      {"modulus", rep.reduction.modulus()},
      {"level", rep.reduction.level},
      {"exps", rep.reduction.exps},
      {"generator_slot", rep.generator_slot},
      {"orbit", rep.orbit},
  };
  j["determinant"] = {
      {"modulus", rep.det.modulus()},
      {"exp", rep.det.exp},
  };
  j["irreducible"] = rep.irreducible;
  j["checks"] = {
      {"det", rep.det_ok},
      {"star", rep.star_ok},
      {"admissible", rep.admissible},
      {"oracle", rep.oracle_agrees},
      {"wach",
       {
           {"k", rep.wach.k},
           {"truncation", rep.wach.truncation},
           {"qk", rep.wach.qk},
           {"qk_after_restriction", rep.wach.qk_after_restriction},
           {"gamma", rep.wach.gamma},
       }},
  };
  j["valid"] = rep.valid();
  return j;
}

}  // namespace wachlab
