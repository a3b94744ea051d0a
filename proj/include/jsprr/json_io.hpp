#pragma once

// Instance and solution (de)serialization.
//
// Instance document:
//   {"services":[{"id","r","c","bu","bd"}],
//    "stations":[{"id","R","C","Bu","Bd","x","y"}],
//    "users":[{"id","coverage":[...],"service","x","y"}],
//    "prev_placement": optional N x S 0/1 array, "D": optional}
// Station and user coordinates are optional.

#include <filesystem>
#include <string>

#include <json.hpp>

#include "jsprr/generator.hpp"
#include "jsprr/model.hpp"
#include "jsprr/rounding.hpp"

namespace jsprr {

nlohmann::json to_json(const Instance& instance);
Instance instance_from_json(const nlohmann::json& doc);

nlohmann::json to_json(const IntegerSolution& sol);
nlohmann::json to_json(const LoadReport& report);

/// Infinite factors serialize as null.
nlohmann::json to_json(const BicriteriaReport& report);

/// Keys match the GeneratorConfig field names; ranges are [lo, hi] pairs.
nlohmann::json to_json(const GeneratorConfig& config);
/// Starts from `base` and overrides the keys present. Unknown keys throw.
GeneratorConfig generator_config_from_json(const nlohmann::json& doc, GeneratorConfig base = {});

Instance load_instance(const std::filesystem::path& path);
void save_instance(const Instance& instance, const std::filesystem::path& path);

/// Serialized text with a trailing newline; stable across runs.
std::string dump(const nlohmann::json& doc);

}  // namespace jsprr
