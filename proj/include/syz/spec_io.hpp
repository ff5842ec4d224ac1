#pragma once

#include <string>

#include "json.hpp"
#include "syz/scenarios.hpp"

namespace syz {

inline constexpr int kSchemaVersion = 1;

// Malformed document; path is a JSON pointer to the offending field, line/column 0 when unknown.
struct SpecError : Error {
    std::string path;
    std::size_t line = 0, column = 0;
    SpecError(std::string path, const std::string& what, std::size_t line = 0, std::size_t column = 0);
};

nlohmann::ordered_json spec_to_json(const DegenerationSpec& s);
DegenerationSpec spec_from_json(const nlohmann::ordered_json& j);

// Parses text, then the document; syntax errors carry line and column.
DegenerationSpec parse_spec(const std::string& text);
std::string dump_spec(const DegenerationSpec& s);

nlohmann::ordered_json fan_to_json(const Fan& f);
nlohmann::ordered_json report_to_json(const ScenarioReport& r);
std::string dump_report(const ScenarioReport& r);

}  // namespace syz
