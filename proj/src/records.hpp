#pragma once

#include <string>

#include "json.hpp"

namespace msh {

// Machine output is line-delimited JSON.  Every line carries the same schema
// tag so consumers can detect format drift without sniffing field names.
inline constexpr const char *record_schema = "msh/1";

// One output line: the given fields plus the schema tag and a kind label.
// Keys are emitted in sorted order, so equal payloads produce equal lines.
std::string record_line(const std::string &kind, nlohmann::json fields);

// Accumulates lines in emission order.
struct record_stream {
    std::string buf;

    void put(const std::string &kind, nlohmann::json fields);
    const std::string &text() const { return buf; }
};

} // namespace msh
