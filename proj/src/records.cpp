#include "records.hpp"

namespace msh {

std::string record_line(const std::string &kind, nlohmann::json fields) {
    fields["schema"] = record_schema;
    fields["kind"] = kind;
    return fields.dump() + "\n";
}

void record_stream::put(const std::string &kind, nlohmann::json fields) {
    buf += record_line(kind, std::move(fields));
}

} // namespace msh
