#ifndef NILRF_GROUPFILE_HPP
#define NILRF_GROUPFILE_HPP

#include <string>

#include <json.hpp>

#include "nilrf/group.hpp"

namespace nilrf {

// Malformed group or report files.
class parse_error : public std::runtime_error {
public:
    explicit parse_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Schema: {"name"?: string, "m": int, "n": int,
//          "matrices": n arrays of m arrays of m entries}.
// Entries are decimal strings on output and accepted as either strings or
// JSON integers on input, so consumers never face 64-bit overflow.
GroupPresentation group_from_json(const nlohmann::json& j);
nlohmann::json group_to_json(const GroupPresentation& pres);

GroupPresentation read_group_file(const std::string& path);
void write_group_file(const GroupPresentation& pres, const std::string& path);

// Helpers shared with the report layer.
mpz_class integer_from_json(const nlohmann::json& j, const std::string& where);
ZVec zvec_from_json(const nlohmann::json& j, const std::string& where);
nlohmann::json zvec_to_json(const ZVec& v);
nlohmann::json intmatrix_to_json(const IntMatrix& m);

} // namespace nilrf

#endif
