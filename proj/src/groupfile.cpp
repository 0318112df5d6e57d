#include "nilrf/groupfile.hpp"

#include <fstream>
#include <sstream>

namespace nilrf {

mpz_class integer_from_json(const nlohmann::json& j, const std::string& where)
{
    try {
        if (j.is_number_integer())
            return mpz_class(std::to_string(j.get<long long>()));
        if (j.is_string())
            return mpz_class(j.get<std::string>());
    } catch (const std::exception&) {
        // fall through to the uniform error below
    }
    throw parse_error(where + ": expected an integer or decimal string");
}

ZVec zvec_from_json(const nlohmann::json& j, const std::string& where)
{
    if (!j.is_array())
        throw parse_error(where + ": expected an array");
    ZVec v;
    v.reserve(j.size());
    for (std::size_t i = 0; i < j.size(); ++i)
        v.push_back(integer_from_json(j[i], where + "[" + std::to_string(i) + "]"));
    return v;
}

nlohmann::json zvec_to_json(const ZVec& v)
{
    nlohmann::json a = nlohmann::json::array();
    for (const auto& x : v)
        a.push_back(x.get_str());
    return a;
}

nlohmann::json intmatrix_to_json(const IntMatrix& m)
{
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < m.cols(); ++j)
            row.push_back(m.at(i, j).get_str());
        rows.push_back(std::move(row));
    }
    return rows;
}

GroupPresentation group_from_json(const nlohmann::json& j)
{
    if (!j.is_object())
        throw parse_error("group file: expected a JSON object");
    for (const char* key : {"m", "n", "matrices"})
        if (!j.contains(key))
            throw parse_error(std::string("group file: missing field '") + key + "'");
    if (!j["m"].is_number_integer() || !j["n"].is_number_integer())
        throw parse_error("group file: fields 'm' and 'n' must be integers");
    long m = j["m"].get<long>();
    long n = j["n"].get<long>();
    if (m < 1 || n < 1)
        throw parse_error("group file: 'm' and 'n' must be positive");
    const auto& mats = j["matrices"];
    if (!mats.is_array() || mats.size() != static_cast<std::size_t>(n))
        throw parse_error("group file: 'matrices' must list exactly n matrices");
    std::vector<IntMatrix> as;
    for (long l = 0; l < n; ++l) {
        const auto& mj = mats[l];
        std::string where = "matrices[" + std::to_string(l) + "]";
        if (!mj.is_array() || mj.size() != static_cast<std::size_t>(m))
            throw parse_error(where + ": expected " + std::to_string(m) + " rows");
        IntMatrix a(m, m);
        for (long r = 0; r < m; ++r) {
            const auto& rj = mj[r];
            std::string rwhere = where + "[" + std::to_string(r) + "]";
            if (!rj.is_array() || rj.size() != static_cast<std::size_t>(m))
                throw parse_error(rwhere + ": expected " + std::to_string(m) + " entries");
            for (long c = 0; c < m; ++c)
                a.at(r, c) = integer_from_json(rj[c], rwhere + "[" + std::to_string(c) + "]");
        }
        as.push_back(std::move(a));
    }
    std::string name = j.value("name", std::string{});
    return GroupPresentation(std::move(as), std::move(name));
}

nlohmann::json group_to_json(const GroupPresentation& pres)
{
    nlohmann::json j;
    if (!pres.name().empty())
        j["name"] = pres.name();
    j["m"] = pres.m();
    j["n"] = pres.n();
    nlohmann::json mats = nlohmann::json::array();
    for (const auto& a : pres.matrices())
        mats.push_back(intmatrix_to_json(a));
    j["matrices"] = std::move(mats);
    return j;
}

GroupPresentation read_group_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw parse_error("cannot open group file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw parse_error(path + ": " + e.what());
    }
    try {
        return group_from_json(j);
    } catch (const std::invalid_argument& e) {
        throw parse_error(path + ": " + e.what());
    }
}

void write_group_file(const GroupPresentation& pres, const std::string& path)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write group file: " + path);
    out << group_to_json(pres).dump(2) << "\n";
}

} // namespace nilrf
