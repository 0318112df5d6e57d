#ifndef NILRF_REPORT_HPP
#define NILRF_REPORT_HPP

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "nilrf/certify.hpp"
#include "nilrf/divisibility.hpp"
#include "nilrf/groupfile.hpp"

namespace nilrf {

inline constexpr const char* tool_name = "nilrf";
inline constexpr const char* tool_version = "0.1.0";

// Self-contained machine reports: the input matrices are embedded so that
// every certificate can be re-verified from the report alone.

nlohmann::json analysis_report(const GroupPresentation& pres, const RFVerdict& verdict,
                               const std::string& input_path, const std::string& digest,
                               unsigned long seed, double timing_ms);

struct DivisibilityReportExtras {
    std::optional<mpz_class> oracle_bound;
    std::optional<mpz_class> oracle_value; // absent value with bound set = None
    std::vector<mpz_class> primes;
    std::optional<mpz_class> prime_bound_value;
    bool prime_bound_requested = false;
};

nlohmann::json divisibility_report(const GroupPresentation& pres, const ZVec& v,
                                   const DivisibilityResult& result,
                                   const DivisibilityReportExtras& extras,
                                   const std::string& input_path, const std::string& digest,
                                   double timing_ms);

struct VerifyOutcome {
    bool ok = true;
    std::vector<std::string> passed;
    std::vector<std::string> failed;
};

// Re-verifies an emitted report from its own contents: certificate
// re-expansion for analyses, witness recomputation for divisibility.
VerifyOutcome verify_report(const nlohmann::json& report);

nlohmann::json certificate_to_json(const MembershipCertificate& cert);
MembershipCertificate certificate_from_json(const nlohmann::json& j);

} // namespace nilrf

#endif
