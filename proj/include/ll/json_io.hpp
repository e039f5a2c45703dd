#ifndef LL_JSON_IO_HPP
#define LL_JSON_IO_HPP

#include <json.hpp>

#include <string>

#include "ll/certificates.hpp"
#include "ll/family_check.hpp"
#include "ll/fsfp.hpp"
#include "ll/mds.hpp"
#include "ll/vdc.hpp"
#include "ll/window_set.hpp"

namespace ll {

using Json = nlohmann::json;  // std::map-backed: keys serialize sorted

// sets / sequences
Json set_to_json(const WindowSet& a);
WindowSet set_from_json(const Json& j);

// families / verdicts
Json family_to_json(const FamilySpec& f);
FamilySpec family_from_json(const Json& j);
Json witness_to_json(const Witness& w);
Witness witness_from_json(const Json& j);
Json verdict_to_json(const FamilyVerdict& v);
FamilyVerdict verdict_from_json(const Json& j);

Json ramsey_to_json(const RamseyReport& r);
Json invariance_to_json(const InvarianceReport& r);

// fsfp
Json fs_system_to_json(const FsSystem& fs, const IntSequence& generators, bool products);
Json minimality_to_json(const MinimalityReport& r);
Json subsystem_to_json(const SubsystemOutcome& o);

// certificates
Json chain_cert_to_json(const ChainCertificate& c);
ChainCertificate chain_cert_from_json(const Json& j);
Json chain_report_to_json(const ChainReport& r);
Json tree_to_json(const FunctionTree& t);
FunctionTree tree_from_json(const Json& j);
Json tree_report_to_json(const TreeReport& r);
Json correspondence_to_json(const CorrespondenceReport& r);
Json chain_search_to_json(const ChainSearchOutcome& o);

// mds
Json system_to_json(const MpsSpec& s);
Json event_to_json(const EventSet& e);
Json measure_to_json(const MeasureValue& m);
Json correlation_to_json(const CorrelationReport& r);
Json classification_to_json(const MixingClassification& c);
Json power_to_json(const PowerCheckReport& r);
/// Enough of a correlation report to classify it again: n_max, epsilon,
/// exactness flags and the mixing set.
CorrelationReport correlation_from_json(const Json& j);

// vdc
Json vdc_bound_to_json(const VdcBound& b, std::int64_t dim, std::int64_t len,
                       std::int64_t block);
Json shifted_correlations_to_json(const std::vector<ShiftedCorrelationRow>& rows);

// CSV side outputs
std::string correlation_csv(const CorrelationReport& r);
std::string chain_csv(const ChainReport& r);
std::string ramsey_csv(const RamseyReport& r);

// CLI input helpers
/// "g=2,L=100" -> {{"g","2"},{"L","100"}}
std::map<std::string, std::string> parse_kv_list(const std::string& text);
/// "pws:2:100" or "ipdepth:3" -> FamilySpec (positional compact form)
FamilySpec family_from_compact(const std::string& text);
/// Event string for a system: residues "0,2,4"; intervals "0:1/2,3/4:7/8";
/// cylinders "cyl:OFFSET:SYMBOLS" like "cyl:0:101".
EventSet parse_event(const MpsSpec& sys, const std::string& text);

}  // namespace ll

#endif
