#pragma once

#include <string>

#include <json.hpp>

#include "cwork/cwp.hpp"
#include "cwork/deconvolve.hpp"
#include "cwork/fluctuation.hpp"
#include "cwork/ladder.hpp"
#include "cwork/potential.hpp"

namespace cwork {

using Json = nlohmann::json;

// File-system failure distinct from validation failures (separate exit code).
struct IoError : Error {
    using Error::Error;
};

// ------------------------------------------------------------ primitives ---

// {"offset": int, "amplitudes": [[re, im], ...]}
Json state_to_json(const LadderState& psi);
LadderState state_from_json(const Json& j);

// {"offset": int, "weights": [w, ...]}
Json distribution_to_json(const EnergyDistribution& p);
EnergyDistribution distribution_from_json(const Json& j);

// ------------------------------------------------------------- records -----

Json factor_pair_to_json(const FactorPair& f);
Json deconvolve_result_to_json(const DeconvolveResult& r);

// Round-trippable process record (includes the block unitary).
Json cwp_record_to_json(const CwpRecord& record, const EnergyConservingUnitary& v);
struct StoredCwpRecord {
    CwpRecord record;
    EnergyConservingUnitary unitary;
};
StoredCwpRecord cwp_record_from_json(const Json& j);

Json crooks_report_to_json(const CrooksReport& r);

// -------------------------------------------------------------- files ------

Json load_json_file(const std::string& path);          // IoError / parse errors
void write_text_file(const std::string& path, const std::string& text); // IoError

// FNV-1a 64-bit over the canonical (sorted-key) serialization.
std::string config_hash(const Json& j);

// Fixed tolerance set embedded in every report.
Json tolerance_set();

// Shortest-round-trip-stable formatting for CSV cells.
std::string format_double(double x);

} // namespace cwork
