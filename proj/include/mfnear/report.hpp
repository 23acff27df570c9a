#pragma once

// JSON, CSV and text writers for counting and oracle results.

#include <string>
#include <vector>

#include <json.hpp>

#include "mfnear/counting.hpp"
#include "mfnear/mmf.hpp"
#include "mfnear/oracle.hpp"

namespace mfnear::report {

inline constexpr int kSchemaVersion = 1;

using Json = nlohmann::ordered_json;

/// {"schema_version", "command", "parameters"}; callers append the payload.
Json envelope(const std::string& command, Json parameters);

Json to_json(const counting::CountReport& r);
/// `seconds` is written only when timings are requested.
Json to_json(const oracle::VerificationOutcome& v, bool timings);
Json to_json(const oracle::SampleEstimate& e);
Json to_json(const gf2::AffineSubspace& u);
Json to_json(const gf2::AffineMap& h);
Json to_json(const mmf::NearBentWitness& w);
Json to_json(const mmf::MMFunction& g);

std::string csv_field(const std::string& s);
/// Header plus one line per cell.
std::string to_csv(const std::vector<counting::CountReport>& cells);
std::string to_text(const std::vector<counting::CountReport>& cells);
std::string to_text(const oracle::VerificationOutcome& v, bool timings);

/// pi as JSON array and phi as a bit string, phi[i] = phi(y) with int(y) = i.
std::string phi_bits(const boolfun::TruthTable& phi);
boolfun::TruthTable parse_phi_bits(const std::string& bits, int n);

}  // namespace mfnear::report
