#ifndef TUBELOG_JSON_IO_HPP
#define TUBELOG_JSON_IO_HPP

#include <string>

#include <json.hpp>

#include "tubelog/comb.hpp"
#include "tubelog/config.hpp"
#include "tubelog/verify.hpp"

namespace tubelog {

using Json = nlohmann::ordered_json;

// bit-exact real round trip via C hex-float literals
std::string hexfloat(double v);
double parse_hexfloat(const std::string& s);

Json rat_to_json(const BigRat& q);
BigRat rat_from_json(const Json& j);

Json config_to_json(const RunConfig& cfg);
Json ledger_to_json(const ParameterLedger& L);
ParameterLedger ledger_from_json(const Json& j);
Json atlas_to_json(const CombAtlas& atlas);
CombAtlas atlas_from_json(const Json& j);
Json report_to_json(const RunConfig& cfg, const ParameterLedger& L,
                    const VerificationReport& rep);

// curves_depth<k>.csv: prefix, t, re, im, d1_re, d1_im
std::string curves_csv(const CombAtlas& atlas);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace tubelog

#endif
