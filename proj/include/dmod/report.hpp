#pragma once
/**
 * @file report.hpp
 * @brief JSON and text rendering of run configurations, modules and verification reports.
 *
 * JSON objects use nlohmann::json, whose default object type keeps keys sorted, so equal
 * inputs serialise to identical bytes. Valuations are exact rationals printed as "a" or "a/b".
 */

#include <string>

#include "json.hpp"
#include "dmod/verify.hpp"

namespace dmod {

using json = nlohmann::json;

json to_json(const RunConfig& c);
/// Inverse of to_json(RunConfig); throws std::invalid_argument on a malformed document.
RunConfig config_from_json(const json& j);

/// {q, rho, twist, route, images: [[coefficient strings, τ^0 first]]}
json to_json(const DrinfeldModule& M, const RunConfig& c);
/// {q, rho, k, mu, route, images}
json to_json(const HayesModule& M, const RunConfig& c);

json to_json(const PeriodRow& r);
json to_json(const AGFReport& r);
json to_json(const SuiteResult& s);
json to_json(const VerifyReport& r);
json to_json(const ConstructReport& r);

std::string to_text(const VerifyReport& r);
std::string to_text(const ConstructReport& r);

}  // namespace dmod
