#pragma once

#include <string>

#include "implic/basket.hpp"
#include "implic/deciders.hpp"
#include "implic/models.hpp"
#include "implic/relaxation.hpp"

// vendored single-header nlohmann/json
#include "json.hpp"

namespace implic {

using Json = nlohmann::json;

/// CSV with a header of attribute names; an optional integer "#weight"
/// column carries row multiplicity. Values are plain comma-separated
/// tokens, trimmed.
Relation read_relation_csv(const std::string& text,
                           const UniversePtr& universe = nullptr);

/// CSV like the relation format but with a mandatory "#prob" column of
/// decimal probabilities.
Distribution read_distribution_csv(const std::string& text,
                                   const UniversePtr& universe = nullptr);

/// Plain text, one basket per line of whitespace-separated item names;
/// '#' comments; repeated lines mean repeated baskets. Without an explicit
/// universe the items define one in first-appearance order.
BasketSet read_baskets(const std::string& text, const UniversePtr& universe = nullptr);

std::string read_file(const std::string& path);

Json to_json(const Certificate& cert);
Json to_json(const SetFunctionQ& h);
Json to_json(const SetFunctionD& h);
Json to_json(const DerivationStep& step);
Json to_json(const RelaxationResult& result);

/// Parses the JSON emitted by to_json(Certificate) back, against a known
/// universe; coefficients are exact "p/q" strings.
Certificate certificate_from_json(const Json& j, const UniversePtr& universe);

}  // namespace implic
