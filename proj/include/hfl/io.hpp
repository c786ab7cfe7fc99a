// SPDX-License-Identifier: Apache-2.0

#ifndef HFL_IO_HPP
#define HFL_IO_HPP

#include <string>
#include <vector>

#include <json.hpp>

#include "hfl/dpow.hpp"
#include "hfl/lset.hpp"
#include "hfl/relational.hpp"

namespace hfl {

using Json = nlohmann::json;

/// Sets as nested arrays in canonical order: {} is [], {{}} is [[]].
Json to_json(const HfSet& s);
/// ParseError on anything that is not an array of arrays.
HfSet set_from_json(const Json& j);

/// {"env": [set...], "formula": "text"}.
Json to_json(const DefWitness& w, bool sugar = true);
DefWitness witness_from_json(const Json& j);

Json to_json(const AxiomResult& r);
Json to_json(const AbsolutenessReport& r);
Json to_json(const ConformanceReport& r);
std::string to_text(const ConformanceReport& r);

/// [{"element": set, "text": "...", "witness": {...} | null}, ...]
Json to_json(const std::vector<RankedElement>& listing, bool sugar = true);
std::string to_text(const std::vector<RankedElement>& listing, bool sugar = true);

std::string to_text(const DefWitness& w, bool sugar = true);

} // namespace hfl

#endif
