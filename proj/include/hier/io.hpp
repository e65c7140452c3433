#pragma once

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "hier/ring.hpp"

namespace hier {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using Json = nlohmann::json;

Json to_json(const DiffPoly& f);
// Ring inferred from the document (quantum iff an hbar power occurs).
DiffPoly from_json(const Json& doc);
// Ring supplied by the caller; the document's ring block must agree with it.
DiffPoly from_json(const Json& doc, const RingPtr& ring);

std::string serialize(const DiffPoly& f);
DiffPoly parse(const std::string& text);
DiffPoly parse(const std::string& text, const RingPtr& ring);

// Human-readable form, e.g. "u^2/2 + (1/24) eps^2 u_2".
std::string pretty(const DiffPoly& f);
DiffPoly parse_pretty(const std::string& text, const RingPtr& ring);

}  // namespace hier
