#pragma once

// JSON exchange format for nets and token values.

#include "fcm/cpn.hpp"

#include "json.hpp"

#include <string>

namespace fcm {

nlohmann::json to_json(const cpn::Net& net);
/// Throws ParseError for malformed documents and fcm::Error for nets that
/// fail Net::index().
cpn::Net net_from_json(const nlohmann::json& document);
std::string serialize_net(const cpn::Net& net, int indent = 2);

/// Ids are written as ["Class", n] and association pairs as two such ids.
nlohmann::json value_to_json(const cpn::Net& net, const cpn::ColorValue& value);
cpn::ColorValue value_from_json(const cpn::Net& net, cpn::ColorSet colorset, const nlohmann::json& value);

cpn::Id id_from_json(const cpn::Net& net, const nlohmann::json& value);

/// Per place, keyed by place id; empty places are omitted.
nlohmann::json marking_to_json(const cpn::Net& net, const cpn::Marking& marking);
cpn::Marking marking_from_json(const cpn::Net& net, const nlohmann::json& document);

nlohmann::json binding_to_json(const cpn::Net& net, const cpn::Transition& transition, const cpn::Binding& binding);
cpn::Binding binding_from_json(const cpn::Net& net, const cpn::Transition& transition, const nlohmann::json& document);

} // namespace fcm
