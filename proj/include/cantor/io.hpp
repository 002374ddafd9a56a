#pragma once

#include <string>
#include <string_view>

#include "json.hpp"

#include "cantor/fullgroup.hpp"

namespace cantor::io {

using Json = nlohmann::json;

/// System descriptors:
///   {"odometer": {"prefix": [..], "period": [..]}}
///   {"bv": {"vertices": [..], "edges": [[[src, dst, order], ..], ..], "period_start": n}}
///   {"stationary": [[..], ..]}
/// For "bv", vertices[l] and edges[l] describe level l and the edges from it
/// to level l+1; the level after the last is level period_start. Errors are
/// InputError prefixed with "line N:".
System parse_system(std::string_view text);
System load_system_file(const std::string& path);
Json system_to_json(const System& sys);

/// {"pieces": [{"domain": literal, "power": k}, ..]}; validated on load.
Json element_to_json(const PiecewisePower& f);
PiecewisePower element_from_json(const System& sys, const Json& j);

/// {"level": n, "perms": [[..], ..]}
Json perm_to_json(const TowerPermutation& tp);
TowerPermutation perm_from_json(const Json& j);

/// {"level": n, "towers": [[floor literals bottom-up], ..]}
Json partition_to_json(const KRPartition& xi);
KRPartition partition_from_json(const System& sys, const Json& j);

/// {"order": [[..], ..], "mult": [[..], ..]}
Json stacking_to_json(const StackingMap& sm);
StackingMap stacking_from_json(const Json& j);

std::string rational_string(const Rational& q);

}  // namespace cantor::io
