#pragma once

#include <string>
#include <vector>

#include "monotone/operators.hpp"

namespace monotone {

struct CatalogEntry {
    std::string id;
    OperatorSpec op;
};

/// The regularity battery: identity, a rotation, a nonsymmetric PSD matrix,
/// box normal cones in one and two dimensions, a norm subdifferential and
/// the bounded smooth gradient.
std::vector<CatalogEntry> standard_catalog();

/// One-dimensional members used by the domain-probe batteries.
std::vector<CatalogEntry> probe_catalog();

/// Look an entry up in either catalog by id.
OperatorSpec catalog_operator(const std::string& id);

}  // namespace monotone
