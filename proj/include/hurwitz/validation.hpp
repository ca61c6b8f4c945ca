#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hurwitz/catalog.hpp"

namespace hurwitz {

struct CheckLine {
    std::string name;
    bool ok = true;
    std::string detail;
};

struct CatalogReport {
    std::vector<CheckLine> checks;
    std::size_t systems_tested = 0;

    bool ok() const;
    std::size_t failures() const;
};

/**
 * Soundness suite for one instantiated catalog:
 *  - every move stores an inverse and passes validate_peripheral;
 *  - on `samples` random valid systems of degree `degree`: each move and its
 *    inverse cancel, validity, genus and the monodromy subgroup are kept,
 *    the braid relations hold, and each push obeys its effect contract
 *    (t_j fixed for j < w, t_w conjugated, exactly one handle image of its
 *    handle multiplied on the right by a transposition, others untouched).
 * All system-level checks go through full precomposition with the catalog
 * maps. Sampling is skipped when (h, w) admits no valid systems.
 */
CatalogReport validate_catalog(const MoveCatalog& cat, int degree, int samples, std::uint64_t seed);

}  // namespace hurwitz
