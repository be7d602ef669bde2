#pragma once

#include <vector>

#include "pour/container.hpp"

namespace pour::harness {

/// Source containers of the experiment protocol. The training set spans
/// H in [90, 140] mm and D in [50, 90] mm; the similar test containers lie
/// inside that hull; the unaccustomed ones lie far outside it (two tall
/// bottles and one wide cup).
struct ContainerCatalog {
    std::vector<ContainerSpec> training;     // 9 containers
    std::vector<ContainerSpec> similar_test; // 4 containers
    std::vector<ContainerSpec> unaccustomed; // 3 containers

    /// The training-set container used for accustomed evaluations.
    const ContainerSpec& reference() const;
    const ContainerSpec& tall_thin_bottle() const { return unaccustomed.at(0); }
    const ContainerSpec& tall_bottle() const { return unaccustomed.at(1); }
    const ContainerSpec& wide_cup() const { return unaccustomed.at(2); }

    const ContainerSpec& find(const std::string& name) const;
    std::vector<ContainerSpec> all() const;

    /// Throws validation_error when the hull structure is broken.
    void validate() const;
};

ContainerCatalog default_catalog();

} // namespace pour::harness
