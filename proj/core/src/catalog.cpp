#include "pour/harness/catalog.hpp"

#include <algorithm>
#include <limits>

#include "pour/errors.hpp"

namespace pour::harness {

ContainerCatalog default_catalog() {
    ContainerCatalog cat;
    cat.training = {
        {"cup-a", 110.0, 50.0}, {"cup-b", 90.0, 60.0},  {"cup-c", 100.0, 65.0},
        {"cup-d", 110.0, 74.0}, {"cup-e", 120.0, 80.0}, {"cup-f", 95.0, 70.0},
        {"cup-g", 130.0, 60.0}, {"cup-h", 140.0, 90.0}, {"cup-i", 125.0, 85.0},
    };
    cat.similar_test = {
        {"test-a", 105.0, 68.0},
        {"test-b", 115.0, 75.0},
        {"test-c", 100.0, 55.0},
        {"test-d", 135.0, 82.0},
    };
    cat.unaccustomed = {
        {"tall-thin-bottle", 280.0, 45.0},
        {"tall-bottle", 230.0, 60.0},
        {"wide-cup", 80.0, 120.0},
    };
    cat.validate();
    return cat;
}

const ContainerSpec& ContainerCatalog::reference() const {
    return training.at(3); // cup-d
}

const ContainerSpec& ContainerCatalog::find(const std::string& name) const {
    for (const auto* group : {&training, &similar_test, &unaccustomed}) {
        for (const auto& c : *group) {
            if (c.name == name) return c;
        }
    }
    throw validation_error("catalog: unknown container '" + name + "'");
}

std::vector<ContainerSpec> ContainerCatalog::all() const {
    std::vector<ContainerSpec> out = training;
    out.insert(out.end(), similar_test.begin(), similar_test.end());
    out.insert(out.end(), unaccustomed.begin(), unaccustomed.end());
    return out;
}

void ContainerCatalog::validate() const {
    if (training.size() != 9 || similar_test.size() != 4 || unaccustomed.size() != 3) {
        throw validation_error("catalog: expected 9 training / 4 similar / 3 unaccustomed");
    }
    double h_lo = std::numeric_limits<double>::infinity(), h_hi = 0.0;
    double d_lo = std::numeric_limits<double>::infinity(), d_hi = 0.0;
    for (const auto& c : training) {
        c.validate();
        h_lo = std::min(h_lo, c.height_mm);
        h_hi = std::max(h_hi, c.height_mm);
        d_lo = std::min(d_lo, c.diameter_mm);
        d_hi = std::max(d_hi, c.diameter_mm);
    }
    if (h_lo != 90.0 || h_hi != 140.0 || d_lo != 50.0 || d_hi != 90.0) {
        throw validation_error("catalog: training hull must span H [90,140], D [50,90]");
    }
    for (const auto& c : similar_test) {
        c.validate();
        const bool inside = c.height_mm >= h_lo && c.height_mm <= h_hi &&
                            c.diameter_mm >= d_lo && c.diameter_mm <= d_hi;
        if (!inside) throw validation_error("catalog: '" + c.name + "' must lie inside the hull");
    }
    for (const auto& c : unaccustomed) {
        c.validate();
        const bool inside = c.height_mm >= h_lo && c.height_mm <= h_hi &&
                            c.diameter_mm >= d_lo && c.diameter_mm <= d_hi;
        if (inside) throw validation_error("catalog: '" + c.name + "' must lie outside the hull");
    }
}

} // namespace pour::harness
