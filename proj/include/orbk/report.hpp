#pragma once

#include <orbk/exact_linalg.hpp>
#include <orbk/types.hpp>

#include <string>
#include <vector>

namespace orbk {

// One twisted sector t with the critical components of f restricted to Z^t.
// Each component contributes a representation ring summand of rank |group|.
template <class Component>
struct SectorEntry {
    TorusElement element;
    std::vector<Component> components;
    Integer rank = 0;

    friend bool operator==(const SectorEntry&, const SectorEntry&) = default;
};

template <class Component>
struct KorbReport {
    std::vector<SectorEntry<Component>> sectors;  // lexicographic in element
    Integer total_rank = 0;
    // Every summand is a free module by construction.
    bool torsion_free = true;
    std::vector<std::string> warnings;

    Integer untwisted_rank() const {
        for (const auto& s : sectors)
            if (s.element.is_identity()) return s.rank;
        return 0;
    }

    Integer twisted_rank() const { return total_rank - untwisted_rank(); }

    friend bool operator==(const KorbReport&, const KorbReport&) = default;
};

template <class Component>
SectorEntry<Component> make_sector(TorusElement element, std::vector<Component> components) {
    SectorEntry<Component> s{std::move(element), std::move(components), 0};
    for (const auto& c : s.components) s.rank += c.group.representation_rank();
    return s;
}

template <class Component>
KorbReport<Component> assemble_report(std::vector<SectorEntry<Component>> sectors, std::vector<std::string> warnings) {
    KorbReport<Component> r;
    r.sectors = std::move(sectors);
    for (const auto& s : r.sectors) r.total_rank += s.rank;
    r.warnings = std::move(warnings);
    return r;
}

}  // namespace orbk
