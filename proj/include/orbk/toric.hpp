#pragma once

#include <orbk/errors.hpp>
#include <orbk/exact_linalg.hpp>
#include <orbk/parallel.hpp>
#include <orbk/polyhedra.hpp>
#include <orbk/report.hpp>
#include <orbk/types.hpp>

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

// Delzant-type quotients [C^n //_eta H] for a torus H = T^k acting linearly
// on C^n with weight columns a_j. In norm coordinates r_j = |z_j|^2 / 2 the
// level set is the polyhedron {r >= 0 : A r = eta}, and a component
// f = sum_j xi_j r_j of the ambient moment map is restricted to it.

namespace orbk {

class ToricModel {
public:
    ToricModel(IntMatrix weights, RatVec level) : weights_(std::move(weights)), level_(std::move(level)) {
        if (weights_.rows() == 0) throw InvalidInput("toric model needs at least one weight row");
        if (weights_.rows() > weights_.cols()) throw InvalidInput("toric model needs k <= n");
        if (level_.size() != weights_.rows()) throw InvalidInput("level length must equal the number of weight rows");
    }

    const IntMatrix& weights() const { return weights_; }
    const RatVec& level() const { return level_; }
    std::size_t rank() const { return weights_.rows(); }
    std::size_t num_coordinates() const { return weights_.cols(); }
    IntVec column(std::size_t j) const { return weights_.column(j); }

    std::vector<IntVec> columns() const {
        std::vector<IntVec> cols;
        for (std::size_t j = 0; j < weights_.cols(); ++j) cols.push_back(weights_.column(j));
        return cols;
    }

    std::vector<IntVec> columns(const Support& S) const {
        std::vector<IntVec> cols;
        for (auto j : S) cols.push_back(weights_.column(j));
        return cols;
    }

    // Same level, coordinates restricted to `coords` (sorted).
    ToricModel restricted_to(const Support& coords) const {
        return ToricModel(weights_.select_columns(coords), level_);
    }

    friend bool operator==(const ToricModel&, const ToricModel&) = default;

private:
    IntMatrix weights_;
    RatVec level_;
};

struct CriticalComponent {
    Support support;
    RatVec r;
    FiniteAbelianGroup group;
    std::vector<TorusElement> elements;
    Rational critical_value;
    int morse_index = 0;
    std::vector<std::pair<std::size_t, Rational>> lambda;

    friend bool operator==(const CriticalComponent&, const CriticalComponent&) = default;
};

using ToricReport = KorbReport<CriticalComponent>;

struct RegularityCheck {
    std::optional<Support> witness;  // set on violation

    bool ok() const { return !witness.has_value(); }
};

// Every point of {r >= 0 : A r = eta} must have a support whose columns span
// Q^k. A face with non-spanning support has vertices with non-spanning
// support, and vertex supports are linearly independent, so it suffices to
// test independent sets of size < k. The witness is widened to every column
// in the span of the offending vertex support.
inline RegularityCheck check_regular(const ToricModel& model) {
    const std::size_t k = model.rank();
    const std::size_t n = model.num_coordinates();
    for (std::size_t size = 0; size < k; ++size) {
        std::optional<Support> found;
        for_each_combination(n, size, [&](const Support& S) {
            if (found) return;
            const IntMatrix AS = model.weights().select_columns(S);
            if (rank(AS) != size) return;
            const auto sol = rational_solve(AS, model.level());
            if (!sol.solution) return;
            for (const auto& c : *sol.solution)
                if (c <= 0) return;
            found = S;
        });
        if (!found) continue;
        const IntMatrix base = model.weights().select_columns(*found);
        const std::size_t base_rank = rank(base);
        Support widened;
        for (std::size_t j = 0; j < n; ++j) {
            IntMatrix ext(k, found->size() + 1);
            for (std::size_t i = 0; i < k; ++i) {
                for (std::size_t c = 0; c < found->size(); ++c) ext(i, c) = base(i, c);
                ext(i, found->size()) = model.weights()(i, j);
            }
            if (rank(ext) == base_rank) widened.push_back(j);
        }
        return {std::move(widened)};
    }
    return {};
}

// Finite stabilizer in H of a point whose nonzero coordinates are S.
inline std::pair<FiniteAbelianGroup, std::vector<TorusElement>> stabilizer_group(const ToricModel& model,
                                                                                const Support& S) {
    const IntMatrix AS = model.weights().select_columns(S);
    auto group = cokernel_group(AS);
    if (!group) throw InvalidInput("stabilizer_group: columns of the support do not span, stabilizer is infinite");
    return {std::move(*group), dual_group_elements(AS)};
}

namespace detail {

inline void require_regular(const ToricModel& model) {
    const auto reg = check_regular(model);
    if (!reg.ok()) throw NonRegularLevel("level is not a regular value: a support reaching it does not span", *reg.witness);
}

inline void require_proper(const ToricModel& model, const RatVec& xi) {
    if (xi.size() != model.num_coordinates()) throw InvalidInput("xi length must equal the number of coordinates");
    const auto cert = recession_positive(model.weights(), xi);
    if (!cert.proper()) throw NotProper("xi is not proper and bounded below on the level set", *cert.counterexample_ray);
}

inline bool component_less(const CriticalComponent& a, const CriticalComponent& b) {
    if (a.critical_value != b.critical_value) return a.critical_value < b.critical_value;
    return a.support < b.support;
}

// Critical components without the regularity/properness gate.
inline std::vector<CriticalComponent> components_unchecked(const ToricModel& model, const RatVec& xi) {
    const auto vertices = critical_supports(model.weights(), model.level());
    if (auto bad = find_degeneracy(model.weights(), vertices, xi))
        throw NonGenericXi("xi is not generic: a Morse coefficient vanishes", bad->first, bad->second);
    std::vector<CriticalComponent> out;
    out.reserve(vertices.size());
    for (const auto& v : vertices) {
        auto [group, elements] = stabilizer_group(model, v.support);
        MorseData md = morse_data(model.weights(), v.support, v.r, xi);
        out.push_back({v.support, v.r, std::move(group), std::move(elements), std::move(md.critical_value),
                       md.morse_index, std::move(md.lambda)});
    }
    std::sort(out.begin(), out.end(), component_less);
    return out;
}

}  // namespace detail

// Critical H-orbits of f = xi.r on the level set, sorted by critical value
// then support.
inline std::vector<CriticalComponent> critical_components(const ToricModel& model, const RatVec& xi) {
    detail::require_regular(model);
    detail::require_proper(model, xi);
    return detail::components_unchecked(model, xi);
}

// Union over critical supports S of the stabilizers Gamma_S, sorted.
inline std::vector<TorusElement> twisted_sectors(const ToricModel& model) {
    detail::require_regular(model);
    std::vector<TorusElement> all;
    for (const auto& v : critical_supports(model.weights(), model.level())) {
        auto elems = dual_group_elements(model.weights().select_columns(v.support));
        all.insert(all.end(), elems.begin(), elems.end());
    }
    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end()), all.end());
    return all;
}

// Coordinates j with t^{a_j} = 1, i.e. a_j . v integral.
inline Support fixed_coordinates(const ToricModel& model, const TorusElement& t) {
    if (t.dimension() != model.rank()) throw InvalidInput("torus element dimension must equal k");
    Support fix;
    for (std::size_t j = 0; j < model.num_coordinates(); ++j)
        if (dot(model.column(j), t.coords()).get_den() == 1) fix.push_back(j);
    return fix;
}

namespace detail {

inline std::vector<CriticalComponent> sector_components(const ToricModel& model, const RatVec& xi,
                                                        const TorusElement& t) {
    const Support fix = fixed_coordinates(model, t);
    if (fix.size() < model.rank()) return {};
    const ToricModel sub = model.restricted_to(fix);
    RatVec sub_xi;
    for (auto j : fix) sub_xi.push_back(xi[j]);
    auto comps = components_unchecked(sub, sub_xi);
    for (auto& c : comps) {
        for (auto& j : c.support) j = fix[j];
        for (auto& [j, lam] : c.lambda) j = fix[j];
    }
    return comps;
}

}  // namespace detail

// Critical components of f restricted to Z^t = level set of the coordinate
// subspace fixed by t, with supports in the original indexing.
inline std::vector<CriticalComponent> sector_analysis(const ToricModel& model, const RatVec& xi,
                                                      const TorusElement& t) {
    detail::require_regular(model);
    detail::require_proper(model, xi);
    return detail::sector_components(model, xi, t);
}

inline std::vector<std::string> model_warnings(const ToricModel& model) {
    std::vector<std::string> w;
    for (std::size_t j = 0; j < model.num_coordinates(); ++j)
        if (gcd_of(model.column(j)) == 0)
            w.push_back("coordinate " + std::to_string(j + 1) + " has zero weight and never constrains the level set");
    const auto generic = cokernel_group(model.weights());
    if (!generic)
        w.push_back("weights do not span: the action has a positive-dimensional kernel");
    else if (!generic->is_trivial())
        w.push_back("noneffective action: generic stabilizer " + generic->to_string() + " is kept as given");
    return w;
}

// Additive structure of K_orb as a sum over sectors of R(Gamma) summands.
inline ToricReport korb_report(const ToricModel& model, const RatVec& xi) {
    detail::require_regular(model);
    detail::require_proper(model, xi);
    const auto vertices = critical_supports(model.weights(), model.level());
    if (auto bad = find_degeneracy(model.weights(), vertices, xi))
        throw NonGenericXi("xi is not generic: a Morse coefficient vanishes", bad->first, bad->second);
    const auto sectors = twisted_sectors(model);
    std::vector<SectorEntry<CriticalComponent>> entries(sectors.size());
    parallel_for(sectors.size(), [&](std::size_t i) {
        entries[i] = make_sector(sectors[i], detail::sector_components(model, xi, sectors[i]));
    });
    return assemble_report(std::move(entries), model_warnings(model));
}

}  // namespace orbk
