#pragma once

#include <orbk/errors.hpp>
#include <orbk/exact_linalg.hpp>
#include <orbk/polyhedra.hpp>
#include <orbk/toric.hpp>
#include <orbk/types.hpp>

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

// Linear chart data for a semilocally Delzant level set: T = T^d acts on
// C^n with weights w_j, and H = T^k sits in T through the cocharacter basis
// given by the columns of B. That the chart covers the critical set of an
// ambient manifold is the caller's assertion and is not checked here.

namespace orbk {

class ChartModel {
public:
    ChartModel(std::size_t ambient_dim, std::vector<IntVec> weights, IntMatrix subtorus, RatVec level)
        : d_(ambient_dim), weights_(std::move(weights)), B_(std::move(subtorus)), level_(std::move(level)) {
        if (d_ == 0) throw InvalidInput("ambient dimension must be positive");
        for (const auto& w : weights_)
            if (w.size() != d_) throw InvalidInput("every chart weight must have length ambient_dim");
        if (B_.rows() != d_) throw InvalidInput("subtorus matrix must have ambient_dim rows");
        if (B_.cols() == 0) throw InvalidInput("subtorus must have at least one column");
        if (orbk::rank(B_) != B_.cols()) throw InvalidInput("subtorus matrix is rank deficient");
        if (level_.size() != B_.cols()) throw InvalidInput("level length must equal the subtorus rank");
    }

    std::size_t ambient_dim() const { return d_; }
    const std::vector<IntVec>& weights() const { return weights_; }
    const IntMatrix& subtorus() const { return B_; }
    const RatVec& level() const { return level_; }
    std::size_t rank() const { return B_.cols(); }

private:
    std::size_t d_;
    std::vector<IntVec> weights_;
    IntMatrix B_;
    RatVec level_;
};

// a_j = B^T w_j, paired with the level.
inline ToricModel restrict_weights(const ChartModel& chart) {
    const std::size_t k = chart.rank();
    IntMatrix A(k, chart.weights().size());
    for (std::size_t j = 0; j < chart.weights().size(); ++j)
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t l = 0; l < chart.ambient_dim(); ++l) A(i, j) += chart.subtorus()(l, i) * chart.weights()[j][l];
    return ToricModel(std::move(A), chart.level());
}

// Conditions (2) regular level and (3) proper, bounded-below component.
struct DelzantVerdict {
    RegularityCheck regularity;
    RatVec xi;
    PropernessCertificate properness;
    bool xi_supplied = false;

    bool regular() const { return regularity.ok(); }
    bool proper() const { return properness.proper(); }
    bool passes() const { return regular() && proper(); }
};

// With xi absent a deterministic proper xi is searched for; positive xi is
// always proper in the linear model, so (3) can only fail for a supplied xi.
inline DelzantVerdict semilocally_delzant_check(const ChartModel& chart, const std::optional<RatVec>& xi = std::nullopt) {
    const ToricModel model = restrict_weights(chart);
    DelzantVerdict v;
    v.regularity = check_regular(model);
    v.xi_supplied = xi.has_value();
    if (xi) {
        if (xi->size() != model.num_coordinates()) throw InvalidInput("xi length must equal the number of chart coordinates");
        v.xi = *xi;
    } else {
        v.xi = find_generic_xi(model.weights(), model.level());
    }
    v.properness = recession_positive(model.weights(), v.xi);
    return v;
}

// Critical components whose ambient moment images sum_j r_j w_j agree.
struct ImageCoincidence {
    RatVec image;
    std::vector<Support> supports;
};

struct ChartReport {
    ToricModel model;
    RatVec xi;
    ToricReport report;
    std::vector<ImageCoincidence> coincidences;
};

inline RatVec ambient_image(const ChartModel& chart, const CriticalComponent& c) {
    RatVec img(chart.ambient_dim());
    for (std::size_t s = 0; s < c.support.size(); ++s)
        for (std::size_t l = 0; l < chart.ambient_dim(); ++l) img[l] += c.r[s] * chart.weights()[c.support[s]][l];
    return img;
}

inline ChartReport chart_korb(const ChartModel& chart, const std::optional<RatVec>& xi = std::nullopt) {
    const DelzantVerdict v = semilocally_delzant_check(chart, xi);
    ToricModel model = restrict_weights(chart);
    if (!v.regular())
        throw NonRegularLevel("chart level is not a regular value: a support reaching it does not span",
                              *v.regularity.witness);
    if (!v.proper()) throw NotProper("xi is not proper and bounded below on the chart level set", *v.properness.counterexample_ray);
    ToricReport report = korb_report(model, v.xi);

    std::map<RatVec, std::vector<Support>> by_image;
    for (const auto& s : report.sectors) {
        if (!s.element.is_identity()) continue;
        for (const auto& c : s.components) by_image[ambient_image(chart, c)].push_back(c.support);
    }
    std::vector<ImageCoincidence> notes;
    for (auto& [img, sups] : by_image)
        if (sups.size() > 1) notes.push_back({img, std::move(sups)});
    if (model.weights().is_zero())
        report.warnings.push_back("all chart weights pair to zero with the subtorus: restricted weights are degenerate");
    return {std::move(model), v.xi, std::move(report), std::move(notes)};
}

}  // namespace orbk
