#include "hplus/density_classifier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "hplus/errors.hpp"

namespace hplus {

PointSequence::PointSequence(std::string label, std::vector<DiscPoint> points)
    : label_(std::move(label)), points_(std::move(points)) {
    std::vector<std::size_t> order(points_.size());
    std::iota(order.begin(), order.end(), 0);
    auto key = [this](std::size_t i) { return std::pair{points_[i].arg(), points_[i].depth()}; };
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return key(a) < key(b) || (key(a) == key(b) && a < b);
    });
    for (std::size_t i = 1; i < order.size(); ++i) {
        if (points_[order[i]] == points_[order[i - 1]]) {
            throw InputError("points " + std::to_string(order[i - 1]) + " and " + std::to_string(order[i]) +
                             " coincide");
        }
    }
}

namespace {

double within_level(double l) { return l + kLevelSlack * std::max(1.0, l); }

ConditionResult finish(std::string id, const DensityConstants& c, std::optional<Witness> worst) {
    ConditionResult r;
    r.id = std::move(id);
    r.constants = c;
    r.witness = worst;
    r.fitted_m = worst ? worst->ratio : 0.0;
    r.passed = r.fitted_m <= c.m_const;
    return r;
}

void keep_worst(std::optional<Witness>& worst, const Witness& w) {
    if (!worst || w.ratio > worst->ratio) worst = w;
}

// Dyadic layer index l with 2^{-l-1} < ratio <= 2^{-l}, for ratio in (0, 1].
int dyadic_layer(double ratio) {
    int e = 0;
    const double m = std::frexp(ratio, &e);  // ratio = m 2^e, m in [1/2, 1)
    return m == 0.5 ? 1 - e : -e;
}

}  // namespace

ConditionResult check_condition_a(const PointSequence& seq, const DensityConstants& c) {
    std::optional<Witness> worst;
    std::vector<double> betas;
    for (std::size_t n = 0; n < seq.size(); ++n) {
        betas.clear();
        for (std::size_t j = 0; j < seq.size(); ++j) {
            if (j != n) betas.push_back(hyperbolic_distance(seq[j], seq[n]));
        }
        std::sort(betas.begin(), betas.end());
        const double top = betas.empty() ? 0.0 : betas.back();
        const int levels = static_cast<int>(std::ceil(top)) + 1;
        for (int l = 1; l <= levels; ++l) {
            const auto inside = std::upper_bound(betas.begin(), betas.end(), within_level(l)) - betas.begin();
            const double count = 1.0 + static_cast<double>(inside);
            keep_worst(worst, {n, static_cast<double>(l), count, count / std::exp2(c.alpha * l)});
        }
    }
    return finish("a", c, worst);
}

ConditionResult check_condition_b(const PointSequence& seq, const DensityConstants& c) {
    std::optional<Witness> worst;
    std::vector<PairMetric> radii;
    for (std::size_t n = 0; n < seq.size(); ++n) {
        radii.clear();
        for (std::size_t j = 0; j < seq.size(); ++j) {
            if (j != n) radii.push_back(pair_metric(seq[j], seq[n]));
        }
        std::sort(radii.begin(), radii.end(),
                  [](const PairMetric& a, const PairMetric& b) { return a.rho < b.rho; });
        keep_worst(worst, {n, 0.0, 1.0, 1.0});
        for (std::size_t i = 0; i < radii.size(); ++i) {
            if (i + 1 < radii.size() && radii[i + 1].rho == radii[i].rho) continue;
            const double count = static_cast<double>(i + 2);
            keep_worst(worst, {n, radii[i].rho, count, count * std::pow(radii[i].one_minus_rho, c.alpha)});
        }
    }
    return finish("b", c, worst);
}

ConditionResult check_condition_c(const PointSequence& seq, const DensityConstants& c) {
    std::optional<Witness> worst;
    std::map<int, double> layers;
    for (std::size_t n = 0; n < seq.size(); ++n) {
        layers.clear();
        const CarlesonBox box = CarlesonBox::over(seq[n]);
        for (std::size_t j = 0; j < seq.size(); ++j) {
            if (j == n || box_contains(box, seq[j])) layers[dyadic_layer(seq[j].depth() / seq[n].depth())] += 1.0;
        }
        for (const auto& [l, count] : layers) {
            keep_worst(worst, {n, static_cast<double>(l), count, count / std::exp2(c.alpha * l)});
        }
    }
    return finish("c", c, worst);
}

ConditionResult check_condition_d(const PointSequence& seq, const DensityConstants& c) {
    std::optional<Witness> worst;
    for (std::size_t n = 0; n < seq.size(); ++n) {
        const CarlesonBox box = CarlesonBox::over(seq[n]);
        double sum = 0.0;
        for (std::size_t j = 0; j < seq.size(); ++j) {
            if (j == n || box_contains(box, seq[j])) sum += std::pow(seq[j].depth(), c.alpha);
        }
        keep_worst(worst, {n, box.side, sum, sum / std::pow(seq[n].depth(), c.alpha)});
    }
    return finish("d", c, worst);
}

SeparationResult check_separation(const PointSequence& seq) {
    SeparationResult r;
    r.gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < seq.size(); ++i) {
        for (std::size_t j = i + 1; j < seq.size(); ++j) {
            const double b = hyperbolic_distance(seq[i], seq[j]);
            if (b < r.gap) r = {b, i, j};
        }
    }
    return r;
}

CarlesonResult check_carleson_33(const PointSequence& seq) {
    CarlesonResult best;
    auto consider = [&](const CarlesonBox& box, std::size_t owner) {
        double sum = 0.0;
        for (const auto& z : seq.points()) {
            if (box_contains(box, z)) sum += z.depth();
        }
        const double ratio = sum / box.side;
        if (ratio > best.constant) best = {ratio, box, owner};
    };
    consider(CarlesonBox{}, seq.size());
    for (std::size_t n = 0; n < seq.size(); ++n) {
        consider(CarlesonBox::over(seq[n], 1.0), n);
        consider(CarlesonBox::over(seq[n], 2.0), n);
    }
    return best;
}

ClassificationReport classify(const PointSequence& seq, const DensityConstants& c) {
    ClassificationReport r;
    r.label = seq.label();
    r.size = seq.size();
    r.constants = c;
    r.conditions = {check_condition_a(seq, c), check_condition_b(seq, c), check_condition_c(seq, c),
                    check_condition_d(seq, c)};
    r.separation = check_separation(seq);
    r.carleson = check_carleson_33(seq);
    return r;
}

double layer_spread_constant() { return 3.0 + 2.0 * std::log2(2.0 + kPi); }

DensityConstants a_to_b(const DensityConstants& a) { return {a.m_const * std::pow(4.0, a.alpha), a.alpha}; }

DensityConstants a_to_c(const DensityConstants& a) {
    return {a.m_const * std::exp2(a.alpha * (layer_spread_constant() + 1.0)), a.alpha};
}

DensityConstants a_to_d(const DensityConstants& a) {
    const double wider = 0.5 * (1.0 + a.alpha);
    return {a_to_c(a).m_const / (1.0 - std::exp2(a.alpha - wider)), wider};
}

double carleson_bound_from_a(const DensityConstants& a) {
    const double spread = 2.0 + 2.0 * std::log2(3.0 + 2.0 * kPi);
    return a.m_const * std::exp2(a.alpha * (spread + 2.0)) / (1.0 - std::exp2(a.alpha - 1.0));
}

}  // namespace hplus
