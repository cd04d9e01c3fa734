#include "hplus/sequence_gallery.hpp"

#include <cmath>
#include <string>

#include "hplus/errors.hpp"

namespace hplus {

PointSequence radial_geometric(int depth) {
    if (depth < 1) throw InputError("depth must be at least 1");
    std::vector<DiscPoint> pts;
    for (int j = 1; j <= depth; ++j) pts.push_back(DiscPoint::from_depth(0.0, std::ldexp(1.0, -j)));
    return {"radial_geometric(" + std::to_string(depth) + ")", pts};
}

PointSequence dyadic_lattice(int depth, int spread) {
    if (depth < 1 || spread < 1) throw InputError("depth and spread must be at least 1");
    double total = 0.0;
    for (int j = 1; j <= depth; ++j) total += std::pow(static_cast<double>(spread), j);
    if (total > static_cast<double>(kGalleryPointCap)) {
        throw InputError("dyadic lattice would hold more than " + std::to_string(kGalleryPointCap) + " points");
    }
    std::vector<DiscPoint> pts;
    long per_level = 1;
    for (int j = 1; j <= depth; ++j) {
        per_level *= spread;
        for (long i = 0; i < per_level; ++i) {
            pts.push_back(DiscPoint::from_depth(wrap_angle(kTwoPi * static_cast<double>(i) / per_level),
                                                std::ldexp(1.0, -j)));
        }
    }
    return {"dyadic_lattice(" + std::to_string(depth) + "," + std::to_string(spread) + ")", pts};
}

std::vector<DiscPoint> hyperbolic_circle(const DiscPoint& center, double radius, int count) {
    const Automorphism back = mobius_to_origin(center).inverse();
    const double depth = metric_from_beta(radius).one_minus_rho;
    std::vector<DiscPoint> out;
    for (int i = 0; i < count; ++i) {
        out.push_back(back.apply(DiscPoint::from_depth(wrap_angle(kTwoPi * i / count), depth)));
    }
    return out;
}

CounterexamplePair counterexample_pair(int levels) {
    if (levels < 1) throw InputError("levels must be at least 1");
    if (2 * levels >= 31 || (1L << (2 * levels)) > static_cast<long>(kGalleryPointCap)) {
        throw InputError("2^{n_levels} exceeds " + std::to_string(kGalleryPointCap) + " points");
    }
    CounterexamplePair out;
    std::vector<DiscPoint> z1, z2;
    double b = 0.0;
    for (int k = 1; k <= levels; ++k) {
        const int n_k = 2 * k;
        const DiscPoint r = k == 1 ? DiscPoint() : DiscPoint::from_depth(0.0, metric_from_beta(b).one_minus_rho);
        out.radii.push_back(n_k);
        out.base_distance.push_back(b);
        z1.push_back(r);
        const auto ring = hyperbolic_circle(r, n_k, 1 << n_k);
        z2.insert(z2.end(), ring.begin(), ring.end());
        b += 8.0 * (k + 1) + 2.0 * (n_k + 2);
    }
    const std::string tag = "(" + std::to_string(levels) + ")";
    out.z1 = PointSequence("counterexample_z1" + tag, z1);
    out.z2 = PointSequence("counterexample_z2" + tag, z2);
    std::vector<DiscPoint> both = z1;
    both.insert(both.end(), z2.begin(), z2.end());
    out.combined = PointSequence("counterexample_union" + tag, both);
    return out;
}

std::vector<PointSequence> gallery_library() {
    std::vector<PointSequence> out;
    for (int d : {1, 2, 3, 4, 5, 6, 8, 10, 12}) out.push_back(radial_geometric(d));
    for (int d : {1, 4, 8, 12}) out.push_back(dyadic_lattice(d, 1));
    for (int d : {1, 3, 5, 7, 9}) out.push_back(dyadic_lattice(d, 2));
    for (int d : {1, 3, 5}) out.push_back(dyadic_lattice(d, 3));
    for (int l : {1, 2, 3, 4}) {
        auto pair = counterexample_pair(l);
        if (l > 1) out.push_back(pair.z1);
        out.push_back(pair.z2);
        if (l <= 2) out.push_back(pair.combined);
    }
    return out;
}

std::vector<std::string> gallery_names() { return {"radial", "lattice", "counterexample"}; }

}  // namespace hplus
