#pragma once

#include <string>
#include <vector>

#include "hplus/density_classifier.hpp"

namespace hplus {

inline constexpr std::size_t kGalleryPointCap = 10000;

/// Points 1 - 2^{-j} on the positive axis, j = 1..depth.
PointSequence radial_geometric(int depth);

/// spread^j equally spaced points at 1 - |z| = 2^{-j} for j = 1..depth.
/// Throws InputError above kGalleryPointCap points.
PointSequence dyadic_lattice(int depth, int spread);

struct CounterexamplePair {
    PointSequence z1;         // the radii r_k
    PointSequence z2;         // 2^{n_k} points on the hyperbolic circle of radius n_k about r_k
    PointSequence combined;   // z1 followed by z2
    std::vector<int> radii;   // n_k = 2k
    std::vector<double> base_distance;  // beta(0, r_k)
};

/// n_k = 2k and beta(r_k, r_{k+1}) = 8(k + 1) + 2 n_{k+1}, with r_1 = 0.
/// Throws InputError unless 1 <= levels and 2^{n_levels} <= kGalleryPointCap.
CounterexamplePair counterexample_pair(int levels);

/// `count` points on the hyperbolic circle of radius `radius` about `center`,
/// equally spaced in the picture where the center sits at the origin.
std::vector<DiscPoint> hyperbolic_circle(const DiscPoint& center, double radius, int count);

/// A fixed library of 30 labelled sequences from the generators above.
std::vector<PointSequence> gallery_library();

/// Generator names accepted by make_gallery.
std::vector<std::string> gallery_names();

}  // namespace hplus
