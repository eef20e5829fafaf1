#pragma once

#include <string>
#include <vector>

#include "ehoi/annotation.hpp"

namespace ehoi {

struct DeepCheckOptions {
    /// Allowed difference between stored depth and the analytically
    /// recomputed ray-cuboid distance, meters.
    double depth_tolerance = 1e-4;
};

/// Cross-checks a dataset directory against its rasters and, when a
/// scenes.json is present, against the scene graphs themselves: box
/// tightness, analytic depth, mask/instance coherence, footprint and
/// contact invariants. Violations come back in frame order.
std::vector<Violation> deep_check_dataset(const DatasetIndex& index,
                                          const std::string& dataset_dir,
                                          const DeepCheckOptions& options = {});

}  // namespace ehoi
