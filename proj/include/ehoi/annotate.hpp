#pragma once

#include <string>

#include "ehoi/annotation.hpp"
#include "ehoi/raster.hpp"
#include "ehoi/scene.hpp"

namespace ehoi {

struct AnnotateOptions {
    /// Instances below this pixel count are treated as invisible and left
    /// out of the annotation.
    int min_visible_pixels = 25;
};

/// Tight pixel-grid bounding box of the mask pixels carrying instance_id:
/// (min_x, min_y, max_x + 1, max_y + 1), covering the pixel areas.
/// Returns an empty optional when no pixel carries the id.
std::optional<BBox2D> tight_mask_box(const MaskRaster& mask, int instance_id);

/// Derives the ground-truth frame annotation from a scene and its rendered
/// rasters. Boxes are the tight mask boxes; contact hands carry the offset
/// encoding of their grasped object's box. A contact hand whose object fell
/// below the visibility cutoff is recorded as a no-contact hand, keeping
/// the annotation referentially closed.
FrameAnnotation derive_annotations(const SceneGraph& scene, const DepthRaster& depth,
                                   const MaskRaster& mask, const std::string& frame_id,
                                   const AnnotateOptions& options = {});

}  // namespace ehoi
