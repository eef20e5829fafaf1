#pragma once

#include "ehoi/raster.hpp"
#include "ehoi/scene.hpp"

namespace ehoi {

struct RenderOutput {
    DepthRaster depth;
    MaskRaster mask;
};

/// One renderable cuboid: scene objects and hand proxies alike.
struct RenderInstance {
    int instance_id = 0;
    Vec3 center;
    Vec3 half_extents;
    Mat3 rotation;
};

std::vector<RenderInstance> render_instances(const SceneGraph& scene);

/// Distance along the unit-direction ray to the cuboid surface (slab test
/// in the cuboid's local frame), or +inf on a miss. Rays starting inside
/// hit the exit face.
double ray_cuboid_distance(const Vec3& origin, const Vec3& direction,
                           const RenderInstance& cuboid);

/// Unit-length world ray through the center of pixel (px, py).
Vec3 pixel_ray(const CameraModel& camera, int px, int py);

/// Renders per-pixel nearest-hit depth (meters along the ray, 0 = no hit)
/// and instance-id masks. Rows run in parallel; every pixel is independent,
/// so the output is identical for any thread count.
/// Throws DegenerateCamera for an unusable camera.
RenderOutput render(const SceneGraph& scene);

namespace reference {

/// Serial per-pixel nearest-hit renderer kept as the check for the
/// parallel path; results must match it bit for bit.
RenderOutput render(const SceneGraph& scene);

/// Ray-cuboid distance by clipping the ray against the six face
/// half-spaces in world coordinates. Independent formulation used by the
/// analytic depth checks.
double ray_cuboid_distance_clip(const Vec3& origin, const Vec3& direction,
                                const RenderInstance& cuboid);

}  // namespace reference

}  // namespace ehoi
