#pragma once

#include <cstdint>

#include "ehoi/rng.hpp"
#include "ehoi/scene.hpp"

namespace ehoi {

/// Samples one scene: objects rejection-placed on the table without
/// footprint overlap, an interaction drawn with p_interaction, an optional
/// second visible hand with p_two_hands. All randomness comes from streams
/// keyed only by (master_seed, iteration), so any call order — or none — of
/// other iterations yields the identical scene.
/// Throws PlacementFailure when rejection sampling exceeds its attempt cap.
SceneGraph sample_scene(const ScenarioConfig& config, std::uint64_t iteration);

/// Camera for one frame of an iteration. Frame 0 is the camera stored by
/// sample_scene; later frames re-jitter the view point.
CameraModel sample_camera(const ScenarioConfig& config, std::uint64_t iteration, int frame);

/// Draws a fresh grasp pose for `side` on `target`: side approach relative
/// to the camera, surface gap within kContactEpsilonMeters. Used both by
/// sample_scene and by the generation pipeline's visibility retries.
HandPrimitive place_grasp_hand(const ScenarioConfig& config, RngStream& rng, HandSide side,
                               const CuboidPrimitive& target, const CameraModel& camera);

/// Rotated-rectangle footprint of a cuboid on the table plane.
struct Footprint {
    double cx = 0.0, cy = 0.0;      // center
    double hx = 0.0, hy = 0.0;      // half extents
    double yaw = 0.0;
};

Footprint object_footprint(const CuboidPrimitive& cuboid);
Footprint hand_footprint(const HandPrimitive& hand);

/// Axis-aligned bounds of a rotated rectangle.
void footprint_aabb(const Footprint& f, double& x_min, double& y_min, double& x_max,
                    double& y_max);

/// Exact Euclidean distance between two rotated rectangles (0 when they
/// overlap or touch).
double rect_distance(const Footprint& a, const Footprint& b);

}  // namespace ehoi
