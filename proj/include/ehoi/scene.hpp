#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ehoi/annotation.hpp"
#include "ehoi/geometry.hpp"

namespace ehoi {

/// Per-axis allowed rotation interval, radians.
struct RotationLimits {
    double yaw_min = 0.0, yaw_max = 0.0;
    double pitch_min = 0.0, pitch_max = 0.0;
    double roll_min = 0.0, roll_max = 0.0;

    bool operator==(const RotationLimits&) const = default;
};

struct CuboidPrimitive {
    int instance_id = 0;
    int category_id = 0;
    Vec3 center;        // world frame, meters
    Vec3 half_extents;  // meters
    double yaw = 0.0, pitch = 0.0, roll = 0.0;
    RotationLimits limits;

    Mat3 rotation() const { return rotation_zyx(yaw, pitch, roll); }
    bool operator==(const CuboidPrimitive&) const = default;
};

/// Paddle-shaped hand proxy: 0.09 x 0.18 x 0.04 m, local +y is the long
/// (finger) axis, upright (yaw only).
struct HandPrimitive {
    int instance_id = 0;  // mask id, see kLeftHandMaskId / kRightHandMaskId
    HandSide side = HandSide::Left;
    Vec3 center;
    Vec3 half_extents{0.045, 0.09, 0.02};
    double yaw = 0.0;
    bool in_contact = false;
    std::optional<int> grasped_instance_id;

    Mat3 rotation() const { return rotation_zyx(yaw, 0.0, 0.0); }
    bool operator==(const HandPrimitive&) const = default;
};

inline constexpr int kLeftHandMaskId = 60000;
inline constexpr int kRightHandMaskId = 60001;

/// Required surface gap for a grasp: the hand is placed so its surface sits
/// within this distance of the grasped object (and never interpenetrates).
inline constexpr double kContactEpsilonMeters = 0.005;

/// Pinhole camera, no distortion. World z is up.
struct CameraModel {
    Vec3 position;
    Vec3 look_at;
    double vertical_fov = 1.0;  // radians
    int width = 0;
    int height = 0;

    bool operator==(const CameraModel&) const = default;
};

struct SceneGraph {
    std::vector<CuboidPrimitive> objects;
    std::vector<HandPrimitive> hands;
    CameraModel camera;
    double table_z = 0.0;
    int shirt_style = 0;  // recorded agent-appearance attribute

    bool operator==(const SceneGraph&) const = default;
};

/// Canonical cuboid geometry per category: half extents plus whether the
/// category is a plausible grasp target.
struct CategoryShape {
    Vec3 half_extents;
    bool graspable = false;
    RotationLimits limits{-3.14159265358979323846, 3.14159265358979323846, 0, 0, 0, 0};
};

const CategoryShape& category_shape(int category_id);
const std::vector<int>& graspable_categories();

/// Generation-run configuration. One scene is sampled per iteration;
/// frames within an iteration share the scene and differ in camera view.
struct ScenarioConfig {
    std::uint64_t iterations = 1;
    int frames_per_iteration = 1;
    std::uint64_t master_seed = 0;
    double p_interaction = 0.5;
    double p_two_hands = 0.5;
    double p_right_hand = 0.5;
    /// Fixed grasp-target category; absent means uniform over the graspable
    /// instances present in the scene.
    std::optional<int> target_category;
    int image_width = 320;
    int image_height = 240;
    int min_visible_pixels = 25;
    Split split = Split::Train;

    // Placement defaults; exposed so scenes can be customized.
    double table_half_x = 0.7;
    double table_half_y = 0.45;
    double table_z = 0.75;
    int min_objects = 4;
    int max_objects = 8;
};

/// Throws ConfigError naming the offending field.
void validate_config(const ScenarioConfig& config);

ScenarioConfig parse_scenario_config(std::string_view text);
ScenarioConfig load_scenario_config_file(const std::string& path);

}  // namespace ehoi
