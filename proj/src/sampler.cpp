#include "ehoi/sampler.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "ehoi/errors.hpp"
#include "ehoi/rng.hpp"

namespace ehoi {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Randomizer tags; the per-frame camera stream packs the frame index into
// the high bits.
constexpr std::uint32_t kTagPlacement = 1;
constexpr std::uint32_t kTagInteraction = 2;
constexpr std::uint32_t kTagSecondHand = 3;
constexpr std::uint32_t kTagPlayer = 4;
constexpr std::uint32_t kTagCamera = 5;
constexpr std::uint32_t kTagShirt = 6;

constexpr int kPlacementAttemptCap = 1000;

// Placed so the gap to the grasped object lands in (0, epsilon]; keeping a
// margin below epsilon leaves room for the bisection stopping error.
constexpr double kContactGapTarget = 0.8 * kContactEpsilonMeters;

RngStream stream_for(const ScenarioConfig& config, std::uint64_t iteration, std::uint32_t tag) {
    return RngStream(config.master_seed, static_cast<std::uint32_t>(iteration), tag);
}

struct Vec2 {
    double x = 0.0, y = 0.0;
};

std::array<Vec2, 4> rect_corners(const Footprint& f) {
    const double c = std::cos(f.yaw), s = std::sin(f.yaw);
    const Vec2 ux{c, s}, uy{-s, c};
    std::array<Vec2, 4> out;
    const std::array<std::pair<double, double>, 4> signs = {{{1, 1}, {1, -1}, {-1, -1}, {-1, 1}}};
    for (std::size_t i = 0; i < 4; ++i) {
        const double sx = signs[i].first * f.hx;
        const double sy = signs[i].second * f.hy;
        out[i] = {f.cx + ux.x * sx + uy.x * sy, f.cy + ux.y * sx + uy.y * sy};
    }
    return out;
}

double point_segment_distance(const Vec2& p, const Vec2& a, const Vec2& b) {
    const double abx = b.x - a.x, aby = b.y - a.y;
    const double len2 = abx * abx + aby * aby;
    double t = len2 > 0.0 ? ((p.x - a.x) * abx + (p.y - a.y) * aby) / len2 : 0.0;
    t = std::clamp(t, 0.0, 1.0);
    const double dx = p.x - (a.x + t * abx);
    const double dy = p.y - (a.y + t * aby);
    return std::sqrt(dx * dx + dy * dy);
}

// Separating-axis overlap test on the two rectangles' edge normals.
bool rects_overlap(const Footprint& a, const Footprint& b) {
    const auto ca = rect_corners(a);
    const auto cb = rect_corners(b);
    const std::array<Vec2, 4> axes = {{{std::cos(a.yaw), std::sin(a.yaw)},
                                       {-std::sin(a.yaw), std::cos(a.yaw)},
                                       {std::cos(b.yaw), std::sin(b.yaw)},
                                       {-std::sin(b.yaw), std::cos(b.yaw)}}};
    for (const Vec2& axis : axes) {
        double amin = 1e300, amax = -1e300, bmin = 1e300, bmax = -1e300;
        for (const Vec2& p : ca) {
            const double v = p.x * axis.x + p.y * axis.y;
            amin = std::min(amin, v);
            amax = std::max(amax, v);
        }
        for (const Vec2& p : cb) {
            const double v = p.x * axis.x + p.y * axis.y;
            bmin = std::min(bmin, v);
            bmax = std::max(bmax, v);
        }
        if (amax < bmin || bmax < amin) {
            return false;
        }
    }
    return true;
}

// Support radius of a rotated rectangle along a unit direction.
double rect_support(const Footprint& f, double dx, double dy) {
    const double c = std::cos(f.yaw), s = std::sin(f.yaw);
    return f.hx * std::abs(c * dx + s * dy) + f.hy * std::abs(-s * dx + c * dy);
}

bool aabb_overlaps(const Footprint& a, const Footprint& b) {
    double ax0, ay0, ax1, ay1, bx0, by0, bx1, by1;
    footprint_aabb(a, ax0, ay0, ax1, ay1);
    footprint_aabb(b, bx0, by0, bx1, by1);
    const double ix = std::min(ax1, bx1) - std::max(ax0, bx0);
    const double iy = std::min(ay1, by1) - std::max(ay0, by0);
    return ix > 0.0 && iy > 0.0;
}

// Base half extents of the footprint for yaw-only cuboids.
Footprint footprint_of(const Vec3& center, const Vec3& half_extents, double yaw) {
    return {center.x, center.y, half_extents.x, half_extents.y, yaw};
}

int pick_category(RngStream& rng, const std::vector<int>& pool) {
    return pool[static_cast<std::size_t>(rng.uniform_int(pool.size()))];
}

CuboidPrimitive place_object(const ScenarioConfig& config, RngStream& rng, int instance_id,
                             int category_id, const std::vector<CuboidPrimitive>& placed,
                             std::uint64_t iteration) {
    const CategoryShape& shape = category_shape(category_id);
    CuboidPrimitive obj;
    obj.instance_id = instance_id;
    obj.category_id = category_id;
    obj.half_extents = shape.half_extents;
    obj.limits = shape.limits;

    for (int attempt = 0; attempt < kPlacementAttemptCap; ++attempt) {
        obj.yaw = rng.uniform(shape.limits.yaw_min, shape.limits.yaw_max);
        obj.pitch = rng.uniform(shape.limits.pitch_min, shape.limits.pitch_max);
        obj.roll = rng.uniform(shape.limits.roll_min, shape.limits.roll_max);

        const Footprint trial{0, 0, obj.half_extents.x, obj.half_extents.y, obj.yaw};
        double x0, y0, x1, y1;
        footprint_aabb(trial, x0, y0, x1, y1);
        const double fx = x1, fy = y1;  // footprint is centered at origin
        if (fx >= config.table_half_x || fy >= config.table_half_y) {
            continue;  // cannot fit this orientation on the table at all
        }
        obj.center = {rng.uniform(-(config.table_half_x - fx), config.table_half_x - fx),
                      rng.uniform(-(config.table_half_y - fy), config.table_half_y - fy),
                      config.table_z + obj.half_extents.z};

        const Footprint footprint = object_footprint(obj);
        bool collides = false;
        for (const CuboidPrimitive& other : placed) {
            if (aabb_overlaps(footprint, object_footprint(other))) {
                collides = true;
                break;
            }
        }
        if (!collides) {
            return obj;
        }
    }
    throw PlacementFailure("object placement exceeded " +
                               std::to_string(kPlacementAttemptCap) +
                               " attempts (table too crowded) at iteration " +
                               std::to_string(iteration),
                           iteration);
}

// Slides the hand toward the object along the approach direction until the
// exact footprint gap reaches kContactGapTarget. Monotone, so bisection.
Vec2 grasp_position(const Footprint& object, const Footprint& hand_shape, double dir_x,
                    double dir_y) {
    auto gap_at = [&](double t) {
        Footprint hand = hand_shape;
        hand.cx = object.cx + dir_x * t;
        hand.cy = object.cy + dir_y * t;
        return rect_distance(object, hand);
    };
    double hi = rect_support(object, dir_x, dir_y) + rect_support(hand_shape, dir_x, dir_y) +
                kContactGapTarget;
    double lo = 0.0;
    for (int i = 0; i < 60; ++i) {
        const double mid = 0.5 * (lo + hi);
        (gap_at(mid) >= kContactGapTarget ? hi : lo) = mid;
    }
    return {object.cx + dir_x * hi, object.cy + dir_y * hi};
}

HandPrimitive make_hover_hand(const ScenarioConfig& config, RngStream& rng, HandSide side) {
    HandPrimitive hand;
    hand.side = side;
    hand.instance_id = side == HandSide::Left ? kLeftHandMaskId : kRightHandMaskId;
    hand.center = {rng.uniform(-config.table_half_x, config.table_half_x),
                   rng.uniform(-config.table_half_y, config.table_half_y),
                   config.table_z + rng.uniform(0.06, 0.16)};
    hand.yaw = rng.uniform(-kPi, kPi);
    hand.in_contact = false;
    return hand;
}

HandPrimitive grasp_hand_impl(const ScenarioConfig& config, RngStream& rng, HandSide side,
                              const CuboidPrimitive& target, const CameraModel& camera) {
    HandPrimitive hand;
    hand.side = side;
    hand.instance_id = side == HandSide::Left ? kLeftHandMaskId : kRightHandMaskId;
    hand.in_contact = true;
    hand.grasped_instance_id = target.instance_id;

    // Approach roughly from the camera's side so the hand occludes the
    // object the way a first-person grasp does.
    double ax = camera.position.x - target.center.x;
    double ay = camera.position.y - target.center.y;
    const double norm = std::sqrt(ax * ax + ay * ay);
    if (norm < 1e-9) {
        ax = 0.0;
        ay = -1.0;
    } else {
        ax /= norm;
        ay /= norm;
    }
    // Grasps come in from the side, 25..75 degrees off the viewing axis;
    // a dead-frontal hand would hide small objects completely.
    const double side_sign = rng.bernoulli(0.5) ? 1.0 : -1.0;
    const double jitter = side_sign * rng.uniform(0.45, 1.3);
    const double c = std::cos(jitter), s = std::sin(jitter);
    const double dx = c * ax - s * ay;
    const double dy = s * ax + c * ay;

    // Long axis (+y local) points at the object, with some wrist twist.
    hand.yaw = std::atan2(dx, -dy) + rng.uniform(-0.5, 0.5);

    const Footprint object_fp = object_footprint(target);
    Footprint hand_fp{0, 0, hand.half_extents.x, hand.half_extents.y, hand.yaw};
    const Vec2 pos = grasp_position(object_fp, hand_fp, dx, dy);
    hand.center = {pos.x, pos.y,
                   std::max(target.center.z, config.table_z + hand.half_extents.z)};
    return hand;
}

}  // namespace

Footprint object_footprint(const CuboidPrimitive& cuboid) {
    return footprint_of(cuboid.center, cuboid.half_extents, cuboid.yaw);
}

Footprint hand_footprint(const HandPrimitive& hand) {
    return footprint_of(hand.center, hand.half_extents, hand.yaw);
}

void footprint_aabb(const Footprint& f, double& x_min, double& y_min, double& x_max,
                    double& y_max) {
    const auto corners = rect_corners(f);
    x_min = y_min = 1e300;
    x_max = y_max = -1e300;
    for (const Vec2& p : corners) {
        x_min = std::min(x_min, p.x);
        x_max = std::max(x_max, p.x);
        y_min = std::min(y_min, p.y);
        y_max = std::max(y_max, p.y);
    }
}

double rect_distance(const Footprint& a, const Footprint& b) {
    if (rects_overlap(a, b)) {
        return 0.0;
    }
    const auto ca = rect_corners(a);
    const auto cb = rect_corners(b);
    double best = 1e300;
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            best = std::min(best, point_segment_distance(ca[i], cb[j], cb[(j + 1) % 4]));
            best = std::min(best, point_segment_distance(cb[i], ca[j], ca[(j + 1) % 4]));
        }
    }
    return best;
}

HandPrimitive place_grasp_hand(const ScenarioConfig& config, RngStream& rng, HandSide side,
                               const CuboidPrimitive& target, const CameraModel& camera) {
    return grasp_hand_impl(config, rng, side, target, camera);
}

CameraModel sample_camera(const ScenarioConfig& config, std::uint64_t iteration, int frame) {
    RngStream player = stream_for(config, iteration, kTagPlayer);
    CameraModel camera;
    camera.width = config.image_width;
    camera.height = config.image_height;
    // Operator at the bench edge, head above the table looking down at the
    // work area (steep first-person view).
    camera.position = {player.uniform(-0.25, 0.25),
                       -(config.table_half_y + player.uniform(0.2, 0.4)),
                       config.table_z + player.uniform(0.55, 0.85)};

    RngStream view = stream_for(config, iteration,
                                kTagCamera | (static_cast<std::uint32_t>(frame) << 8));
    camera.look_at = {view.uniform(-0.15, 0.15), view.uniform(-0.18, 0.10), config.table_z};
    camera.vertical_fov = (56.0 + view.uniform(0.0, 14.0)) * kPi / 180.0;
    return camera;
}

SceneGraph sample_scene(const ScenarioConfig& config, std::uint64_t iteration) {
    validate_config(config);

    SceneGraph scene;
    scene.table_z = config.table_z;
    scene.camera = sample_camera(config, iteration, 0);

    // SurfaceObjectPlacementRandomizer + CustomRotationRandomizer.
    RngStream placement = stream_for(config, iteration, kTagPlacement);
    const int n_objects =
        config.min_objects +
        static_cast<int>(placement.uniform_int(
            static_cast<std::uint64_t>(config.max_objects - config.min_objects) + 1));

    // Scenes hold at most one instance per category (partial Fisher-Yates
    // over the category ids).
    std::vector<int> deck(kCategoryCount);
    for (int id = 0; id < kCategoryCount; ++id) {
        deck[static_cast<std::size_t>(id)] = id;
    }
    for (int i = 0; i < n_objects; ++i) {
        const std::size_t j =
            static_cast<std::size_t>(i) +
            static_cast<std::size_t>(placement.uniform_int(deck.size() - static_cast<std::size_t>(i)));
        std::swap(deck[static_cast<std::size_t>(i)], deck[j]);
    }
    std::vector<int> categories(deck.begin(), deck.begin() + n_objects);
    // The grasp target pool must never be empty: force one instance of the
    // fixed target category, or one graspable instance, into slot 0.
    if (config.target_category) {
        if (std::find(categories.begin(), categories.end(), *config.target_category) ==
            categories.end()) {
            categories[0] = *config.target_category;
        }
    } else {
        const bool any = std::any_of(categories.begin(), categories.end(), [&](int c) {
            return category_shape(c).graspable;
        });
        if (!any) {
            categories[0] = pick_category(placement, graspable_categories());
        }
    }

    // Largest footprints go first; small items fill the remaining space,
    // which keeps rejection sampling away from its attempt cap.
    std::vector<int> place_order(categories.size());
    for (std::size_t i = 0; i < place_order.size(); ++i) {
        place_order[i] = static_cast<int>(i);
    }
    std::stable_sort(place_order.begin(), place_order.end(), [&](int a, int b) {
        const Vec3& ha = category_shape(categories[static_cast<std::size_t>(a)]).half_extents;
        const Vec3& hb = category_shape(categories[static_cast<std::size_t>(b)]).half_extents;
        return ha.x * ha.y > hb.x * hb.y;
    });
    for (int i = 0; i < n_objects; ++i) {
        const int slot = place_order[static_cast<std::size_t>(i)];
        scene.objects.push_back(place_object(config, placement, i + 1,
                                             categories[static_cast<std::size_t>(slot)],
                                             scene.objects, iteration));
    }

    // Scenario extensions: interaction, target, side, second hand.
    RngStream interaction = stream_for(config, iteration, kTagInteraction);
    const bool contact = interaction.bernoulli(config.p_interaction);
    const HandSide primary_side =
        interaction.bernoulli(config.p_right_hand) ? HandSide::Right : HandSide::Left;

    if (contact) {
        std::vector<std::size_t> pool;
        for (std::size_t i = 0; i < scene.objects.size(); ++i) {
            const bool eligible = config.target_category
                                      ? scene.objects[i].category_id == *config.target_category
                                      : category_shape(scene.objects[i].category_id).graspable;
            if (eligible) {
                pool.push_back(i);
            }
        }
        const std::size_t pick = pool[static_cast<std::size_t>(interaction.uniform_int(pool.size()))];
        scene.hands.push_back(place_grasp_hand(config, interaction, primary_side,
                                               scene.objects[pick], scene.camera));
    } else {
        scene.hands.push_back(make_hover_hand(config, interaction, primary_side));
    }

    RngStream second = stream_for(config, iteration, kTagSecondHand);
    if (second.bernoulli(config.p_two_hands)) {
        const HandSide other =
            primary_side == HandSide::Left ? HandSide::Right : HandSide::Left;
        scene.hands.push_back(make_hover_hand(config, second, other));
    }

    RngStream shirt = stream_for(config, iteration, kTagShirt);
    scene.shirt_style = static_cast<int>(shirt.uniform_int(10));
    return scene;
}

}  // namespace ehoi
