#include "ehoi/dataset_check.hpp"

#include <cmath>
#include <filesystem>
#include <set>

#include "ehoi/annotate.hpp"
#include "ehoi/errors.hpp"
#include "ehoi/raster.hpp"
#include "ehoi/render.hpp"
#include "ehoi/sampler.hpp"
#include "ehoi/scene_io.hpp"

namespace ehoi {

namespace fs = std::filesystem;

namespace {

struct FrameChecker {
    const DeepCheckOptions& options;
    const FrameAnnotation& frame;
    const SceneGraph* scene;  // null when no scenes.json was found
    std::vector<Violation>& out;

    void violation(const std::string& rule, const std::string& detail) {
        out.push_back({rule, "frame " + frame.frame_id + (detail.empty() ? "" : " " + detail)});
    }

    void check_boxes(const MaskRaster& mask) {
        for (std::size_t i = 0; i < frame.objects.size(); ++i) {
            const auto tight = tight_mask_box(mask, frame.objects[i].instance_id);
            if (!tight || !(*tight == frame.objects[i].box)) {
                violation("BBOX_TIGHTNESS", "object " + std::to_string(i));
            }
        }
        for (std::size_t i = 0; i < frame.hands.size(); ++i) {
            const int mask_id =
                frame.hands[i].side == HandSide::Left ? kLeftHandMaskId : kRightHandMaskId;
            const auto tight = tight_mask_box(mask, mask_id);
            if (!tight || !(*tight == frame.hands[i].box)) {
                violation("BBOX_TIGHTNESS", "hand " + std::to_string(i));
            }
        }
    }

    void check_mask_ids(const MaskRaster& mask) {
        std::set<int> known;
        if (scene) {
            for (const auto& obj : scene->objects) {
                known.insert(obj.instance_id);
            }
            for (const auto& hand : scene->hands) {
                known.insert(hand.instance_id);
            }
        } else {
            for (const auto& obj : frame.objects) {
                known.insert(obj.instance_id);
            }
            known.insert(kLeftHandMaskId);
            known.insert(kRightHandMaskId);
        }
        std::set<int> unknown;
        for (std::uint16_t id : mask.values) {
            if (id != 0 && !known.count(id)) {
                unknown.insert(id);
            }
        }
        for (int id : unknown) {
            violation("MASK_INSTANCE", "unknown instance id " + std::to_string(id));
        }
    }

    void check_depth(const DepthRaster& depth, const MaskRaster& mask) {
        if (!scene) {
            return;
        }
        const std::vector<RenderInstance> instances = render_instances(*scene);
        std::map<int, const RenderInstance*> by_id;
        for (const RenderInstance& inst : instances) {
            by_id[inst.instance_id] = &inst;
        }
        int bad_pixels = 0;
        double worst = 0.0;
        for (int y = 0; y < mask.height && bad_pixels < 1000000; ++y) {
            for (int x = 0; x < mask.width; ++x) {
                const int id = mask.at(x, y);
                const double stored = depth.at(x, y);
                if (id == 0) {
                    if (stored != 0.0) {
                        ++bad_pixels;
                        worst = std::max(worst, stored);
                    }
                    continue;
                }
                const auto it = by_id.find(id);
                if (it == by_id.end()) {
                    continue;  // reported by check_mask_ids
                }
                const Vec3 ray = pixel_ray(scene->camera, x, y);
                const double analytic =
                    reference::ray_cuboid_distance_clip(scene->camera.position, ray, *it->second);
                if (!(std::abs(analytic - stored) <= options.depth_tolerance)) {
                    ++bad_pixels;
                    worst = std::max(worst, std::abs(analytic - stored));
                }
            }
        }
        if (bad_pixels > 0) {
            violation("DEPTH_ANALYTIC", std::to_string(bad_pixels) +
                                            " pixels off (worst " + std::to_string(worst) + " m)");
        }
    }

    void check_scene_invariants() {
        if (!scene) {
            return;
        }
        for (std::size_t i = 0; i < scene->objects.size(); ++i) {
            for (std::size_t j = i + 1; j < scene->objects.size(); ++j) {
                double ax0, ay0, ax1, ay1, bx0, by0, bx1, by1;
                footprint_aabb(object_footprint(scene->objects[i]), ax0, ay0, ax1, ay1);
                footprint_aabb(object_footprint(scene->objects[j]), bx0, by0, bx1, by1);
                const double ix = std::min(ax1, bx1) - std::max(ax0, bx0);
                const double iy = std::min(ay1, by1) - std::max(ay0, by0);
                if (ix > 0.0 && iy > 0.0) {
                    violation("FOOTPRINT_OVERLAP",
                              "objects " + std::to_string(i) + "," + std::to_string(j));
                }
            }
            const CuboidPrimitive& o = scene->objects[i];
            const bool in_limits = o.yaw >= o.limits.yaw_min && o.yaw <= o.limits.yaw_max &&
                                   o.pitch >= o.limits.pitch_min && o.pitch <= o.limits.pitch_max &&
                                   o.roll >= o.limits.roll_min && o.roll <= o.limits.roll_max;
            if (!in_limits) {
                violation("ROTATION_LIMITS", "object " + std::to_string(i));
            }
        }
        for (const HandPrimitive& hand : scene->hands) {
            if (!hand.in_contact) {
                continue;
            }
            const CuboidPrimitive* target = nullptr;
            for (const auto& obj : scene->objects) {
                if (hand.grasped_instance_id && obj.instance_id == *hand.grasped_instance_id) {
                    target = &obj;
                }
            }
            if (!target) {
                violation("CONTACT_GAP", "grasped instance missing");
                continue;
            }
            const double d_xy = rect_distance(hand_footprint(hand), object_footprint(*target));
            const double z_gap =
                std::max(0.0, std::abs(hand.center.z - target->center.z) -
                                  (hand.half_extents.z + target->half_extents.z));
            const double gap = std::sqrt(d_xy * d_xy + z_gap * z_gap);
            if (!(gap > 0.0 && gap <= kContactEpsilonMeters)) {
                violation("CONTACT_GAP", "gap " + std::to_string(gap) + " m");
            }
        }
    }
};

}  // namespace

std::vector<Violation> deep_check_dataset(const DatasetIndex& index,
                                          const std::string& dataset_dir,
                                          const DeepCheckOptions& options) {
    SceneMap scenes;
    const fs::path scene_path = fs::path(dataset_dir) / "scenes.json";
    if (fs::exists(scene_path)) {
        scenes = load_scenes_file(scene_path.string());
    }

    std::vector<std::vector<Violation>> per_frame(index.frames.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(index.frames.size()); ++i) {
        const FrameAnnotation& frame = index.frames[static_cast<std::size_t>(i)];
        std::vector<Violation>& sink = per_frame[static_cast<std::size_t>(i)];

        const SceneGraph* scene = nullptr;
        if (!scenes.empty()) {
            const auto it = scenes.find(frame.frame_id);
            if (it == scenes.end()) {
                sink.push_back({"SCENE_MISSING", "frame " + frame.frame_id});
            } else {
                scene = &it->second;
            }
        }
        FrameChecker checker{options, frame, scene, sink};

        std::optional<MaskRaster> mask;
        if (frame.mask_path) {
            try {
                mask = read_mask_raster((fs::path(dataset_dir) / *frame.mask_path).string());
                if (mask->width != frame.width || mask->height != frame.height) {
                    checker.violation("RASTER_DIMS", "mask " + *frame.mask_path);
                    mask.reset();
                }
            } catch (const RasterFormatError&) {
                checker.violation("MASK_FORMAT", *frame.mask_path);
            } catch (const IoFailure&) {
                checker.violation("MASK_FORMAT", *frame.mask_path + " unreadable");
            }
        }
        std::optional<DepthRaster> depth;
        if (frame.depth_path) {
            try {
                depth = read_depth_raster((fs::path(dataset_dir) / *frame.depth_path).string());
                if (depth->width != frame.width || depth->height != frame.height) {
                    checker.violation("RASTER_DIMS", "depth " + *frame.depth_path);
                    depth.reset();
                }
            } catch (const RasterFormatError&) {
                checker.violation("DEPTH_FORMAT", *frame.depth_path);
            } catch (const IoFailure&) {
                checker.violation("DEPTH_FORMAT", *frame.depth_path + " unreadable");
            }
        }

        if (mask) {
            checker.check_boxes(*mask);
            checker.check_mask_ids(*mask);
        }
        if (mask && depth) {
            checker.check_depth(*depth, *mask);
        }
        checker.check_scene_invariants();
    }

    std::vector<Violation> out;
    for (auto& chunk : per_frame) {
        out.insert(out.end(), std::make_move_iterator(chunk.begin()),
                   std::make_move_iterator(chunk.end()));
    }
    return out;
}

}  // namespace ehoi
