#include "ehoi/annotate.hpp"

#include <map>

#include "ehoi/matcher.hpp"

namespace ehoi {

namespace {

struct PixelExtent {
    int min_x = 0, min_y = 0, max_x = 0, max_y = 0;
    int count = 0;
};

std::map<int, PixelExtent> scan_mask(const MaskRaster& mask) {
    std::map<int, PixelExtent> extents;
    for (int y = 0; y < mask.height; ++y) {
        for (int x = 0; x < mask.width; ++x) {
            const int id = mask.at(x, y);
            if (id == 0) {
                continue;
            }
            auto [it, inserted] = extents.try_emplace(id, PixelExtent{x, y, x, y, 0});
            PixelExtent& e = it->second;
            if (!inserted) {
                e.min_x = std::min(e.min_x, x);
                e.min_y = std::min(e.min_y, y);
                e.max_x = std::max(e.max_x, x);
                e.max_y = std::max(e.max_y, y);
            }
            ++e.count;
        }
    }
    return extents;
}

BBox2D extent_box(const PixelExtent& e) {
    return {static_cast<double>(e.min_x), static_cast<double>(e.min_y),
            static_cast<double>(e.max_x + 1), static_cast<double>(e.max_y + 1)};
}

}  // namespace

std::optional<BBox2D> tight_mask_box(const MaskRaster& mask, int instance_id) {
    std::optional<PixelExtent> found;
    for (int y = 0; y < mask.height; ++y) {
        for (int x = 0; x < mask.width; ++x) {
            if (mask.at(x, y) != instance_id) {
                continue;
            }
            if (!found) {
                found = PixelExtent{x, y, x, y, 1};
            } else {
                found->min_x = std::min(found->min_x, x);
                found->min_y = std::min(found->min_y, y);
                found->max_x = std::max(found->max_x, x);
                found->max_y = std::max(found->max_y, y);
            }
        }
    }
    if (!found) {
        return std::nullopt;
    }
    return extent_box(*found);
}

FrameAnnotation derive_annotations(const SceneGraph& scene, const DepthRaster& depth,
                                   const MaskRaster& mask, const std::string& frame_id,
                                   const AnnotateOptions& options) {
    (void)depth;
    FrameAnnotation frame;
    frame.frame_id = frame_id;
    frame.width = mask.width;
    frame.height = mask.height;

    const std::map<int, PixelExtent> extents = scan_mask(mask);
    auto visible = [&](int id) -> const PixelExtent* {
        const auto it = extents.find(id);
        if (it == extents.end() || it->second.count < options.min_visible_pixels) {
            return nullptr;
        }
        return &it->second;
    };

    for (const CuboidPrimitive& obj : scene.objects) {
        if (const PixelExtent* e = visible(obj.instance_id)) {
            frame.objects.push_back({obj.instance_id, extent_box(*e), obj.category_id, 1.0});
        }
    }

    for (const HandPrimitive& hand : scene.hands) {
        const PixelExtent* e = visible(hand.instance_id);
        if (!e) {
            continue;
        }
        HandInstance annotated;
        annotated.box = extent_box(*e);
        annotated.side = hand.side;
        annotated.score = 1.0;

        const ObjectInstance* grasped = nullptr;
        if (hand.in_contact && hand.grasped_instance_id.has_value()) {
            grasped = frame.find_object(*hand.grasped_instance_id);
        }
        if (grasped) {
            annotated.contact_state = ContactState::InContact;
            annotated.offset =
                encode_offset(annotated.box, grasped->box, frame.width, frame.height);
            annotated.active_object_id = grasped->instance_id;
        } else {
            annotated.contact_state = ContactState::NoContact;
        }
        frame.hands.push_back(std::move(annotated));
    }
    return frame;
}

}  // namespace ehoi
