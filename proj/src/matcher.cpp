#include "ehoi/matcher.hpp"

#include <cmath>

namespace ehoi {

namespace {

double image_diagonal(int width, int height) {
    return std::sqrt(static_cast<double>(width) * width +
                     static_cast<double>(height) * height);
}

}  // namespace

OffsetVector encode_offset(const BBox2D& hand_box, const BBox2D& object_box, int image_width,
                           int image_height) {
    const double dx = object_box.center_x() - hand_box.center_x();
    const double dy = object_box.center_y() - hand_box.center_y();
    const double dist = std::sqrt(dx * dx + dy * dy);
    if (dist == 0.0) {
        return {0.0, 0.0, 0.0};
    }
    return {dx / dist, dy / dist, dist / image_diagonal(image_width, image_height)};
}

InteractionPoint interaction_point(const BBox2D& hand_box, const OffsetVector& offset,
                                   int image_width, int image_height) {
    const double step = offset.m * image_diagonal(image_width, image_height);
    return {hand_box.center_x() + offset.vx * step, hand_box.center_y() + offset.vy * step};
}

std::vector<EhoiTriplet> match_active_objects(const std::vector<MatchableHand>& hands,
                                              const std::vector<ObjectInstance>& objects,
                                              int image_width, int image_height,
                                              const MatcherOptions& options) {
    std::vector<EhoiTriplet> out;
    out.reserve(hands.size());
    for (std::size_t h = 0; h < hands.size(); ++h) {
        const MatchableHand& hand = hands[h];
        EhoiTriplet triplet{h, hand.contact_state, std::nullopt};
        if (hand.contact_state == ContactState::InContact) {
            const OffsetVector offset = hand.offset.value_or(OffsetVector{});
            const InteractionPoint p =
                interaction_point(hand.box, offset, image_width, image_height);
            std::optional<std::size_t> best;
            double best_dist2 = 0.0;
            for (std::size_t i = 0; i < objects.size(); ++i) {
                if (options.min_object_score && objects[i].score < *options.min_object_score) {
                    continue;
                }
                const double dx = objects[i].box.center_x() - p.x;
                const double dy = objects[i].box.center_y() - p.y;
                const double d2 = dx * dx + dy * dy;
                const bool closer =
                    !best || d2 < best_dist2 ||
                    (d2 == best_dist2 && objects[i].instance_id < objects[*best].instance_id);
                if (closer) {
                    best = i;
                    best_dist2 = d2;
                }
            }
            triplet.active_object_index = best;
        }
        out.push_back(triplet);
    }
    return out;
}

}  // namespace ehoi
