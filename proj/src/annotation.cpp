#include "ehoi/annotation.hpp"

#include <cmath>
#include <set>

namespace ehoi {

namespace {

std::string hand_entity(const FrameAnnotation& f, std::size_t i) {
    return "frame " + f.frame_id + " hand " + std::to_string(i);
}

std::string object_entity(const FrameAnnotation& f, std::size_t i) {
    return "frame " + f.frame_id + " object " + std::to_string(i);
}

bool box_in_bounds(const BBox2D& b, double w, double h) {
    return b.valid() && b.x_min >= 0.0 && b.y_min >= 0.0 && b.x_max <= w && b.y_max <= h;
}

}  // namespace

std::vector<CategoryEntry> canonical_categories() {
    std::vector<CategoryEntry> out;
    out.reserve(kCategoryCount);
    for (const auto& c : category_table()) {
        out.push_back({c.id, std::string(c.name)});
    }
    return out;
}

const ObjectInstance* FrameAnnotation::find_object(int instance_id) const {
    for (const auto& o : objects) {
        if (o.instance_id == instance_id) {
            return &o;
        }
    }
    return nullptr;
}

DatasetStats& DatasetStats::operator+=(const DatasetStats& o) {
    n_images += o.n_images;
    n_hands += o.n_hands;
    n_ehois += o.n_ehois;
    n_left += o.n_left;
    n_right += o.n_right;
    n_objects += o.n_objects;
    return *this;
}

std::vector<Violation> validate_frame(const FrameAnnotation& frame) {
    std::vector<Violation> out;
    const double w = frame.width;
    const double h = frame.height;

    int n_left = 0, n_right = 0;
    for (std::size_t i = 0; i < frame.hands.size(); ++i) {
        const HandInstance& hand = frame.hands[i];
        (hand.side == HandSide::Left ? n_left : n_right) += 1;

        if (!box_in_bounds(hand.box, w, h)) {
            out.push_back({"BoundsViolation", hand_entity(frame, i)});
        }
        if (hand.contact_state == ContactState::NoContact &&
            (hand.offset.has_value() || hand.active_object_id.has_value())) {
            out.push_back({"ContactConsistency", hand_entity(frame, i)});
        }
        if (hand.contact_state == ContactState::InContact && !hand.active_object_id.has_value()) {
            out.push_back({"ContactConsistency", hand_entity(frame, i)});
        }
        if (hand.active_object_id.has_value() && !frame.find_object(*hand.active_object_id)) {
            out.push_back({"ReferentialIntegrity", hand_entity(frame, i)});
        }
        if (hand.offset.has_value()) {
            const OffsetVector& v = *hand.offset;
            const double norm2 = v.vx * v.vx + v.vy * v.vy;
            const bool ok = std::isfinite(norm2) && v.m >= 0.0 &&
                            (v.m > 0.0 ? std::abs(norm2 - 1.0) <= 1e-6 : norm2 == 0.0);
            if (!ok) {
                out.push_back({"OffsetNorm", hand_entity(frame, i)});
            }
        }
        if (!(hand.score >= 0.0 && hand.score <= 1.0)) {
            out.push_back({"ScoreRange", hand_entity(frame, i)});
        }
    }
    if (n_left > 1 || n_right > 1) {
        out.push_back({"SideUniqueness", "frame " + frame.frame_id});
    }

    std::set<int> seen_ids;
    for (std::size_t i = 0; i < frame.objects.size(); ++i) {
        const ObjectInstance& obj = frame.objects[i];
        if (!box_in_bounds(obj.box, w, h)) {
            out.push_back({"BoundsViolation", object_entity(frame, i)});
        }
        if (!seen_ids.insert(obj.instance_id).second) {
            out.push_back({"InstanceIdUniqueness", object_entity(frame, i)});
        }
        if (!category_by_id(obj.category_id)) {
            out.push_back({"CategoryRange", object_entity(frame, i)});
        }
        if (!(obj.score >= 0.0 && obj.score <= 1.0)) {
            out.push_back({"ScoreRange", object_entity(frame, i)});
        }
    }
    return out;
}

DatasetStats compute_stats(const DatasetIndex& index) {
    DatasetStats s;
    for (const auto& frame : index.frames) {
        s.n_images += 1;
        s.n_objects += frame.objects.size();
        for (const auto& hand : frame.hands) {
            s.n_hands += 1;
            (hand.side == HandSide::Left ? s.n_left : s.n_right) += 1;
            if (hand.contact_state == ContactState::InContact) {
                s.n_ehois += 1;
            }
        }
    }
    return s;
}

std::string_view to_string(Split split) {
    switch (split) {
        case Split::Train: return "train";
        case Split::Val: return "val";
        case Split::Test: return "test";
    }
    return "train";
}

std::optional<Split> split_from_string(std::string_view s) {
    if (s == "train") return Split::Train;
    if (s == "val") return Split::Val;
    if (s == "test") return Split::Test;
    return std::nullopt;
}

}  // namespace ehoi
