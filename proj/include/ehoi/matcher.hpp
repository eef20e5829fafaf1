#pragma once

#include <optional>
#include <vector>

#include "ehoi/annotation.hpp"
#include "ehoi/geometry.hpp"

namespace ehoi {

struct InteractionPoint {
    double x = 0.0;
    double y = 0.0;

    bool operator==(const InteractionPoint&) const = default;
};

/// <hand, contact state, active object> association for one hand.
/// active_object_index indexes into the object list handed to the matcher;
/// it is absent for no-contact hands and for contact hands that could not
/// be resolved (empty candidate list).
struct EhoiTriplet {
    std::size_t hand_index = 0;
    ContactState contact_state = ContactState::NoContact;
    std::optional<std::size_t> active_object_index;

    bool operator==(const EhoiTriplet&) const = default;
};

/// Offset from the hand box center to the object box center: unit direction
/// plus magnitude normalized by the image diagonal. Coincident centers give
/// (0, 0, 0).
OffsetVector encode_offset(const BBox2D& hand_box, const BBox2D& object_box, int image_width,
                           int image_height);

/// Hand box center displaced by the decoded offset. May fall outside the
/// image; no clipping.
InteractionPoint interaction_point(const BBox2D& hand_box, const OffsetVector& offset,
                                   int image_width, int image_height);

struct MatchableHand {
    BBox2D box;
    ContactState contact_state = ContactState::NoContact;
    std::optional<OffsetVector> offset;
};

struct MatcherOptions {
    /// Candidates below this score are not considered. Disabled by default;
    /// every provided object competes.
    std::optional<double> min_object_score;
};

/// For each in-contact hand, selects the object whose box center is nearest
/// to the hand's interaction point. Ties break to the lowest instance_id, so
/// the result is independent of object-list order.
std::vector<EhoiTriplet> match_active_objects(const std::vector<MatchableHand>& hands,
                                              const std::vector<ObjectInstance>& objects,
                                              int image_width, int image_height,
                                              const MatcherOptions& options = {});

}  // namespace ehoi
