#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ehoi/categories.hpp"
#include "ehoi/geometry.hpp"

namespace ehoi {

enum class HandSide { Left, Right };
enum class ContactState { NoContact, InContact };

/// Direction (vx, vy) plus magnitude m, where m is the hand-center to
/// object-center distance normalized by the image diagonal sqrt(w^2+h^2).
struct OffsetVector {
    double vx = 0.0;
    double vy = 0.0;
    double m = 0.0;

    bool operator==(const OffsetVector&) const = default;
};

struct HandInstance {
    BBox2D box;
    HandSide side = HandSide::Left;
    ContactState contact_state = ContactState::NoContact;
    std::optional<OffsetVector> offset;
    std::optional<int> active_object_id;
    double score = 1.0;

    bool operator==(const HandInstance&) const = default;
};

struct ObjectInstance {
    int instance_id = 0;
    BBox2D box;
    int category_id = 0;
    double score = 1.0;

    bool operator==(const ObjectInstance&) const = default;
};

struct FrameAnnotation {
    std::string frame_id;
    int width = 0;
    int height = 0;
    std::vector<HandInstance> hands;
    std::vector<ObjectInstance> objects;
    std::optional<std::string> depth_path;
    std::optional<std::string> mask_path;

    /// Object with the given instance id, or nullptr.
    const ObjectInstance* find_object(int instance_id) const;

    bool operator==(const FrameAnnotation&) const = default;
};

enum class Split { Train, Val, Test };

/// Category row as carried by a dataset document. Documents must list all
/// 19 labels with ids 0..18; the pairing is the document's own mapping.
struct CategoryEntry {
    int id = 0;
    std::string name;

    bool operator==(const CategoryEntry&) const = default;
};

/// The built-in id->name pairing, as a document category list.
std::vector<CategoryEntry> canonical_categories();

struct DatasetIndex {
    Split split = Split::Train;
    std::vector<CategoryEntry> categories = canonical_categories();
    std::vector<FrameAnnotation> frames;

    bool operator==(const DatasetIndex&) const = default;
};

struct DatasetStats {
    std::uint64_t n_images = 0;
    std::uint64_t n_hands = 0;
    std::uint64_t n_ehois = 0;
    std::uint64_t n_left = 0;
    std::uint64_t n_right = 0;
    std::uint64_t n_objects = 0;

    DatasetStats& operator+=(const DatasetStats& o);
    bool operator==(const DatasetStats&) const = default;
};

/// One broken invariant: the rule name plus the offending entity,
/// rendered as "RULE: entity".
struct Violation {
    std::string rule;
    std::string entity;

    std::string render() const { return rule + ": " + entity; }
    bool operator==(const Violation&) const = default;
};

/// Checks every FrameAnnotation invariant and returns all violations
/// (empty means the frame is valid). Violations are data, not errors.
std::vector<Violation> validate_frame(const FrameAnnotation& frame);

DatasetStats compute_stats(const DatasetIndex& index);

std::string_view to_string(Split split);
std::optional<Split> split_from_string(std::string_view s);

}  // namespace ehoi
