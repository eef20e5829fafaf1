#pragma once

#include <array>
#include <optional>
#include <string_view>

namespace ehoi {

inline constexpr int kCategoryCount = 19;

/// One of the 19 lab object categories. Identity is the (id, name) pair;
/// both directions of the lookup are exposed below.
struct ObjectCategory {
    int id = 0;
    std::string_view name;

    bool operator==(const ObjectCategory&) const = default;
};

/// The full fixed category table, ordered by id (0..18).
const std::array<ObjectCategory, kCategoryCount>& category_table();

std::optional<ObjectCategory> category_by_id(int id);
std::optional<ObjectCategory> category_by_name(std::string_view name);

}  // namespace ehoi
