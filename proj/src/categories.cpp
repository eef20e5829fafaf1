#include "ehoi/categories.hpp"

namespace ehoi {

const std::array<ObjectCategory, kCategoryCount>& category_table() {
    static const std::array<ObjectCategory, kCategoryCount> table = {{
        {0, "power supply"},
        {1, "oscilloscope"},
        {2, "welder station"},
        {3, "electric screwdriver"},
        {4, "screwdriver"},
        {5, "pliers"},
        {6, "welder probe tip"},
        {7, "oscilloscope probe tip"},
        {8, "low voltage board"},
        {9, "high voltage board"},
        {10, "register"},
        {11, "electric screwdriver battery"},
        {12, "working area"},
        {13, "welder base"},
        {14, "socket"},
        {15, "left red button"},
        {16, "left green button"},
        {17, "right red button"},
        {18, "right green button"},
    }};
    return table;
}

std::optional<ObjectCategory> category_by_id(int id) {
    if (id < 0 || id >= kCategoryCount) {
        return std::nullopt;
    }
    return category_table()[static_cast<std::size_t>(id)];
}

std::optional<ObjectCategory> category_by_name(std::string_view name) {
    for (const auto& c : category_table()) {
        if (c.name == name) {
            return c;
        }
    }
    return std::nullopt;
}

}  // namespace ehoi
