#include "ehoi/scene.hpp"

#include <array>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ehoi/errors.hpp"

namespace ehoi {

namespace {

// Lab-scale cuboid approximations, meters. Handheld tools are graspable
// and may rest at any yaw; stations and fixtures stay near axis-aligned
// (their rotation axis constraint), which also keeps their axis-aligned
// footprints close to their true size.
const std::array<CategoryShape, kCategoryCount>& shape_table() {
    constexpr double kFixtureYaw = 0.26;  // ~15 degrees
    auto grasp = [](double hx, double hy, double hz) {
        CategoryShape s;
        s.half_extents = {hx, hy, hz};
        s.graspable = true;
        return s;
    };
    auto fixture = [kFixtureYaw](double hx, double hy, double hz) {
        CategoryShape s;
        s.half_extents = {hx, hy, hz};
        s.graspable = false;
        s.limits.yaw_min = -kFixtureYaw;
        s.limits.yaw_max = kFixtureYaw;
        return s;
    };
    static const std::array<CategoryShape, kCategoryCount> table = {{
        fixture(0.110, 0.085, 0.065),  // power supply
        fixture(0.190, 0.105, 0.075),  // oscilloscope
        fixture(0.095, 0.070, 0.055),  // welder station
        grasp(0.100, 0.025, 0.025),    // electric screwdriver
        grasp(0.095, 0.012, 0.012),    // screwdriver
        grasp(0.080, 0.030, 0.012),    // pliers
        grasp(0.060, 0.008, 0.008),    // welder probe tip
        grasp(0.065, 0.009, 0.009),    // oscilloscope probe tip
        grasp(0.075, 0.050, 0.009),    // low voltage board
        grasp(0.080, 0.055, 0.010),    // high voltage board
        grasp(0.045, 0.030, 0.020),    // register
        grasp(0.035, 0.022, 0.022),    // electric screwdriver battery
        fixture(0.225, 0.160, 0.004),  // working area
        fixture(0.070, 0.050, 0.040),  // welder base
        fixture(0.025, 0.025, 0.020),  // socket
        fixture(0.011, 0.011, 0.009),  // left red button
        fixture(0.011, 0.011, 0.009),  // left green button
        fixture(0.011, 0.011, 0.009),  // right red button
        fixture(0.011, 0.011, 0.009),  // right green button
    }};
    return table;
}

}  // namespace

const CategoryShape& category_shape(int category_id) {
    return shape_table()[static_cast<std::size_t>(category_id)];
}

const std::vector<int>& graspable_categories() {
    static const std::vector<int> ids = [] {
        std::vector<int> out;
        for (int id = 0; id < kCategoryCount; ++id) {
            if (shape_table()[static_cast<std::size_t>(id)].graspable) {
                out.push_back(id);
            }
        }
        return out;
    }();
    return ids;
}

namespace {

[[noreturn]] void config_fail(const std::string& field, const std::string& what) {
    throw ConfigError("config field '" + field + "': " + what);
}

void check_probability(double p, const char* field) {
    if (!(p >= 0.0 && p <= 1.0)) {
        config_fail(field, "must be in [0, 1], got " + std::to_string(p));
    }
}

}  // namespace

void validate_config(const ScenarioConfig& config) {
    if (config.iterations < 1) {
        config_fail("iterations", "must be >= 1");
    }
    if (config.frames_per_iteration < 1) {
        config_fail("frames_per_iteration", "must be >= 1");
    }
    check_probability(config.p_interaction, "p_interaction");
    check_probability(config.p_two_hands, "p_two_hands");
    check_probability(config.p_right_hand, "p_right_hand");
    if (config.target_category && !category_by_id(*config.target_category)) {
        config_fail("target_category", "unknown category id");
    }
    if (config.image_width < 8 || config.image_height < 8) {
        config_fail("image_width/image_height", "must be >= 8");
    }
    if (config.min_visible_pixels < 1) {
        config_fail("min_visible_pixels", "must be >= 1");
    }
    if (config.table_half_x <= 0.0 || config.table_half_y <= 0.0) {
        config_fail("table_half_x/table_half_y", "must be > 0");
    }
    if (config.min_objects < 1 || config.max_objects < config.min_objects ||
        config.max_objects > kCategoryCount) {
        config_fail("min_objects/max_objects", "need 1 <= min <= max <= 19");
    }
}

ScenarioConfig parse_scenario_config(std::string_view text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ConfigError("config must be a JSON object");
    }

    static const std::vector<std::string> known = {
        "iterations",     "frames_per_iteration", "master_seed",  "p_interaction",
        "p_two_hands",    "p_right_hand",         "target_category", "image_width",
        "image_height",   "min_visible_pixels",   "split",        "table_half_x",
        "table_half_y",   "table_z",              "min_objects",  "max_objects",
    };
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        if (std::find(known.begin(), known.end(), it.key()) == known.end()) {
            config_fail(it.key(), "unknown field");
        }
    }

    ScenarioConfig config;
    auto get_uint = [&](const char* key, std::uint64_t& out) {
        if (auto it = doc.find(key); it != doc.end()) {
            if (!it->is_number_unsigned()) {
                config_fail(key, "must be a non-negative integer");
            }
            out = it->get<std::uint64_t>();
        }
    };
    auto get_int = [&](const char* key, int& out) {
        if (auto it = doc.find(key); it != doc.end()) {
            if (!it->is_number_integer()) {
                config_fail(key, "must be an integer");
            }
            out = it->get<int>();
        }
    };
    auto get_real = [&](const char* key, double& out) {
        if (auto it = doc.find(key); it != doc.end()) {
            if (!it->is_number()) {
                config_fail(key, "must be a number");
            }
            out = it->get<double>();
        }
    };

    get_uint("iterations", config.iterations);
    get_int("frames_per_iteration", config.frames_per_iteration);
    get_uint("master_seed", config.master_seed);
    get_real("p_interaction", config.p_interaction);
    get_real("p_two_hands", config.p_two_hands);
    get_real("p_right_hand", config.p_right_hand);
    if (auto it = doc.find("target_category"); it != doc.end() && !it->is_null()) {
        if (!it->is_number_integer()) {
            config_fail("target_category", "must be a category id or null");
        }
        config.target_category = it->get<int>();
    }
    get_int("image_width", config.image_width);
    get_int("image_height", config.image_height);
    get_int("min_visible_pixels", config.min_visible_pixels);
    if (auto it = doc.find("split"); it != doc.end()) {
        if (!it->is_string()) {
            config_fail("split", "must be a string");
        }
        if (auto s = split_from_string(it->get<std::string>())) {
            config.split = *s;
        } else {
            config_fail("split", "must be train, val or test");
        }
    }
    get_real("table_half_x", config.table_half_x);
    get_real("table_half_y", config.table_half_y);
    get_real("table_z", config.table_z);
    get_int("min_objects", config.min_objects);
    get_int("max_objects", config.max_objects);

    validate_config(config);
    return config;
}

ScenarioConfig load_scenario_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoFailure("cannot open " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario_config(buf.str());
}

}  // namespace ehoi
