#include "ehoi/scene_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ehoi/errors.hpp"

namespace ehoi {

namespace {

using nlohmann::json;

json vec_to_json(const Vec3& v) {
    return json::array({v.x, v.y, v.z});
}

Vec3 vec_from_json(const json& j) {
    return {j.at(0).get<double>(), j.at(1).get<double>(), j.at(2).get<double>()};
}

json scene_to_json(const SceneGraph& scene) {
    json doc;
    doc["table_z"] = scene.table_z;
    doc["shirt_style"] = scene.shirt_style;
    doc["camera"] = {
        {"position", vec_to_json(scene.camera.position)},
        {"look_at", vec_to_json(scene.camera.look_at)},
        {"vertical_fov", scene.camera.vertical_fov},
        {"width", scene.camera.width},
        {"height", scene.camera.height},
    };
    json objects = json::array();
    for (const CuboidPrimitive& o : scene.objects) {
        objects.push_back({
            {"instance_id", o.instance_id},
            {"category_id", o.category_id},
            {"center", vec_to_json(o.center)},
            {"half_extents", vec_to_json(o.half_extents)},
            {"yaw", o.yaw},
            {"pitch", o.pitch},
            {"roll", o.roll},
            {"limits", json::array({o.limits.yaw_min, o.limits.yaw_max, o.limits.pitch_min,
                                    o.limits.pitch_max, o.limits.roll_min, o.limits.roll_max})},
        });
    }
    doc["objects"] = std::move(objects);
    json hands = json::array();
    for (const HandPrimitive& h : scene.hands) {
        json hand = {
            {"instance_id", h.instance_id},
            {"side", h.side == HandSide::Left ? "L" : "R"},
            {"center", vec_to_json(h.center)},
            {"half_extents", vec_to_json(h.half_extents)},
            {"yaw", h.yaw},
            {"in_contact", h.in_contact},
        };
        if (h.grasped_instance_id) {
            hand["grasped_instance_id"] = *h.grasped_instance_id;
        }
        hands.push_back(std::move(hand));
    }
    doc["hands"] = std::move(hands);
    return doc;
}

SceneGraph scene_from_json(const json& doc) {
    SceneGraph scene;
    scene.table_z = doc.at("table_z").get<double>();
    scene.shirt_style = doc.at("shirt_style").get<int>();
    const json& cam = doc.at("camera");
    scene.camera.position = vec_from_json(cam.at("position"));
    scene.camera.look_at = vec_from_json(cam.at("look_at"));
    scene.camera.vertical_fov = cam.at("vertical_fov").get<double>();
    scene.camera.width = cam.at("width").get<int>();
    scene.camera.height = cam.at("height").get<int>();
    for (const json& o : doc.at("objects")) {
        CuboidPrimitive obj;
        obj.instance_id = o.at("instance_id").get<int>();
        obj.category_id = o.at("category_id").get<int>();
        obj.center = vec_from_json(o.at("center"));
        obj.half_extents = vec_from_json(o.at("half_extents"));
        obj.yaw = o.at("yaw").get<double>();
        obj.pitch = o.at("pitch").get<double>();
        obj.roll = o.at("roll").get<double>();
        const json& lim = o.at("limits");
        obj.limits = {lim.at(0).get<double>(), lim.at(1).get<double>(),
                      lim.at(2).get<double>(), lim.at(3).get<double>(),
                      lim.at(4).get<double>(), lim.at(5).get<double>()};
        scene.objects.push_back(std::move(obj));
    }
    for (const json& h : doc.at("hands")) {
        HandPrimitive hand;
        hand.instance_id = h.at("instance_id").get<int>();
        hand.side = h.at("side").get<std::string>() == "L" ? HandSide::Left : HandSide::Right;
        hand.center = vec_from_json(h.at("center"));
        hand.half_extents = vec_from_json(h.at("half_extents"));
        hand.yaw = h.at("yaw").get<double>();
        hand.in_contact = h.at("in_contact").get<bool>();
        if (auto it = h.find("grasped_instance_id"); it != h.end()) {
            hand.grasped_instance_id = it->get<int>();
        }
        scene.hands.push_back(std::move(hand));
    }
    return scene;
}

}  // namespace

std::string serialize_scenes(const SceneMap& scenes) {
    json doc;
    json frames = json::object();
    for (const auto& [frame_id, scene] : scenes) {
        frames[frame_id] = scene_to_json(scene);
    }
    doc["frames"] = std::move(frames);
    return doc.dump(1) + "\n";
}

SceneMap parse_scenes(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SyntaxError(std::string("malformed scene file: ") + e.what());
    }
    SceneMap scenes;
    try {
        for (const auto& [frame_id, scene] : doc.at("frames").items()) {
            scenes[frame_id] = scene_from_json(scene);
        }
    } catch (const json::exception& e) {
        throw SchemaError(std::string("scene file: ") + e.what());
    }
    return scenes;
}

void save_scenes_file(const SceneMap& scenes, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoFailure("cannot open " + path + " for writing");
    }
    out << serialize_scenes(scenes);
    if (!out) {
        throw IoFailure("write failed: " + path);
    }
}

SceneMap load_scenes_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoFailure("cannot open " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenes(buf.str());
}

}  // namespace ehoi
