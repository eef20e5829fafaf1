#include "ehoi/annotation_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "ehoi/errors.hpp"

namespace ehoi {

namespace {

using nlohmann::json;

[[noreturn]] void schema_fail(const std::string& where, const std::string& what) {
    throw SchemaError(where + ": " + what);
}

const json& require_field(const json& obj, const char* key, const std::string& where) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        schema_fail(where, std::string("missing field '") + key + "'");
    }
    return *it;
}

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> allowed,
                         const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (std::find_if(allowed.begin(), allowed.end(), [&](const char* k) {
                return it.key() == k;
            }) == allowed.end()) {
            schema_fail(where, "unexpected field '" + it.key() + "'");
        }
    }
}

double as_real(const json& v, const char* key, const std::string& where) {
    if (!v.is_number()) {
        schema_fail(where, std::string("field '") + key + "' must be a number");
    }
    return v.get<double>();
}

int as_int(const json& v, const char* key, const std::string& where) {
    if (!v.is_number_integer()) {
        schema_fail(where, std::string("field '") + key + "' must be an integer");
    }
    return v.get<int>();
}

BBox2D parse_box(const json& v, const std::string& where) {
    if (!v.is_array() || v.size() != 4) {
        schema_fail(where, "'box' must be an array of 4 numbers");
    }
    BBox2D b;
    b.x_min = as_real(v[0], "box", where);
    b.y_min = as_real(v[1], "box", where);
    b.x_max = as_real(v[2], "box", where);
    b.y_max = as_real(v[3], "box", where);
    return b;
}

HandInstance parse_hand(const json& v, const std::string& where) {
    if (!v.is_object()) {
        schema_fail(where, "hand must be an object");
    }
    reject_unknown_keys(v, {"box", "side", "state", "offset", "active_object", "score"}, where);
    HandInstance hand;
    hand.box = parse_box(require_field(v, "box", where), where);

    const json& side = require_field(v, "side", where);
    if (!side.is_string() || (side != "L" && side != "R")) {
        schema_fail(where, "'side' must be \"L\" or \"R\"");
    }
    hand.side = side == "L" ? HandSide::Left : HandSide::Right;

    const json& state = require_field(v, "state", where);
    if (!state.is_string() || (state != "N" && state != "C")) {
        schema_fail(where, "'state' must be \"N\" or \"C\"");
    }
    hand.contact_state = state == "N" ? ContactState::NoContact : ContactState::InContact;

    if (auto it = v.find("offset"); it != v.end()) {
        if (!it->is_object()) {
            schema_fail(where, "'offset' must be an object");
        }
        reject_unknown_keys(*it, {"vx", "vy", "m"}, where + " offset");
        OffsetVector off;
        off.vx = as_real(require_field(*it, "vx", where), "vx", where);
        off.vy = as_real(require_field(*it, "vy", where), "vy", where);
        off.m = as_real(require_field(*it, "m", where), "m", where);
        hand.offset = off;
    }
    if (auto it = v.find("active_object"); it != v.end()) {
        hand.active_object_id = as_int(*it, "active_object", where);
    }
    if (auto it = v.find("score"); it != v.end()) {
        hand.score = as_real(*it, "score", where);
    }
    return hand;
}

ObjectInstance parse_object(const json& v, const std::string& where) {
    if (!v.is_object()) {
        schema_fail(where, "object must be an object");
    }
    reject_unknown_keys(v, {"instance_id", "box", "category_id", "score"}, where);
    ObjectInstance obj;
    obj.instance_id = as_int(require_field(v, "instance_id", where), "instance_id", where);
    obj.box = parse_box(require_field(v, "box", where), where);
    obj.category_id = as_int(require_field(v, "category_id", where), "category_id", where);
    if (!category_by_id(obj.category_id)) {
        schema_fail(where, "'category_id' out of range: " + std::to_string(obj.category_id));
    }
    if (auto it = v.find("score"); it != v.end()) {
        obj.score = as_real(*it, "score", where);
    }
    return obj;
}

FrameAnnotation parse_frame(const json& v, std::size_t index) {
    const std::string where = "frame[" + std::to_string(index) + "]";
    if (!v.is_object()) {
        schema_fail(where, "frame must be an object");
    }
    reject_unknown_keys(v, {"id", "width", "height", "hands", "objects", "depth", "mask"}, where);

    FrameAnnotation frame;
    const json& id = require_field(v, "id", where);
    if (!id.is_string()) {
        schema_fail(where, "'id' must be a string");
    }
    frame.frame_id = id.get<std::string>();
    frame.width = as_int(require_field(v, "width", where), "width", where);
    frame.height = as_int(require_field(v, "height", where), "height", where);
    if (frame.width <= 0 || frame.height <= 0) {
        schema_fail(where, "'width'/'height' must be positive");
    }

    const json& hands = require_field(v, "hands", where);
    if (!hands.is_array()) {
        schema_fail(where, "'hands' must be an array");
    }
    for (std::size_t i = 0; i < hands.size(); ++i) {
        frame.hands.push_back(parse_hand(hands[i], where + " hand[" + std::to_string(i) + "]"));
    }

    const json& objects = require_field(v, "objects", where);
    if (!objects.is_array()) {
        schema_fail(where, "'objects' must be an array");
    }
    for (std::size_t i = 0; i < objects.size(); ++i) {
        frame.objects.push_back(
            parse_object(objects[i], where + " object[" + std::to_string(i) + "]"));
    }

    if (auto it = v.find("depth"); it != v.end()) {
        if (!it->is_string()) {
            schema_fail(where, "'depth' must be a string");
        }
        frame.depth_path = it->get<std::string>();
    }
    if (auto it = v.find("mask"); it != v.end()) {
        if (!it->is_string()) {
            schema_fail(where, "'mask' must be a string");
        }
        frame.mask_path = it->get<std::string>();
    }

    for (std::size_t i = 0; i < frame.hands.size(); ++i) {
        const auto& ref = frame.hands[i].active_object_id;
        if (ref.has_value() && !frame.find_object(*ref)) {
            throw ReferentialError(where + " hand[" + std::to_string(i) +
                                   "]: active_object " + std::to_string(*ref) +
                                   " not present in frame objects");
        }
    }
    return frame;
}

std::vector<CategoryEntry> parse_categories(const json& v) {
    if (!v.is_array() || v.size() != kCategoryCount) {
        schema_fail("categories", "must list exactly 19 entries");
    }
    std::vector<CategoryEntry> out;
    std::set<int> ids;
    std::set<std::string> names;
    for (const auto& e : v) {
        if (!e.is_object()) {
            schema_fail("categories", "entry must be an object");
        }
        reject_unknown_keys(e, {"id", "name"}, "categories");
        CategoryEntry entry;
        entry.id = as_int(require_field(e, "id", "categories"), "id", "categories");
        const json& name = require_field(e, "name", "categories");
        if (!name.is_string()) {
            schema_fail("categories", "'name' must be a string");
        }
        entry.name = name.get<std::string>();
        if (entry.id < 0 || entry.id >= kCategoryCount || !ids.insert(entry.id).second) {
            schema_fail("categories", "ids must be unique in 0..18");
        }
        if (!category_by_name(entry.name) || !names.insert(entry.name).second) {
            schema_fail("categories", "unknown or duplicate label '" + entry.name + "'");
        }
        out.push_back(std::move(entry));
    }
    std::sort(out.begin(), out.end(),
              [](const CategoryEntry& a, const CategoryEntry& b) { return a.id < b.id; });
    return out;
}

// --- canonical writer ---------------------------------------------------

class CanonicalWriter {
public:
    std::string result() && { return std::move(out_); }

    void write(const DatasetIndex& index) {
        std::vector<const FrameAnnotation*> frames;
        frames.reserve(index.frames.size());
        for (const auto& f : index.frames) {
            frames.push_back(&f);
        }
        std::sort(frames.begin(), frames.end(),
                  [](const FrameAnnotation* a, const FrameAnnotation* b) {
                      return a->frame_id < b->frame_id;
                  });

        open("{");
        key("categories");
        open("[");
        for (std::size_t i = 0; i < index.categories.size(); ++i) {
            item(i == 0);
            open("{");
            key("id");
            integer(index.categories[i].id);
            comma_key("name");
            quoted(index.categories[i].name);
            close("}");
        }
        close("]");
        comma_key("frames");
        open("[");
        for (std::size_t i = 0; i < frames.size(); ++i) {
            item(i == 0);
            write_frame(*frames[i]);
        }
        close("]");
        comma_key("split");
        quoted(std::string(to_string(index.split)));
        close("}");
        out_ += '\n';
    }

private:
    void write_frame(const FrameAnnotation& f) {
        open("{");
        bool first = true;
        if (f.depth_path) {
            keyed(first, "depth");
            quoted(*f.depth_path);
        }
        keyed(first, "hands");
        open("[");
        for (std::size_t i = 0; i < f.hands.size(); ++i) {
            item(i == 0);
            write_hand(f.hands[i]);
        }
        close("]");
        keyed(first, "height");
        integer(f.height);
        keyed(first, "id");
        quoted(f.frame_id);
        if (f.mask_path) {
            keyed(first, "mask");
            quoted(*f.mask_path);
        }
        keyed(first, "objects");
        open("[");
        for (std::size_t i = 0; i < f.objects.size(); ++i) {
            item(i == 0);
            write_object(f.objects[i]);
        }
        close("]");
        keyed(first, "width");
        integer(f.width);
        close("}");
    }

    void write_hand(const HandInstance& h) {
        open("{");
        bool first = true;
        if (h.active_object_id) {
            keyed(first, "active_object");
            integer(*h.active_object_id);
        }
        keyed(first, "box");
        box(h.box);
        if (h.offset) {
            keyed(first, "offset");
            open("{");
            key("m");
            real(h.offset->m);
            comma_key("vx");
            real(h.offset->vx);
            comma_key("vy");
            real(h.offset->vy);
            close("}");
        }
        keyed(first, "score");
        real(h.score);
        keyed(first, "side");
        quoted(h.side == HandSide::Left ? "L" : "R");
        keyed(first, "state");
        quoted(h.contact_state == ContactState::NoContact ? "N" : "C");
        close("}");
    }

    void write_object(const ObjectInstance& o) {
        open("{");
        key("box");
        box(o.box);
        comma_key("category_id");
        integer(o.category_id);
        comma_key("instance_id");
        integer(o.instance_id);
        comma_key("score");
        real(o.score);
        close("}");
    }

    void box(const BBox2D& b) {
        out_ += '[';
        real(b.x_min);
        out_ += ", ";
        real(b.y_min);
        out_ += ", ";
        real(b.x_max);
        out_ += ", ";
        real(b.y_max);
        out_ += ']';
    }

    void open(const char* bracket) {
        out_ += bracket;
        ++depth_;
    }
    void close(const char* bracket) {
        --depth_;
        newline_indent();
        out_ += bracket;
    }
    void item(bool first) {
        if (!first) {
            out_ += ',';
        }
        newline_indent();
    }
    void key(const std::string& k) {
        newline_indent();
        quoted(k);
        out_ += ": ";
    }
    void comma_key(const std::string& k) {
        out_ += ',';
        key(k);
    }
    // First key in an object with optional leading fields.
    void keyed(bool& first, const std::string& k) {
        if (first) {
            key(k);
            first = false;
        } else {
            comma_key(k);
        }
    }
    void newline_indent() {
        out_ += '\n';
        out_.append(static_cast<std::size_t>(depth_) * 2, ' ');
    }
    void quoted(const std::string& s) {
        out_ += '"';
        for (char c : s) {
            switch (c) {
                case '"': out_ += "\\\""; break;
                case '\\': out_ += "\\\\"; break;
                case '\n': out_ += "\\n"; break;
                case '\t': out_ += "\\t"; break;
                case '\r': out_ += "\\r"; break;
                default:
                    if (static_cast<unsigned char>(c) < 0x20) {
                        char buf[8];
                        std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                        out_ += buf;
                    } else {
                        out_ += c;
                    }
            }
        }
        out_ += '"';
    }
    void integer(long long v) { out_ += std::to_string(v); }
    void real(double v) { out_ += format_real(v); }

    std::string out_;
    int depth_ = 0;
};

}  // namespace

std::string format_real(double v) {
    if (v == 0.0) {
        return "0";  // avoids "-0"
    }
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

DatasetIndex parse_dataset(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw SyntaxError(std::string("malformed document: ") + e.what());
    }
    if (!doc.is_object()) {
        schema_fail("document", "top level must be an object");
    }
    reject_unknown_keys(doc, {"split", "categories", "frames"}, "document");

    DatasetIndex index;
    const json& split = require_field(doc, "split", "document");
    if (!split.is_string()) {
        schema_fail("document", "'split' must be a string");
    }
    if (auto s = split_from_string(split.get<std::string>())) {
        index.split = *s;
    } else {
        schema_fail("document", "'split' must be train, val or test");
    }

    index.categories = parse_categories(require_field(doc, "categories", "document"));

    const json& frames = require_field(doc, "frames", "document");
    if (!frames.is_array()) {
        schema_fail("document", "'frames' must be an array");
    }
    std::set<std::string> frame_ids;
    for (std::size_t i = 0; i < frames.size(); ++i) {
        FrameAnnotation frame = parse_frame(frames[i], i);
        if (!frame_ids.insert(frame.frame_id).second) {
            schema_fail("document", "duplicate frame id '" + frame.frame_id + "'");
        }
        index.frames.push_back(std::move(frame));
    }
    return index;
}

std::string serialize_dataset(const DatasetIndex& index) {
    CanonicalWriter writer;
    writer.write(index);
    return std::move(writer).result();
}

DatasetIndex load_dataset_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoFailure("cannot open " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_dataset(buf.str());
}

void save_dataset_file(const DatasetIndex& index, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoFailure("cannot open " + path + " for writing");
    }
    out << serialize_dataset(index);
    if (!out) {
        throw IoFailure("write failed: " + path);
    }
}

}  // namespace ehoi
