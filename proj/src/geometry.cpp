#include "ehoi/geometry.hpp"

#include <algorithm>

#include "ehoi/errors.hpp"

namespace ehoi {

Mat3 rotation_zyx(double yaw, double pitch, double roll) {
    const double cz = std::cos(yaw), sz = std::sin(yaw);
    const double cy = std::cos(pitch), sy = std::sin(pitch);
    const double cx = std::cos(roll), sx = std::sin(roll);
    Mat3 r;
    r.m = {cz * cy, cz * sy * sx - sz * cx, cz * sy * cx + sz * sx,
           sz * cy, sz * sy * sx + cz * cx, sz * sy * cx - cz * sx,
           -sy,     cy * sx,                cy * cx};
    return r;
}

BBox2D enlarge_box(const BBox2D& box, double factor, double bounds_width, double bounds_height) {
    if (factor < 0.0) {
        throw InvalidFactor("enlarge_box: factor must be >= 0");
    }
    const double half_w = 0.5 * box.width() * (1.0 + factor);
    const double half_h = 0.5 * box.height() * (1.0 + factor);
    const double cx = box.center_x();
    const double cy = box.center_y();
    BBox2D out{cx - half_w, cy - half_h, cx + half_w, cy + half_h};
    out.x_min = std::clamp(out.x_min, 0.0, bounds_width);
    out.x_max = std::clamp(out.x_max, 0.0, bounds_width);
    out.y_min = std::clamp(out.y_min, 0.0, bounds_height);
    out.y_max = std::clamp(out.y_max, 0.0, bounds_height);
    return out;
}

}  // namespace ehoi
