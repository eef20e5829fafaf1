#pragma once

#include <array>
#include <cmath>

namespace ehoi {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    Vec3 cross(const Vec3& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    double norm() const { return std::sqrt(dot(*this)); }
    Vec3 normalized() const {
        const double n = norm();
        return {x / n, y / n, z / n};
    }
    bool operator==(const Vec3&) const = default;
};

/// Row-major 3x3 rotation matrix.
struct Mat3 {
    std::array<double, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1};

    Vec3 apply(const Vec3& v) const {
        return {m[0] * v.x + m[1] * v.y + m[2] * v.z,
                m[3] * v.x + m[4] * v.y + m[5] * v.z,
                m[6] * v.x + m[7] * v.y + m[8] * v.z};
    }
    /// Inverse rotation (transpose).
    Vec3 apply_transposed(const Vec3& v) const {
        return {m[0] * v.x + m[3] * v.y + m[6] * v.z,
                m[1] * v.x + m[4] * v.y + m[7] * v.z,
                m[2] * v.x + m[5] * v.y + m[8] * v.z};
    }
    bool operator==(const Mat3&) const = default;
};

/// R = Rz(yaw) * Ry(pitch) * Rx(roll), world z up.
Mat3 rotation_zyx(double yaw, double pitch, double roll);

/// Axis-aligned box in image coordinates, origin top-left, real-valued pixels.
struct BBox2D {
    double x_min = 0.0, y_min = 0.0, x_max = 0.0, y_max = 0.0;

    double width() const { return x_max - x_min; }
    double height() const { return y_max - y_min; }
    double area() const { return width() * height(); }
    double center_x() const { return 0.5 * (x_min + x_max); }
    double center_y() const { return 0.5 * (y_min + y_max); }
    bool valid() const {
        return std::isfinite(x_min) && std::isfinite(y_min) && std::isfinite(x_max) &&
               std::isfinite(y_max) && x_min <= x_max && y_min <= y_max;
    }
    bool contains(const BBox2D& inner) const {
        return x_min <= inner.x_min && y_min <= inner.y_min && inner.x_max <= x_max &&
               inner.y_max <= y_max;
    }
    bool operator==(const BBox2D&) const = default;
};

/// Scales width and height by (1 + factor) about the box center, then clips
/// to [0,width]x[0,height]. Throws InvalidFactor when factor < 0.
BBox2D enlarge_box(const BBox2D& box, double factor, double bounds_width, double bounds_height);

}  // namespace ehoi
