#include "ehoi/render.hpp"

#include <cmath>
#include <limits>

#include "ehoi/errors.hpp"

namespace ehoi {

namespace {

constexpr double kNearPlane = 1e-3;
constexpr double kInf = std::numeric_limits<double>::infinity();

struct CameraBasis {
    Vec3 right, up, forward;
    double tan_half_fov = 0.0;
    double aspect = 0.0;
};

CameraBasis camera_basis(const CameraModel& camera) {
    if (camera.width <= 0 || camera.height <= 0) {
        throw DegenerateCamera("raster dimensions must be positive");
    }
    if (!(camera.vertical_fov > 0.0 && camera.vertical_fov < 3.14159265358979323846)) {
        throw DegenerateCamera("vertical_fov must lie in (0, pi)");
    }
    const Vec3 gaze = camera.look_at - camera.position;
    if (gaze.norm() < 1e-12) {
        throw DegenerateCamera("position equals look_at");
    }
    CameraBasis basis;
    basis.forward = gaze.normalized();
    const Vec3 world_up{0.0, 0.0, 1.0};
    const Vec3 side = basis.forward.cross(world_up);
    if (side.norm() < 1e-9) {
        throw DegenerateCamera("camera looks straight along the world up axis");
    }
    basis.right = side.normalized();
    basis.up = basis.right.cross(basis.forward);
    basis.tan_half_fov = std::tan(0.5 * camera.vertical_fov);
    basis.aspect = static_cast<double>(camera.width) / camera.height;
    return basis;
}

Vec3 ray_through(const CameraBasis& basis, const CameraModel& camera, int px, int py) {
    const double ndc_x = (px + 0.5) / camera.width * 2.0 - 1.0;
    const double ndc_y = 1.0 - (py + 0.5) / camera.height * 2.0;
    const Vec3 dir = basis.right * (ndc_x * basis.tan_half_fov * basis.aspect) +
                     basis.up * (ndc_y * basis.tan_half_fov) + basis.forward;
    return dir.normalized();
}

// Nearest instance along one ray; shared by both render paths so they are
// bitwise comparable.
void shade_pixel(const Vec3& origin, const Vec3& dir,
                 const std::vector<RenderInstance>& instances, float& depth_out,
                 std::uint16_t& mask_out) {
    double best = kInf;
    int best_id = 0;
    for (const RenderInstance& inst : instances) {
        const double t = ray_cuboid_distance(origin, dir, inst);
        if (t < best) {
            best = t;
            best_id = inst.instance_id;
        }
    }
    if (best < kInf) {
        depth_out = static_cast<float>(best);
        mask_out = static_cast<std::uint16_t>(best_id);
    } else {
        depth_out = 0.0f;
        mask_out = 0;
    }
}

}  // namespace

std::vector<RenderInstance> render_instances(const SceneGraph& scene) {
    std::vector<RenderInstance> out;
    out.reserve(scene.objects.size() + scene.hands.size());
    for (const CuboidPrimitive& obj : scene.objects) {
        out.push_back({obj.instance_id, obj.center, obj.half_extents, obj.rotation()});
    }
    for (const HandPrimitive& hand : scene.hands) {
        out.push_back({hand.instance_id, hand.center, hand.half_extents, hand.rotation()});
    }
    return out;
}

double ray_cuboid_distance(const Vec3& origin, const Vec3& direction,
                           const RenderInstance& cuboid) {
    const Vec3 local_origin = cuboid.rotation.apply_transposed(origin - cuboid.center);
    const Vec3 local_dir = cuboid.rotation.apply_transposed(direction);

    double t_near = -kInf, t_far = kInf;
    const double o[3] = {local_origin.x, local_origin.y, local_origin.z};
    const double d[3] = {local_dir.x, local_dir.y, local_dir.z};
    const double he[3] = {cuboid.half_extents.x, cuboid.half_extents.y, cuboid.half_extents.z};
    for (int axis = 0; axis < 3; ++axis) {
        if (d[axis] == 0.0) {
            if (std::abs(o[axis]) > he[axis]) {
                return kInf;
            }
            continue;
        }
        double t0 = (-he[axis] - o[axis]) / d[axis];
        double t1 = (he[axis] - o[axis]) / d[axis];
        if (t0 > t1) {
            std::swap(t0, t1);
        }
        t_near = std::max(t_near, t0);
        t_far = std::min(t_far, t1);
        if (t_near > t_far) {
            return kInf;
        }
    }
    if (t_near >= kNearPlane) {
        return t_near;
    }
    if (t_far >= kNearPlane) {
        return t_far;
    }
    return kInf;
}

Vec3 pixel_ray(const CameraModel& camera, int px, int py) {
    return ray_through(camera_basis(camera), camera, px, py);
}

RenderOutput render(const SceneGraph& scene) {
    const CameraModel& camera = scene.camera;
    const CameraBasis basis = camera_basis(camera);
    const std::vector<RenderInstance> instances = render_instances(scene);

    RenderOutput out{DepthRaster::zeros(camera.width, camera.height),
                     MaskRaster::zeros(camera.width, camera.height)};
#pragma omp parallel for schedule(static)
    for (int py = 0; py < camera.height; ++py) {
        for (int px = 0; px < camera.width; ++px) {
            const Vec3 dir = ray_through(basis, camera, px, py);
            shade_pixel(camera.position, dir, instances, out.depth.at(px, py),
                        out.mask.at(px, py));
        }
    }
    return out;
}

namespace reference {

RenderOutput render(const SceneGraph& scene) {
    const CameraModel& camera = scene.camera;
    const CameraBasis basis = camera_basis(camera);
    const std::vector<RenderInstance> instances = render_instances(scene);

    RenderOutput out{DepthRaster::zeros(camera.width, camera.height),
                     MaskRaster::zeros(camera.width, camera.height)};
    for (int py = 0; py < camera.height; ++py) {
        for (int px = 0; px < camera.width; ++px) {
            const Vec3 dir = ray_through(basis, camera, px, py);
            shade_pixel(camera.position, dir, instances, out.depth.at(px, py),
                        out.mask.at(px, py));
        }
    }
    return out;
}

double ray_cuboid_distance_clip(const Vec3& origin, const Vec3& direction,
                                const RenderInstance& cuboid) {
    // Clip [t0, t1] against each face half-space n.(o + t d - c) <= h.
    const Vec3 axes[3] = {{cuboid.rotation.m[0], cuboid.rotation.m[3], cuboid.rotation.m[6]},
                          {cuboid.rotation.m[1], cuboid.rotation.m[4], cuboid.rotation.m[7]},
                          {cuboid.rotation.m[2], cuboid.rotation.m[5], cuboid.rotation.m[8]}};
    const double extents[3] = {cuboid.half_extents.x, cuboid.half_extents.y,
                               cuboid.half_extents.z};
    double t0 = -kInf, t1 = kInf;
    for (int k = 0; k < 3; ++k) {
        for (double sign : {1.0, -1.0}) {
            const Vec3 n = axes[k] * sign;
            const double offset = n.dot(cuboid.center) + extents[k];
            const double num = offset - n.dot(origin);
            const double den = n.dot(direction);
            if (den == 0.0) {
                if (num < 0.0) {
                    return kInf;  // parallel and outside
                }
                continue;
            }
            const double t = num / den;
            if (den > 0.0) {
                t1 = std::min(t1, t);
            } else {
                t0 = std::max(t0, t);
            }
            if (t0 > t1) {
                return kInf;
            }
        }
    }
    if (t0 >= kNearPlane) {
        return t0;
    }
    if (t1 >= kNearPlane) {
        return t1;
    }
    return kInf;
}

}  // namespace reference

}  // namespace ehoi
