#include "ehoi/generate.hpp"

#include <algorithm>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <mutex>

#include <omp.h>

#include "ehoi/annotate.hpp"
#include "ehoi/annotation_io.hpp"
#include "ehoi/errors.hpp"
#include "ehoi/raster.hpp"
#include "ehoi/render.hpp"
#include "ehoi/sampler.hpp"
#include "ehoi/scene_io.hpp"

namespace ehoi {

namespace fs = std::filesystem;

std::string make_frame_id(std::uint64_t iteration, int frame) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "i%06llu_f%02d", static_cast<unsigned long long>(iteration),
                  frame);
    return buf;
}

namespace {

constexpr std::uint32_t kTagGraspRetry = 7;
constexpr int kGraspRetryCap = 12;

int visible_pixels(const MaskRaster& mask, int instance_id) {
    int count = 0;
    for (std::uint16_t v : mask.values) {
        if (v == instance_id) {
            ++count;
        }
    }
    return count;
}

}  // namespace

GeneratedFrame generate_frame(const ScenarioConfig& config, std::uint64_t iteration, int frame) {
    GeneratedFrame out;
    out.scene = sample_scene(config, iteration);
    out.scene.camera = sample_camera(config, iteration, frame);
    out.rendered = render(out.scene);

    // Redraw the grasp while either participant is hidden from this view:
    // first the hand pose alone, then target and pose together (the target
    // itself can be out of frame or buried behind a fixture).
    HandPrimitive* grasp = nullptr;
    const CuboidPrimitive* target = nullptr;
    for (HandPrimitive& hand : out.scene.hands) {
        if (hand.in_contact && hand.grasped_instance_id) {
            grasp = &hand;
            for (const CuboidPrimitive& obj : out.scene.objects) {
                if (obj.instance_id == *hand.grasped_instance_id) {
                    target = &obj;
                }
            }
        }
    }
    if (grasp && target) {
        std::vector<const CuboidPrimitive*> pool;
        for (const CuboidPrimitive& obj : out.scene.objects) {
            const bool eligible = config.target_category
                                      ? obj.category_id == *config.target_category
                                      : category_shape(obj.category_id).graspable;
            if (eligible) {
                pool.push_back(&obj);
            }
        }
        auto ehoi_visible = [&] {
            return visible_pixels(out.rendered.mask, target->instance_id) >=
                       config.min_visible_pixels &&
                   visible_pixels(out.rendered.mask, grasp->instance_id) >=
                       config.min_visible_pixels;
        };
        RngStream retry(config.master_seed, static_cast<std::uint32_t>(iteration),
                        kTagGraspRetry | (static_cast<std::uint32_t>(frame) << 8));
        for (int attempt = 0; attempt < kGraspRetryCap && !ehoi_visible(); ++attempt) {
            if (attempt >= kGraspRetryCap / 3) {
                target = pool[static_cast<std::size_t>(retry.uniform_int(pool.size()))];
                grasp->grasped_instance_id = target->instance_id;
            }
            *grasp = place_grasp_hand(config, retry, grasp->side, *target, out.scene.camera);
            out.rendered = render(out.scene);
        }
    }

    out.annotation = derive_annotations(out.scene, out.rendered.depth, out.rendered.mask,
                                        make_frame_id(iteration, frame),
                                        {config.min_visible_pixels});
    return out;
}

DatasetIndex generate_dataset(const ScenarioConfig& config, const std::string& sink_dir,
                              int workers) {
    validate_config(config);
    std::error_code ec;
    fs::create_directories(sink_dir, ec);
    if (ec) {
        throw IoFailure("cannot create " + sink_dir + ": " + ec.message());
    }

    const std::uint64_t n_iterations = config.iterations;
    const int frames_per = config.frames_per_iteration;
    const std::size_t total = static_cast<std::size_t>(n_iterations) * frames_per;

    std::vector<FrameAnnotation> annotations(total);
    std::vector<std::pair<std::string, SceneGraph>> scenes(total);
    std::exception_ptr failure;
    std::mutex failure_mutex;

    const int n_threads = workers > 0 ? workers : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(n_threads)
    for (std::int64_t it = 0; it < static_cast<std::int64_t>(n_iterations); ++it) {
        try {
            const std::uint64_t iteration = static_cast<std::uint64_t>(it);
            for (int f = 0; f < frames_per; ++f) {
                GeneratedFrame frame = generate_frame(config, iteration, f);
                const std::string frame_id = frame.annotation.frame_id;

                frame.annotation.depth_path = frame_id + ".depth";
                frame.annotation.mask_path = frame_id + ".mask";
                write_depth_raster(frame.rendered.depth,
                                   (fs::path(sink_dir) / *frame.annotation.depth_path).string());
                write_mask_raster(frame.rendered.mask,
                                  (fs::path(sink_dir) / *frame.annotation.mask_path).string());

                const std::size_t slot = static_cast<std::size_t>(it) * frames_per + f;
                annotations[slot] = std::move(frame.annotation);
                scenes[slot] = {frame_id, std::move(frame.scene)};
            }
        } catch (...) {
            std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure) {
                failure = std::current_exception();
            }
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }

    DatasetIndex index;
    index.split = config.split;
    index.frames = std::move(annotations);
    save_dataset_file(index, (fs::path(sink_dir) / "annotations.json").string());

    SceneMap scene_map;
    for (auto& [frame_id, scene] : scenes) {
        scene_map.emplace(std::move(frame_id), std::move(scene));
    }
    save_scenes_file(scene_map, (fs::path(sink_dir) / "scenes.json").string());
    return index;
}

std::uint64_t hash_directory(const std::string& dir) {
    std::vector<std::string> files;
    for (const auto& entry : fs::recursive_directory_iterator(dir)) {
        if (entry.is_regular_file()) {
            files.push_back(fs::relative(entry.path(), dir).generic_string());
        }
    }
    std::sort(files.begin(), files.end());

    std::uint64_t hash = 0xcbf29ce484222325ull;
    auto mix = [&hash](const char* data, std::size_t n) {
        for (std::size_t i = 0; i < n; ++i) {
            hash ^= static_cast<unsigned char>(data[i]);
            hash *= 0x100000001b3ull;
        }
    };
    for (const std::string& rel : files) {
        mix(rel.data(), rel.size());
        mix("\0", 1);
        std::ifstream in(fs::path(dir) / rel, std::ios::binary);
        if (!in) {
            throw IoFailure("cannot open " + rel + " while hashing");
        }
        char buf[1 << 16];
        while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
            mix(buf, static_cast<std::size_t>(in.gcount()));
        }
        mix("\0", 1);
    }
    return hash;
}

}  // namespace ehoi
