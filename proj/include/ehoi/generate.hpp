#pragma once

#include <cstdint>
#include <string>

#include "ehoi/annotation.hpp"
#include "ehoi/render.hpp"
#include "ehoi/scene.hpp"

namespace ehoi {

/// Frame id "i<iteration>_f<frame>"; ids sort in generation order.
std::string make_frame_id(std::uint64_t iteration, int frame);

/// One fully generated frame, not yet written anywhere.
struct GeneratedFrame {
    SceneGraph scene;
    RenderOutput rendered;
    FrameAnnotation annotation;
};

/// Samples, renders and annotates a single frame of an iteration. When the
/// grasped object ends up hidden behind the hand, the grasp pose is redrawn
/// (bounded, from its own stream) so the interaction stays annotatable;
/// a grasp that stays invisible is annotated as a no-contact hand.
GeneratedFrame generate_frame(const ScenarioConfig& config, std::uint64_t iteration, int frame);

/// Writes the full dataset into sink_dir: annotations.json, scenes.json and
/// one .depth plus one .mask raster per frame. Iterations run on `workers`
/// threads (0 = library default); output bytes are identical no matter how
/// many workers run, and depend only on the config.
DatasetIndex generate_dataset(const ScenarioConfig& config, const std::string& sink_dir,
                              int workers = 0);

/// FNV-1a over every regular file (sorted relative path, then contents).
/// Two directory trees hash equal iff they hold identical files.
std::uint64_t hash_directory(const std::string& dir);

}  // namespace ehoi
