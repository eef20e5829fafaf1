#pragma once

#include <map>
#include <string>

#include "ehoi/scene.hpp"

namespace ehoi {

/// Per-frame scene graphs, keyed by frame id. Written next to the
/// annotation document so raster contents can be re-derived and checked.
using SceneMap = std::map<std::string, SceneGraph>;

std::string serialize_scenes(const SceneMap& scenes);
SceneMap parse_scenes(const std::string& text);

void save_scenes_file(const SceneMap& scenes, const std::string& path);
SceneMap load_scenes_file(const std::string& path);

}  // namespace ehoi
