#pragma once
#include <filesystem>
#include <string>

#include "drapekit/trimesh.hpp"

namespace drapekit {

// ASCII Wavefront OBJ. Faces with more than three vertices are
// fan-triangulated on load; only v/f records are interpreted. Indices are
// 1-based in the file, 0-based in memory. Anchors travel in a sidecar JSON
// ({"label": vertex_index}) because OBJ has no slot for them.
TriMesh load_obj(const std::filesystem::path& path);
void save_obj(const TriMesh& mesh, const std::filesystem::path& path);

std::map<std::string, int> load_anchors_json(const std::filesystem::path& path);
void save_anchors_json(const std::map<std::string, int>& anchors,
                       const std::filesystem::path& path);

// Convenience pair: mesh from <stem>.obj plus anchors from
// <stem>.anchors.json when that file exists.
TriMesh load_obj_with_anchors(const std::filesystem::path& obj_path);
void save_obj_with_anchors(const TriMesh& mesh,
                           const std::filesystem::path& obj_path);

}  // namespace drapekit
