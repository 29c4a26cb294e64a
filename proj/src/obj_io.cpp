#include "drapekit/obj_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "drapekit/errors.hpp"

namespace drapekit {

namespace {

int parse_face_index(const std::string& token, int line, int vertex_count) {
  // Face tokens may look like "7", "7/3" or "7/3/1"; only the vertex index
  // (before the first slash) matters here.
  size_t slash = token.find('/');
  std::string head = slash == std::string::npos ? token : token.substr(0, slash);
  int idx = 0;
  try {
    idx = std::stoi(head);
  } catch (const std::exception&) {
    throw ParseError(line, "bad face index '" + token + "'");
  }
  if (idx == 0) throw ParseError(line, "OBJ indices are 1-based, got 0");
  if (idx < 0) throw ParseError(line, "negative (relative) indices unsupported");
  if (idx > vertex_count)
    throw ParseError(line, "face references vertex " + std::to_string(idx) +
                               " but only " + std::to_string(vertex_count) +
                               " defined");
  return idx - 1;
}

}  // namespace

TriMesh load_obj(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open " + path.string());
  TriMesh mesh;
  std::string line_text;
  int line = 0;
  while (std::getline(in, line_text)) {
    ++line;
    std::istringstream ss(line_text);
    std::string tag;
    if (!(ss >> tag)) continue;
    if (tag == "v") {
      double x, y, z;
      if (!(ss >> x >> y >> z)) throw ParseError(line, "malformed vertex");
      mesh.vertices.emplace_back(x, y, z);
    } else if (tag == "f") {
      std::vector<int> poly;
      std::string token;
      while (ss >> token)
        poly.push_back(parse_face_index(token, line, mesh.vertex_count()));
      if (poly.size() < 3) throw ParseError(line, "face with fewer than 3 vertices");
      for (size_t k = 1; k + 1 < poly.size(); ++k)
        mesh.triangles.push_back({poly[0], poly[k], poly[k + 1]});
    }
    // vt/vn/o/g/s/usemtl/mtllib/# are ignored.
  }
  return mesh;
}

void save_obj(const TriMesh& mesh, const std::filesystem::path& path) {
  std::FILE* f = std::fopen(path.string().c_str(), "w");
  if (!f) throw Error("IoError", "cannot write " + path.string());
  for (const auto& v : mesh.vertices)
    std::fprintf(f, "v %.12g %.12g %.12g\n", v.x(), v.y(), v.z());
  for (const auto& t : mesh.triangles)
    std::fprintf(f, "f %d %d %d\n", t[0] + 1, t[1] + 1, t[2] + 1);
  std::fclose(f);
}

std::map<std::string, int> load_anchors_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("IoError", "cannot open " + path.string());
  nlohmann::json j;
  in >> j;
  std::map<std::string, int> anchors;
  for (auto it = j.begin(); it != j.end(); ++it)
    anchors[it.key()] = it.value().get<int>();
  return anchors;
}

void save_anchors_json(const std::map<std::string, int>& anchors,
                       const std::filesystem::path& path) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [label, idx] : anchors) j[label] = idx;
  std::ofstream out(path);
  out << j.dump(2) << "\n";
}

static std::filesystem::path anchors_path_for(const std::filesystem::path& obj) {
  std::filesystem::path p = obj;
  p.replace_extension("");
  p += ".anchors.json";
  return p;
}

TriMesh load_obj_with_anchors(const std::filesystem::path& obj_path) {
  TriMesh mesh = load_obj(obj_path);
  auto sidecar = anchors_path_for(obj_path);
  if (std::filesystem::exists(sidecar)) mesh.anchors = load_anchors_json(sidecar);
  return mesh;
}

void save_obj_with_anchors(const TriMesh& mesh,
                           const std::filesystem::path& obj_path) {
  save_obj(mesh, obj_path);
  if (!mesh.anchors.empty())
    save_anchors_json(mesh.anchors, anchors_path_for(obj_path));
}

}  // namespace drapekit
