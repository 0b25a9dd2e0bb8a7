#include <charconv>
#include <fstream>
#include <sstream>
#include <string>

#include "vizlink/error.hpp"
#include "vizlink/samples/mesh.hpp"

namespace vizlink::samples {

namespace {

[[noreturn]] void parseError(std::string_view name, std::size_t line, const std::string& what) {
  fail(Errc::ParseError, std::string(name) + ":" + std::to_string(line) + ": " + what);
}

std::vector<std::string_view> tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

float parseFloat(std::string_view text, std::string_view name, std::size_t line) {
  float value = 0;
  const auto r = std::from_chars(text.data(), text.data() + text.size(), value);
  if (r.ec != std::errc{} || r.ptr != text.data() + text.size()) {
    parseError(name, line, "bad coordinate '" + std::string(text) + "'");
  }
  return value;
}

std::uint32_t resolveIndex(std::string_view token, std::size_t vertex_count, std::string_view name,
                           std::size_t line) {
  const std::string_view first = token.substr(0, token.find('/'));
  long long value = 0;
  const auto r = std::from_chars(first.data(), first.data() + first.size(), value);
  if (first.empty() || r.ec != std::errc{} || r.ptr != first.data() + first.size() || value == 0) {
    parseError(name, line, "bad face index '" + std::string(token) + "'");
  }
  const long long count = static_cast<long long>(vertex_count);
  const long long resolved = value > 0 ? value - 1 : count + value;
  if (resolved < 0 || resolved >= count) {
    parseError(name, line, "face index " + std::to_string(value) + " out of range (" +
                               std::to_string(vertex_count) + " vertices)");
  }
  return static_cast<std::uint32_t>(resolved);
}

}  // namespace

Mesh parseObj(std::string_view text, std::string_view name) {
  Mesh mesh;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto tok = tokens(line);
    if (tok.empty()) {
      if (end == text.size()) break;
      continue;
    }
    if (tok[0] == "v") {
      if (tok.size() < 4) parseError(name, line_no, "vertex needs 3 coordinates");
      mesh.vertices.push_back(float3{parseFloat(tok[1], name, line_no),
                                     parseFloat(tok[2], name, line_no),
                                     parseFloat(tok[3], name, line_no)});
    } else if (tok[0] == "f") {
      if (tok.size() < 4) parseError(name, line_no, "face needs at least 3 vertices");
      std::vector<std::uint32_t> poly;
      for (std::size_t i = 1; i < tok.size(); ++i) {
        poly.push_back(resolveIndex(tok[i], mesh.vertices.size(), name, line_no));
      }
      for (std::size_t i = 1; i + 1 < poly.size(); ++i) {
        mesh.triangles.insert(mesh.triangles.end(), {poly[0], poly[i], poly[i + 1]});
      }
    }
    if (end == text.size()) break;
  }
  if (mesh.vertices.empty() || mesh.triangles.empty()) {
    fail(Errc::EmptyMesh, std::string(name) + " contains no triangles");
  }
  mesh.normals = computeSmoothNormals(mesh.vertices, mesh.triangles);
  mesh.rest_positions = mesh.vertices;
  return mesh;
}

Mesh loadObj(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::IoError, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parseObj(buffer.str(), path.string());
}

}  // namespace vizlink::samples
