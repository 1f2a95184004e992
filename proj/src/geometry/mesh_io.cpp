#include "grl/geometry/mesh_io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "grl/error.hpp"

namespace grl::geometry {

namespace {

[[noreturn]] void bad_format(const std::string& msg) { throw Error(ErrorKind::Validation, msg); }

double parse_double(const std::string& tok) {
  double v = 0.0;
  const char* first = tok.data();
  const char* last = first + tok.size();
  if (!tok.empty() && *first == '+') ++first;
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last) bad_format("malformed number '" + tok + "'");
  return v;
}

long parse_int(const std::string& tok) {
  long v = 0;
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
    bad_format("malformed integer '" + tok + "'");
  return v;
}

// Whitespace tokens with '#' comments stripped.
std::vector<std::string> tokenize(std::istream& in) {
  std::vector<std::string> toks;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string t;
    while (ls >> t) toks.push_back(t);
  }
  return toks;
}

void detect_basepoint(TriMesh& mesh) {
  const double tol = 1e-12 * bounding_box_diagonal(mesh);
  for (std::size_t v = 0; v < mesh.vertices.size(); ++v) {
    if (mesh.vertices[v].norm() <= tol) {
      mesh.basepoint = static_cast<int>(v);
      return;
    }
  }
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  return in;
}

}  // namespace

TriMesh read_off(std::istream& in) {
  const auto toks = tokenize(in);
  std::size_t pos = 0;
  auto next = [&]() -> const std::string& {
    if (pos >= toks.size()) bad_format("unexpected end of OFF data");
    return toks[pos++];
  };
  if (next() != "OFF") bad_format("missing OFF header");
  const long nv = parse_int(next());
  const long nf = parse_int(next());
  parse_int(next());  // edge count, unused
  if (nv < 0 || nf < 0) bad_format("negative element counts");

  TriMesh mesh;
  mesh.vertices.reserve(static_cast<std::size_t>(nv));
  for (long i = 0; i < nv; ++i) {
    const double x = parse_double(next());
    const double y = parse_double(next());
    const double z = parse_double(next());
    mesh.vertices.emplace_back(x, y, z);
  }
  mesh.faces.reserve(static_cast<std::size_t>(nf));
  for (long i = 0; i < nf; ++i) {
    const long k = parse_int(next());
    if (k != 3) bad_format("face " + std::to_string(i) + " is not a triangle");
    Face f{};
    for (int c = 0; c < 3; ++c) f[c] = static_cast<int>(parse_int(next()));
    mesh.faces.push_back(f);
  }
  detect_basepoint(mesh);
  validate(mesh);
  return mesh;
}

void write_off(const TriMesh& mesh, std::ostream& out) {
  out << "OFF\n" << mesh.vertices.size() << ' ' << mesh.faces.size() << " 0\n";
  char buf[96];
  for (const auto& v : mesh.vertices) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g\n", v.x(), v.y(), v.z());
    out << buf;
  }
  for (const auto& f : mesh.faces) out << "3 " << f[0] << ' ' << f[1] << ' ' << f[2] << '\n';
}

TriMesh load_off(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_off(in);
}

void save_off(const TriMesh& mesh, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  write_off(mesh, out);
}

TriMesh read_obj(std::istream& in) {
  TriMesh mesh;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag)) continue;
    if (tag == "v") {
      std::string x, y, z;
      if (!(ls >> x >> y >> z)) bad_format("short vertex record");
      mesh.vertices.emplace_back(parse_double(x), parse_double(y), parse_double(z));
    } else if (tag == "f") {
      std::vector<int> idx;
      std::string tok;
      while (ls >> tok) {
        const long raw = parse_int(tok.substr(0, tok.find('/')));
        const long n = static_cast<long>(mesh.vertices.size());
        idx.push_back(static_cast<int>(raw < 0 ? n + raw : raw - 1));
      }
      if (idx.size() != 3) bad_format("OBJ face with " + std::to_string(idx.size()) + " vertices");
      mesh.faces.push_back({idx[0], idx[1], idx[2]});
    }
  }
  detect_basepoint(mesh);
  validate(mesh);
  return mesh;
}

TriMesh load_obj(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_obj(in);
}

TriMesh load_mesh(const std::filesystem::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return std::tolower(c); });
  if (ext == ".obj") return load_obj(path);
  return load_off(path);
}

}  // namespace grl::geometry
