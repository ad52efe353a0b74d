#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>
#include <string>

#include "efie/errors.hpp"
#include "efie/mesh.hpp"

namespace efie {
namespace {

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  bool next(std::string& line) {
    while (std::getline(in_, line)) {
      ++number_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.find_first_not_of(" \t") != std::string::npos) return true;
    }
    return false;
  }

  std::string require(const char* what) {
    std::string line;
    if (!next(line)) throw ParseError(std::string("unexpected end of file, expected ") + what, number_);
    return line;
  }

  // Reads one line and parses it as whitespace-separated values of type T.
  template <typename T>
  std::vector<T> values(const char* what, std::size_t at_least) {
    const std::string line = require(what);
    std::istringstream ss(line);
    std::vector<T> out;
    T v;
    while (ss >> v) out.push_back(v);
    if (!ss.eof() || out.size() < at_least) throw ParseError(std::string("malformed ") + what, number_);
    return out;
  }

  void expect(const std::string& tag) {
    const std::string line = require(tag.c_str());
    if (trim(line) != tag) throw ParseError("expected " + tag + ", found '" + trim(line) + "'", number_);
  }

  void skip_section(const std::string& name) {
    const std::string end = "$End" + name.substr(1);
    std::string line;
    while (next(line)) {
      if (trim(line) == end) return;
    }
    throw ParseError("unterminated section " + name, number_);
  }

  int line() const { return number_; }

  static std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t");
    const auto e = s.find_last_not_of(" \t");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  }

 private:
  std::istream& in_;
  int number_ = 0;
};

struct RawElement {
  int type;
  std::vector<long> nodes;
  int line;
};

bool is_ignored_type(int type) { return type == 15 || type == 1 || type == 8; }

int nodes_per_type(int type) {
  switch (type) {
    case 2:
      return 3;
    case 9:
      return 6;
    case 15:
      return 1;
    case 1:
      return 2;
    case 8:
      return 3;
    default:
      return -1;
  }
}

void check_type(int type, int line) {
  if (type != 2 && type != 9 && !is_ignored_type(type))
    throw ParseError("unsupported element type " + std::to_string(type) +
                         " (only 3-node and 6-node triangles are supported)",
                     line);
}

void read_nodes_v2(LineReader& r, std::map<long, Vec3>& nodes) {
  const auto header = r.values<long>("node count", 1);
  for (long i = 0; i < header[0]; ++i) {
    const auto v = r.values<double>("node record", 4);
    nodes[static_cast<long>(v[0])] = Vec3(v[1], v[2], v[3]);
  }
  r.expect("$EndNodes");
}

void read_elements_v2(LineReader& r, std::vector<RawElement>& elements) {
  const auto header = r.values<long>("element count", 1);
  for (long i = 0; i < header[0]; ++i) {
    const auto v = r.values<long>("element record", 3);
    const int type = static_cast<int>(v[1]);
    check_type(type, r.line());
    const std::size_t ntags = static_cast<std::size_t>(v[2]);
    const int nn = nodes_per_type(type);
    if (v.size() != 3 + ntags + nn) throw ParseError("element record has wrong length", r.line());
    if (is_ignored_type(type)) continue;
    elements.push_back({type, std::vector<long>(v.begin() + 3 + ntags, v.end()), r.line()});
  }
  r.expect("$EndElements");
}

void read_nodes_v4(LineReader& r, std::map<long, Vec3>& nodes) {
  const auto header = r.values<long>("node header", 4);
  for (long b = 0; b < header[0]; ++b) {
    const auto block = r.values<long>("node block header", 4);
    if (block[2] != 0) throw ParseError("parametric node coordinates are not supported", r.line());
    const long count = block[3];
    std::vector<long> tags;
    tags.reserve(count);
    for (long i = 0; i < count; ++i) tags.push_back(r.values<long>("node tag", 1)[0]);
    for (long i = 0; i < count; ++i) {
      const auto x = r.values<double>("node coordinates", 3);
      if (x.size() != 3) throw ParseError("node coordinates must have 3 components", r.line());
      nodes[tags[i]] = Vec3(x[0], x[1], x[2]);
    }
  }
  r.expect("$EndNodes");
}

void read_elements_v4(LineReader& r, std::vector<RawElement>& elements) {
  const auto header = r.values<long>("element header", 4);
  for (long b = 0; b < header[0]; ++b) {
    const auto block = r.values<long>("element block header", 4);
    const int type = static_cast<int>(block[2]);
    check_type(type, r.line());
    const int nn = nodes_per_type(type);
    for (long i = 0; i < block[3]; ++i) {
      const auto v = r.values<long>("element record", 1);
      if (static_cast<int>(v.size()) != 1 + nn) throw ParseError("element record has wrong length", r.line());
      if (is_ignored_type(type)) continue;
      elements.push_back({type, std::vector<long>(v.begin() + 1, v.end()), r.line()});
    }
  }
  r.expect("$EndElements");
}

}  // namespace

SurfaceMesh parse_gmsh(std::istream& in) {
  LineReader r(in);
  std::string line;
  int major = 0;
  bool have_format = false, have_nodes = false, have_elements = false;
  std::map<long, Vec3> raw_nodes;
  std::vector<RawElement> elements;

  while (r.next(line)) {
    const std::string tag = LineReader::trim(line);
    if (tag == "$MeshFormat") {
      const std::string fmt = r.require("format line");
      std::istringstream ss(fmt);
      std::string version;
      int file_type = -1, data_size = 0;
      if (!(ss >> version >> file_type >> data_size)) throw ParseError("malformed $MeshFormat", r.line());
      if (version == "2.2" || version == "2.1" || version == "2" || version == "2.0") {
        major = 2;
      } else if (version == "4.1") {
        major = 4;
      } else {
        throw ParseError("unsupported MSH version " + version, r.line());
      }
      if (file_type != 0) throw ParseError("binary MSH files are not supported", r.line());
      r.expect("$EndMeshFormat");
      have_format = true;
    } else if (tag == "$Nodes") {
      if (!have_format) throw ParseError("$Nodes before $MeshFormat", r.line());
      if (major == 2) read_nodes_v2(r, raw_nodes);
      else read_nodes_v4(r, raw_nodes);
      have_nodes = true;
    } else if (tag == "$Elements") {
      if (!have_format) throw ParseError("$Elements before $MeshFormat", r.line());
      if (major == 2) read_elements_v2(r, elements);
      else read_elements_v4(r, elements);
      have_elements = true;
    } else if (tag == "$PartitionedEntities" || tag == "$Periodic" || tag == "$Parametrizations") {
      throw ParseError("section " + tag + " is not supported", r.line());
    } else if (!tag.empty() && tag[0] == '$') {
      r.skip_section(tag);
    } else {
      throw ParseError("unexpected content '" + tag + "'", r.line());
    }
  }
  if (!have_nodes || !have_elements) throw ParseError("missing $Nodes or $Elements section", r.line());
  if (elements.empty()) throw ParseError("no triangles found", r.line());

  const int type = elements.front().type;
  for (const auto& e : elements) {
    if (e.type != type) throw ParseError("mixed 3-node and 6-node triangles are not supported", e.line);
  }
  const int order = type == 9 ? 2 : 1;

  // Compact to the nodes referenced by triangles, in tag order.
  std::map<long, int> index;
  for (const auto& e : elements) {
    for (long t : e.nodes) {
      if (!raw_nodes.count(t)) throw ParseError("element references unknown node " + std::to_string(t), e.line);
      index[t] = 0;
    }
  }
  std::vector<Vec3> nodes;
  nodes.reserve(index.size());
  for (auto& [t, id] : index) {
    id = static_cast<int>(nodes.size());
    nodes.push_back(raw_nodes[t]);
  }
  std::vector<Triangle> cells(elements.size());
  for (std::size_t c = 0; c < elements.size(); ++c) {
    for (std::size_t i = 0; i < elements[c].nodes.size(); ++i) cells[c].nodes[i] = index[elements[c].nodes[i]];
  }
  return SurfaceMesh(std::move(nodes), std::move(cells), order);
}

SurfaceMesh parse_gmsh(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string(), 0);
  return parse_gmsh(in);
}

void write_gmsh22(const SurfaceMesh& mesh, std::ostream& out) {
  out << "$MeshFormat\n2.2 0 8\n$EndMeshFormat\n$Nodes\n" << mesh.nodes().size() << '\n';
  out << std::setprecision(17);
  for (std::size_t i = 0; i < mesh.nodes().size(); ++i) {
    const Vec3& x = mesh.nodes()[i];
    out << i + 1 << ' ' << x[0] << ' ' << x[1] << ' ' << x[2] << '\n';
  }
  out << "$EndNodes\n$Elements\n" << mesh.num_cells() << '\n';
  const int nn = mesh.geometric_order() == 2 ? 6 : 3;
  const int type = mesh.geometric_order() == 2 ? 9 : 2;
  for (int c = 0; c < mesh.num_cells(); ++c) {
    const int body = mesh.has_connectivity() ? mesh.body_of_cell(c) + 1 : 1;
    out << c + 1 << ' ' << type << " 2 " << body << ' ' << body;
    for (int i = 0; i < nn; ++i) out << ' ' << mesh.cell(c).nodes[i] + 1;
    out << '\n';
  }
  out << "$EndElements\n";
}

void write_gmsh22(const SurfaceMesh& mesh, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw MeshError("cannot write " + path.string());
  write_gmsh22(mesh, out);
}

}  // namespace efie
