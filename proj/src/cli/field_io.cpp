#include "bzm/cli/field_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

#include "bzm/error.hpp"

namespace bzm {

namespace {

constexpr char magic[5] = {'B', 'Z', 'M', 'F', '1'};
constexpr std::uint32_t tag = 0x01020304u;

template <class T>
void put(std::ostream& out, T v) {
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T swap_bytes(T v) {
  unsigned char b[sizeof(T)];
  std::memcpy(b, &v, sizeof(T));
  for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(b[i], b[sizeof(T) - 1 - i]);
  std::memcpy(&v, b, sizeof(T));
  return v;
}

class Reader {
 public:
  Reader(std::istream& in, std::string path) : in_(in), path_(std::move(path)) {}
  template <class T>
  T get(const char* what) {
    T v;
    if (!in_.read(reinterpret_cast<char*>(&v), sizeof(T))) {
      throw Error(ErrorKind::truncated_file, path_ + ": file ends inside " + what);
    }
    return swap_ ? swap_bytes(v) : v;
  }
  void set_swap(bool s) { swap_ = s; }

 private:
  std::istream& in_;
  std::string path_;
  bool swap_ = false;
};

}  // namespace

void write_field(const std::string& path, const Field& f) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::io_error, "cannot write '" + path + "'");
  out.write(magic, sizeof(magic));
  put<std::int32_t>(out, f.grid().dim());
  put<std::int32_t>(out, f.grid().n());
  put<double>(out, f.grid().period());
  put<std::int32_t>(out, f.components());
  put<std::uint32_t>(out, tag);
  for (int c = 0; c < f.components(); ++c) {
    const auto s = f.samples(c);
    out.write(reinterpret_cast<const char*>(s.data()), static_cast<std::streamsize>(s.size() * sizeof(double)));
  }
  if (!out) throw Error(ErrorKind::io_error, "write to '" + path + "' failed");
}

Field read_field(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io_error, "cannot open '" + path + "'");
  char head[sizeof(magic)];
  if (!in.read(head, sizeof(head))) throw Error(ErrorKind::truncated_file, path + ": file ends inside the magic");
  if (std::memcmp(head, magic, sizeof(magic)) != 0) throw Error(ErrorKind::format_mismatch, path + ": not a BZMF1 file");

  // The tag sits after the fixed-size header fields; peek at it first.
  const auto header_start = in.tellg();
  in.seekg(static_cast<std::streamoff>(2 * sizeof(std::int32_t) + sizeof(double) + sizeof(std::int32_t)), std::ios::cur);
  std::uint32_t t = 0;
  if (!in.read(reinterpret_cast<char*>(&t), sizeof(t))) throw Error(ErrorKind::truncated_file, path + ": file ends inside the header");
  if (t != tag && swap_bytes(t) != tag) throw Error(ErrorKind::format_mismatch, path + ": unknown endianness tag");
  in.seekg(header_start);

  Reader r(in, path);
  r.set_swap(t != tag);
  const int d = r.get<std::int32_t>("the header");
  const int n = r.get<std::int32_t>("the header");
  const double period = r.get<double>("the header");
  const int comps = r.get<std::int32_t>("the header");
  r.get<std::uint32_t>("the header");
  Grid g;
  try {
    g = Grid::make(d, n, period);
  } catch (const Error& e) {
    throw Error(ErrorKind::format_mismatch, path + ": bad header: " + e.what());
  }
  if (comps != 1 && comps != d) throw Error(ErrorKind::format_mismatch, path + ": bad component count " + std::to_string(comps));
  Field f(g, comps);
  for (int c = 0; c < comps; ++c) {
    auto s = f.samples_mut(c);
    for (double& v : s) v = r.get<double>("the samples");
  }
  return f;
}

Field read_field(const std::string& path, const Grid& grid) {
  Field f = read_field(path);
  const Grid& g = f.grid();
  if (g.dim() != grid.dim() || g.n() != grid.n() || g.period() != grid.period()) {
    std::ostringstream os;
    os << path << ": file has d = " << g.dim() << ", N = " << g.n() << ", period = " << g.period()
       << " but the target grid has d = " << grid.dim() << ", N = " << grid.n() << ", period = " << grid.period();
    throw Error(ErrorKind::format_mismatch, os.str());
  }
  return f;
}

}  // namespace bzm
