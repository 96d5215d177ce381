#include "nlslab/serialize.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace nlslab {

static_assert(std::endian::native == std::endian::little,
              "field container I/O assumes a little-endian host");

namespace {
void put_u64(std::ostream& os, std::uint64_t v) {
  os.write(reinterpret_cast<const char*>(&v), 8);
}
void put_f64(std::ostream& os, double v) {
  os.write(reinterpret_cast<const char*>(&v), 8);
}
std::uint64_t get_u64(std::istream& is) {
  std::uint64_t v = 0;
  is.read(reinterpret_cast<char*>(&v), 8);
  return v;
}
double get_f64(std::istream& is) {
  double v = 0;
  is.read(reinterpret_cast<char*>(&v), 8);
  return v;
}
}  // namespace

void write_field_binary(const Field& f, std::ostream& os) {
  put_u64(os, static_cast<std::uint64_t>(f.grid().dim()));
  put_u64(os, static_cast<std::uint64_t>(f.grid().extent()));
  put_f64(os, f.grid().box_length());
  for (const auto& z : f.physical()) {
    put_f64(os, z.real());
    put_f64(os, z.imag());
  }
  if (!os) throw std::runtime_error("field binary write failed");
}

void write_field_binary(const Field& f, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open " + path);
  write_field_binary(f, os);
}

Field read_field_binary(std::istream& is) {
  const auto dim = static_cast<int>(get_u64(is));
  const auto n = static_cast<int>(get_u64(is));
  const double length = get_f64(is);
  if (!is) throw std::runtime_error("truncated field header");
  Grid g = make_grid(dim, n, length);
  std::vector<Complex> v(g.size());
  for (auto& z : v) {
    const double re = get_f64(is);
    const double im = get_f64(is);
    z = Complex{re, im};
  }
  if (!is) throw std::runtime_error("truncated field payload");
  return Field::from_physical(g, std::move(v));
}

Field read_field_binary(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open " + path);
  return read_field_binary(is);
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_field_csv(const Field& f, std::ostream& os) {
  const Grid& g = f.grid();
  if (g.dim() == 1)
    os << "i,re,im\n";
  else
    os << "i0,i1,re,im\n";
  auto v = f.physical();
  for (std::size_t i = 0; i < v.size(); ++i) {
    auto idx = g.unflat(i);
    os << idx[0];
    if (g.dim() == 2) os << ',' << idx[1];
    os << ',' << format_double(v[i].real()) << ',' << format_double(v[i].imag()) << '\n';
  }
  if (!os) throw std::runtime_error("field csv write failed");
}

void write_field_csv(const Field& f, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path);
  write_field_csv(f, os);
}

}  // namespace nlslab
