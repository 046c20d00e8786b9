#include "music/common.hpp"

#include <array>
#include <sstream>

namespace music {

std::uint64_t hash_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("hash_file: cannot open " + path);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  std::array<char, 1 << 16> buf;
  while (f) {
    f.read(buf.data(), buf.size());
    h = hash_bytes(buf.data(), static_cast<std::size_t>(f.gcount()), h);
  }
  return h;
}

std::uint64_t hash_csv_excluding(const std::string& path, const std::string& column) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("hash_csv_excluding: cannot open " + path);
  std::string header;
  if (!std::getline(f, header)) return hash_string("");
  // locate the column to drop
  int drop = -1, idx = 0;
  std::stringstream hs(header);
  std::string cell;
  while (std::getline(hs, cell, ',')) {
    if (cell == column) drop = idx;
    ++idx;
  }
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto hash_line = [&](const std::string& line) {
    if (drop < 0) {
      h = hash_bytes(line.data(), line.size(), h);
    } else {
      std::stringstream ls(line);
      std::string c;
      int i = 0;
      while (std::getline(ls, c, ',')) {
        if (i++ == drop) continue;
        h = hash_bytes(c.data(), c.size(), h);
        h = hash_bytes(",", 1, h);
      }
    }
    h = hash_bytes("\n", 1, h);
  };
  hash_line(header);
  std::string line;
  while (std::getline(f, line)) hash_line(line);
  return h;
}

void write_f64_le(std::ostream& os, std::span<const double> values) {
  if (host_is_little_endian()) {
    os.write(reinterpret_cast<const char*>(values.data()),
             static_cast<std::streamsize>(values.size() * 8));
    return;
  }
  for (double v : values) {
    std::uint64_t u;
    std::memcpy(&u, &v, 8);
    char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((u >> (8 * i)) & 0xff);
    os.write(b, 8);
  }
}

void read_f64_le(std::istream& is, std::span<double> values) {
  if (host_is_little_endian()) {
    is.read(reinterpret_cast<char*>(values.data()),
            static_cast<std::streamsize>(values.size() * 8));
    if (!is) throw std::runtime_error("read_f64_le: short read");
    return;
  }
  for (double& v : values) {
    char b[8];
    is.read(b, 8);
    if (!is) throw std::runtime_error("read_f64_le: short read");
    std::uint64_t u = 0;
    for (int i = 0; i < 8; ++i) u |= static_cast<std::uint64_t>(static_cast<unsigned char>(b[i])) << (8 * i);
    std::memcpy(&v, &u, 8);
  }
}

void write_f64_file(const std::string& path, std::span<const double> values) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("write_f64_file: cannot open " + path);
  write_f64_le(f, values);
  if (!f) throw std::runtime_error("write_f64_file: write failed for " + path);
}

std::vector<double> read_f64_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary | std::ios::ate);
  if (!f) throw std::runtime_error("read_f64_file: cannot open " + path);
  const auto bytes = static_cast<std::size_t>(f.tellg());
  if (bytes % 8 != 0) throw std::runtime_error("read_f64_file: size not a multiple of 8: " + path);
  f.seekg(0);
  std::vector<double> out(bytes / 8);
  read_f64_le(f, out);
  return out;
}

}  // namespace music
