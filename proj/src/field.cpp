#include "music/solvers/field.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "music/common.hpp"

namespace music::solvers {

double FieldSeries::min_value() const {
  return *std::min_element(values.begin(), values.end());
}

double FieldSeries::max_value() const {
  return *std::max_element(values.begin(), values.end());
}

void FieldSeries::check_finite() const {
  for (double v : values)
    if (!std::isfinite(v))
      throw std::runtime_error("FieldSeries '" + name + "' contains a non-finite value");
}

namespace {

std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void write_dataset_dir(const std::string& dir, const DatasetFiles& data) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);
  std::ostringstream m;
  m << "music-dataset v1\n";
  m << "system = " << data.system << "\n";
  m << "seed = " << data.seed << "\n";
  for (const auto& [k, v] : data.metadata) m << k << " = " << v << "\n";
  for (const auto& f : data.fields) {
    const std::string file = f.name + ".bin";
    write_f64_file(dir + "/" + file, f.values);
    const GridSpec& g = f.grid;
    m << "field = " << f.name << " " << file << " nx=" << g.nx << " ny=" << g.ny
      << " nt=" << g.nt << " x0=" << fmt_double(g.x0) << " dx=" << fmt_double(g.dx)
      << " y0=" << fmt_double(g.y0) << " dy=" << fmt_double(g.dy)
      << " t0=" << fmt_double(g.t0) << " dt_save=" << fmt_double(g.dt_save)
      << " solver_dt=" << fmt_double(g.solver_dt)
      << " hash=" << hash_hex(hash_file(dir + "/" + file)) << "\n";
  }
  std::ofstream out(dir + "/manifest.txt", std::ios::trunc);
  if (!out) throw std::runtime_error("write_dataset_dir: cannot write manifest in " + dir);
  out << m.str();
}

DatasetFiles read_dataset_dir(const std::string& dir) {
  std::ifstream in(dir + "/manifest.txt");
  if (!in) throw std::runtime_error("read_dataset_dir: no manifest.txt in " + dir);
  std::string line;
  std::getline(in, line);
  if (line != "music-dataset v1")
    throw std::runtime_error("read_dataset_dir: unrecognized manifest header '" + line + "'");
  DatasetFiles data;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto eq = line.find(" = ");
    if (line.rfind("field = ", 0) == 0) {
      std::istringstream ls(line.substr(8));
      FieldSeries f;
      std::string file;
      ls >> f.name >> file;
      std::string kv;
      std::string hash_str;
      while (ls >> kv) {
        const auto p = kv.find('=');
        if (p == std::string::npos) continue;
        const std::string key = kv.substr(0, p), val = kv.substr(p + 1);
        GridSpec& g = f.grid;
        if (key == "nx") g.nx = std::stoi(val);
        else if (key == "ny") g.ny = std::stoi(val);
        else if (key == "nt") g.nt = std::stoi(val);
        else if (key == "x0") g.x0 = std::stod(val);
        else if (key == "dx") g.dx = std::stod(val);
        else if (key == "y0") g.y0 = std::stod(val);
        else if (key == "dy") g.dy = std::stod(val);
        else if (key == "t0") g.t0 = std::stod(val);
        else if (key == "dt_save") g.dt_save = std::stod(val);
        else if (key == "solver_dt") g.solver_dt = std::stod(val);
        else if (key == "hash") hash_str = val;
      }
      f.values = read_f64_file(dir + "/" + file);
      if (f.values.size() != f.grid.total_size())
        throw std::runtime_error("read_dataset_dir: size mismatch for field " + f.name);
      if (!hash_str.empty() && hash_hex(hash_file(dir + "/" + file)) != hash_str)
        throw std::runtime_error("read_dataset_dir: payload hash mismatch for field " + f.name);
      data.fields.push_back(std::move(f));
    } else if (eq != std::string::npos) {
      const std::string key = line.substr(0, eq), val = line.substr(eq + 3);
      if (key == "system") data.system = val;
      else if (key == "seed") data.seed = std::stoull(val);
      else data.metadata[key] = val;
    }
  }
  return data;
}

std::uint64_t dataset_digest(const std::string& dir) {
  std::uint64_t h = hash_file(dir + "/manifest.txt");
  const DatasetFiles d = read_dataset_dir(dir);
  for (const auto& f : d.fields) h = derive_seed(h, hash_file(dir + "/" + f.name + ".bin"));
  return h;
}

}  // namespace music::solvers
