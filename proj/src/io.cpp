#include "degenfv/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "degenfv/error.hpp"

namespace degenfv {

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::kIo, "cannot write " + path.string());
  out.precision(17);
  return out;
}

}  // namespace

void write_field_csv(const std::filesystem::path& path, const CellField& field) {
  auto out = open_out(path);
  out << "x,u\n";
  for (std::size_t i = 0; i < field.values.size(); ++i) {
    out << field.grid.center(i) << ',' << field.values[i] << '\n';
  }
}

void write_runlog_csv(const std::filesystem::path& path, const SolutionRecord& rec) {
  auto out = open_out(path);
  out << "step,time,mass,left_flux,right_flux\n";
  for (const auto& s : rec.steps) {
    // + 0.0 turns -b(0) into 0.
    out << s.step << ',' << s.time << ',' << s.mass << ',' << s.left_flux + 0.0 << ','
        << s.right_flux + 0.0 << '\n';
  }
}

void write_face_flux_csv(const std::filesystem::path& path, const FaceFluxProfile& profile) {
  auto out = open_out(path);
  out << "x_face,flux\n";
  for (std::size_t k = 0; k < profile.values.size(); ++k) {
    out << profile.grid.face(k) << ',' << profile.values[k] << '\n';
  }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  auto out = open_out(path);
  out << text;
}

std::vector<double> read_column_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::kIo, "cannot read " + path.string());
  std::string line;
  std::getline(in, line);
  std::vector<double> values;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw Error(ErrorKind::kIo, "malformed CSV line: " + line);
    try {
      values.push_back(std::stod(line.substr(comma + 1)));
    } catch (const std::exception&) {
      throw Error(ErrorKind::kIo, "malformed CSV value: " + line);
    }
  }
  return values;
}

std::string snapshot_filename(double time) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "solution_%.6f.csv", time);
  return buf;
}

}  // namespace degenfv
