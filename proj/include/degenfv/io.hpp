#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "degenfv/fv_solver.hpp"
#include "degenfv/stationary.hpp"

namespace degenfv {

/// Cell centres and values, header `x,u`.
void write_field_csv(const std::filesystem::path& path, const CellField& field);
/// Header `step,time,mass,left_flux,right_flux`.
void write_runlog_csv(const std::filesystem::path& path, const SolutionRecord& rec);
/// Header `x_face,flux`.
void write_face_flux_csv(const std::filesystem::path& path, const FaceFluxProfile& profile);
void write_text(const std::filesystem::path& path, const std::string& text);

/// Second column of a two-column CSV with a header line.
std::vector<double> read_column_csv(const std::filesystem::path& path);

/// `solution_<time>.csv` with the time printed in fixed notation.
std::string snapshot_filename(double time);

}  // namespace degenfv
