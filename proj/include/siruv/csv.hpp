#ifndef SIRUV_CSV_HPP
#define SIRUV_CSV_HPP

#include <filesystem>

#include "siruv/trajectory.hpp"

namespace siruv {

/**
 * Writes a trajectory as CSV with header "t,patch,S,I,R,U,V", one row per
 * (sample time, patch), LF line endings, values rendered with 17 significant
 * digits so a re-read reproduces every double bit-exactly.
 */
void write_trajectory(const Trajectory& traj, const std::filesystem::path& path);

/// Reads a trajectory CSV written by write_trajectory. The file format does
/// not carry the model kind, so the caller supplies it.
Trajectory read_trajectory(const std::filesystem::path& path, ModelKind model);

} // namespace siruv

#endif
