#pragma once

#include <filesystem>
#include <string>

#include "photon/wavefunction.hpp"

namespace photon {

// Portable text format: one JSON header line (grid spec, gauge, time),
// then CSV rows `i,j,l,ok,re0,im0,...` for every grid point.
void save_state(const TwoComponentWavefunction& ft,
                const std::filesystem::path& path);
void save_state(const VectorWavefunction& f, const std::filesystem::path& path);

TwoComponentWavefunction load_two_component(const std::filesystem::path& path);
VectorWavefunction load_vector(const std::filesystem::path& path);

// write-to-temp-then-rename
void atomic_write(const std::filesystem::path& path, const std::string& body);

}  // namespace photon
