#pragma once

#include <filesystem>
#include <string>

#include "bsq/field.hpp"

namespace bsq {

// On-disk field snapshot: `<stem>.bin` holds n*n little-endian float64 physical
// samples (row-major, x1 index major), `<stem>.json` holds n, period, name and
// time, plus the producing config hash when given.
struct Snapshot {
  SpectralField field;
  std::string name;
  double time = 0.0;
};

void write_snapshot(const std::filesystem::path& stem, const SpectralField& field,
                    const std::string& name, double time,
                    const std::string& config_hash = {});
Snapshot read_snapshot(const std::filesystem::path& stem);

}  // namespace bsq
