#include "bsq/snapshot.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>

#include <json.hpp>

#include "bsq/error.hpp"

namespace bsq {
namespace {

std::filesystem::path with_suffix(std::filesystem::path stem, const char* suffix) {
  stem += suffix;
  return stem;
}

}  // namespace

void write_snapshot(const std::filesystem::path& stem, const SpectralField& field,
                    const std::string& name, double time,
                    const std::string& config_hash) {
  static_assert(std::endian::native == std::endian::little, "snapshot writer assumes little-endian host");
  const auto samples = field.to_physical();
  const auto bin = with_suffix(stem, ".bin");
  std::ofstream out(bin, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + bin.string() + " for writing");
  out.write(reinterpret_cast<const char*>(samples.data()),
            static_cast<std::streamsize>(samples.size() * sizeof(double)));
  if (!out) throw std::runtime_error("write failed: " + bin.string());

  nlohmann::json meta = {{"n", field.grid().n()},
                         {"period", Grid::length()},
                         {"field", name},
                         {"time", time},
                         {"dtype", "float64"},
                         {"byte_order", "little"},
                         {"layout", "row-major, index a*n+b with a along x1"}};
  if (!config_hash.empty()) meta["config_hash"] = config_hash;
  const auto js = with_suffix(stem, ".json");
  std::ofstream mo(js);
  if (!mo) throw std::runtime_error("cannot open " + js.string() + " for writing");
  mo << meta.dump(2) << '\n';
}

Snapshot read_snapshot(const std::filesystem::path& stem) {
  const auto js = with_suffix(stem, ".json");
  std::ifstream mi(js);
  if (!mi) throw InputError("cannot open snapshot metadata " + js.string());
  nlohmann::json meta;
  try {
    meta = nlohmann::json::parse(mi);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(js.string() + ": " + e.what());
  }
  const Grid grid(meta.at("n").get<int>());
  if (std::abs(meta.value("period", Grid::length()) - Grid::length()) > 1e-12) {
    throw InputError(js.string() + ": only period 2*pi is supported");
  }
  const auto bin = with_suffix(stem, ".bin");
  std::ifstream in(bin, std::ios::binary | std::ios::ate);
  if (!in) throw InputError("cannot open snapshot data " + bin.string());
  const auto bytes = static_cast<std::size_t>(in.tellg());
  if (bytes != grid.size() * sizeof(double)) {
    throw InputError(bin.string() + ": size " + std::to_string(bytes) + " does not match n=" +
                     std::to_string(grid.n()));
  }
  in.seekg(0);
  std::vector<double> samples(grid.size());
  in.read(reinterpret_cast<char*>(samples.data()), static_cast<std::streamsize>(bytes));
  return {SpectralField::from_physical(grid, samples), meta.value("field", std::string{}),
          meta.value("time", 0.0)};
}

}  // namespace bsq
