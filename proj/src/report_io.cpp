#include "bsq/report_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "bsq/error.hpp"

namespace bsq {

namespace fs = std::filesystem;

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

void ensure_parent(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
}

}  // namespace

std::string records_to_csv(const std::vector<EstimateRecord>& records) {
  std::string out = std::string(kCsvHeader) + "\n";
  for (const auto& r : records) {
    for (const auto& s : r.samples) {
      out += r.check_id + "," + num(s.t) + "," + num(s.lhs) + "," + num(s.rhs) + "," + num(s.ratio) + "," +
             std::to_string(r.meta.grid_n) + "," + num(r.meta.kappa) + "," + r.meta.gamma_name + "," +
             num(r.meta.p0) + "," + num(r.meta.p1) + "," + std::to_string(r.meta.seed) + "\n";
    }
  }
  return out;
}

void write_records_csv(const fs::path& path, const std::vector<EstimateRecord>& records) {
  ensure_parent(path);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << records_to_csv(records);
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

std::vector<EstimateRecord> read_records_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read " + path.string());
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw InputError(path.string() + ": unexpected CSV header");
  std::vector<EstimateRecord> records;
  std::map<std::string, std::size_t> index;
  long row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != 11) throw InputError(path.string() + ": row " + std::to_string(row) + " has wrong width");
    try {
      auto [it, fresh] = index.try_emplace(cells[0], records.size());
      if (fresh) {
        EstimateRecord r;
        r.check_id = cells[0];
        r.meta.grid_n = std::stoi(cells[5]);
        r.meta.kappa = std::stod(cells[6]);
        r.meta.gamma_name = cells[7];
        r.meta.p0 = std::stod(cells[8]);
        r.meta.p1 = std::stod(cells[9]);
        r.meta.seed = std::stoull(cells[10]);
        records.push_back(r);
      }
      records[it->second].samples.push_back(
          {std::stod(cells[1]), std::stod(cells[2]), std::stod(cells[3]), std::stod(cells[4])});
    } catch (const std::logic_error&) {
      throw InputError(path.string() + ": row " + std::to_string(row) + " is malformed");
    }
  }
  return records;
}

void write_summary_json(const fs::path& path, nlohmann::json summary, const std::string& config_hash) {
  summary["config_hash"] = config_hash;
  ensure_parent(path);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << summary.dump(2) << "\n";
}

std::string text_summary(const fs::path& input_dir) {
  if (!fs::is_directory(input_dir)) throw InputError("not a directory: " + input_dir.string());
  std::vector<fs::path> files;
  for (const auto& e : fs::recursive_directory_iterator(input_dir)) {
    if (e.is_regular_file() && e.path().extension() == ".json" && e.path().filename().string().rfind("summary", 0) == 0) {
      files.push_back(e.path());
    }
  }
  std::sort(files.begin(), files.end());
  std::ostringstream os;
  if (files.empty()) {
    os << "no records\n";
    return os.str();
  }
  for (const auto& f : files) {
    nlohmann::json j;
    try {
      std::ifstream in(f);
      j = nlohmann::json::parse(in);
    } catch (const std::exception&) {
      os << fs::relative(f, input_dir).string() << ": unreadable, skipped\n";
      continue;
    }
    os << fs::relative(f, input_dir).string() << "  hash " << j.value("config_hash", "?") << "\n";
    if (!j.contains("checks") || !j["checks"].is_object()) continue;
    os << "  " << std::left << std::setw(26) << "check" << std::setw(16) << "sup ratio" << std::setw(16)
       << "threshold" << "status\n";
    for (const auto& [id, c] : j["checks"].items()) {
      std::ostringstream sup, thr;
      sup << std::setprecision(6) << c.value("empirical_constant", 0.0);
      if (c.contains("threshold") && c["threshold"].is_number()) {
        thr << std::setprecision(6) << c["threshold"].get<double>();
      } else {
        thr << "-";
      }
      std::string status = "monitor";
      if (c.contains("pass") && c["pass"].is_boolean()) status = c["pass"].get<bool>() ? "pass" : "FAIL";
      os << "  " << std::left << std::setw(26) << id << std::setw(16) << sup.str() << std::setw(16) << thr.str()
         << status << "\n";
    }
  }
  return os.str();
}

}  // namespace bsq
