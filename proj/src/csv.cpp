#include "nlmc/csv.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "nlmc/errors.hpp"
#include "nlmc/version.hpp"

namespace nlmc {

int CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i)
    if (header[i] == name) return static_cast<int>(i);
  return -1;
}

void write_csv(const std::string& path, const CsvTable& table) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);  // binary: LF endings everywhere
    if (!out) throw config_error("csv: cannot open '" + tmp.string() + "' for writing");
    for (std::size_t i = 0; i < table.header.size(); ++i)
      out << (i ? "," : "") << table.header[i];
    out << '\n';
    char buf[64];
    for (const auto& row : table.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.17g", row[i]);
        out << (i ? "," : "") << buf;
      }
      out << '\n';
    }
    if (!out) throw config_error("csv: write failed for '" + tmp.string() + "'");
  }
  fs::rename(tmp, target);
}

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw config_error("csv: cannot open '" + path + "'");
  CsvTable table;
  std::string line;
  if (!std::getline(in, line)) throw config_error("csv: empty file '" + path + "'");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  {
    std::istringstream hs(line);
    std::string tok;
    while (std::getline(hs, tok, ',')) table.header.push_back(tok);
  }
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream rs(line);
    std::string tok;
    std::vector<double> row;
    while (std::getline(rs, tok, ',')) row.push_back(std::stod(tok));
    if (row.size() != table.header.size())
      throw config_error("csv: ragged row in '" + path + "'");
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::string hash_hex(unsigned long long h) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%016llx", h);
  return buf;
}

void write_metadata(const std::string& csv_path, const std::string& config_hash_hex,
                    unsigned long long seed, const std::vector<std::string>& notes) {
  namespace fs = std::filesystem;
  nlohmann::json meta;
  meta["config_hash"] = config_hash_hex;
  meta["seed"] = seed;
  meta["version"] = version_string();
  meta["notes"] = notes;
  const fs::path target(csv_path + ".meta.json");
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw config_error("metadata: cannot open '" + tmp.string() + "'");
    out << meta.dump(2) << '\n';
  }
  fs::rename(tmp, target);
}

}  // namespace nlmc
