#ifndef NLMC_CSV_HPP
#define NLMC_CSV_HPP

#include <string>
#include <vector>

namespace nlmc {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  int column(const std::string& name) const;  // -1 when absent
};

// Writes header + rows with 17 significant digits and LF line endings,
// through a temp file renamed into place so failures leave no partial output.
void write_csv(const std::string& path, const CsvTable& table);

CsvTable read_csv(const std::string& path);

// Sidecar provenance record (JSON) next to an output file.
void write_metadata(const std::string& csv_path, const std::string& config_hash_hex,
                    unsigned long long seed, const std::vector<std::string>& notes);

std::string hash_hex(unsigned long long h);

}  // namespace nlmc

#endif  // NLMC_CSV_HPP
