#ifndef CARLAB_CSV_HPP
#define CARLAB_CSV_HPP

#include <fstream>
#include <string>
#include <vector>

#include "carlab/check_report.hpp"

namespace carlab {

/// Line-oriented CSV writer with deterministic number formatting.
class CsvFile {
  public:
    explicit CsvFile(const std::string& path);
    void header(const std::vector<std::string>& cols);
    void row(const std::vector<std::string>& cells);
    const std::string& path() const { return path_; }

  private:
    std::string path_;
    std::ofstream out_;
};

/// one row per sweep point per term, then a summary line
void write_check_report_csv(const std::string& path, const CheckReport& rep);

/// aggregates CSVs written by the commands into a pass/fail table keyed by
/// the tag column; returns the formatted table
std::string summarize_csv_dir(const std::string& dir, const std::string& out_path);

/// minimal standalone log-log SVG scatter/line plot with the data embedded
/// as comments
void write_loglog_svg(const std::string& path, const std::string& title,
                      const std::vector<double>& x, const std::vector<double>& y);

}  // namespace carlab

#endif
