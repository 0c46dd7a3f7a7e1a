#include "carlab/csv.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <sstream>
#include <stdexcept>

#include "carlab/util.hpp"

namespace carlab {

CsvFile::CsvFile(const std::string& path) : path_(path), out_(path) {
    if (!out_) throw std::runtime_error("CsvFile: cannot open " + path);
}

void CsvFile::header(const std::vector<std::string>& cols) { row(cols); }

void CsvFile::row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out_ << ',';
        out_ << cells[i];
    }
    out_ << '\n';
}

void write_check_report_csv(const std::string& path, const CheckReport& rep) {
    CsvFile csv(path);
    csv.header({"tag", "tau", "term", "log10_value", "ratio", "passed"});
    for (const CheckRow& r : rep.rows) {
        for (const auto& [name, lg] : r.lhs_terms_log10)
            csv.row({rep.tag, num_str(r.tau), name, num_str(lg), "", ""});
        csv.row({rep.tag, num_str(r.tau), "lhs_total", num_str(r.lhs_total_log10), "", ""});
        csv.row({rep.tag, num_str(r.tau), "rhs", num_str(r.rhs_log10), num_str(r.ratio), ""});
    }
    csv.row({rep.tag, "", "summary:C=" + num_str(rep.fitted_C) +
                              ";tau0=" + num_str(rep.tau0_hat) +
                              ";stabilized=" + (rep.stabilized ? "1" : "0"),
             "", num_str(rep.fitted_C), rep.passed ? "1" : "0"});
}

std::string summarize_csv_dir(const std::string& dir, const std::string& out_path) {
    namespace fs = std::filesystem;
    struct Tally {
        int pass = 0, fail = 0, rows = 0;
    };
    std::map<std::string, Tally> tallies;
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.is_regular_file() && e.path().extension() == ".csv" &&
            e.path().filename() != fs::path(out_path).filename())
            files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
        std::ifstream in(f);
        std::string line;
        bool first = true;
        int pass_col = -1;
        while (std::getline(in, line)) {
            std::vector<std::string> cells;
            std::istringstream ls(line);
            std::string cell;
            while (std::getline(ls, cell, ',')) cells.push_back(cell);
            if (cells.empty()) continue;
            if (first) {
                first = false;
                for (std::size_t i = 0; i < cells.size(); ++i)
                    if (cells[i] == "passed") pass_col = static_cast<int>(i);
                continue;
            }
            Tally& t = tallies[cells[0]];
            ++t.rows;
            if (pass_col >= 0 && static_cast<std::size_t>(pass_col) < cells.size()) {
                if (cells[static_cast<std::size_t>(pass_col)] == "1") ++t.pass;
                if (cells[static_cast<std::size_t>(pass_col)] == "0") ++t.fail;
            }
        }
    }
    CsvFile csv(out_path);
    csv.header({"tag", "rows", "pass", "fail"});
    std::ostringstream table;
    table << "tag              rows  pass  fail\n";
    for (const auto& [tag, t] : tallies) {
        csv.row({tag, std::to_string(t.rows), std::to_string(t.pass), std::to_string(t.fail)});
        table << tag;
        for (std::size_t i = tag.size(); i < 17; ++i) table << ' ';
        table << t.rows << "     " << t.pass << "     " << t.fail << "\n";
    }
    return table.str();
}

void write_loglog_svg(const std::string& path, const std::string& title,
                      const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.empty())
        throw std::invalid_argument("write_loglog_svg: mismatched or empty data");
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_loglog_svg: cannot open " + path);
    const int W = 640, H = 480, M = 60;
    std::vector<double> lx(x.size()), ly(y.size());
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (std::size_t i = 0; i < x.size(); ++i) {
        lx[i] = std::log10(x[i]);
        ly[i] = std::log10(std::max(y[i], 1e-300));
        xmin = std::min(xmin, lx[i]);
        xmax = std::max(xmax, lx[i]);
        ymin = std::min(ymin, ly[i]);
        ymax = std::max(ymax, ly[i]);
    }
    if (xmax - xmin < 1e-12) xmax = xmin + 1.0;
    if (ymax - ymin < 1e-12) ymax = ymin + 1.0;
    auto px = [&](double v) { return M + (v - xmin) / (xmax - xmin) * (W - 2 * M); };
    auto py = [&](double v) { return H - M - (v - ymin) / (ymax - ymin) * (H - 2 * M); };
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
        << "\">\n";
    out << "<!-- data (log10 x, log10 y):\n";
    for (std::size_t i = 0; i < lx.size(); ++i)
        out << num_str(lx[i]) << "," << num_str(ly[i]) << "\n";
    out << "-->\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">"
        << title << "</text>\n";
    out << "<line x1=\"" << M << "\" y1=\"" << H - M << "\" x2=\"" << W - M << "\" y2=\""
        << H - M << "\" stroke=\"black\"/>\n";
    out << "<line x1=\"" << M << "\" y1=\"" << M << "\" x2=\"" << M << "\" y2=\"" << H - M
        << "\" stroke=\"black\"/>\n";
    out << "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < lx.size(); ++i) out << px(lx[i]) << "," << py(ly[i]) << " ";
    out << "\"/>\n";
    for (std::size_t i = 0; i < lx.size(); ++i)
        out << "<circle cx=\"" << px(lx[i]) << "\" cy=\"" << py(ly[i])
            << "\" r=\"3\" fill=\"crimson\"/>\n";
    out << "</svg>\n";
}

}  // namespace carlab
