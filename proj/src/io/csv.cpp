#include "trexkit/io/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "trexkit/errors.hpp"

namespace trexkit::io {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

bool parse_double(const std::string& raw, double& out) {
    const char* begin = raw.data();
    const char* end = raw.data() + raw.size();
    while (begin < end && (*begin == ' ' || *begin == '\t')) ++begin;
    while (end > begin && (end[-1] == ' ' || end[-1] == '\t' || end[-1] == '\r')) --end;
    if (begin == end) return false;
    const auto res = std::from_chars(begin, end, out);
    return res.ec == std::errc() && res.ptr == end;
}

std::vector<std::vector<double>> read_rows(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open file: " + path);

    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t line_no = 0;
    bool header_allowed = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line == "\r") continue;
        const auto fields = split_fields(line);
        std::vector<double> row(fields.size());
        bool ok = true;
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (!parse_double(fields[i], row[i])) {
                ok = false;
                break;
            }
        }
        if (!ok) {
            if (header_allowed) {  // single optional header row
                header_allowed = false;
                continue;
            }
            throw IoError(path + ":" + std::to_string(line_no) + ": non-numeric field");
        }
        header_allowed = false;
        if (!rows.empty() && row.size() != rows.front().size()) {
            throw IoError(path + ":" + std::to_string(line_no) + ": ragged row (expected " +
                          std::to_string(rows.front().size()) + " fields, got " +
                          std::to_string(row.size()) + ")");
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw IoError(path + ": no data rows");
    return rows;
}

}  // namespace

Eigen::MatrixXd read_matrix_csv(const std::string& path) {
    const auto rows = read_rows(path);
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()),
                      static_cast<Eigen::Index>(rows.front().size()));
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < rows[i].size(); ++j) {
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
        }
    }
    return m;
}

Eigen::VectorXd read_vector_csv(const std::string& path) {
    const Eigen::MatrixXd m = read_matrix_csv(path);
    if (m.cols() == 1) return m.col(0);
    if (m.rows() == 1) return m.row(0).transpose();
    throw IoError(path + ": expected a single column (or single row) of values");
}

namespace {

void write_double(std::ostream& out, double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    out.write(buf, res.ptr - buf);
}

}  // namespace

void write_matrix_csv(const std::string& path, const Eigen::MatrixXd& m,
                      const std::vector<std::string>& header) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write file: " + path);
    if (!header.empty()) {
        for (std::size_t j = 0; j < header.size(); ++j) {
            if (j) out << ',';
            out << header[j];
        }
        out << '\n';
    }
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j) out << ',';
            write_double(out, m(i, j));
        }
        out << '\n';
    }
}

void write_vector_csv(const std::string& path, const Eigen::VectorXd& v,
                      const std::string& header) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write file: " + path);
    if (!header.empty()) out << header << '\n';
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        write_double(out, v[i]);
        out << '\n';
    }
}

}  // namespace trexkit::io
