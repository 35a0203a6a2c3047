#include "covparam/matrix_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "covparam/errors.hpp"

namespace covparam {

std::string format_double(double value) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", value);
    return buf;
}

Eigen::MatrixXd read_matrix_csv(std::istream& in, const std::string& origin) {
    std::vector<std::vector<double>> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<double> row;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            try {
                std::size_t used = 0;
                const double v = std::stod(cell, &used);
                while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used])))
                    ++used;
                if (used != cell.size()) throw std::invalid_argument(cell);
                row.push_back(v);
            } catch (const std::exception&) {
                throw ValidationError(origin + ":" + std::to_string(lineno) +
                                      ": cannot parse '" + cell + "' as a number");
            }
        }
        if (!rows.empty() && row.size() != rows.front().size())
            throw ValidationError(origin + ":" + std::to_string(lineno) +
                                  ": ragged row (expected " +
                                  std::to_string(rows.front().size()) + " values)");
        rows.push_back(std::move(row));
    }
    if (rows.empty() || rows.front().empty())
        throw ValidationError(origin + ": no matrix data");

    Eigen::MatrixXd m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j)
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    return m;
}

Eigen::MatrixXd load_matrix_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open '" + path + "' for reading");
    return read_matrix_csv(in, path);
}

void write_matrix_csv(std::ostream& out, const Eigen::MatrixXd& m) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j > 0) out << ',';
            out << format_double(m(i, j));
        }
        out << '\n';
    }
}

void save_matrix_csv(const std::string& path, const Eigen::MatrixXd& m) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot open '" + path + "' for writing");
    write_matrix_csv(out, m);
}

}  // namespace covparam
