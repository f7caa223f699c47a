#include "auvctl/csv_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "auvctl/errors.hpp"

namespace auvctl {

std::string format_double(double x) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

std::string Dataset::to_csv() const {
    std::ostringstream os;
    os << "t";
    for (Eigen::Index j = 0; j < u.cols(); ++j) os << ",u" << j;
    for (Eigen::Index j = 0; j < y.cols(); ++j) os << ",y" << j;
    os << "\n";
    for (Eigen::Index i = 0; i < u.rows(); ++i) {
        os << format_double(h * static_cast<double>(i));
        for (Eigen::Index j = 0; j < u.cols(); ++j) os << "," << format_double(u(i, j));
        for (Eigen::Index j = 0; j < y.cols(); ++j) os << "," << format_double(y(i, j));
        os << "\n";
    }
    return os.str();
}

void Dataset::write_csv(const std::filesystem::path& file) const {
    std::ofstream out(file, std::ios::binary);
    if (!out) throw ConfigError("cannot open for writing: " + file.string());
    out << to_csv();
}

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

double parse_double(const std::string& s, const std::string& ctx) {
    double v = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
        throw ConfigError("dataset: bad number '" + s + "' in " + ctx);
    }
    return v;
}

} // namespace

Dataset Dataset::read_csv(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw ConfigError("dataset file not found: " + file.string());
    std::string header;
    if (!std::getline(in, header)) throw ConfigError("dataset: empty file " + file.string());
    const auto cols = split(header, ',');
    if (cols.empty() || cols[0] != "t") {
        throw ConfigError("dataset: header must start with 't' in " + file.string());
    }
    int m = 0, p = 0;
    for (std::size_t i = 1; i < cols.size(); ++i) {
        if (cols[i].rfind("u", 0) == 0 && p == 0) ++m;
        else if (cols[i].rfind("y", 0) == 0) ++p;
        else throw ConfigError("dataset: unexpected column '" + cols[i] + "'");
    }
    if (m == 0 || p == 0) throw ConfigError("dataset: needs at least one u and one y column");

    std::vector<std::array<double, 1>> dummy;
    std::vector<double> ts;
    std::vector<double> uvals, yvals;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto f = split(line, ',');
        if (static_cast<int>(f.size()) != 1 + m + p) {
            throw ConfigError("dataset: row with wrong field count in " + file.string());
        }
        ts.push_back(parse_double(f[0], "t column"));
        for (int j = 0; j < m; ++j) uvals.push_back(parse_double(f[1 + j], "u column"));
        for (int j = 0; j < p; ++j) yvals.push_back(parse_double(f[1 + m + j], "y column"));
    }
    const Eigen::Index rows = static_cast<Eigen::Index>(ts.size());
    if (rows < 2) throw ConfigError("dataset: needs at least two rows in " + file.string());

    Dataset d;
    d.h = ts[1] - ts[0];
    d.u.resize(rows, m);
    d.y.resize(rows, p);
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (int j = 0; j < m; ++j) d.u(i, j) = uvals[i * m + j];
        for (int j = 0; j < p; ++j) d.y(i, j) = yvals[i * p + j];
    }
    return d;
}

} // namespace auvctl
