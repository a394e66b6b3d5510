#include "spdclat/matrix_io.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>
#include <system_error>

namespace spdclat {

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

void write_text_atomic(const std::filesystem::path& path, const std::string& content) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out << content;
        out.flush();
        if (!out) throw std::runtime_error("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

std::string csv_real(const Eigen::MatrixXd& m) {
    std::string out;
    out.reserve(static_cast<std::size_t>(m.size()) * 20);
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            if (c > 0) out += ',';
            out += format_double(m(r, c));
        }
        out += '\n';
    }
    return out;
}

std::string csv_complex(const Eigen::MatrixXcd& m) {
    std::string out;
    out.reserve(static_cast<std::size_t>(m.size()) * 40);
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            if (c > 0) out += ',';
            out += format_double(m(r, c).real());
            out += ',';
            out += format_double(m(r, c).imag());
        }
        out += '\n';
    }
    return out;
}

std::string csv_vector(const Eigen::VectorXd& v) {
    std::string out;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        out += format_double(v(i));
        out += '\n';
    }
    return out;
}

} // namespace spdclat
