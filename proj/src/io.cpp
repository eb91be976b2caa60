#include "tcomplete/io.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace tcomplete {

namespace {

constexpr std::array<char, 4> kT3bMagic{'T', '3', 'B', '1'};

void put_u64(std::ostream& out, std::uint64_t v) {
    std::array<unsigned char, 8> bytes{};
    for (int b = 0; b < 8; ++b)
        bytes[b] = static_cast<unsigned char>(v >> (8 * b));
    out.write(reinterpret_cast<const char*>(bytes.data()), 8);
}

bool get_u64(std::istream& in, std::uint64_t& v) {
    std::array<unsigned char, 8> bytes{};
    if (!in.read(reinterpret_cast<char*>(bytes.data()), 8))
        return false;
    v = 0;
    for (int b = 0; b < 8; ++b)
        v |= static_cast<std::uint64_t>(bytes[b]) << (8 * b);
    return true;
}

std::ifstream open_in(const std::string& path, std::ios::openmode mode = std::ios::in) {
    std::ifstream in(path, mode);
    if (!in)
        throw IoFailure("cannot open '" + path + "' for reading");
    return in;
}

std::ofstream open_out(const std::string& path, std::ios::openmode mode = std::ios::out) {
    std::ofstream out(path, mode);
    if (!out)
        throw IoFailure("cannot open '" + path + "' for writing");
    return out;
}

} // namespace

void write_t3b(std::ostream& out, const Tensor3d& t) {
    out.write(kT3bMagic.data(), kT3bMagic.size());
    put_u64(out, static_cast<std::uint64_t>(t.n1()));
    put_u64(out, static_cast<std::uint64_t>(t.n2()));
    put_u64(out, static_cast<std::uint64_t>(t.n3()));
    const double* p = t.data();
    for (Index i = 0; i < t.size(); ++i)
        put_u64(out, std::bit_cast<std::uint64_t>(p[i]));
    if (!out)
        throw IoFailure("T3B write failed");
}

Tensor3d read_t3b(std::istream& in) {
    std::array<char, 4> magic{};
    if (!in.read(magic.data(), magic.size()) || magic != kT3bMagic)
        throw UnsupportedFormat("not a T3B file (bad magic)");
    std::array<std::uint64_t, 3> dims{};
    for (auto& d : dims)
        if (!get_u64(in, d))
            throw UnsupportedFormat("T3B header truncated");
    constexpr std::uint64_t kMaxDim = std::uint64_t{1} << 31;
    for (auto d : dims)
        if (d < 1 || d > kMaxDim)
            throw UnsupportedFormat("T3B dimension out of range");
    Tensor3d t(static_cast<Index>(dims[0]), static_cast<Index>(dims[1]),
               static_cast<Index>(dims[2]));
    double* p = t.data();
    for (Index i = 0; i < t.size(); ++i) {
        std::uint64_t bits = 0;
        if (!get_u64(in, bits))
            throw UnsupportedFormat("T3B payload truncated: expected " + std::to_string(t.size()) +
                                    " values, got " + std::to_string(i));
        p[i] = std::bit_cast<double>(bits);
    }
    if (!t.allFinite())
        throw UnsupportedFormat("T3B payload contains non-finite values");
    return t;
}

void save_t3b(const std::string& path, const Tensor3d& t) {
    auto out = open_out(path, std::ios::binary);
    write_t3b(out, t);
}

Tensor3d load_t3b(const std::string& path) {
    auto in = open_in(path, std::ios::binary);
    return read_t3b(in);
}

void write_mask(std::ostream& out, const TubalMask& mask) {
    out << mask.rows() << ' ' << mask.cols() << '\n';
    for (const auto& [i, j] : mask.pairs())
        out << i + 1 << ' ' << j + 1 << '\n';
    if (!out)
        throw IoFailure("mask write failed");
}

TubalMask read_mask(std::istream& in) {
    std::string line;
    Index n1 = 0, n2 = 0;
    if (!std::getline(in, line))
        throw UnsupportedFormat("mask file is empty");
    {
        std::istringstream header(line);
        if (!(header >> n1 >> n2) || n1 < 1 || n2 < 1)
            throw UnsupportedFormat("mask header must be 'n1 n2' with positive sizes");
    }
    std::vector<std::pair<Index, Index>> pairs;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos)
            continue;
        std::istringstream row(line);
        Index i = 0, j = 0;
        std::string rest;
        if (!(row >> i >> j) || (row >> rest))
            throw UnsupportedFormat("mask line " + std::to_string(lineno) + " is not 'i j'");
        pairs.emplace_back(i - 1, j - 1);
    }
    try {
        return TubalMask::from_pairs(n1, n2, pairs);
    } catch (const InvalidArgument& e) {
        throw UnsupportedFormat(std::string("mask file: ") + e.what());
    }
}

void save_mask(const std::string& path, const TubalMask& mask) {
    auto out = open_out(path);
    write_mask(out, mask);
}

TubalMask load_mask(const std::string& path) {
    auto in = open_in(path);
    return read_mask(in);
}

std::string format_double(double v) {
    if (std::isnan(v))
        return "nan";
    if (std::isinf(v))
        return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void write_metric_header(std::ostream& out) { out << "method,ratio,trial,re,psnr,time_s,iters\n"; }

void write_metric_row(std::ostream& out, const MetricRow& row) {
    out << row.method << ',' << format_ratio(row.ratio) << ',' << row.trial << ','
        << format_double(row.re) << ',' << format_double(row.psnr) << ','
        << format_double(row.time_s) << ',' << row.iters << '\n';
}

std::set<SweepKey> completed_rows(const std::string& path) {
    std::set<SweepKey> keys;
    std::ifstream in(path);
    if (!in)
        return keys;
    std::string line;
    std::getline(in, line); // header
    while (std::getline(in, line)) {
        std::istringstream row(line);
        std::string method, ratio, trial, re;
        if (!std::getline(row, method, ',') || !std::getline(row, ratio, ',') ||
            !std::getline(row, trial, ',') || !std::getline(row, re, ','))
            continue;
        if (re == "nan") // failed rows are retried
            continue;
        try {
            keys.emplace(method, ratio, std::stoi(trial));
        } catch (const std::exception&) {
            continue;
        }
    }
    return keys;
}

void write_admm_history(std::ostream& out, const std::vector<AdmmRecord>& history) {
    out << "iter,rel_change,re\n";
    for (const auto& rec : history) {
        out << rec.iter << ',' << format_double(rec.rel_change) << ',';
        if (rec.re)
            out << format_double(*rec.re);
        out << '\n';
    }
}

void write_slice_history(std::ostream& out, const std::vector<std::vector<double>>& slice_errors) {
    out << "slice,iter,e\n";
    for (std::size_t k = 0; k < slice_errors.size(); ++k)
        for (std::size_t it = 0; it < slice_errors[k].size(); ++it)
            out << k << ',' << it << ',' << format_double(slice_errors[k][it]) << '\n';
}

} // namespace tcomplete
