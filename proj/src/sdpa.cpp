#include "ctheta/errors.hpp"
#include "ctheta/theta.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace ctheta {

namespace {

constexpr double kEntryCutoff = 1e-14;
constexpr double kRealDataTolerance = 1e-12;
constexpr const char* kNegatedNote = "* objective negated: the original problem minimizes";

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

bool proportional(const SdpMatrix& a, const SdpMatrix& b) {
    if (a.entries.size() != b.entries.size() || a.entries.empty()) return false;
    const double ratio = b.entries.front().value / a.entries.front().value;
    for (std::size_t i = 0; i < a.entries.size(); ++i) {
        const auto& x = a.entries[i];
        const auto& y = b.entries[i];
        if (x.block != y.block || x.row != y.row || x.col != y.col) return false;
        if (std::abs(x.value * ratio - y.value) > kRealDataTolerance * (1.0 + std::abs(y.value))) return false;
    }
    return true;
}

}  // namespace

void SdpMatrix::add(std::size_t block, std::size_t row, std::size_t col, double value) {
    if (row > col) std::swap(row, col);
    entries.push_back({block, row, col, value});
}

void SdpMatrix::canonicalize() {
    std::sort(entries.begin(), entries.end());
    std::vector<SdpEntry> merged;
    for (const auto& e : entries) {
        if (!merged.empty() && merged.back().block == e.block && merged.back().row == e.row && merged.back().col == e.col) {
            merged.back().value += e.value;
        } else {
            merged.push_back(e);
        }
    }
    std::erase_if(merged, [](const SdpEntry& e) { return std::abs(e.value) < kEntryCutoff; });
    entries = std::move(merged);
}

SdpInstance build_sdp_A(const CayleyGraphSpec& spec, std::size_t max_order) {
    const std::size_t n = spec.group.order();
    if (n > max_order) {
        throw SizeLimit("formulation (A) for |G| = " + std::to_string(n) + " exceeds the limit of " + std::to_string(max_order));
    }
    const Graph graph = build_cayley(spec.connection);
    SdpInstance sdp;
    sdp.block_sizes = {n};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) sdp.objective.add(0, i, j, 1.0);
    sdp.objective.canonicalize();

    SdpMatrix trace;
    for (std::size_t i = 0; i < n; ++i) trace.add(0, i, i, 1.0);
    trace.canonicalize();
    sdp.constraints.push_back(std::move(trace));
    sdp.rhs.push_back(1.0);
    for (auto [u, v] : graph.edges()) {
        SdpMatrix edge;
        edge.add(0, u, v, 0.5);
        sdp.constraints.push_back(std::move(edge));
        sdp.rhs.push_back(0.0);
    }
    return sdp;
}

SdpInstance build_sdp_C(const CayleyGraphSpec& spec, const IrrepMatrices& irreps) {
    const FiniteGroup& group = spec.group;
    if (!group.same_group(irreps.group)) throw InvalidArgument("irreps belong to a different group");
    const std::string failure = check_irrep_matrices(irreps);
    if (!failure.empty()) throw InvalidArgument("irrep data: " + failure);

    const std::size_t count = irreps.irreps.size();
    std::vector<bool> realified(count, false);
    std::optional<std::size_t> trivial;
    SdpInstance sdp;
    for (std::size_t r = 0; r < count; ++r) {
        const Irrep& irrep = irreps.irreps[r];
        const auto d = static_cast<std::size_t>(irrep.degree);
        bool real = true, is_trivial = d == 1;
        for (const auto& m : irrep.matrices)
            for (const auto& z : m.data()) {
                real = real && std::abs(z.imag()) <= kRealDataTolerance;
                if (d == 1) is_trivial = is_trivial && std::abs(z - Complex(1.0, 0.0)) <= kRealDataTolerance;
            }
        realified[r] = d >= 2 && !real;
        sdp.block_sizes.push_back(realified[r] ? 2 * d : d);
        if (is_trivial && !trivial) trivial = r;
    }
    if (!trivial) throw InvalidArgument("irrep data has no trivial representation");
    sdp.objective.add(*trivial, 0, 0, 1.0);
    sdp.objective.canonicalize();

    SdpMatrix norm;
    for (std::size_t r = 0; r < count; ++r) {
        const double d = irreps.irreps[r].degree;
        const double diag = realified[r] ? d / 2.0 : d;
        for (std::size_t i = 0; i < sdp.block_sizes[r]; ++i) norm.add(r, i, i, diag);
    }
    norm.canonicalize();
    sdp.constraints.push_back(std::move(norm));
    sdp.rhs.push_back(static_cast<double>(group.order()));

    std::vector<SdpMatrix> rows;
    for (Element x : spec.connection.elements()) {
        if (group.invert(x) < x) continue;
        SdpMatrix re, im;
        for (std::size_t r = 0; r < count; ++r) {
            const Irrep& irrep = irreps.irreps[r];
            const auto d = static_cast<std::size_t>(irrep.degree);
            const double w = irrep.degree;
            const auto& b = irrep.matrices[x];
            if (!realified[r]) {
                // Re<A,B> = A . sym(Re B),  Im<A,B> = A . sym(-Im B).
                for (std::size_t i = 0; i < d; ++i)
                    for (std::size_t j = i; j < d; ++j) {
                        re.add(r, i, j, w * (b(i, j).real() + b(j, i).real()) / 2.0);
                        im.add(r, i, j, -w * (b(i, j).imag() + b(j, i).imag()) / 2.0);
                    }
                continue;
            }
            // Re<A,B> = R(A) . sym(R(B))/2 and Im<A,B> = R(A) . sym(R(iB))/2
            // with R(X + iY) = [[X, -Y], [Y, X]].
            auto realify = [d](const DenseMatrix<Complex>& z) {
                DenseMatrix<double> out(2 * d, 2 * d, 0.0);
                for (std::size_t i = 0; i < d; ++i)
                    for (std::size_t j = 0; j < d; ++j) {
                        out(i, j) = z(i, j).real();
                        out(i + d, j + d) = z(i, j).real();
                        out(i, j + d) = -z(i, j).imag();
                        out(i + d, j) = z(i, j).imag();
                    }
                return out;
            };
            DenseMatrix<Complex> ib(d, d);
            for (std::size_t i = 0; i < d; ++i)
                for (std::size_t j = 0; j < d; ++j) ib(i, j) = Complex(0.0, 1.0) * b(i, j);
            const auto rb = realify(b);
            const auto rib = realify(ib);
            for (std::size_t i = 0; i < 2 * d; ++i)
                for (std::size_t j = i; j < 2 * d; ++j) {
                    re.add(r, i, j, w * (rb(i, j) + rb(j, i)) / 4.0);
                    im.add(r, i, j, w * (rib(i, j) + rib(j, i)) / 4.0);
                }
        }
        re.canonicalize();
        im.canonicalize();
        rows.push_back(std::move(re));
        rows.push_back(std::move(im));
    }
    for (auto& row : rows) {
        if (row.entries.empty()) continue;
        bool duplicate = false;
        for (std::size_t i = 1; i < sdp.constraints.size() && !duplicate; ++i) duplicate = proportional(sdp.constraints[i], row);
        if (duplicate) continue;
        sdp.constraints.push_back(std::move(row));
        sdp.rhs.push_back(0.0);
    }
    return sdp;
}

void write_sdpa(std::ostream& out, const SdpInstance& sdp) {
    out << "* cayley-theta semidefinite program, SDPA sparse format\n";
    out << "* convention: maximize F0.Y subject to Fi.Y = ci (i = 1..m), Y block diagonal and psd\n";
    if (!sdp.maximize) out << kNegatedNote << '\n';
    out << sdp.constraints.size() << '\n' << sdp.block_sizes.size() << '\n';
    for (std::size_t b = 0; b < sdp.block_sizes.size(); ++b) out << (b ? " " : "") << sdp.block_sizes[b];
    out << '\n';
    for (std::size_t i = 0; i < sdp.rhs.size(); ++i) out << (i ? " " : "") << format_double(sdp.rhs[i]);
    out << '\n';
    auto emit = [&](std::size_t matno, const SdpMatrix& m) {
        for (const auto& e : m.entries) {
            const double v = matno == 0 && !sdp.maximize ? -e.value : e.value;
            out << matno << ' ' << e.block + 1 << ' ' << e.row + 1 << ' ' << e.col + 1 << ' ' << format_double(v) << '\n';
        }
    };
    emit(0, sdp.objective);
    for (std::size_t i = 0; i < sdp.constraints.size(); ++i) emit(i + 1, sdp.constraints[i]);
}

void export_sdpa(const SdpInstance& sdp, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    write_sdpa(out, sdp);
    out.flush();
    if (!out) throw IoError("failed writing '" + path + "'");
}

SdpInstance read_sdpa(std::istream& in) {
    SdpInstance sdp;
    std::ostringstream body;
    std::string line;
    while (std::getline(in, line)) {
        if (line == kNegatedNote) sdp.maximize = false;
        if (!line.empty() && (line[0] == '*' || line[0] == '"')) continue;
        for (char& ch : line)
            if (ch == ',' || ch == '{' || ch == '}' || ch == '(' || ch == ')') ch = ' ';
        body << line << '\n';
    }
    std::istringstream data(body.str());
    long long m = -1, blocks = -1;
    if (!(data >> m >> blocks) || m < 0 || blocks < 1) throw InvalidArgument("SDPA: bad constraint or block count");
    for (long long b = 0; b < blocks; ++b) {
        long long size = 0;
        if (!(data >> size) || size <= 0) throw InvalidArgument("SDPA: bad block size (diagonal blocks are not supported)");
        sdp.block_sizes.push_back(static_cast<std::size_t>(size));
    }
    for (long long i = 0; i < m; ++i) {
        double c = 0;
        if (!(data >> c)) throw InvalidArgument("SDPA: short right-hand side vector");
        sdp.rhs.push_back(c);
    }
    sdp.constraints.resize(static_cast<std::size_t>(m));
    long long matno = 0, block = 0, row = 0, col = 0;
    double value = 0;
    while (data >> matno >> block >> row >> col >> value) {
        if (matno < 0 || matno > m || block < 1 || block > blocks) throw InvalidArgument("SDPA: entry index out of range");
        const auto size = static_cast<long long>(sdp.block_sizes[static_cast<std::size_t>(block - 1)]);
        if (row < 1 || col < 1 || row > size || col > size) throw InvalidArgument("SDPA: entry position out of range");
        SdpMatrix& target = matno == 0 ? sdp.objective : sdp.constraints[static_cast<std::size_t>(matno - 1)];
        const double v = matno == 0 && !sdp.maximize ? -value : value;
        target.add(static_cast<std::size_t>(block - 1), static_cast<std::size_t>(row - 1), static_cast<std::size_t>(col - 1), v);
    }
    if (!data.eof()) throw InvalidArgument("SDPA: malformed entry line");
    sdp.objective.canonicalize();
    for (auto& c : sdp.constraints) c.canonicalize();
    return sdp;
}

}  // namespace ctheta
