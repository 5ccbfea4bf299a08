#pragma once

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "srrlab/errors.hpp"
#include "srrlab/gf2.hpp"

// Matrix text format ".gm":
//   line 1: "n k"
//   then k lines of exactly n characters from {0,1}
// Lines starting with '#' are comments and may appear anywhere. No other
// whitespace is allowed inside rows. Round-trips are bit-exact.

namespace srrlab {

inline void write_gm(std::ostream& os, const BinaryMatrix& M) {
    os << M.cols() << ' ' << M.rows() << '\n';
    for (int r = 0; r < M.rows(); ++r) {
        for (int c = 0; c < M.cols(); ++c) os << (M.get(r, c) ? '1' : '0');
        os << '\n';
    }
}

inline void write_gm_file(const std::string& path, const BinaryMatrix& M) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ParseError(path + ": cannot open for writing");
    write_gm(f, M);
    if (!f) throw ParseError(path + ": write failed");
}

inline BinaryMatrix read_gm(std::istream& is, const std::string& source = "<stream>") {
    auto fail = [&](int line, const std::string& msg) -> void {
        throw ParseError(source + ":" + std::to_string(line) + ": " + msg);
    };
    std::string raw;
    int lineno = 0;
    long n = -1, k = -1;
    int rows_read = 0;
    BinaryMatrix M(1, 1);
    while (std::getline(is, raw)) {
        ++lineno;
        if (!raw.empty() && raw.back() == '\r') raw.pop_back();
        if (!raw.empty() && raw[0] == '#') continue;
        if (n < 0) {
            std::istringstream hs(raw);
            std::string extra;
            if (!(hs >> n >> k)) fail(lineno, "expected header 'n k'");
            if (hs >> extra) fail(lineno, "unexpected trailing content after 'n k'");
            if (n < 1 || k < 1) fail(lineno, "n and k must be >= 1");
            if (n > 4096 || k > 4096) fail(lineno, "dimension too large (limit 4096)");
            M = BinaryMatrix(static_cast<int>(k), static_cast<int>(n));
            continue;
        }
        if (rows_read == k) fail(lineno, "unexpected extra row (already read " + std::to_string(k) + ")");
        if (static_cast<long>(raw.size()) != n)
            fail(lineno, "row has " + std::to_string(raw.size()) + " characters, expected " + std::to_string(n));
        for (long c = 0; c < n; ++c) {
            char ch = raw[static_cast<std::size_t>(c)];
            if (ch == '1') M.set(rows_read, static_cast<int>(c), true);
            else if (ch != '0')
                fail(lineno, std::string("invalid character '") + ch + "' at column " + std::to_string(c + 1));
        }
        ++rows_read;
    }
    if (n < 0) fail(lineno + 1, "missing header 'n k'");
    if (rows_read != k)
        fail(lineno + 1, "expected " + std::to_string(k) + " rows, found " + std::to_string(rows_read));
    return M;
}

inline BinaryMatrix read_gm_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw ParseError(path + ": cannot open");
    return read_gm(f, path);
}

} // namespace srrlab
