#include "ctrlgraph/int_matrix.hpp"

#include <istream>
#include <ostream>
#include <sstream>

namespace ctrlgraph::matgen {

void write_matrix_text(std::ostream& os, const IntSymMatrix& a) {
    const int n = a.dim();
    os << n << '\n';
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (j) os << ' ';
            os << a(i, j);
        }
        os << '\n';
    }
}

IntSymMatrix read_matrix_text(std::istream& is) {
    int n = -1;
    if (!(is >> n) || n < 0) throw std::invalid_argument("matrix text: bad dimension");
    IntSymMatrix a(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            long long v;
            if (!(is >> v)) throw std::invalid_argument("matrix text: truncated");
            if (j >= i) {
                a.set(i, j, v);
            } else if (a(i, j) != v) {
                throw std::invalid_argument("matrix text: not symmetric");
            }
        }
    }
    return a;
}

std::string to_adjacency_bitstring(const IntSymMatrix& a) {
    if (!a.is_zero_one() || !a.has_zero_diagonal())
        throw std::invalid_argument("bitstring form requires a simple adjacency matrix");
    std::ostringstream os;
    os << a.dim() << ':';
    for (int i = 0; i < a.dim(); ++i)
        for (int j = i + 1; j < a.dim(); ++j) os << (a(i, j) ? '1' : '0');
    return os.str();
}

IntSymMatrix from_adjacency_bitstring(const std::string& s) {
    const auto colon = s.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("bitstring: missing ':'");
    const int n = std::stoi(s.substr(0, colon));
    IntSymMatrix a(n);
    std::size_t pos = colon + 1;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            if (pos >= s.size()) throw std::invalid_argument("bitstring: truncated");
            const char c = s[pos++];
            if (c != '0' && c != '1') throw std::invalid_argument("bitstring: bad character");
            a.set(i, j, c - '0');
        }
    if (pos != s.size()) throw std::invalid_argument("bitstring: trailing data");
    return a;
}

}  // namespace ctrlgraph::matgen
