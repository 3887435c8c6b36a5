#include "adist/linalg.hpp"

namespace adist {

std::vector<std::size_t> rref(RatMatrix& m) {
    std::vector<std::size_t> pivots;
    if (m.empty()) return pivots;
    const std::size_t rows = m.size(), cols = m[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t pr = r;
        while (pr < rows && m[pr][c].is_zero()) ++pr;
        if (pr == rows) continue;
        std::swap(m[pr], m[r]);
        ValuedRational inv = m[r][c].inverse();
        for (auto& x : m[r]) x *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c].is_zero()) continue;
            ValuedRational f = m[i][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

std::size_t rank(RatMatrix m) { return rref(m).size(); }

std::vector<std::vector<ValuedRational>> nullspace(const RatMatrix& m, unsigned long p,
                                                   std::size_t cols) {
    RatMatrix a = m;
    for (auto& row : a)
        if (row.size() != cols) throw std::invalid_argument("nullspace: ragged matrix");
    auto pivots = rref(a);

    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivots) is_pivot[c] = true;

    std::vector<std::vector<ValuedRational>> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<ValuedRational> v(cols, ValuedRational(p));
        v[free] = ValuedRational(p, 1);
        for (std::size_t i = 0; i < pivots.size(); ++i)
            if (!a[i][free].is_zero()) v[pivots[i]] = -a[i][free];
        // clear denominators and content to make the vector primitive integral
        mpz_class lcm = 1;
        for (auto& x : v)
            if (!x.is_zero()) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), x.den().get_mpz_t());
        mpz_class content = 0;
        for (auto& x : v)
            if (!x.is_zero()) {
                mpz_class n = x.num() * (lcm / x.den());
                mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), n.get_mpz_t());
            }
        if (content == 0) content = 1;
        for (auto& x : v)
            if (!x.is_zero())
                x = ValuedRational(p, x.num() * (lcm / x.den()) / content, mpz_class(1));
        basis.push_back(std::move(v));
    }
    return basis;
}

bool same_row_span(const RatMatrix& a, const RatMatrix& b) {
    if (a.empty()) return rank(b) == 0;
    if (b.empty()) return rank(a) == 0;
    RatMatrix stacked = a;
    stacked.insert(stacked.end(), b.begin(), b.end());
    const std::size_t ra = rank(a), rb = rank(b), rs = rank(stacked);
    return ra == rb && rb == rs;
}

}  // namespace adist
