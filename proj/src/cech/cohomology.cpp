#include "nbhd/cech/cohomology.hpp"

#include "nbhd/error.hpp"
#include "nbhd/exact/linear_system.hpp"
#include "nbhd/geometry/truncated.hpp"

#include <algorithm>
#include <map>

namespace nbhd::cech {

namespace {

using Face = std::vector<std::size_t>;

std::vector<Face> subsets_of_size(std::size_t n, std::size_t k) {
    std::vector<Face> out;
    std::vector<bool> pick(n + 1, false);
    std::fill(pick.begin(), pick.begin() + static_cast<long>(k), true);
    do {
        Face f;
        for (std::size_t i = 0; i <= n; ++i) {
            if (pick[i]) f.push_back(i);
        }
        out.push_back(f);
    } while (std::prev_permutation(pick.begin(), pick.end()));
    std::sort(out.begin(), out.end());
    return out;
}

/// Cohomology of the complex spanned by faces containing `neg`.
std::vector<long> monomial_complex(std::size_t n, const Face& neg) {
    std::vector<std::vector<Face>> cells(n + 1);
    for (std::size_t d = 0; d <= n; ++d) {
        for (auto& f : subsets_of_size(n, d + 1)) {
            if (std::includes(f.begin(), f.end(), neg.begin(), neg.end())) cells[d].push_back(f);
        }
    }
    std::vector<std::size_t> rank(n + 1, 0);
    for (std::size_t d = 0; d < n; ++d) {
        std::map<Face, std::size_t> row_of;
        for (std::size_t r = 0; r < cells[d + 1].size(); ++r) row_of[cells[d + 1][r]] = r;
        std::vector<exact::SparseRow> rows(cells[d + 1].size());
        for (std::size_t c = 0; c < cells[d].size(); ++c) {
            for (std::size_t r = 0; r < cells[d + 1].size(); ++r) {
                const Face& big = cells[d + 1][r];
                for (std::size_t k = 0; k < big.size(); ++k) {
                    Face f = big;
                    f.erase(f.begin() + static_cast<long>(k));
                    if (f == cells[d][c]) rows[r][c] = exact::Rational(k % 2 == 0 ? 1 : -1);
                }
            }
        }
        rank[d] = exact::rank_exact(rows, cells[d].size());
    }
    std::vector<long> h(n + 1);
    for (std::size_t d = 0; d <= n; ++d) {
        h[d] = static_cast<long>(cells[d].size()) - static_cast<long>(rank[d]) - (d > 0 ? static_cast<long>(rank[d - 1]) : 0);
    }
    return h;
}

void add_twist(std::size_t n, int d, std::vector<long>& total) {
    const int lo = std::min(d + static_cast<int>(n), 0) - 1, hi = std::max(d, 0) + 1;
    std::map<Face, std::vector<long>> cache;
    std::vector<int> a(n + 1, lo);
    // all a in [lo, hi]^(n+1) with sum d
    while (true) {
        int sum = 0;
        for (int x : a) sum += x;
        if (sum == d) {
            Face neg;
            for (std::size_t m = 0; m <= n; ++m) {
                if (a[m] < 0) neg.push_back(m);
            }
            auto it = cache.find(neg);
            if (it == cache.end()) it = cache.emplace(neg, monomial_complex(n, neg)).first;
            for (std::size_t i = 0; i <= n; ++i) total[i] += it->second[i];
        }
        std::size_t m = 0;
        while (m <= n && a[m] == hi) a[m++] = lo;
        if (m > n) break;
        ++a[m];
    }
}

}  // namespace

std::vector<long> cohomology_dim(std::size_t n, const std::vector<int>& twists) {
    std::vector<long> total(n + 1, 0);
    for (int d : twists) add_twist(n, d, total);
    return total;
}

std::vector<int> sheaf_twists(const std::vector<int>& normal_twists, const std::vector<int>& bundle_twists, int v,
                              ValueKind kind) {
    if (kind == ValueKind::Form) throw UnsupportedSheaf("forms on P^n do not split into line bundles");
    std::vector<int> sym;
    for (const auto& ex : geom::sym_basis(normal_twists.size(), v)) {
        int s = 0;
        for (std::size_t a = 0; a < ex.size(); ++a) s -= ex[a] * normal_twists[a];
        sym.push_back(s);
    }
    if (normal_twists.empty() && v == 0) sym = {0};
    std::vector<int> out;
    for (int s : sym) {
        switch (kind) {
            case ValueKind::Scalar: out.push_back(s); break;
            case ValueKind::Vector:
                for (int d : bundle_twists) out.push_back(s + d);
                break;
            case ValueKind::End:
                for (int dr : bundle_twists) {
                    for (int ds : bundle_twists) out.push_back(s + dr - ds);
                }
                break;
            case ValueKind::Form: break;
        }
    }
    return out;
}

}  // namespace nbhd::cech
