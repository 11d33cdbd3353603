#include "nbhd/exact/laurent.hpp"

#include "nbhd/error.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace nbhd::exact {

int total_degree(const Exponent& e) {
    return std::accumulate(e.begin(), e.end(), 0);
}

bool GrlexLess::operator()(const Exponent& a, const Exponent& b) const {
    const int da = total_degree(a);
    const int db = total_degree(b);
    if (da != db) return da < db;
    return a < b;
}

LaurentPoly LaurentPoly::constant(std::size_t nvars, const Rational& c) {
    LaurentPoly p(nvars);
    p.add_term(Exponent(nvars, 0), c);
    return p;
}

LaurentPoly LaurentPoly::monomial(Exponent e, const Rational& c) {
    LaurentPoly p(e.size());
    p.add_term(e, c);
    return p;
}

LaurentPoly LaurentPoly::variable(std::size_t nvars, std::size_t index) {
    Exponent e(nvars, 0);
    e.at(index) = 1;
    return monomial(std::move(e));
}

bool LaurentPoly::is_constant() const {
    return terms_.empty() ||
           (terms_.size() == 1 &&
            std::all_of(terms_.begin()->first.begin(), terms_.begin()->first.end(),
                        [](int x) { return x == 0; }));
}

Rational LaurentPoly::coefficient(const Exponent& e) const {
    const auto it = terms_.find(e);
    return it == terms_.end() ? Rational(0) : it->second;
}

Rational LaurentPoly::constant_term() const { return coefficient(Exponent(nvars_, 0)); }

void LaurentPoly::add_term(const Exponent& e, const Rational& c) {
    if (e.size() != nvars_) {
        throw DimensionMismatch("exponent of length " + std::to_string(e.size()) +
                                " in polynomial of arity " + std::to_string(nvars_));
    }
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
    if (o.nvars_ != nvars_) throw DimensionMismatch("adding polynomials of different arity");
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
    if (o.nvars_ != nvars_) throw DimensionMismatch("subtracting polynomials of different arity");
    for (const auto& [e, c] : o.terms_) add_term(e, -c);
    return *this;
}

LaurentPoly& LaurentPoly::operator*=(const Rational& c) {
    if (c.is_zero()) {
        terms_.clear();
        return *this;
    }
    for (auto& [e, v] : terms_) v *= c;
    return *this;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.nvars_ != b.nvars_) throw DimensionMismatch("multiplying polynomials of different arity");
    LaurentPoly out(a.nvars_);
    Exponent e(a.nvars_);
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            out.add_term(e, ca * cb);
        }
    }
    return out;
}

LaurentPoly operator-(const LaurentPoly& a) { return a * Rational(-1); }

LaurentPoly LaurentPoly::monomial_inverse() const {
    if (!is_monomial()) {
        throw NonInvertibleSubstitution("cannot invert non-monomial " + str());
    }
    const auto& [e, c] = *terms_.begin();
    Exponent neg(e.size());
    std::transform(e.begin(), e.end(), neg.begin(), [](int x) { return -x; });
    return monomial(std::move(neg), c.inverse());
}

LaurentPoly LaurentPoly::pow(int n) const {
    if (n < 0) return monomial_inverse().pow(-n);
    LaurentPoly result = constant(nvars_, Rational(1));
    LaurentPoly base = *this;
    while (n > 0) {
        if (n & 1) result = result * base;
        n >>= 1;
        if (n > 0) base = base * base;
    }
    return result;
}

LaurentPoly LaurentPoly::derivative(std::size_t var) const {
    LaurentPoly out(nvars_);
    for (const auto& [e, c] : terms_) {
        if (e[var] == 0) continue;
        Exponent d = e;
        d[var] -= 1;
        out.add_term(d, c * Rational(e[var]));
    }
    return out;
}

LaurentPoly LaurentPoly::filter(const std::function<bool(const Exponent&)>& keep) const {
    LaurentPoly out(nvars_);
    for (const auto& [e, c] : terms_) {
        if (keep(e)) out.terms_.emplace_hint(out.terms_.end(), e, c);
    }
    return out;
}

LaurentPoly LaurentPoly::remap(std::span<const int> map, std::size_t new_nvars) const {
    if (map.size() != new_nvars) throw DimensionMismatch("remap table size");
    LaurentPoly out(new_nvars);
    for (const auto& [e, c] : terms_) {
        Exponent ne(new_nvars, 0);
        int moved = 0;
        for (std::size_t i = 0; i < new_nvars; ++i) {
            if (map[i] >= 0) {
                ne[i] = e.at(static_cast<std::size_t>(map[i]));
                moved += std::abs(ne[i]);
            }
        }
        int present = 0;
        for (int x : e) present += std::abs(x);
        if (moved != present) throw DimensionMismatch("remap drops a variable that occurs");
        out.add_term(ne, c);
    }
    return out;
}

std::string LaurentPoly::str(std::span<const std::string> names) const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << "(" << c.str() << ")";
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            os << "*" << (i < names.size() ? names[i] : "x" + std::to_string(i));
            if (e[i] != 1) os << "^" << e[i];
        }
    }
    return os.str();
}

LaurentPoly substitute(const LaurentPoly& p, std::span<const LaurentPoly> images) {
    if (images.size() != p.nvars()) {
        throw DimensionMismatch("substitution needs one image per variable");
    }
    const std::size_t target = images.empty() ? 0 : images[0].nvars();
    for (const auto& img : images) {
        if (img.nvars() != target) throw DimensionMismatch("substitution images differ in arity");
    }
    // Cache powers per variable; negative powers go through the monomial inverse.
    std::vector<std::map<int, LaurentPoly>> cache(images.size());
    auto power = [&](std::size_t var, int n) -> const LaurentPoly& {
        auto it = cache[var].find(n);
        if (it != cache[var].end()) return it->second;
        if (n < 0 && !images[var].is_monomial()) {
            throw NonInvertibleSubstitution("negative power of variable " + std::to_string(var) +
                                            " needs inverse of " + images[var].str());
        }
        return cache[var].emplace(n, images[var].pow(n)).first->second;
    };
    LaurentPoly out(target);
    for (const auto& [e, c] : p.terms()) {
        LaurentPoly term = LaurentPoly::constant(target, c);
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] != 0) term = term * power(i, e[i]);
        }
        out += term;
    }
    return out;
}

std::vector<Exponent> monomial_window(std::span<const int> lo, std::span<const int> hi) {
    if (lo.size() != hi.size()) throw DimensionMismatch("window bounds differ in length");
    for (std::size_t i = 0; i < lo.size(); ++i) {
        if (lo[i] > hi[i]) throw DimensionMismatch("window lower bound exceeds upper bound");
    }
    std::vector<Exponent> out;
    Exponent cur(lo.begin(), lo.end());
    while (true) {
        out.push_back(cur);
        std::size_t i = 0;
        for (; i < cur.size(); ++i) {
            if (cur[i] < hi[i]) {
                ++cur[i];
                break;
            }
            cur[i] = lo[i];
        }
        if (i == cur.size()) break;
    }
    std::sort(out.begin(), out.end(), GrlexLess{});
    return out;
}

}  // namespace nbhd::exact
