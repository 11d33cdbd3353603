#include "nbhd/exact/serialize.hpp"

#include "nbhd/error.hpp"

namespace nbhd::exact {

Json to_json(const Rational& r) { return r.str(); }

Json to_json(const LaurentPoly& p) {
    Json terms = Json::array();
    for (const auto& [e, c] : p.terms()) terms.push_back(Json::array({Json(e), c.str()}));
    return terms;
}

Json to_json(const PolyMatrix& m) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
        Json row = Json::array();
        for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Rational rational_from_json(const Json& j, const std::string& where) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (!j.is_string()) throw ParseError(where + ": expected rational string \"p/q\"");
    try {
        return Rational::parse(j.get<std::string>());
    } catch (const ParseError& e) {
        throw ParseError(where + ": " + e.what());
    }
}

LaurentPoly poly_from_json(const Json& j, std::size_t nvars, const std::string& where) {
    if (!j.is_array()) throw ParseError(where + ": expected a term list");
    LaurentPoly p(nvars);
    for (std::size_t i = 0; i < j.size(); ++i) {
        const auto& term = j[i];
        const std::string at = where + "[" + std::to_string(i) + "]";
        if (!term.is_array() || term.size() != 2) throw ParseError(at + ": expected [exponent, coefficient]");
        const auto& ej = term[0];
        if (!ej.is_array() || ej.size() != nvars) {
            throw ParseError(at + ": exponent vector must have " + std::to_string(nvars) + " integer entries");
        }
        Exponent e;
        for (const auto& x : ej) {
            if (!x.is_number_integer()) throw ParseError(at + ": exponent entries must be integers");
            e.push_back(x.get<int>());
        }
        p.add_term(e, rational_from_json(term[1], at + "[1]"));
    }
    return p;
}

PolyMatrix matrix_from_json(const Json& j, std::size_t nvars, const std::string& where) {
    if (!j.is_array()) throw ParseError(where + ": expected a matrix (list of rows)");
    const std::size_t rows = j.size();
    const std::size_t cols = rows == 0 ? 0 : j[0].size();
    PolyMatrix m(rows, cols, nvars);
    for (std::size_t r = 0; r < rows; ++r) {
        if (!j[r].is_array() || j[r].size() != cols) throw ParseError(where + ": ragged matrix");
        for (std::size_t c = 0; c < cols; ++c) {
            m(r, c) = poly_from_json(j[r][c], nvars,
                                     where + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
        }
    }
    return m;
}

}  // namespace nbhd::exact
