#include "nbhd/exact/rational.hpp"

#include "nbhd/error.hpp"

#include <cctype>

namespace nbhd::exact {

namespace {

bool is_integer_literal(std::string_view s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
    }
    return true;
}

mpz_class parse_integer(std::string_view s) {
    std::string digits(s);
    if (!digits.empty() && digits[0] == '+') digits.erase(0, 1);
    return mpz_class(digits, 10);
}

}  // namespace

Rational::Rational(long num, long den) {
    if (den == 0) throw ParseError("zero denominator");
    value_ = mpq_class(num, den);
    value_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
    const auto slash = text.find('/');
    const auto num_text = text.substr(0, slash);
    if (!is_integer_literal(num_text)) {
        throw ParseError("malformed rational '" + std::string(text) + "'");
    }
    mpq_class q;
    q.get_num() = parse_integer(num_text);
    if (slash == std::string_view::npos) {
        q.get_den() = 1;
    } else {
        const auto den_text = text.substr(slash + 1);
        if (!is_integer_literal(den_text)) {
            throw ParseError("malformed rational '" + std::string(text) + "'");
        }
        q.get_den() = parse_integer(den_text);
        if (q.get_den() == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
    }
    q.canonicalize();
    return Rational(std::move(q));
}

std::string Rational::str() const {
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

Rational& Rational::operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational division by zero");
    value_ /= o.value_;
    return *this;
}

Rational Rational::inverse() const {
    if (is_zero()) throw std::domain_error("Rational inverse of zero");
    return Rational(mpq_class(1) / value_);
}

Rational Rational::pow(long exponent) const {
    if (exponent < 0) return inverse().pow(-exponent);
    mpq_class out;
    mpz_pow_ui(out.get_num_mpz_t(), value_.get_num_mpz_t(), static_cast<unsigned long>(exponent));
    mpz_pow_ui(out.get_den_mpz_t(), value_.get_den_mpz_t(), static_cast<unsigned long>(exponent));
    return Rational(std::move(out));
}

}  // namespace nbhd::exact
