#include "bellpoly/rational.hpp"

#include <cctype>
#include <ostream>
#include <stdexcept>

namespace bellpoly {

Rational::Rational(mpq_class value) : value_(std::move(value)) {
    if (value_.get_den() == 0) throw std::domain_error("division by zero");
    value_.canonicalize();
}

Rational Rational::canonicalize(const mpz_class& numerator, const mpz_class& denominator) {
    if (denominator == 0) throw std::domain_error("division by zero");
    mpq_class q(numerator, denominator);
    q.canonicalize();
    Rational r;
    r.value_ = std::move(q);
    return r;
}

Rational Rational::canonicalize(long numerator, long denominator) {
    return canonicalize(mpz_class(numerator), mpz_class(denominator));
}

namespace {

bool valid_integer(std::string_view s) {
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

mpz_class to_mpz(std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    return mpz_class(std::string(s), 10);
}

}  // namespace

Rational Rational::parse(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    const auto slash = text.find('/');
    const std::string_view num = text.substr(0, slash);
    const std::string_view den = slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
    if (!valid_integer(num) || !valid_integer(den) || den.front() == '-' || den.front() == '+') {
        throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
    }
    return canonicalize(to_mpz(num), to_mpz(den));
}

std::string Rational::str() const {
    if (value_.get_den() == 1) return value_.get_num().get_str();
    return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

std::string Rational::to_decimal(int places) const {
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(places));
    const mpz_class num = abs(value_.get_num()) * scale * 2 + value_.get_den();
    mpz_class scaled = num / (value_.get_den() * 2);  // floor(|x|*10^p + 1/2)
    std::string digits = scaled.get_str();
    if (static_cast<int>(digits.size()) <= places) {
        digits.insert(0, static_cast<std::size_t>(places + 1 - static_cast<int>(digits.size())), '0');
    }
    std::string out = (sgn(value_) < 0 && scaled != 0) ? "-" : "";
    const std::size_t split = digits.size() - static_cast<std::size_t>(places);
    out += digits.substr(0, split);
    if (places > 0) out += "." + digits.substr(split);
    return out;
}

Rational& Rational::operator+=(const Rational& rhs) {
    value_ += rhs.value_;
    return *this;
}

Rational& Rational::operator-=(const Rational& rhs) {
    value_ -= rhs.value_;
    return *this;
}

Rational& Rational::operator*=(const Rational& rhs) {
    value_ *= rhs.value_;
    return *this;
}

Rational& Rational::operator/=(const Rational& rhs) {
    if (rhs.is_zero()) throw std::domain_error("division by zero");
    value_ /= rhs.value_;
    return *this;
}

Rational Rational::operator-() const {
    Rational r;
    r.value_ = -value_;
    return r;
}

Rational abs(const Rational& x) { return x.sign() < 0 ? -x : x; }

Rational dyadic(unsigned k) {
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), 2, k);
    return Rational::canonicalize(mpz_class(1), den);
}

std::ostream& operator<<(std::ostream& os, const Rational& x) { return os << x.str(); }

}  // namespace bellpoly

std::size_t std::hash<bellpoly::Rational>::operator()(const bellpoly::Rational& x) const noexcept {
    const auto& q = x.mpq();
    const std::size_t h1 = mpz_get_ui(q.get_num_mpz_t()) ^ (static_cast<std::size_t>(mpz_sgn(q.get_num_mpz_t())) << 1);
    const std::size_t h2 = mpz_get_ui(q.get_den_mpz_t());
    return h1 * 1000003u ^ h2;
}
