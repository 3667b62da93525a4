#include "selfloc/rational.hpp"

#include "selfloc/errors.hpp"

#include <cctype>
#include <charconv>

namespace selfloc {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

// cpp_int's string constructor honors 0x/0 prefixes; the document grammar
// is decimal only, so strip leading zeros before converting.
BigInt decimal_bigint(std::string_view digits) {
    std::size_t first = digits.find_first_not_of('0');
    if (first == std::string_view::npos) return BigInt(0);
    return BigInt{std::string(digits.substr(first))};
}

} // namespace

Rational parse_rational(std::string_view text) {
    const std::string shown(text);
    if (text.empty()) {
        throw DomainError(Errc::rational_format, "empty rational; expected \"p/q\" or \"p\"");
    }
    if (text.find('.') != std::string_view::npos) {
        throw DomainError(Errc::rational_format,
                          "decimal floats are not accepted; write \"1/2\" instead of \"" + shown + "\"");
    }

    bool negative = false;
    std::string_view rest = text;
    if (rest.front() == '-') {
        negative = true;
        rest.remove_prefix(1);
    }

    std::string_view num_part = rest;
    std::string_view den_part;
    if (auto slash = rest.find('/'); slash != std::string_view::npos) {
        num_part = rest.substr(0, slash);
        den_part = rest.substr(slash + 1);
        if (den_part.find('/') != std::string_view::npos) {
            throw DomainError(Errc::rational_format, "malformed rational \"" + shown + "\"");
        }
        if (!all_digits(den_part)) {
            throw DomainError(Errc::rational_format, "malformed rational \"" + shown + "\"");
        }
    }
    if (!all_digits(num_part)) {
        throw DomainError(Errc::rational_format, "malformed rational \"" + shown + "\"");
    }

    BigInt num = decimal_bigint(num_part);
    if (negative) num = -num;
    if (den_part.empty()) {
        return Rational(num);
    }
    const BigInt den = decimal_bigint(den_part);
    if (den == 0) {
        throw DomainError(Errc::rational_format, "zero denominator in \"" + shown + "\"");
    }
    // Division canonicalizes: reduced form, positive denominator.
    return Rational(num) / Rational(den);
}

std::string fraction_string(const Rational& value) {
    const BigInt num = numerator(value);
    const BigInt den = denominator(value);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

std::string decimal_string(const Rational& value, int digits) {
    if (digits < 0) {
        throw DomainError(Errc::invalid_param, "decimal_string: digits must be >= 0");
    }
    const bool negative = value < 0;
    const Rational mag = negative ? Rational(-value) : value;

    BigInt scale = 1;
    for (int i = 0; i < digits; ++i) scale *= 10;

    const BigInt scaled = numerator(mag) * scale;
    const BigInt den = denominator(mag);
    BigInt q = scaled / den;
    const BigInt rem = scaled % den;

    // Round half to even on the last kept digit.
    const BigInt twice = rem * 2;
    if (twice > den || (twice == den && (q % 2) != 0)) ++q;

    const BigInt int_part = q / scale;
    const BigInt frac_part = q % scale;

    std::string out = int_part.str();
    if (digits > 0) {
        std::string frac = frac_part.str();
        out += '.';
        out.append(static_cast<std::size_t>(digits) - frac.size(), '0');
        out += frac;
    }
    if (negative && q != 0) out.insert(out.begin(), '-');
    return out;
}

std::string decimal_string(double value, int digits) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::fixed, digits);
    return std::string(buf, res.ptr);
}

} // namespace selfloc
