#include "metgraph/rational.hpp"

#include <cctype>
#include <cstdlib>

#include "metgraph/error.hpp"

namespace metgraph {

namespace {

bool all_digits(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

Rational parse_fraction(const std::string& text, std::size_t slash) {
    std::string num = text.substr(0, slash);
    std::string den = text.substr(slash + 1);
    bool negative = false;
    if (!num.empty() && (num[0] == '+' || num[0] == '-')) {
        negative = num[0] == '-';
        num = num.substr(1);
    }
    if (!all_digits(num) || !all_digits(den))
        throw Error("malformed rational literal '" + text + "'");
    Integer n(num, 10), d(den, 10);  // explicit base: leading zeros are not octal
    if (d == 0) throw Error("zero denominator in '" + text + "'");
    Rational q(n, d);
    q.canonicalize();
    return negative ? Rational(-q) : q;
}

// [sign] digits [. digits] [eE sign digits], converted exactly.
Rational parse_decimal(const std::string& text) {
    std::size_t i = 0;
    const std::size_t n = text.size();
    bool negative = false;
    if (i < n && (text[i] == '+' || text[i] == '-')) {
        negative = text[i] == '-';
        ++i;
    }
    std::string int_part, frac_part;
    while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) int_part += text[i++];
    if (i < n && text[i] == '.') {
        ++i;
        while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) frac_part += text[i++];
    }
    if (int_part.empty() && frac_part.empty())
        throw Error("malformed number literal '" + text + "'");
    long exponent = 0;
    if (i < n && (text[i] == 'e' || text[i] == 'E')) {
        ++i;
        bool exp_neg = false;
        if (i < n && (text[i] == '+' || text[i] == '-')) {
            exp_neg = text[i] == '-';
            ++i;
        }
        std::string exp_digits;
        while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) exp_digits += text[i++];
        if (exp_digits.empty()) throw Error("malformed exponent in '" + text + "'");
        exponent = std::strtol(exp_digits.c_str(), nullptr, 10);
        if (exp_neg) exponent = -exponent;
    }
    if (i != n) throw Error("malformed number literal '" + text + "'");

    Integer mantissa(int_part.empty() ? frac_part : int_part + frac_part, 10);
    long shift = exponent - static_cast<long>(frac_part.size());
    Integer pow10(1);
    mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(shift < 0 ? -shift : shift));
    Rational q = shift < 0 ? Rational(mantissa, pow10) : Rational(mantissa * pow10);
    q.canonicalize();
    return negative ? Rational(-q) : q;
}

}  // namespace

Rational parse_rational(const std::string& text) {
    if (text.empty()) throw Error("empty number literal");
    std::size_t slash = text.find('/');
    if (slash != std::string::npos) return parse_fraction(text, slash);
    return parse_decimal(text);
}

std::string to_fraction_string(const Rational& value) {
    if (value.get_den() == 1) return value.get_num().get_str();
    return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string to_decimal_string(const Rational& value, int significant_digits) {
    if (significant_digits < 1) significant_digits = 1;
    if (value == 0) return "0";

    mpf_class approx(value, static_cast<mp_bitcnt_t>(significant_digits) * 4 + 64);
    mp_exp_t exp = 0;
    std::string mantissa = approx.get_str(exp, 10, static_cast<std::size_t>(significant_digits));

    std::string sign;
    if (!mantissa.empty() && mantissa[0] == '-') {
        sign = "-";
        mantissa = mantissa.substr(1);
    }
    if (mantissa.empty()) return "0";

    // value = 0.mantissa * 10^exp
    std::string digits = mantissa;
    std::string out;
    if (exp > 0 && exp <= significant_digits + 3) {
        if (static_cast<std::size_t>(exp) >= digits.size()) {
            out = digits + std::string(static_cast<std::size_t>(exp) - digits.size(), '0');
        } else {
            out = digits.substr(0, static_cast<std::size_t>(exp)) + "." +
                  digits.substr(static_cast<std::size_t>(exp));
        }
    } else if (exp <= 0 && exp > -4) {
        out = "0." + std::string(static_cast<std::size_t>(-exp), '0') + digits;
    } else {
        out = digits.substr(0, 1);
        if (digits.size() > 1) out += "." + digits.substr(1);
        out += "e" + std::to_string(exp - 1);
    }
    return sign + out;
}

}  // namespace metgraph
