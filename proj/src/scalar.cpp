#include "infodesign/scalar.hpp"

#include <cctype>

#include "infodesign/error.hpp"

namespace infodesign {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

[[noreturn]] void reject(std::string_view text) {
    throw ParseError("not an exact number: '" + std::string(text) + "'");
}

}  // namespace

Scalar parse_scalar(std::string_view text) {
    std::string_view s = text;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    if (s.empty()) reject(text);

    bool negative = false;
    if (s.front() == '-' || s.front() == '+') {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }

    Scalar out;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        auto num = s.substr(0, slash);
        auto den = s.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) reject(text);
        mpz_class d(std::string(den), 10);
        if (d == 0) throw ParseError("zero denominator: '" + std::string(text) + "'");
        out = Scalar(mpz_class(std::string(num), 10), d);
    } else if (auto dot_pos = s.find('.'); dot_pos != std::string_view::npos) {
        auto whole = s.substr(0, dot_pos);
        auto frac = s.substr(dot_pos + 1);
        if (whole.empty() && frac.empty()) reject(text);
        if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac))) reject(text);
        std::string digits = std::string(whole) + std::string(frac);
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
        out = Scalar(mpz_class(digits, 10), den);
    } else {
        if (!all_digits(s)) reject(text);
        out = Scalar(mpz_class(std::string(s), 10));
    }
    out.canonicalize();
    if (negative) out = -out;
    return out;
}

std::string to_string(const Scalar& x) {
    Scalar c = x;
    c.canonicalize();
    return c.get_str();
}

std::vector<std::string> to_strings(std::span<const Scalar> v) {
    std::vector<std::string> out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(to_string(x));
    return out;
}

Scalar dot(std::span<const Scalar> a, std::span<const Scalar> b) {
    if (a.size() != b.size()) throw DimensionMismatch("dot: length mismatch");
    Scalar acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

Scalar sum(std::span<const Scalar> v) {
    Scalar acc = 0;
    for (const auto& x : v) acc += x;
    return acc;
}

bool is_probability_vector(std::span<const Scalar> v) {
    for (const auto& x : v) {
        if (sgn(x) < 0) return false;
    }
    return !v.empty() && sum(v) == 1;
}

Vector unit_vector(std::size_t n, std::size_t i) {
    Vector e(n, Scalar(0));
    e.at(i) = 1;
    return e;
}

}  // namespace infodesign
