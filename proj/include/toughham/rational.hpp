#ifndef TOUGHHAM_RATIONAL_HPP
#define TOUGHHAM_RATIONAL_HPP

#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "graph.hpp"

namespace toughham {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational ratio(long long num, long long den) { return Rational(BigInt(num), BigInt(den)); }

inline std::string to_string(const Rational& r) {
    auto num = boost::multiprecision::numerator(r);
    auto den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

// Accepts "p/q", "p", or a finite decimal such as "2.25".
inline Rational parse_rational(const std::string& text) {
    auto bad = [&] { return Error("not a rational number: '" + text + "'"); };
    auto parse_int = [&](const std::string& s) {
        if (s.empty()) throw bad();
        std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
        if (i == s.size()) throw bad();
        for (std::size_t k = i; k < s.size(); ++k)
            if (s[k] < '0' || s[k] > '9') throw bad();
        return BigInt(s[0] == '+' ? s.substr(1) : s);
    };
    if (auto slash = text.find('/'); slash != std::string::npos) {
        BigInt den = parse_int(text.substr(slash + 1));
        if (den == 0) throw Error("zero denominator in '" + text + "'");
        return Rational(parse_int(text.substr(0, slash)), den);
    }
    if (auto dot = text.find('.'); dot != std::string::npos) {
        std::string frac = text.substr(dot + 1);
        BigInt scale = 1;
        for (std::size_t k = 0; k < frac.size(); ++k) scale *= 10;
        std::string whole = text.substr(0, dot);
        bool negative = !whole.empty() && whole[0] == '-';
        BigInt w = (whole.empty() || whole == "-" || whole == "+") ? BigInt(0) : parse_int(whole);
        BigInt f = frac.empty() ? BigInt(0) : parse_int(frac);
        if (negative) f = -f;
        return Rational(w * scale + f, scale);
    }
    return Rational(parse_int(text));
}

}  // namespace toughham

#endif
