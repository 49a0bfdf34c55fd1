#include "pdcrystal/rational.hpp"

#include <cctype>

namespace pdcrystal {

long long vp_int(const BigInt& n, const BigInt& p) {
    if (n == 0) return kValInfinity;
    if (p < 2) throw Error("vp: p must be >= 2");
    BigInt a = abs(n);
    long long v = 0;
    while (a % p == 0) {
        a /= p;
        ++v;
    }
    return v;
}

long long vp(const Rational& x, const ValuationConfig& cfg) {
    if (x == 0) return kValInfinity;
    return vp_int(numerator(x), cfg.p) - vp_int(denominator(x), cfg.p);
}

Rational parse_rational(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    std::string t = s.substr(b, e - b);
    if (t.empty()) throw ParseError("empty rational");
    auto is_int = [](const std::string& u) {
        if (u.empty()) return false;
        size_t i = (u[0] == '-' || u[0] == '+') ? 1 : 0;
        if (i == u.size()) return false;
        for (; i < u.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(u[i]))) return false;
        return true;
    };
    auto slash = t.find('/');
    if (slash == std::string::npos) {
        if (!is_int(t)) throw ParseError("bad rational: '" + t + "'");
        return Rational(BigInt(t));
    }
    std::string num = t.substr(0, slash), den = t.substr(slash + 1);
    if (!is_int(num) || !is_int(den)) throw ParseError("bad rational: '" + t + "'");
    BigInt n(num), d(den);
    if (d == 0) throw ParseError("zero denominator: '" + t + "'");
    if (d < 0) {
        n = -n;
        d = -d;
    }
    return Rational(n, d);
}

std::string format_rational(const Rational& x) {
    if (denominator(x) == 1) return numerator(x).str();
    return numerator(x).str() + "/" + denominator(x).str();
}

std::string format_valuation(long long v) {
    if (v == kValInfinity) return "inf";
    return std::to_string(v);
}

}  // namespace pdcrystal
