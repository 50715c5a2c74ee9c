#include "mmm/rational.hpp"

#include <cctype>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace mmm {

Rat::Rat(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::invalid_argument("rational: zero denominator");
    Big n(num), d(den);
    if (d < 0) {  // canonical form keeps the sign in the numerator
        n = -n;
        d = -d;
    }
    v_ = BigRat(std::move(n), std::move(d));
}

Rat& Rat::operator/=(const Rat& o) {
    if (o.v_ == 0) throw std::invalid_argument("rational: division by zero");
    v_ /= o.v_;
    return *this;
}

Rat Rat::parse(const std::string& text) {
    std::size_t i = 0;
    const std::size_t n = text.size();
    auto fail = [&]() -> void {
        throw std::invalid_argument("rational: cannot parse '" + text + "'");
    };
    if (n == 0) fail();
    bool neg = false;
    if (text[i] == '+' || text[i] == '-') {
        neg = (text[i] == '-');
        ++i;
    }
    auto read_digits = [&](Big& out) {
        std::size_t start = i;
        out = 0;
        while (i < n && std::isdigit(static_cast<unsigned char>(text[i]))) {
            out = out * 10 + (text[i] - '0');
            ++i;
        }
        if (i == start) fail();
    };
    Big intpart;
    read_digits(intpart);
    if (i == n) {
        Big v = neg ? Big(-intpart) : intpart;
        return Rat(BigRat(v));
    }
    if (text[i] == '/') {
        ++i;
        Big den;
        read_digits(den);
        if (i != n) fail();
        if (den == 0) throw std::invalid_argument("rational: zero denominator in '" + text + "'");
        Big num = neg ? Big(-intpart) : intpart;
        return Rat(BigRat(num, den));
    }
    if (text[i] == '.') {
        ++i;
        std::size_t fs = i;
        Big frac;
        read_digits(frac);
        std::size_t digits = i - fs;
        if (i != n) fail();
        Big den = 1;
        for (std::size_t k = 0; k < digits; ++k) den *= 10;
        Big num = intpart * den + frac;
        if (neg) num = -num;
        return Rat(BigRat(num, den));
    }
    fail();
    return Rat();  // unreachable
}

std::int64_t Rat::to_int64() const {
    if (!is_integer()) throw std::domain_error("rational: " + to_string() + " is not an integer");
    Big num = numerator();
    if (num < std::numeric_limits<std::int64_t>::min() ||
        num > std::numeric_limits<std::int64_t>::max())
        throw std::domain_error("rational: " + to_string() + " out of int64 range");
    return num.convert_to<std::int64_t>();
}

std::string Rat::to_string() const {
    Big num = numerator();
    Big den = denominator();
    if (den == 1) return num.str();
    bool neg = num < 0;
    Big anum = neg ? Big(-num) : num;
    // A reduced denominator of the form 2^a * 5^b renders as an exact decimal.
    Big d = den;
    int twos = 0, fives = 0;
    while (d % 2 == 0) { d /= 2; ++twos; }
    while (d % 5 == 0) { d /= 5; ++fives; }
    if (d != 1) return num.str() + "/" + den.str();
    int k = twos > fives ? twos : fives;
    Big scale = 1;
    for (int j = 0; j < k; ++j) scale *= 10;
    Big scaled = anum * scale / den;  // exact by construction
    Big ip = scaled / scale;
    Big fp = scaled % scale;
    std::string frac = fp.str();
    if (static_cast<int>(frac.size()) < k) frac.insert(0, k - frac.size(), '0');
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    std::string out = (neg ? "-" : "") + ip.str();
    if (!frac.empty()) out += "." + frac;
    return out;
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.to_string(); }

int ilog2_exact(std::int64_t v) {
    if (v < 1) throw std::domain_error("log2: argument must be a positive power of two");
    if ((v & (v - 1)) != 0)
        throw std::domain_error("log2: " + std::to_string(v) + " is not a power of two");
    int k = 0;
    while (v > 1) { v >>= 1; ++k; }
    return k;
}

int ilog2_exact(const Rat& v) {
    if (!v.is_integer()) throw std::domain_error("log2: argument must be an integer power of two");
    return ilog2_exact(v.to_int64());
}

}  // namespace mmm
