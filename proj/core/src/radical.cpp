#include "spinforge/radical.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <optional>
#include <ostream>
#include <utility>
#include <vector>

namespace spinforge {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::ZeroDenominator: return "ZeroDenominator";
        case ErrorCode::DivisionByZero: return "DivisionByZero";
        case ErrorCode::NotRepresentable: return "NotRepresentable";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::SameParticle: return "SameParticle";
        case ErrorCode::ZeroState: return "ZeroState";
        case ErrorCode::NormOutsideField: return "NormOutsideField";
        case ErrorCode::NotNormalized: return "NotNormalized";
        case ErrorCode::GridMismatch: return "GridMismatch";
        case ErrorCode::LabelPatternMismatch: return "LabelPatternMismatch";
        case ErrorCode::DuplicateTerm: return "DuplicateTerm";
        case ErrorCode::ParseError: return "ParseError";
    }
    return "UnknownError";
}

namespace {

using boost::multiprecision::abs;
using boost::multiprecision::gcd;

int sgn_int(const BigInt& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

// Sign of alpha + beta*sqrt3 with integer components.
int sgn_root3(const BigInt& alpha, const BigInt& beta) {
    int sa = sgn_int(alpha);
    int sb = sgn_int(beta);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    BigInt lhs = alpha * alpha;
    BigInt rhs = 3 * beta * beta;
    if (lhs == rhs) return 0;  // unreachable for a nonzero pair: sqrt3 is irrational
    return lhs > rhs ? sa : sb;
}

}  // namespace

void QuadraticScalar::canonicalize() {
    if (den_ == 0) {
        throw Error(ErrorCode::ZeroDenominator, "scalar denominator must be nonzero");
    }
    if (a_ == 0 && b_ == 0 && c_ == 0 && d_ == 0) {
        den_ = 1;
        return;
    }
    if (den_ < 0) {
        a_ = -a_;
        b_ = -b_;
        c_ = -c_;
        d_ = -d_;
        den_ = -den_;
    }
    BigInt g = gcd(gcd(abs(a_), abs(b_)), gcd(abs(c_), abs(d_)));
    g = gcd(g, den_);
    if (g > 1) {
        a_ /= g;
        b_ /= g;
        c_ /= g;
        d_ /= g;
        den_ /= g;
    }
}

QuadraticScalar QuadraticScalar::from_parts(BigInt a, BigInt b, BigInt c, BigInt d,
                                            BigInt den) {
    QuadraticScalar q(std::move(a), std::move(b), std::move(c), std::move(d),
                      std::move(den), 0);
    q.canonicalize();
    return q;
}

QuadraticScalar QuadraticScalar::rational(BigInt num, BigInt den) {
    return from_parts(std::move(num), 0, 0, 0, std::move(den));
}

int QuadraticScalar::sign() const {
    if (is_zero()) return 0;
    // View the value as P + Q*sqrt2 with P = a + c*sqrt3, Q = b + d*sqrt3.
    int sp = sgn_root3(a_, c_);
    int sq = sgn_root3(b_, d_);
    if (sq == 0) return sp;
    if (sp == 0) return sq;
    if (sp == sq) return sp;
    // Mixed signs: the larger of P^2 and 2*Q^2 decides.
    BigInt pu = a_ * a_ + 3 * c_ * c_;
    BigInt pv = 2 * a_ * c_;
    BigInt qu = 2 * (b_ * b_ + 3 * d_ * d_);
    BigInt qv = 4 * b_ * d_;
    int cmp = sgn_root3(pu - qu, pv - qv);
    if (cmp == 0) return 0;  // unreachable: sqrt2 is not in Q(sqrt3)
    return cmp > 0 ? sp : sq;
}

QuadraticScalar QuadraticScalar::operator-() const {
    QuadraticScalar q(-a_, -b_, -c_, -d_, den_, 0);
    return q;
}

QuadraticScalar& QuadraticScalar::operator+=(const QuadraticScalar& rhs) {
    a_ = a_ * rhs.den_ + rhs.a_ * den_;
    b_ = b_ * rhs.den_ + rhs.b_ * den_;
    c_ = c_ * rhs.den_ + rhs.c_ * den_;
    d_ = d_ * rhs.den_ + rhs.d_ * den_;
    den_ *= rhs.den_;
    canonicalize();
    return *this;
}

QuadraticScalar& QuadraticScalar::operator-=(const QuadraticScalar& rhs) {
    return *this += -rhs;
}

QuadraticScalar& QuadraticScalar::operator*=(const QuadraticScalar& rhs) {
    // Multiplication table: sqrt2*sqrt3 = sqrt6, sqrt2*sqrt6 = 2*sqrt3,
    // sqrt3*sqrt6 = 3*sqrt2.
    const BigInt &a1 = a_, &b1 = b_, &c1 = c_, &d1 = d_;
    const BigInt &a2 = rhs.a_, &b2 = rhs.b_, &c2 = rhs.c_, &d2 = rhs.d_;
    BigInt na = a1 * a2 + 2 * b1 * b2 + 3 * c1 * c2 + 6 * d1 * d2;
    BigInt nb = a1 * b2 + b1 * a2 + 3 * (c1 * d2 + d1 * c2);
    BigInt nc = a1 * c2 + c1 * a2 + 2 * (b1 * d2 + d1 * b2);
    BigInt nd = a1 * d2 + d1 * a2 + b1 * c2 + c1 * b2;
    a_ = std::move(na);
    b_ = std::move(nb);
    c_ = std::move(nc);
    d_ = std::move(nd);
    den_ *= rhs.den_;
    canonicalize();
    return *this;
}

QuadraticScalar& QuadraticScalar::operator/=(const QuadraticScalar& rhs) {
    if (rhs.is_zero()) {
        throw Error(ErrorCode::DivisionByZero, "division by the zero scalar");
    }
    // Rationalize in two steps: conjugate over sqrt3, then over sqrt2.
    QuadraticScalar conj3(rhs.a_, rhs.b_, -rhs.c_, -rhs.d_, rhs.den_, 0);
    QuadraticScalar z1 = rhs * conj3;  // lies in Q(sqrt2): c = d = 0
    QuadraticScalar conj2(z1.a_, -z1.b_, z1.c_, z1.d_, z1.den_, 0);
    QuadraticScalar z2 = z1 * conj2;  // rational: b = c = d = 0
    QuadraticScalar inv_scale = from_parts(z2.den_, 0, 0, 0, z2.a_);
    *this *= conj3;
    *this *= conj2;
    *this *= inv_scale;
    return *this;
}

// --- exact square root ------------------------------------------------------
//
// Write the target as T1 + T2*sqrt2 with T1, T2 in Q(sqrt3). A root
// x = P + Q*sqrt2 must satisfy P^2 + 2Q^2 = T1 and 2PQ = T2, which reduces to
// square roots inside Q(sqrt3), and those in turn to rational square roots.

namespace {

using Rat = boost::multiprecision::cpp_rational;

std::optional<Rat> sqrt_rational(const Rat& x) {
    if (x < 0) return std::nullopt;
    if (x == 0) return Rat(0);
    BigInt num = numerator(x);
    BigInt den = denominator(x);
    BigInt sn = boost::multiprecision::sqrt(num);  // floor square root
    BigInt sd = boost::multiprecision::sqrt(den);
    if (sn * sn != num || sd * sd != den) return std::nullopt;
    return Rat(sn, sd);
}

struct Root3 {  // u + v*sqrt3 with rational u, v
    Rat u, v;
    bool is_zero() const { return u == 0 && v == 0; }
};

Root3 mul(const Root3& x, const Root3& y) {
    return {x.u * y.u + 3 * x.v * y.v, x.u * y.v + x.v * y.u};
}

Root3 sub(const Root3& x, const Root3& y) { return {x.u - y.u, x.v - y.v}; }

Root3 add(const Root3& x, const Root3& y) { return {x.u + y.u, x.v + y.v}; }

Root3 scale(const Root3& x, const Rat& k) { return {x.u * k, x.v * k}; }

Root3 divide(const Root3& x, const Root3& y) {
    Rat norm = y.u * y.u - 3 * y.v * y.v;
    Root3 conj{y.u, -y.v};
    return scale(mul(x, conj), Rat(1) / norm);
}

std::optional<Root3> sqrt_root3(const Root3& t) {
    if (t.v == 0) {
        if (auto s = sqrt_rational(t.u)) return Root3{*s, 0};
        if (auto s = sqrt_rational(t.u / 3)) return Root3{0, *s};
        return std::nullopt;
    }
    Rat disc = t.u * t.u - 3 * t.v * t.v;
    auto sd = sqrt_rational(disc);
    if (!sd) return std::nullopt;
    for (const Rat& root : {Rat((t.u + *sd) / 2), Rat((t.u - *sd) / 2)}) {
        auto alpha = sqrt_rational(root);
        if (alpha && *alpha != 0) {
            Rat beta = t.v / (2 * *alpha);
            return Root3{*alpha, beta};
        }
    }
    return std::nullopt;
}

}  // namespace

QuadraticScalar QuadraticScalar::try_sqrt() const {
    if (is_zero()) return QuadraticScalar();
    Root3 t1{Rat(a_, den_), Rat(c_, den_)};
    Root3 t2{Rat(b_, den_), Rat(d_, den_)};
    std::optional<std::pair<Root3, Root3>> found;  // (P, Q)
    if (t2.is_zero()) {
        if (auto p = sqrt_root3(t1)) {
            found = {*p, Root3{0, 0}};
        } else if (auto q = sqrt_root3(scale(t1, Rat(1, 2)))) {
            found = {Root3{0, 0}, *q};
        }
    } else {
        Root3 disc = sub(mul(t1, t1), scale(mul(t2, t2), 2));
        if (auto s = sqrt_root3(disc)) {
            for (const Root3& cand :
                 {scale(add(t1, *s), Rat(1, 2)), scale(sub(t1, *s), Rat(1, 2))}) {
                if (cand.is_zero()) continue;
                if (auto p = sqrt_root3(cand)) {
                    Root3 q = divide(t2, scale(*p, 2));
                    found = {*p, q};
                    break;
                }
            }
        }
    }
    if (!found) {
        throw Error(ErrorCode::NotRepresentable,
                    "no square root of " + to_text() + " exists in the field");
    }
    const Rat& p = found->first.u;
    const Rat& r = found->first.v;
    const Rat& q = found->second.u;
    const Rat& s = found->second.v;
    BigInt den = boost::multiprecision::lcm(
        boost::multiprecision::lcm(denominator(p), denominator(q)),
        boost::multiprecision::lcm(denominator(r), denominator(s)));
    auto lift = [&den](const Rat& x) { return numerator(x) * (den / denominator(x)); };
    QuadraticScalar root = from_parts(lift(p), lift(q), lift(r), lift(s), den);
    if (root.sign() < 0) root = -root;
    if (root * root != *this) {
        throw std::logic_error("try_sqrt produced a non-root for " + to_text());
    }
    return root;
}

double QuadraticScalar::to_float() const {
    static const double s2 = std::sqrt(2.0);
    static const double s3 = std::sqrt(3.0);
    static const double s6 = std::sqrt(6.0);
    double num = a_.convert_to<double>() + b_.convert_to<double>() * s2 +
                 c_.convert_to<double>() * s3 + d_.convert_to<double>() * s6;
    return num / den_.convert_to<double>();
}

std::string QuadraticScalar::to_text() const {
    return "(" + a_.str() + " " + b_.str() + " " + c_.str() + " " + d_.str() + ")/" +
           den_.str();
}

QuadraticScalar QuadraticScalar::parse(std::string_view text, std::size_t line,
                                       std::size_t column_offset) {
    auto fail = [&](std::size_t index, const std::string& what) {
        return ParseError(what, line, column_offset + index + 1);
    };
    std::size_t i = 0;
    if (i >= text.size() || text[i] != '(') throw fail(i, "expected '(' to open a scalar");
    ++i;
    auto read_int = [&]() -> BigInt {
        std::size_t start = i;
        if (i < text.size() && text[i] == '-') ++i;
        std::size_t digits = i;
        while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i;
        if (i == digits) throw fail(i, "expected an integer");
        return BigInt(std::string(text.substr(start, i - start)));
    };
    std::vector<BigInt> comps;
    comps.push_back(read_int());
    while (i < text.size() && text[i] == ' ') {
        ++i;
        comps.push_back(read_int());
    }
    if (i >= text.size() || text[i] != ')') throw fail(i, "expected ')' after numerators");
    ++i;
    if (i >= text.size() || text[i] != '/') throw fail(i, "expected '/' before denominator");
    ++i;
    std::size_t den_at = i;
    BigInt den = read_int();
    if (i != text.size()) throw fail(i, "trailing characters after scalar");
    // Denominator validity outranks arity: "(1 2)/0" reports the zero denominator.
    if (den == 0) throw fail(den_at, "ZeroDenominator: denominator must be nonzero");
    if (comps.size() != 4) {
        throw fail(1, "expected 4 numerator components, got " +
                          std::to_string(comps.size()));
    }
    return from_parts(comps[0], comps[1], comps[2], comps[3], den);
}

std::ostream& operator<<(std::ostream& os, const QuadraticScalar& q) {
    return os << q.to_text();
}

}  // namespace spinforge
