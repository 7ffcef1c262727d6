#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>

#include "spinforge/errors.hpp"

namespace spinforge {

using BigInt = boost::multiprecision::cpp_int;

// Exact element of the real field Q(sqrt2, sqrt3):
//
//     (a + b*sqrt2 + c*sqrt3 + d*sqrt6) / den
//
// Canonical form: den > 0 and gcd(a, b, c, d, den) = 1; zero is (0 0 0 0)/1.
// All arithmetic is exact; components are arbitrary-precision integers.
class QuadraticScalar {
public:
    QuadraticScalar() : a_(0), b_(0), c_(0), d_(0), den_(1) {}
    QuadraticScalar(long long n) : a_(n), b_(0), c_(0), d_(0), den_(1) {}
    QuadraticScalar(const BigInt& n) : a_(n), b_(0), c_(0), d_(0), den_(1) {}

    // Canonicalizes; throws ZeroDenominator when den == 0.
    static QuadraticScalar from_parts(BigInt a, BigInt b, BigInt c, BigInt d, BigInt den);
    static QuadraticScalar rational(BigInt num, BigInt den);
    static QuadraticScalar sqrt2() { return from_parts(0, 1, 0, 0, 1); }
    static QuadraticScalar sqrt3() { return from_parts(0, 0, 1, 0, 1); }
    static QuadraticScalar sqrt6() { return from_parts(0, 0, 0, 1, 1); }

    const BigInt& a() const { return a_; }
    const BigInt& b() const { return b_; }
    const BigInt& c() const { return c_; }
    const BigInt& d() const { return d_; }
    const BigInt& den() const { return den_; }

    bool is_zero() const { return a_ == 0 && b_ == 0 && c_ == 0 && d_ == 0; }
    bool is_rational() const { return b_ == 0 && c_ == 0 && d_ == 0; }
    bool is_integer() const { return is_rational() && den_ == 1; }
    bool is_one() const { return is_rational() && den_ == 1 && a_ == 1; }

    // Exact sign of the real value: -1, 0, or +1. No floating point involved.
    int sign() const;

    QuadraticScalar operator-() const;
    QuadraticScalar& operator+=(const QuadraticScalar& rhs);
    QuadraticScalar& operator-=(const QuadraticScalar& rhs);
    QuadraticScalar& operator*=(const QuadraticScalar& rhs);
    // Throws DivisionByZero when rhs is zero.
    QuadraticScalar& operator/=(const QuadraticScalar& rhs);

    friend QuadraticScalar operator+(QuadraticScalar lhs, const QuadraticScalar& rhs) {
        return lhs += rhs;
    }
    friend QuadraticScalar operator-(QuadraticScalar lhs, const QuadraticScalar& rhs) {
        return lhs -= rhs;
    }
    friend QuadraticScalar operator*(QuadraticScalar lhs, const QuadraticScalar& rhs) {
        return lhs *= rhs;
    }
    friend QuadraticScalar operator/(QuadraticScalar lhs, const QuadraticScalar& rhs) {
        return lhs /= rhs;
    }

    friend bool operator==(const QuadraticScalar& lhs, const QuadraticScalar& rhs) {
        return lhs.a_ == rhs.a_ && lhs.b_ == rhs.b_ && lhs.c_ == rhs.c_ &&
               lhs.d_ == rhs.d_ && lhs.den_ == rhs.den_;
    }
    friend bool operator!=(const QuadraticScalar& lhs, const QuadraticScalar& rhs) {
        return !(lhs == rhs);
    }

    // Exact square root when one exists in the field; throws NotRepresentable
    // otherwise (in particular for negative values). The returned root is the
    // nonnegative one.
    QuadraticScalar try_sqrt() const;

    // Nearest-double image of the exact value.
    double to_float() const;

    // Textual form "(a b c d)/den"; bit-exact round trip through parse().
    std::string to_text() const;

    // Strict inverse of to_text(). `line` and `column_offset` locate the token
    // inside a larger document for error reporting; defaults suit standalone use.
    static QuadraticScalar parse(std::string_view text, std::size_t line = 1,
                                 std::size_t column_offset = 0);

    friend std::ostream& operator<<(std::ostream& os, const QuadraticScalar& q);

private:
    QuadraticScalar(BigInt a, BigInt b, BigInt c, BigInt d, BigInt den, int /*raw*/)
        : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)),
          den_(std::move(den)) {}

    void canonicalize();

    BigInt a_, b_, c_, d_, den_;
};

}  // namespace spinforge
