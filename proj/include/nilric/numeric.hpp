#pragma once

#include <gmpxx.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace nilric {

using Rat = mpq_class;
using Int = mpz_class;

inline int sign_of(const Rat& q) { return sgn(q); }
inline int sign_of(const Int& z) { return sgn(z); }

// Parses "p", "-p/q" etc. and canonicalizes. Throws on malformed input.
Rat rat_from_string(const std::string& s);

std::string rat_to_string(const Rat& q);

inline double rat_to_double(const Rat& q) { return q.get_d(); }

// mpq_class(n, d) does not canonicalize; this does.
inline Rat ratq(long num, long den) {
    Rat q(num, den);
    q.canonicalize();
    return q;
}

// base^e for integer e of either sign; base must be nonzero when e < 0.
Rat rat_pow(const Rat& base, long e);

Int int_pow(const Int& base, unsigned long e);

// Floating value mant * 2^exp2 with mant in [0.5, 1) or exactly 0.
// Keeps 53-bit precision with an unbounded binary exponent; the grid
// certifier needs magnitudes far outside IEEE double range.
struct ScaledReal {
    double mant = 0.0;
    long exp2 = 0;

    ScaledReal() = default;
    explicit ScaledReal(double v) : mant(v) { normalize(); }

    static ScaledReal from_rat(const Rat& q);
    static ScaledReal from_int(const Int& z);
    // 2^t for rational t (mantissa from exp2f of the fractional part).
    static ScaledReal pow2(const Rat& t);

    void normalize();
    bool is_zero() const { return mant == 0.0; }
    int sign() const { return mant > 0.0 ? 1 : (mant < 0.0 ? -1 : 0); }

    ScaledReal operator-() const;
    ScaledReal operator+(const ScaledReal& o) const;
    ScaledReal operator-(const ScaledReal& o) const { return *this + (-o); }
    ScaledReal operator*(const ScaledReal& o) const;
    ScaledReal operator/(const ScaledReal& o) const;  // o must be nonzero
    ScaledReal& operator+=(const ScaledReal& o) { *this = *this + o; return *this; }
    ScaledReal& operator*=(const ScaledReal& o) { *this = *this * o; return *this; }

    ScaledReal abs() const;
    // Saturates to +-HUGE_VAL outside double range.
    double to_double() const;

    static ScaledReal pow(const ScaledReal& b, unsigned long e);
    // Compares by value.
    int compare(const ScaledReal& o) const;
    bool operator<(const ScaledReal& o) const { return compare(o) < 0; }
};

}  // namespace nilric
