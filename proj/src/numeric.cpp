#include "nilric/numeric.hpp"

#include <cctype>

namespace nilric {

Rat rat_from_string(const std::string& s) {
    std::string t;
    t.reserve(s.size());
    for (char ch : s)
        if (!std::isspace(static_cast<unsigned char>(ch))) t.push_back(ch);
    if (!t.empty() && t[0] == '+') t.erase(0, 1);
    if (t.empty()) throw std::invalid_argument("empty rational literal");
    for (size_t i = 0; i < t.size(); ++i) {
        char ch = t[i];
        bool ok = std::isdigit(static_cast<unsigned char>(ch)) || ch == '/' ||
                  ((ch == '-' || ch == '+') && (i == 0 || t[i - 1] == '/'));
        if (!ok) throw std::invalid_argument("malformed rational literal: " + s);
    }
    Rat q;
    if (q.set_str(t, 10) != 0) throw std::invalid_argument("malformed rational literal: " + s);
    if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
    q.canonicalize();
    return q;
}

std::string rat_to_string(const Rat& q) {
    return q.get_str();
}

Rat rat_pow(const Rat& base, long e) {
    if (e == 0) return Rat(1);
    if (e < 0) {
        if (base == 0) throw std::domain_error("rat_pow: 0 to a negative power");
        return rat_pow(Rat(1) / base, -e);
    }
    Rat acc(1), b(base);
    unsigned long n = static_cast<unsigned long>(e);
    while (n) {
        if (n & 1) acc *= b;
        b *= b;
        n >>= 1;
    }
    return acc;
}

Int int_pow(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

void ScaledReal::normalize() {
    if (mant == 0.0 || !std::isfinite(mant)) {
        if (!std::isfinite(mant)) throw std::overflow_error("ScaledReal: non-finite mantissa");
        mant = 0.0;
        exp2 = 0;
        return;
    }
    int k = 0;
    mant = std::frexp(mant, &k);
    exp2 += k;
}

ScaledReal ScaledReal::from_int(const Int& z) {
    if (z == 0) return ScaledReal();
    signed long e = 0;
    double d = mpz_get_d_2exp(&e, z.get_mpz_t());
    ScaledReal r;
    r.mant = d;
    r.exp2 = e;
    r.normalize();
    return r;
}

ScaledReal ScaledReal::from_rat(const Rat& q) {
    if (q == 0) return ScaledReal();
    ScaledReal num = from_int(Int(q.get_num()));
    ScaledReal den = from_int(Int(q.get_den()));
    ScaledReal r;
    r.mant = num.mant / den.mant;
    r.exp2 = num.exp2 - den.exp2;
    r.normalize();
    return r;
}

ScaledReal ScaledReal::pow2(const Rat& t) {
    // t = ipart + frac with 0 <= frac < 1
    Int num = t.get_num(), den = t.get_den();
    Int ipart;
    mpz_fdiv_q(ipart.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    Rat frac = t - Rat(ipart);
    if (!ipart.fits_slong_p()) throw std::overflow_error("ScaledReal::pow2: exponent too large");
    ScaledReal r;
    r.mant = std::exp2(frac.get_d());
    r.exp2 = ipart.get_si();
    r.normalize();
    return r;
}

ScaledReal ScaledReal::operator-() const {
    ScaledReal r(*this);
    r.mant = -r.mant;
    return r;
}

ScaledReal ScaledReal::operator+(const ScaledReal& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    const ScaledReal *hi = this, *lo = &o;
    if (hi->exp2 < lo->exp2) std::swap(hi, lo);
    long diff = hi->exp2 - lo->exp2;
    ScaledReal r;
    r.exp2 = hi->exp2;
    // past ~1100 bits the low addend is below one ulp of the high one
    r.mant = hi->mant + (diff > 1100 ? 0.0 : std::ldexp(lo->mant, static_cast<int>(-diff)));
    r.normalize();
    return r;
}

ScaledReal ScaledReal::operator*(const ScaledReal& o) const {
    if (is_zero() || o.is_zero()) return ScaledReal();
    ScaledReal r;
    r.mant = mant * o.mant;
    r.exp2 = exp2 + o.exp2;
    r.normalize();
    return r;
}

ScaledReal ScaledReal::operator/(const ScaledReal& o) const {
    if (o.is_zero()) throw std::domain_error("ScaledReal: division by zero");
    if (is_zero()) return ScaledReal();
    ScaledReal r;
    r.mant = mant / o.mant;
    r.exp2 = exp2 - o.exp2;
    r.normalize();
    return r;
}

ScaledReal ScaledReal::abs() const {
    ScaledReal r(*this);
    r.mant = std::fabs(r.mant);
    return r;
}

double ScaledReal::to_double() const {
    if (is_zero()) return 0.0;
    if (exp2 > 1023) return mant > 0 ? HUGE_VAL : -HUGE_VAL;
    if (exp2 < -1073) return mant > 0 ? 0.0 : -0.0;
    return std::ldexp(mant, static_cast<int>(exp2));
}

ScaledReal ScaledReal::pow(const ScaledReal& b, unsigned long e) {
    ScaledReal acc(1.0), base(b);
    while (e) {
        if (e & 1) acc *= base;
        base *= base;
        e >>= 1;
    }
    return acc;
}

int ScaledReal::compare(const ScaledReal& o) const {
    int s = sign(), so = o.sign();
    if (s != so) return s < so ? -1 : 1;
    if (s == 0) return 0;
    ScaledReal d = *this - o;
    return d.sign();
}

}  // namespace nilric
