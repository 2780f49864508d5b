#include "nilric/poly.hpp"

#include <algorithm>
#include <numeric>

namespace nilric {

namespace {

template <class P>
long degree_impl(const P& p) {
    for (long i = static_cast<long>(p.size()) - 1; i >= 0; --i)
        if (p[static_cast<size_t>(i)] != 0) return i;
    return -1;
}

template <class P>
void trim_impl(P& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

int sign_at_one(const ZPolyV& p) {
    Int s(0);
    for (const auto& c : p) s += c;
    return sgn(s);
}

long count_variations(const std::vector<int>& signs) {
    long v = 0;
    int last = 0;
    for (int s : signs) {
        if (s == 0) continue;
        if (last != 0 && s != last) ++v;
        last = s;
    }
    return v;
}

ZPolyV poly_derivative_z(const ZPolyV& p) {
    ZPolyV q;
    if (p.size() <= 1) return q;
    q.resize(p.size() - 1);
    for (size_t i = 1; i < p.size(); ++i) q[i - 1] = p[i] * static_cast<long>(i);
    return q;
}

// Positive-scaled pseudo-remainder: returns (positive constant) * rem(A, B).
ZPolyV pseudo_rem_pos(ZPolyV A, const ZPolyV& B) {
    long db = degree_impl(B);
    const Int& lb = B[static_cast<size_t>(db)];
    Int albs = abs(lb);
    int sb = sgn(lb);
    trim_impl(A);
    while (degree_impl(A) >= db) {
        long da = degree_impl(A);
        Int la = A[static_cast<size_t>(da)];
        for (auto& coef : A) coef *= albs;
        Int q = la * sb;
        for (long j = 0; j <= db; ++j) A[static_cast<size_t>(da - db + j)] -= q * B[static_cast<size_t>(j)];
        trim_impl(A);
    }
    return A;
}

}  // namespace

long poly_degree(const QPolyV& p) { return degree_impl(p); }
long poly_degree(const ZPolyV& p) { return degree_impl(p); }
void poly_trim(QPolyV& p) { trim_impl(p); }
void poly_trim(ZPolyV& p) { trim_impl(p); }

Rat poly_eval(const QPolyV& p, const Rat& x) {
    Rat acc(0);
    for (long i = static_cast<long>(p.size()) - 1; i >= 0; --i) acc = acc * x + p[static_cast<size_t>(i)];
    return acc;
}

Rat poly_eval(const ZPolyV& p, const Rat& x) {
    Rat acc(0);
    for (long i = static_cast<long>(p.size()) - 1; i >= 0; --i) acc = acc * x + Rat(p[static_cast<size_t>(i)]);
    return acc;
}

QPolyV poly_derivative(const QPolyV& p) {
    QPolyV q;
    if (p.size() <= 1) return q;
    q.resize(p.size() - 1);
    for (size_t i = 1; i < p.size(); ++i) q[i - 1] = p[i] * static_cast<long>(i);
    return q;
}

void make_primitive(ZPolyV& p) {
    trim_impl(p);
    if (p.empty()) return;
    Int g(0);
    for (const auto& c : p) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
        if (g == 1) break;
    }
    if (g > 1)
        for (auto& c : p) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
}

ZPolyV poly_to_primitive(const QPolyV& p) {
    Int l(1);
    for (const auto& c : p) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    ZPolyV z(p.size());
    for (size_t i = 0; i < p.size(); ++i) {
        Rat scaled = p[i] * Rat(l);
        // exact by construction
        z[i] = Int(scaled.get_num());
    }
    make_primitive(z);
    return z;
}

ZPolyV poly_deflate_at_one(const ZPolyV& p) {
    long d = degree_impl(p);
    if (d < 1) throw std::logic_error("poly_deflate_at_one: degree < 1");
    ZPolyV q(static_cast<size_t>(d));
    Int carry = p[static_cast<size_t>(d)];
    for (long i = d - 1; i >= 0; --i) {
        q[static_cast<size_t>(i)] = carry;
        carry += p[static_cast<size_t>(i)];
    }
    if (carry != 0) throw std::logic_error("poly_deflate_at_one: 1 is not a root");
    return q;
}

ZPolyV poly_shift_by_one(const ZPolyV& p) {
    ZPolyV a(p);
    long d = degree_impl(a);
    for (long i = 0; i < d; ++i)
        for (long j = d - 1; j >= i; --j) a[static_cast<size_t>(j)] += a[static_cast<size_t>(j + 1)];
    return a;
}

long sturm_roots_beyond_one(const ZPolyV& p, long degree_cap, bool* overflowed) {
    if (overflowed) *overflowed = false;
    long d = degree_impl(p);
    if (d > degree_cap) {
        if (overflowed) *overflowed = true;
        return -1;
    }
    if (d <= 0) return 0;

    std::vector<ZPolyV> chain;
    chain.push_back(p);
    make_primitive(chain.back());
    chain.push_back(poly_derivative_z(chain.front()));
    make_primitive(chain.back());
    while (degree_impl(chain.back()) >= 0) {
        const ZPolyV& a = chain[chain.size() - 2];
        const ZPolyV& b = chain.back();
        if (degree_impl(b) == 0) break;
        ZPolyV r = pseudo_rem_pos(a, b);
        if (degree_impl(r) < 0) break;
        for (auto& c : r) c = -c;
        make_primitive(r);
        chain.push_back(std::move(r));
    }

    std::vector<int> at_one, at_inf;
    at_one.reserve(chain.size());
    at_inf.reserve(chain.size());
    for (const auto& q : chain) {
        at_one.push_back(sign_at_one(q));
        long dq = degree_impl(q);
        at_inf.push_back(dq < 0 ? 0 : sgn(q[static_cast<size_t>(dq)]));
    }
    return count_variations(at_one) - count_variations(at_inf);
}

RayCert certify_ray_positive(const QPolyV& P, long degree_cap) {
    RayCert cert;
    QPolyV q(P);
    poly_trim(q);
    if (q.empty()) {
        cert.status = RaySign::indefinite;
        cert.method = "zero";
        return cert;
    }

    ZPolyV z = poly_to_primitive(q);

    size_t low = 0;
    while (low < z.size() && z[low] == 0) ++low;
    if (low > 0) {
        z.erase(z.begin(), z.begin() + static_cast<long>(low));
        cert.stripped_w_power = static_cast<long>(low);
    }
    while (degree_impl(z) >= 1 && sign_at_one(z) == 0) {
        z = poly_deflate_at_one(z);
        ++cert.root1_multiplicity;
    }

    auto hunt_negative = [&](RayCert& c) {
        for (int j = 1; j <= 80; ++j) {
            Rat w = Rat(1) + rat_pow(Rat(1, 2), j);
            if (sgn(poly_eval(P, w)) < 0) {
                c.has_negative_witness = true;
                c.witness_w = w;
                return;
            }
        }
        for (int t = 1; t <= 64; ++t) {
            Rat w = rat_pow(Rat(2), t);
            if (sgn(poly_eval(P, w)) < 0) {
                c.has_negative_witness = true;
                c.witness_w = w;
                return;
            }
        }
        for (int i = 1; i < 64; ++i) {
            Rat w = Rat(1) + ratq(i, 16);
            if (sgn(poly_eval(P, w)) < 0) {
                c.has_negative_witness = true;
                c.witness_w = w;
                return;
            }
        }
    };

    long d = degree_impl(z);
    if (d == 0) {
        int s = sgn(z[0]);
        cert.method = "constant";
        if (s > 0) {
            cert.status = cert.root1_multiplicity ? RaySign::nonneg_zero_at_one : RaySign::positive;
        } else {
            cert.status = RaySign::indefinite;
            hunt_negative(cert);
        }
        return cert;
    }

    if (sign_at_one(z) < 0) {
        cert.status = RaySign::indefinite;
        cert.method = "negative-at-one";
        hunt_negative(cert);
        return cert;
    }

    // exponent gcd compression w -> w^g, a bijection of (1, inf)
    long g = 0;
    for (long i = 1; i <= d; ++i)
        if (z[static_cast<size_t>(i)] != 0) g = std::gcd(g, i);
    if (g >= 2) {
        ZPolyV zc(static_cast<size_t>(d / g) + 1);
        for (long i = 0; i * g <= d; ++i) zc[static_cast<size_t>(i)] = z[static_cast<size_t>(i * g)];
        z = std::move(zc);
        cert.compression = g;
        d = degree_impl(z);
    }

    bool all_nonneg = std::all_of(z.begin(), z.end(), [](const Int& c) { return c >= 0; });
    if (all_nonneg) {
        cert.status = cert.root1_multiplicity ? RaySign::nonneg_zero_at_one : RaySign::positive;
        cert.method = "nonneg-coeffs";
        return cert;
    }

    // Abel summation: P(u) = sum_e T(e) (u^e - u^{e-1}) + P(1) with T(e) the
    // coefficient sums from the top, so nonneg partial sums pin P >= P(1) > 0
    // on the whole ray. Linear time and immune to the degree of the row.
    {
        Int t(0);
        bool sums_ok = true;
        for (long i = d; i >= 1; --i) {
            t += z[static_cast<size_t>(i)];
            if (t < 0) {
                sums_ok = false;
                break;
            }
        }
        if (sums_ok) {
            cert.status = cert.root1_multiplicity ? RaySign::nonneg_zero_at_one : RaySign::positive;
            cert.method = "partial-sums";
            return cert;
        }
    }

    if (sgn(z[static_cast<size_t>(d)]) < 0) {
        cert.status = RaySign::indefinite;
        cert.method = "negative-leading";
        hunt_negative(cert);
        return cert;
    }

    if (d > degree_cap) {
        cert.status = RaySign::overflow;
        cert.method = "degree-cap";
        return cert;
    }

    if (d <= 2000) {
        ZPolyV shifted = poly_shift_by_one(z);
        std::vector<int> signs;
        signs.reserve(shifted.size());
        for (const auto& c : shifted) signs.push_back(sgn(c));
        if (count_variations(signs) == 0) {
            cert.status = cert.root1_multiplicity ? RaySign::nonneg_zero_at_one : RaySign::positive;
            cert.method = "descartes";
            return cert;
        }
    }

    bool ovf = false;
    long roots = sturm_roots_beyond_one(z, degree_cap, &ovf);
    if (ovf) {
        cert.status = RaySign::overflow;
        cert.method = "degree-cap";
        return cert;
    }
    cert.roots_beyond_one = roots;
    cert.method = "sturm";
    if (roots == 0) {
        cert.status = cert.root1_multiplicity ? RaySign::nonneg_zero_at_one : RaySign::positive;
    } else {
        cert.status = RaySign::indefinite;
        hunt_negative(cert);
    }
    return cert;
}

}  // namespace nilric
