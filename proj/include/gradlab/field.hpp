// Exact arithmetic in the cyclotomic field Q(zeta_12) over arbitrary-precision
// rationals. zeta has minimal polynomial z^4 - z^2 + 1; every scalar used by the
// engine (rationals, i = z^3, omega = z^4 = z^2 - 1, all 12th roots of unity)
// lives in this single field.
#pragma once

#include <array>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>

#include <gmpxx.h>

namespace gradlab {

using Rat = mpq_class;

struct FieldElement {
    // c0 + c1*z + c2*z^2 + c3*z^3, coefficients always in canonical form.
    std::array<Rat, 4> c{Rat(0), Rat(0), Rat(0), Rat(0)};

    FieldElement() = default;
    explicit FieldElement(const Rat& r) { c[0] = r; }
    FieldElement(const Rat& c0, const Rat& c1, const Rat& c2, const Rat& c3)
        : c{c0, c1, c2, c3} {}

    bool is_zero() const {
        return sgn(c[0]) == 0 && sgn(c[1]) == 0 && sgn(c[2]) == 0 && sgn(c[3]) == 0;
    }

    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        return a.c[0] == b.c[0] && a.c[1] == b.c[1] && a.c[2] == b.c[2] &&
               a.c[3] == b.c[3];
    }
    friend bool operator!=(const FieldElement& a, const FieldElement& b) {
        return !(a == b);
    }
};

using FE = FieldElement;

inline FE fe_from_rational(const Rat& r) { return FE(r); }
inline FE fe_from_long(long n) { return FE(Rat(n)); }

inline const FE& fe_zero() {
    static const FE v;
    return v;
}
inline const FE& fe_one() {
    static const FE v{Rat(1), Rat(0), Rat(0), Rat(0)};
    return v;
}
inline const FE& fe_zeta() {
    static const FE v{Rat(0), Rat(1), Rat(0), Rat(0)};
    return v;
}
inline const FE& fe_i() {  // i = zeta^3
    static const FE v{Rat(0), Rat(0), Rat(0), Rat(1)};
    return v;
}
inline const FE& fe_omega() {  // omega = zeta^4 = zeta^2 - 1
    static const FE v{Rat(-1), Rat(0), Rat(1), Rat(0)};
    return v;
}

inline FE operator+(const FE& a, const FE& b) {
    return FE(a.c[0] + b.c[0], a.c[1] + b.c[1], a.c[2] + b.c[2], a.c[3] + b.c[3]);
}
inline FE operator-(const FE& a, const FE& b) {
    return FE(a.c[0] - b.c[0], a.c[1] - b.c[1], a.c[2] - b.c[2], a.c[3] - b.c[3]);
}
inline FE operator-(const FE& a) {
    return FE(-a.c[0], -a.c[1], -a.c[2], -a.c[3]);
}

inline FE operator*(const FE& a, const FE& b) {
    std::array<Rat, 7> d;
    for (int i = 0; i < 4; ++i) {
        if (sgn(a.c[i]) == 0) continue;
        for (int j = 0; j < 4; ++j) {
            if (sgn(b.c[j]) == 0) continue;
            d[i + j] += a.c[i] * b.c[j];
        }
    }
    // Reduce with z^4 = z^2 - 1, z^5 = z^3 - z, z^6 = -1.
    return FE(d[0] - d[4] - d[6], d[1] - d[5], d[2] + d[4], d[3] + d[5]);
}

inline FE operator*(const Rat& q, const FE& a) {
    return FE(q * a.c[0], q * a.c[1], q * a.c[2], q * a.c[3]);
}

inline FE& operator+=(FE& a, const FE& b) {
    a = a + b;
    return a;
}
inline FE& operator-=(FE& a, const FE& b) {
    a = a - b;
    return a;
}
inline FE& operator*=(FE& a, const FE& b) {
    a = a * b;
    return a;
}

// Multiplicative inverse via a 4x4 rational linear solve in the regular
// representation: find x with a*x = 1.
inline FE fe_inv(const FE& a) {
    if (a.is_zero()) throw std::domain_error("fe_inv: division by zero");
    // Columns: a * z^j for j = 0..3.
    std::array<FE, 4> cols;
    FE cur = a;
    for (int j = 0; j < 4; ++j) {
        cols[j] = cur;
        cur = cur * fe_zeta();
    }
    // Augmented Gaussian elimination over Q: M x = e0.
    Rat M[4][5];
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) M[i][j] = cols[j].c[i];
        M[i][4] = (i == 0) ? Rat(1) : Rat(0);
    }
    for (int col = 0; col < 4; ++col) {
        int piv = -1;
        for (int r = col; r < 4; ++r)
            if (sgn(M[r][col]) != 0) {
                piv = r;
                break;
            }
        if (piv < 0) throw std::logic_error("fe_inv: singular regular representation");
        if (piv != col)
            for (int k = 0; k < 5; ++k) swap(M[col][k], M[piv][k]);
        Rat pv = M[col][col];
        for (int k = 0; k < 5; ++k) M[col][k] /= pv;
        for (int r = 0; r < 4; ++r) {
            if (r == col || sgn(M[r][col]) == 0) continue;
            Rat f = M[r][col];
            for (int k = 0; k < 5; ++k) M[r][k] -= f * M[col][k];
        }
    }
    return FE(M[0][4], M[1][4], M[2][4], M[3][4]);
}

inline FE operator/(const FE& a, const FE& b) { return a * fe_inv(b); }

inline FE fe_pow(const FE& a, long k) {
    FE base = (k < 0) ? fe_inv(a) : a;
    unsigned long e = static_cast<unsigned long>(k < 0 ? -k : k);
    FE out = fe_one();
    while (e) {
        if (e & 1) out = out * base;
        base = base * base;
        e >>= 1;
    }
    return out;
}

inline const std::array<FE, 12>& zeta_powers() {
    static const std::array<FE, 12> zp = [] {
        std::array<FE, 12> out;
        FE cur = fe_one();
        for (int k = 0; k < 12; ++k) {
            out[k] = cur;
            cur = cur * fe_zeta();
        }
        return out;
    }();
    return zp;
}

// Least n <= 12 with a^n = 1, if any; only divisors of 12 can occur in Q(zeta12).
inline std::optional<int> fe_root_of_unity_order(const FE& a) {
    for (int k = 0; k < 12; ++k) {
        if (a == zeta_powers()[k]) {
            if (k == 0) return 1;
            return 12 / std::gcd(12, k);
        }
    }
    return std::nullopt;
}

// zeta-exponent of a root of unity: k with a = zeta^k.
inline std::optional<int> fe_zeta_exponent(const FE& a) {
    for (int k = 0; k < 12; ++k)
        if (a == zeta_powers()[k]) return k;
    return std::nullopt;
}

inline bool fe_is_rational(const FE& a) {
    return sgn(a.c[1]) == 0 && sgn(a.c[2]) == 0 && sgn(a.c[3]) == 0;
}

// k with a = base^k for |k| <= 8, if any; base must be a rational > 1.
inline std::optional<long> fe_log_base(const FE& a, const Rat& base) {
    if (!(base > 1)) throw std::domain_error("fe_log_base: base must be > 1");
    if (!fe_is_rational(a)) return std::nullopt;
    for (long k = -8; k <= 8; ++k) {
        Rat v(1);
        for (long t = 0; t < (k < 0 ? -k : k); ++t) v *= base;
        if (k < 0) v = Rat(1) / v;
        if (a.c[0] == v) return k;
    }
    return std::nullopt;
}

// Total order (lexicographic on coefficients) for use as map keys.
inline int fe_cmp(const FE& a, const FE& b) {
    for (int k = 0; k < 4; ++k) {
        int c = cmp(a.c[k], b.c[k]);
        if (c) return c;
    }
    return 0;
}

struct FELess {
    bool operator()(const FE& a, const FE& b) const { return fe_cmp(a, b) < 0; }
};

// Serialization: four rational strings (c0,c1,c2,c3).
inline std::array<std::string, 4> fe_to_strings(const FE& a) {
    return {a.c[0].get_str(), a.c[1].get_str(), a.c[2].get_str(), a.c[3].get_str()};
}

inline Rat rat_from_string(const std::string& s) {
    Rat r;
    if (r.set_str(s, 10) != 0)
        throw std::invalid_argument("rat_from_string: bad rational '" + s + "'");
    r.canonicalize();
    if (sgn(r.get_den()) <= 0) throw std::invalid_argument("rat_from_string: bad denominator");
    return r;
}

inline FE fe_from_strings(const std::array<std::string, 4>& s) {
    return FE(rat_from_string(s[0]), rat_from_string(s[1]), rat_from_string(s[2]),
              rat_from_string(s[3]));
}

// Human-readable rendering: named values where possible, polynomial otherwise.
inline std::string fe_display(const FE& a) {
    if (fe_is_rational(a)) return a.c[0].get_str();
    const FE w = fe_omega();
    const FE w2 = w * w;
    struct Named {
        FE v;
        const char* s;
    };
    const Named named[] = {{fe_i(), "i"},       {-fe_i(), "-i"}, {w, "w"},
                           {w2, "w2"},          {-w, "-w"},      {-w2, "-w2"},
                           {fe_i() * w, "i*w"}, {fe_i() * w2, "i*w2"}};
    for (const auto& n : named)
        if (a == n.v) return n.s;
    std::string out;
    const char* pw[4] = {"", "z", "z^2", "z^3"};
    for (int k = 0; k < 4; ++k) {
        if (sgn(a.c[k]) == 0) continue;
        std::string term = a.c[k].get_str();
        if (k > 0) {
            if (term == "1")
                term = pw[k];
            else if (term == "-1")
                term = std::string("-") + pw[k];
            else
                term += std::string("*") + pw[k];
        }
        if (!out.empty() && term[0] != '-') out += "+";
        out += term;
    }
    return out.empty() ? "0" : out;
}

}  // namespace gradlab
