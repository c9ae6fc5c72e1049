// ecurve.hpp -- short-Weierstrass elliptic curves over small prime fields,
// affine coordinates with modular inversion per addition.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "qpkc/numtheory.hpp"

namespace qpkc {

struct Point {
    bool inf = true;
    std::uint64_t x = 0;
    std::uint64_t y = 0;

    static Point infinity() { return Point{}; }
    static Point affine(std::uint64_t x, std::uint64_t y) { return Point{false, x, y}; }

    friend bool operator==(const Point& a, const Point& b) {
        if (a.inf || b.inf) return a.inf == b.inf;
        return a.x == b.x && a.y == b.y;
    }
};

// y^2 = x^3 + a x + b over Z_p, p > 3 prime, 4a^3 + 27b^2 != 0 (mod p).
struct Curve {
    std::uint64_t p;
    std::uint64_t a;
    std::uint64_t b;

    Curve(std::uint64_t p_, std::uint64_t a_, std::uint64_t b_)
        : p(p_), a(a_ % p_), b(b_ % p_) {
        if (p <= 3 || !is_prime_trial(p))
            throw std::invalid_argument("Curve: p must be a prime > 3");
        std::uint64_t disc =
            (mul_mod(4, mod_pow(a, 3, p), p) + mul_mod(27, mul_mod(b, b, p), p)) % p;
        if (disc == 0)
            throw std::invalid_argument("Curve: singular (4a^3 + 27b^2 == 0 mod p)");
    }

    bool contains(const Point& pt) const {
        if (pt.inf) return true;
        if (pt.x >= p || pt.y >= p) return false;
        std::uint64_t lhs = mul_mod(pt.y, pt.y, p);
        std::uint64_t rhs = (mod_pow(pt.x, 3, p) + mul_mod(a, pt.x, p) + b) % p;
        return lhs == rhs;
    }

    friend bool operator==(const Curve& x, const Curve& y) {
        return x.p == y.p && x.a == y.a && x.b == y.b;
    }
};

inline Point point_negate(const Curve& c, const Point& pt) {
    if (pt.inf) return pt;
    return Point::affine(pt.x, (c.p - pt.y) % c.p);
}

inline Point point_add(const Curve& c, const Point& p1, const Point& p2) {
    if (!c.contains(p1) || !c.contains(p2))
        throw std::invalid_argument("point_add: point not on curve");
    if (p1.inf) return p2;
    if (p2.inf) return p1;
    std::uint64_t p = c.p;
    if (p1.x == p2.x && (p1.y + p2.y) % p == 0) return Point::infinity();

    std::uint64_t slope;
    if (p1.x == p2.x) { // doubling
        std::uint64_t num = (mul_mod(3, mul_mod(p1.x, p1.x, p), p) + c.a) % p;
        slope = mul_mod(num, mod_inv(mul_mod(2, p1.y, p), p), p);
    } else {
        std::uint64_t dy = (p2.y + p - p1.y) % p;
        std::uint64_t dx = (p2.x + p - p1.x) % p;
        slope = mul_mod(dy, mod_inv(dx, p), p);
    }
    std::uint64_t x3 = (mul_mod(slope, slope, p) + 2 * p - p1.x - p2.x) % p;
    std::uint64_t y3 = (mul_mod(slope, (p1.x + p - x3) % p, p) + p - p1.y) % p;
    return Point::affine(x3, y3);
}

inline Point scalar_mul(const Curve& c, std::uint64_t k, const Point& pt) {
    if (!c.contains(pt))
        throw std::invalid_argument("scalar_mul: point not on curve");
    Point acc = Point::infinity();
    Point base = pt;
    while (k > 0) {
        if (k & 1u) acc = point_add(c, acc, base);
        base = point_add(c, base, base);
        k >>= 1;
    }
    return acc;
}

// All points of the curve including infinity, by enumeration.
inline std::vector<Point> enumerate_points(const Curve& c) {
    std::vector<Point> pts{Point::infinity()};
    for (std::uint64_t x = 0; x < c.p; ++x) {
        std::uint64_t rhs = (mod_pow(x, 3, c.p) + mul_mod(c.a, x, c.p) + c.b) % c.p;
        for (std::uint64_t y = 0; y < c.p; ++y)
            if (mul_mod(y, y, c.p) == rhs) pts.push_back(Point::affine(x, y));
    }
    return pts;
}

inline std::uint64_t point_order(const Curve& c, const Point& pt) {
    if (pt.inf) return 1;
    Point acc = pt;
    std::uint64_t ord = 1;
    while (!acc.inf) {
        acc = point_add(c, acc, pt);
        ++ord;
    }
    return ord;
}

} // namespace qpkc
