#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <numeric>
#include <sstream>
#include <string>
#include <variant>

#include "gtheta/grid_function.hpp"

namespace gtheta {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
    friend auto operator<=>(const Vec2&, const Vec2&) = default;
};

/// Exact unit-fraction style rational, normalized with den > 0. Carrier
/// elements like 1/(2m) need exact parity classification, which doubles
/// cannot provide.
struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n, long long d) : num(n), den(d) {
        if (den == 0) throw std::invalid_argument("Rational: zero denominator");
        if (den < 0) { num = -num; den = -den; }
        long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    friend auto operator<=>(const Rational&, const Rational&) = default;
};

using GridHandle = std::shared_ptr<const GridFunction>;

/// Opaque carrier element with decidable equality: integer, real, planar
/// point, exact rational, or grid-function handle.
class Point {
public:
    using Storage = std::variant<long long, double, Vec2, Rational, GridHandle>;

    Point() : v_(0LL) {}
    Point(long long v) : v_(v) {}
    Point(int v) : v_(static_cast<long long>(v)) {}
    Point(double v) : v_(v) {}
    Point(Vec2 v) : v_(v) {}
    Point(Rational v) : v_(v) {}
    Point(GridHandle v) : v_(std::move(v)) {}
    Point(GridFunction f) : v_(std::make_shared<const GridFunction>(std::move(f))) {}

    template <typename T>
    bool holds() const { return std::holds_alternative<T>(v_); }

    template <typename T>
    const T& get() const { return std::get<T>(v_); }

    const Storage& storage() const { return v_; }

    bool operator==(const Point& other) const {
        if (v_.index() != other.v_.index()) return false;
        if (holds<GridHandle>()) {
            const auto& a = get<GridHandle>();
            const auto& b = other.get<GridHandle>();
            if (a == b) return true;
            if (!a || !b) return false;
            return *a == *b;
        }
        return v_ == other.v_;
    }

    /// Deterministic total order, used only to emit sorted member lists.
    bool operator<(const Point& other) const {
        if (v_.index() != other.v_.index()) return v_.index() < other.v_.index();
        if (holds<GridHandle>()) {
            const auto& a = get<GridHandle>();
            const auto& b = other.get<GridHandle>();
            if (!a || !b) return static_cast<bool>(b);
            if (a->segments() != b->segments()) return a->segments() < b->segments();
            for (std::size_t i = 0; i < a->nodes(); ++i) {
                if ((*a)[i] != (*b)[i]) return (*a)[i] < (*b)[i];
            }
            return false;
        }
        return v_ < other.v_;
    }

    std::string to_string() const {
        std::ostringstream os;
        if (holds<long long>()) {
            os << get<long long>();
        } else if (holds<double>()) {
            os << get<double>();
        } else if (holds<Vec2>()) {
            os << "(" << get<Vec2>().x << "," << get<Vec2>().y << ")";
        } else if (holds<Rational>()) {
            const auto& r = get<Rational>();
            if (r.den == 1) os << r.num;
            else os << r.num << "/" << r.den;
        } else {
            const auto& g = get<GridHandle>();
            os << "grid[" << (g ? g->segments() : 0) << "]";
        }
        return os.str();
    }

private:
    Storage v_;
};

}  // namespace gtheta
