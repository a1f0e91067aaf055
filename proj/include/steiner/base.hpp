#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace steiner {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    constexpr Vec2() = default;
    constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}

    constexpr Vec2 operator+(Vec2 r) const { return {x + r.x, y + r.y}; }
    constexpr Vec2 operator-(Vec2 r) const { return {x - r.x, y - r.y}; }
    constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
    constexpr Vec2 operator-() const { return {-x, -y}; }
    friend constexpr Vec2 operator*(double s, Vec2 v) { return {v.x * s, v.y * s}; }

    constexpr bool operator==(const Vec2&) const = default;
};

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm2(Vec2 a) { return a.x * a.x + a.y * a.y; }
inline double norm(Vec2 a) { return std::sqrt(norm2(a)); }
inline double dist(Vec2 a, Vec2 b) { return norm(a - b); }

/// Lexicographic order, x before y.
constexpr bool lex_less(Vec2 a, Vec2 b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
}

/// Numeric knobs shared by the whole kernel.
struct Tolerances {
    double vertex_tol = 1e-12;      // below this, points coincide
    double area_tol = 1e-12;        // collinearity / degeneracy threshold (cross-product units)
    double hausdorff_tol = 1e-9;    // slack for containment predicates
    double quadrature_tol = 1e-10;  // absolute error budget for integrals

    void validate() const {
        if (!(vertex_tol > 0 && area_tol > 0 && hausdorff_tol > 0 && quadrature_tol > 0))
            throw std::invalid_argument("Tolerances: all fields must be strictly positive");
    }
};

struct invalid_input : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct degenerate_body : std::domain_error {
    using std::domain_error::domain_error;
};

struct precondition_error : std::logic_error {
    using std::logic_error::logic_error;
};

struct insufficient_data : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// splitmix64: the one PRNG used everywhere determinism matters.
/// 64-bit state, one multiply-xor-shift chain per draw.
class SplitMix64 {
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1) with 53-bit resolution.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) { return next() % n; }

  private:
    std::uint64_t state_;
};

}  // namespace steiner
