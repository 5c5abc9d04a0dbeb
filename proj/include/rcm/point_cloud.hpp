#pragma once

#include <cstddef>
#include <vector>

#include "rcm/vec3.hpp"

namespace rcm {

// Structure-of-arrays point set; the layout the batch kernels consume.
struct PointCloud {
    std::vector<double> x;
    std::vector<double> y;
    std::vector<double> z;

    std::size_t size() const noexcept { return x.size(); }
    bool empty() const noexcept { return x.empty(); }
    Vec3 operator[](std::size_t i) const noexcept { return {x[i], y[i], z[i]}; }

    void reserve(std::size_t n) {
        x.reserve(n);
        y.reserve(n);
        z.reserve(n);
    }
    void push_back(const Vec3& p) {
        x.push_back(p.x);
        y.push_back(p.y);
        z.push_back(p.z);
    }
    bool operator==(const PointCloud&) const = default;
};

// Copy of `points` shifted by `offset`.
inline PointCloud translated(const PointCloud& points, const Vec3& offset) {
    PointCloud out;
    out.reserve(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) out.push_back(points[i] + offset);
    return out;
}

}  // namespace rcm
