#pragma once

#include <cassert>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace ebfsi {

/// Uniform Cartesian grid. Cell (i, j) covers
/// [x_line(i), x_line(i+1)] x [y_line(j), y_line(j+1)].
struct Grid {
    int nx = 0;
    int ny = 0;
    double x0 = 0.0;
    double y0 = 0.0;
    double dx = 1.0;
    double dy = 1.0;

    long cells() const { return static_cast<long>(nx) * ny; }
    long index(int i, int j) const { return static_cast<long>(j) * nx + i; }
    int i_of(long c) const { return static_cast<int>(c % nx); }
    int j_of(long c) const { return static_cast<int>(c / nx); }

    // Every geometric predicate compares against these exact values.
    double x_line(int i) const { return x0 + i * dx; }
    double y_line(int j) const { return y0 + j * dy; }
    double xc(int i) const { return x0 + (i + 0.5) * dx; }
    double yc(int j) const { return y0 + (j + 0.5) * dy; }
    double x1() const { return x_line(nx); }
    double y1() const { return y_line(ny); }
    double cell_area() const { return dx * dy; }

    /// Column containing x, consistent with x_line comparisons:
    /// x_line(i) <= x < x_line(i+1). May fall outside [0, nx).
    int column_of(double x) const {
        int i = static_cast<int>(std::floor((x - x0) / dx));
        while (x < x_line(i)) --i;
        while (x >= x_line(i + 1)) ++i;
        return i;
    }
    int row_of(double y) const {
        int j = static_cast<int>(std::floor((y - y0) / dy));
        while (y < y_line(j)) --j;
        while (y >= y_line(j + 1)) ++j;
        return j;
    }
    bool contains(int i, int j) const { return i >= 0 && i < nx && j >= 0 && j < ny; }
};

/// Dense row-major 2D array.
template <typename T>
class Array2 {
public:
    Array2() = default;
    Array2(int nx, int ny, const T& init = T{})
        : nx_(nx), ny_(ny), data_(static_cast<std::size_t>(nx) * ny, init) {}

    int nx() const { return nx_; }
    int ny() const { return ny_; }
    std::size_t size() const { return data_.size(); }

    T& operator()(int i, int j) {
        assert(i >= 0 && i < nx_ && j >= 0 && j < ny_);
        return data_[static_cast<std::size_t>(j) * nx_ + i];
    }
    const T& operator()(int i, int j) const {
        assert(i >= 0 && i < nx_ && j >= 0 && j < ny_);
        return data_[static_cast<std::size_t>(j) * nx_ + i];
    }
    T& operator[](std::size_t k) { return data_[k]; }
    const T& operator[](std::size_t k) const { return data_[k]; }

    std::span<T> row(int j) { return {data_.data() + static_cast<std::size_t>(j) * nx_, static_cast<std::size_t>(nx_)}; }
    std::span<const T> row(int j) const {
        return {data_.data() + static_cast<std::size_t>(j) * nx_, static_cast<std::size_t>(nx_)};
    }

    auto begin() { return data_.begin(); }
    auto end() { return data_.end(); }
    auto begin() const { return data_.begin(); }
    auto end() const { return data_.end(); }
    T* data() { return data_.data(); }
    const T* data() const { return data_.data(); }

    void fill(const T& v) { std::fill(data_.begin(), data_.end(), v); }

    friend bool operator==(const Array2&, const Array2&) = default;

private:
    int nx_ = 0;
    int ny_ = 0;
    std::vector<T> data_;
};

}  // namespace ebfsi
