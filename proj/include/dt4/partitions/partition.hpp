#pragma once

#include <compare>
#include <string>
#include <utility>
#include <vector>

#include "dt4/eqalg/variables.hpp"

namespace dt4
{

/// Integer partition as a weakly decreasing list of positive parts.
///
/// Young-diagram convention used throughout: box (i, j) is row i (0-based, top
/// row first), column j; row i has parts()[i] boxes.
class Partition
{
public:
    Partition() = default;

    explicit Partition(std::vector<int> parts) : parts_(std::move(parts))
    {
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (parts_[i] <= 0 || (i > 0 && parts_[i] > parts_[i - 1])) {
                throw Error("partition parts must be positive and weakly decreasing");
            }
            size_ += parts_[i];
        }
    }

    const std::vector<int> &parts() const { return parts_; }
    int size() const { return size_; }
    bool empty() const { return parts_.empty(); }
    int rows() const { return static_cast<int>(parts_.size()); }
    int row_length(int i) const { return i < rows() ? parts_[static_cast<std::size_t>(i)] : 0; }

    bool contains(int row, int col) const { return row >= 0 && col >= 0 && col < row_length(row); }

    Partition conjugate() const
    {
        std::vector<int> c;
        for (int j = 0; j < row_length(0); ++j) {
            int h = 0;
            while (h < rows() && parts_[static_cast<std::size_t>(h)] > j) {
                ++h;
            }
            c.push_back(h);
        }
        return Partition(std::move(c));
    }

    /// All boxes in row-major order.
    std::vector<std::pair<int, int>> boxes() const
    {
        std::vector<std::pair<int, int>> out;
        out.reserve(static_cast<std::size_t>(size_));
        for (int i = 0; i < rows(); ++i) {
            for (int j = 0; j < parts_[static_cast<std::size_t>(i)]; ++j) {
                out.emplace_back(i, j);
            }
        }
        return out;
    }

    std::string to_string() const
    {
        std::string s = "(";
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            s += (i ? "," : "") + std::to_string(parts_[i]);
        }
        return s + ")";
    }

    friend bool operator==(const Partition &, const Partition &) = default;
    friend auto operator<=>(const Partition &a, const Partition &b) { return a.parts_ <=> b.parts_; }

private:
    std::vector<int> parts_;
    int size_ = 0;
};

struct ArmLeg {
    int arm;
    int leg;
    friend bool operator==(const ArmLeg &, const ArmLeg &) = default;
};

/// Arm = boxes strictly right of (row, col) in its row; leg = boxes strictly below.
inline ArmLeg arm_leg(const Partition &lambda, int row, int col)
{
    if (!lambda.contains(row, col)) {
        throw Error("arm_leg: box (" + std::to_string(row) + "," + std::to_string(col) + ") outside "
                    + lambda.to_string());
    }
    int leg = 0;
    while (lambda.contains(row + leg + 1, col)) {
        ++leg;
    }
    return {lambda.row_length(row) - col - 1, leg};
}

namespace detail
{
inline void partitions_rec(int remaining, int max_part, std::vector<int> &cur, std::vector<Partition> &out)
{
    if (remaining == 0) {
        out.emplace_back(cur);
        return;
    }
    for (int p = std::min(remaining, max_part); p >= 1; --p) {
        cur.push_back(p);
        partitions_rec(remaining - p, p, cur, out);
        cur.pop_back();
    }
}
} // namespace detail

/// All partitions of n in reverse-lexicographic order: (n), (n-1,1), ..., (1^n).
inline std::vector<Partition> partitions_of(int n)
{
    if (n < 0) {
        throw Error("partitions_of: n must be nonnegative");
    }
    std::vector<Partition> out;
    std::vector<int> cur;
    detail::partitions_rec(n, n, cur, out);
    return out;
}

/// A torus-fixed point of the Hilbert scheme of points on a toric surface:
/// one partition (monomial ideal) per toric fixed point.
struct HilbFixedPoint {
    std::vector<Partition> assignment;
    int total = 0;

    std::string to_string() const
    {
        std::string s = "[";
        for (std::size_t i = 0; i < assignment.size(); ++i) {
            s += (i ? "," : "") + assignment[i].to_string();
        }
        return s + "]";
    }

    friend bool operator==(const HilbFixedPoint &, const HilbFixedPoint &) = default;
};

/// All assignments of partitions to `num_points` toric fixed points with total
/// size n. Order: the size given to earlier points increases slowest-first
/// (lexicographic in the size vector, largest first), partitions per point
/// in reverse-lex order.
inline std::vector<HilbFixedPoint> hilb_fixed_points(std::size_t num_points, int n)
{
    if (n < 0) {
        throw Error("hilb_fixed_points: n must be nonnegative");
    }
    std::vector<std::vector<Partition>> by_size;
    for (int k = 0; k <= n; ++k) {
        by_size.push_back(partitions_of(k));
    }
    std::vector<HilbFixedPoint> out;
    if (num_points == 0) {
        if (n == 0) {
            out.push_back({});
        }
        return out;
    }
    HilbFixedPoint cur;
    cur.assignment.resize(num_points);
    auto rec = [&](auto &&self, std::size_t point, int remaining) -> void {
        if (point + 1 == num_points) {
            for (const auto &p : by_size[static_cast<std::size_t>(remaining)]) {
                cur.assignment[point] = p;
                cur.total = n;
                out.push_back(cur);
            }
            return;
        }
        for (int k = remaining; k >= 0; --k) {
            for (const auto &p : by_size[static_cast<std::size_t>(k)]) {
                cur.assignment[point] = p;
                self(self, point + 1, remaining - k);
            }
        }
    };
    rec(rec, 0, n);
    return out;
}

} // namespace dt4
