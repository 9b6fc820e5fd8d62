#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>

#include "vablocks/rational.hpp"

namespace vablocks {

// Sparse vector in a graded space.  The grade is a weight for algebra
// vectors and a level for module vectors; `idx` indexes the declared basis
// of that graded piece.  Zero entries are never stored.
class GradedVector {
public:
    using Key = std::pair<int, int>; // (grade, idx)

    GradedVector() = default;

    static GradedVector unit(int grade, int idx) {
        GradedVector v;
        v.entries_[{grade, idx}] = 1;
        return v;
    }

    bool is_zero() const { return entries_.empty(); }
    size_t size() const { return entries_.size(); }

    void add(int grade, int idx, const Scalar& c) {
        if (vablocks::is_zero(c)) return;
        auto it = entries_.find({grade, idx});
        if (it == entries_.end()) {
            entries_[{grade, idx}] = c;
        } else {
            it->second += c;
            if (vablocks::is_zero(it->second)) entries_.erase(it);
        }
    }

    Scalar coeff(int grade, int idx) const {
        auto it = entries_.find({grade, idx});
        return it == entries_.end() ? Scalar(0) : it->second;
    }

    GradedVector& operator+=(const GradedVector& o) {
        for (const auto& [k, c] : o.entries_) add(k.first, k.second, c);
        return *this;
    }
    GradedVector& operator-=(const GradedVector& o) {
        for (const auto& [k, c] : o.entries_) add(k.first, k.second, -c);
        return *this;
    }
    GradedVector& operator*=(const Scalar& s) {
        if (vablocks::is_zero(s)) {
            entries_.clear();
            return *this;
        }
        for (auto& [k, c] : entries_) c *= s;
        return *this;
    }
    friend GradedVector operator*(const Scalar& s, GradedVector v) {
        v *= s;
        return v;
    }
    friend GradedVector operator+(GradedVector a, const GradedVector& b) {
        a += b;
        return a;
    }
    friend GradedVector operator-(GradedVector a, const GradedVector& b) {
        a -= b;
        return a;
    }
    bool operator==(const GradedVector& o) const { return entries_ == o.entries_; }

    // grade if every entry sits in one graded piece (zero counts as any grade)
    std::optional<int> homogeneous_grade() const {
        if (entries_.empty()) return std::nullopt;
        int g = entries_.begin()->first.first;
        if (entries_.rbegin()->first.first != g) return std::nullopt;
        return g;
    }

    int max_grade() const { return entries_.empty() ? -1 : entries_.rbegin()->first.first; }
    int min_grade() const { return entries_.empty() ? 0 : entries_.begin()->first.first; }

    const std::map<Key, Scalar>& entries() const { return entries_; }

    // component of one grade
    GradedVector slice(int grade) const {
        GradedVector out;
        for (auto it = entries_.lower_bound({grade, 0});
             it != entries_.end() && it->first.first == grade; ++it)
            out.entries_[it->first] = it->second;
        return out;
    }

private:
    std::map<Key, Scalar> entries_;
};

} // namespace vablocks
