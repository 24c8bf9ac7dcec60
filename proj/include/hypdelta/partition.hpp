#pragma once

#include <stdexcept>
#include <vector>

namespace hypdelta {

/// Integer partition, parts stored non-increasing.
class Partition {
public:
    Partition() = default;
    explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (parts_[i] <= 0) throw std::invalid_argument("partition parts must be positive");
            if (i > 0 && parts_[i] > parts_[i - 1])
                throw std::invalid_argument("partition parts must be non-increasing");
        }
    }

    static Partition staircase(int g) {
        std::vector<int> p;
        for (int k = g; k >= 1; --k) p.push_back(k);
        return Partition(p);
    }

    const std::vector<int>& parts() const { return parts_; }
    int length() const { return static_cast<int>(parts_.size()); }
    int part(int k) const { return k < length() ? parts_[k] : 0; }  // 0-based, zero-padded

    int size() const {
        int d = 0;
        for (int p : parts_) d += p;
        return d;
    }

    // conjugate(k) = #{ l : parts[l] >= k+1 }
    Partition conjugate() const {
        std::vector<int> c;
        if (parts_.empty()) return Partition(c);
        for (int k = 1; k <= parts_[0]; ++k) {
            int n = 0;
            for (int p : parts_)
                if (p >= k) ++n;
            c.push_back(n);
        }
        return Partition(c);
    }

    bool operator==(const Partition& o) const { return parts_ == o.parts_; }

private:
    std::vector<int> parts_;
};

}  // namespace hypdelta
