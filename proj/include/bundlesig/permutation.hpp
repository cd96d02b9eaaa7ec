#pragma once

#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "errors.hpp"

namespace bundlesig {

/// Permutation of {0,...,n-1} in one-line notation: image[j] is where j goes.
/// Products are read left to right, like every group law in this library.
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::size_t n) : image_(n) { std::iota(image_.begin(), image_.end(), 0); }

    /// Throws DimensionMismatch if `image` is not a bijection.
    explicit Permutation(std::vector<std::size_t> image) : image_(std::move(image)) {
        std::vector<bool> seen(image_.size(), false);
        for (auto v : image_) {
            if (v >= image_.size() || seen[v])
                throw DimensionMismatch("not a permutation of size " + std::to_string(image_.size()));
            seen[v] = true;
        }
    }

    std::size_t size() const { return image_.size(); }
    std::size_t operator()(std::size_t j) const { return image_[j]; }
    const std::vector<std::size_t>& images() const { return image_; }

    bool is_identity() const {
        for (std::size_t j = 0; j < image_.size(); ++j)
            if (image_[j] != j) return false;
        return true;
    }

    Permutation inverse() const {
        std::vector<std::size_t> inv(image_.size());
        for (std::size_t j = 0; j < image_.size(); ++j) inv[image_[j]] = j;
        Permutation out;
        out.image_ = std::move(inv);
        return out;
    }

    /// Sign as +1 or -1.
    int sign() const {
        std::vector<bool> seen(image_.size(), false);
        int s = 1;
        for (std::size_t j = 0; j < image_.size(); ++j) {
            if (seen[j]) continue;
            std::size_t len = 0;
            for (std::size_t k = j; !seen[k]; k = image_[k]) {
                seen[k] = true;
                ++len;
            }
            if (len % 2 == 0) s = -s;
        }
        return s;
    }

    friend bool operator==(const Permutation&, const Permutation&) = default;

private:
    std::vector<std::size_t> image_;
};

/// "first, then second": j -> second(first(j)).
inline Permutation then(const Permutation& first, const Permutation& second) {
    if (first.size() != second.size()) throw DimensionMismatch("permutation sizes differ");
    std::vector<std::size_t> img(first.size());
    for (std::size_t j = 0; j < img.size(); ++j) img[j] = second(first(j));
    return Permutation(std::move(img));
}

/// Moves the entry at position j to position sigma(j).
template <class T>
std::vector<T> permute(const Permutation& sigma, const std::vector<T>& v) {
    if (sigma.size() != v.size()) throw DimensionMismatch("permute: size mismatch");
    std::vector<T> out(v.size());
    for (std::size_t j = 0; j < v.size(); ++j) out[sigma(j)] = v[j];
    return out;
}

}  // namespace bundlesig
