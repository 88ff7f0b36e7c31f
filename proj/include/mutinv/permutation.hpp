#pragma once

#include <cstddef>
#include <numeric>
#include <vector>

#include "mutinv/errors.hpp"

namespace mutinv {

// Permutation of {0, ..., n-1} stored as an image table: (*this)(i) = images[i].
class Permutation {
public:
    explicit Permutation(std::vector<std::size_t> images) : img_(std::move(images)) {
        std::vector<char> seen(img_.size(), 0);
        for (std::size_t v : img_) {
            if (v >= img_.size() || seen[v])
                throw InvalidPermutationError("image list is not a bijection");
            seen[v] = 1;
        }
    }

    static Permutation identity(std::size_t n) {
        std::vector<std::size_t> im(n);
        std::iota(im.begin(), im.end(), std::size_t{0});
        return Permutation(std::move(im));
    }

    std::size_t size() const { return img_.size(); }
    std::size_t operator()(std::size_t i) const { return img_[i]; }
    const std::vector<std::size_t>& images() const { return img_; }

    bool is_identity() const {
        for (std::size_t i = 0; i < img_.size(); ++i)
            if (img_[i] != i) return false;
        return true;
    }

    Permutation inverse() const {
        std::vector<std::size_t> inv(img_.size());
        for (std::size_t i = 0; i < img_.size(); ++i) inv[img_[i]] = i;
        return Permutation(std::move(inv));
    }

    // Left-to-right composition: (f.then(g))(i) == g(f(i)).
    Permutation then(const Permutation& g) const {
        std::vector<std::size_t> im(img_.size());
        for (std::size_t i = 0; i < img_.size(); ++i) im[i] = g(img_[i]);
        return Permutation(std::move(im));
    }

    bool operator==(const Permutation& o) const { return img_ == o.img_; }

private:
    std::vector<std::size_t> img_;
};

}  // namespace mutinv
