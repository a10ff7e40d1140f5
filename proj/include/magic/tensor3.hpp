// tensor3.hpp — Dense rank-3 tensor with a single cubic dimension.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace magic {

class Tensor3 {
public:
    Tensor3() = default;

    explicit Tensor3(int n)
        : n_(n), v_(static_cast<std::size_t>(n) * n * n, 0.0) {
        if (n < 0) throw std::invalid_argument("Tensor3: negative dimension");
    }

    int dim() const noexcept { return n_; }

    double& operator()(int i, int j, int k) { return v_[index(i, j, k)]; }
    double operator()(int i, int j, int k) const { return v_[index(i, j, k)]; }

    const std::vector<double>& data() const noexcept { return v_; }

    double max_abs() const {
        double m = 0.0;
        for (double x : v_) m = std::max(m, std::abs(x));
        return m;
    }

private:
    std::size_t index(int i, int j, int k) const {
        return (static_cast<std::size_t>(i) * n_ + j) * n_ + k;
    }

    int n_ = 0;
    std::vector<double> v_;
};

}  // namespace magic
