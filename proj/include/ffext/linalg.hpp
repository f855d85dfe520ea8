#ifndef FFEXT_LINALG_HPP
#define FFEXT_LINALG_HPP

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace ffext {

/// Dense matrix over Z/pZ for a small prime p. Entries are always reduced into [0, p).
template <std::unsigned_integral T = std::uint32_t>
class MatrixModP {
   public:
    MatrixModP(std::size_t rows, std::size_t cols, T modulus)
        : rows_(rows), cols_(cols), p_(modulus), data_(rows * cols, T{0}) {
        if (modulus < 2) throw InvalidArgument("matrix modulus must be a prime >= 2");
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    T modulus() const noexcept { return p_; }

    T operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    void set(std::size_t r, std::size_t c, std::uint64_t v) { data_[r * cols_ + c] = static_cast<T>(v % p_); }

    std::span<const T> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    MatrixModP transposed() const {
        MatrixModP t(cols_, rows_, p_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) t.data_[c * rows_ + r] = (*this)(r, c);
        return t;
    }

    /// Deletes column c.
    MatrixModP without_column(std::size_t c) const {
        MatrixModP m(rows_, cols_ - 1, p_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t j = 0, k = 0; j < cols_; ++j)
                if (j != c) m.data_[r * m.cols_ + k++] = (*this)(r, j);
        return m;
    }

    /// In-place reduced row-echelon form. Returns the pivot columns in increasing order.
    std::vector<std::size_t> reduce() {
        std::vector<std::size_t> pivots;
        std::size_t lead_row = 0;
        for (std::size_t c = 0; c < cols_ && lead_row < rows_; ++c) {
            std::size_t r = lead_row;
            while (r < rows_ && at(r, c) == 0) ++r;
            if (r == rows_) continue;
            swap_rows(r, lead_row);
            scale_row(lead_row, inverse(at(lead_row, c)));
            for (std::size_t k = 0; k < rows_; ++k)
                if (k != lead_row && at(k, c) != 0) add_row_multiple(k, lead_row, p_ - at(k, c));
            pivots.push_back(c);
            ++lead_row;
        }
        return pivots;
    }

    std::size_t rank() const {
        MatrixModP tmp = *this;
        return tmp.reduce().size();
    }

    /// Basis of {x : A x = 0}. One vector per free column, ordered by column index; the free
    /// coordinate is 1 and the other free coordinates are 0.
    std::vector<std::vector<T>> right_kernel() const {
        MatrixModP tmp = *this;
        const auto pivots = tmp.reduce();
        std::vector<bool> is_pivot(cols_, false);
        for (auto c : pivots) is_pivot[c] = true;
        std::vector<std::vector<T>> basis;
        for (std::size_t f = 0; f < cols_; ++f) {
            if (is_pivot[f]) continue;
            std::vector<T> v(cols_, T{0});
            v[f] = 1;
            for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = static_cast<T>((p_ - tmp(i, f)) % p_);
            basis.push_back(std::move(v));
        }
        return basis;
    }

    /// Basis of {a : a A = 0}, i.e. the right kernel of the transpose.
    std::vector<std::vector<T>> left_kernel() const { return transposed().right_kernel(); }

    /// Some x with A x = b (free variables set to 0), or nothing if the system is inconsistent.
    std::optional<std::vector<T>> solve(std::span<const T> b) const {
        if (b.size() != rows_) throw InvalidArgument("right-hand side has wrong length");
        MatrixModP aug(rows_, cols_ + 1, p_);
        for (std::size_t r = 0; r < rows_; ++r) {
            for (std::size_t c = 0; c < cols_; ++c) aug.data_[r * (cols_ + 1) + c] = (*this)(r, c);
            aug.data_[r * (cols_ + 1) + cols_] = static_cast<T>(b[r] % p_);
        }
        const auto pivots = aug.reduce();
        if (!pivots.empty() && pivots.back() == cols_) return std::nullopt;
        std::vector<T> x(cols_, T{0});
        for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug(i, cols_);
        return x;
    }

    /// v A, for a row vector v of length rows().
    std::vector<T> left_multiply(std::span<const T> v) const {
        std::vector<T> out(cols_, T{0});
        for (std::size_t c = 0; c < cols_; ++c) {
            std::uint64_t acc = 0;
            for (std::size_t r = 0; r < rows_; ++r) acc = (acc + std::uint64_t{v[r]} * (*this)(r, c)) % p_;
            out[c] = static_cast<T>(acc);
        }
        return out;
    }

   private:
    T& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t c = 0; c < cols_; ++c) std::swap(at(a, c), at(b, c));
    }
    void scale_row(std::size_t r, T s) {
        for (std::size_t c = 0; c < cols_; ++c) at(r, c) = static_cast<T>(std::uint64_t{at(r, c)} * s % p_);
    }
    // row[dst] += s * row[src]
    void add_row_multiple(std::size_t dst, std::size_t src, T s) {
        for (std::size_t c = 0; c < cols_; ++c)
            at(dst, c) = static_cast<T>((at(dst, c) + std::uint64_t{s} * at(src, c)) % p_);
    }
    T inverse(T a) const {
        // Fermat; p is prime.
        std::uint64_t result = 1, base = a, e = p_ - 2;
        while (e) {
            if (e & 1) result = result * base % p_;
            base = base * base % p_;
            e >>= 1;
        }
        return static_cast<T>(result);
    }

    std::size_t rows_;
    std::size_t cols_;
    T p_;
    std::vector<T> data_;
};

template <std::unsigned_integral T>
bool is_zero_vector(std::span<const T> v) {
    for (auto x : v)
        if (x != 0) return false;
    return true;
}

}  // namespace ffext

#endif  // FFEXT_LINALG_HPP
