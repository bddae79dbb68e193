#pragma once

#include <cstdint>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace a1kit {

using Word = std::uint64_t;

// Packed bit vector over GF(2).
class GF2Vector {
public:
    GF2Vector() = default;
    explicit GF2Vector(std::size_t n) : size_(n), words_((n + 63) / 64, 0) {}

    std::size_t size() const { return size_; }
    bool get(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i, bool v) {
        Word m = Word(1) << (i & 63);
        if (v) words_[i >> 6] |= m; else words_[i >> 6] &= ~m;
    }
    void flip(std::size_t i) { words_[i >> 6] ^= Word(1) << (i & 63); }

    bool is_zero() const {
        for (Word w : words_) if (w) return false;
        return true;
    }
    // index of lowest set bit, or npos
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::size_t lowest_bit() const;

    GF2Vector& operator^=(const GF2Vector& o);
    friend GF2Vector operator^(GF2Vector a, const GF2Vector& b) { a ^= b; return a; }
    bool operator==(const GF2Vector& o) const { return size_ == o.size_ && words_ == o.words_; }

    const std::vector<Word>& words() const { return words_; }
    std::vector<Word>& words() { return words_; }

private:
    std::size_t size_ = 0;
    std::vector<Word> words_;
};

// Dense bit-packed matrix over GF(2), row-major. A matrix with r rows and c
// columns represents a linear map F^c -> F^r acting on column vectors.
class GF2Matrix {
public:
    GF2Matrix() = default;
    GF2Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), wpr_((cols + 63) / 64), data_(rows * wpr_, 0) {}

    static GF2Matrix identity(std::size_t n);
    static GF2Matrix from_rows(const std::vector<GF2Vector>& rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t words_per_row() const { return wpr_; }

    bool get(std::size_t i, std::size_t j) const {
        return (data_[i * wpr_ + (j >> 6)] >> (j & 63)) & 1u;
    }
    void set(std::size_t i, std::size_t j, bool v) {
        Word m = Word(1) << (j & 63);
        Word& w = data_[i * wpr_ + (j >> 6)];
        if (v) w |= m; else w &= ~m;
    }
    void flip(std::size_t i, std::size_t j) { data_[i * wpr_ + (j >> 6)] ^= Word(1) << (j & 63); }

    const Word* row_ptr(std::size_t i) const { return data_.data() + i * wpr_; }
    Word* row_ptr(std::size_t i) { return data_.data() + i * wpr_; }
    GF2Vector row(std::size_t i) const;
    void set_row(std::size_t i, const GF2Vector& v);
    void row_xor(std::size_t dst, std::size_t src);         // row[dst] ^= row[src]
    void row_xor(std::size_t dst, const GF2Vector& v);
    void swap_rows(std::size_t i, std::size_t j);
    bool row_is_zero(std::size_t i) const;

    bool is_zero() const;
    bool operator==(const GF2Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

    // matrix * column vector
    GF2Vector apply(const GF2Vector& v) const;
    // this * other  (shapes: (r x c) * (c x n))
    GF2Matrix operator*(const GF2Matrix& o) const;
    GF2Matrix operator+(const GF2Matrix& o) const;
    GF2Matrix transpose() const;

    std::size_t rank() const;
    // Reduced row echelon form; pivots are the pivot column indices in order.
    struct Echelon;
    Echelon rref() const;
    // Basis of the null space {x : A x = 0}, one row per basis vector.
    GF2Matrix kernel() const;
    // Any solution of A x = b, or nullopt.
    std::optional<GF2Vector> solve(const GF2Vector& b) const;

private:
    std::size_t rows_ = 0, cols_ = 0, wpr_ = 0;
    std::vector<Word> data_;
};

struct GF2Matrix::Echelon {
    GF2Matrix mat;                  // nonzero rows only, in RREF
    std::vector<std::size_t> pivots;
};

// Subspace of F^ambient in canonical (reduced row echelon) form.
class Subspace {
public:
    Subspace() = default;
    explicit Subspace(std::size_t ambient) : ambient_(ambient), basis_(0, ambient) {}
    static Subspace from_span(std::size_t ambient, const std::vector<GF2Vector>& vectors);
    static Subspace from_matrix_rows(const GF2Matrix& m);   // span of the rows
    static Subspace full(std::size_t ambient);

    std::size_t ambient_dim() const { return ambient_; }
    std::size_t dim() const { return basis_.rows(); }
    const GF2Matrix& basis() const { return basis_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

    bool contains(const GF2Vector& v) const;
    // Residue of v after eliminating the pivot coordinates.
    GF2Vector reduce(GF2Vector v) const;
    // Coordinates of v in the echelon basis, or nullopt if v is outside.
    std::optional<GF2Vector> coordinates(const GF2Vector& v) const;
    bool operator==(const Subspace& o) const {
        return ambient_ == o.ambient_ && basis_ == o.basis_;
    }

private:
    std::size_t ambient_ = 0;
    GF2Matrix basis_;
    std::vector<std::size_t> pivots_;
};

// Column span of m.
Subspace image(const GF2Matrix& m);
// Null space of m as a Subspace.
Subspace kernel_space(const GF2Matrix& m);
// Any x with m x = v, or nullopt.
std::optional<GF2Vector> preimage(const GF2Matrix& m, const GF2Vector& v);
// Coset representatives completing sub's basis to the ambient space
// (standard basis vectors at the non-pivot coordinates, ascending).
std::vector<GF2Vector> quotient_basis(const Subspace& sub);

[[noreturn]] void throw_shape_mismatch(const std::string& where);

} // namespace a1kit
