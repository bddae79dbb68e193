#include "a1kit/gf2.hpp"

#include <bit>
#include <stdexcept>

namespace a1kit {

void throw_shape_mismatch(const std::string& where) {
    throw std::invalid_argument("gf2: shape mismatch in " + where);
}

std::size_t GF2Vector::lowest_bit() const {
    for (std::size_t w = 0; w < words_.size(); ++w)
        if (words_[w]) return (w << 6) + std::countr_zero(words_[w]);
    return npos;
}

GF2Vector& GF2Vector::operator^=(const GF2Vector& o) {
    if (size_ != o.size_) throw_shape_mismatch("vector xor");
    for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= o.words_[w];
    return *this;
}

GF2Matrix GF2Matrix::identity(std::size_t n) {
    GF2Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
}

GF2Matrix GF2Matrix::from_rows(const std::vector<GF2Vector>& rows, std::size_t cols) {
    GF2Matrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) m.set_row(i, rows[i]);
    return m;
}

GF2Vector GF2Matrix::row(std::size_t i) const {
    GF2Vector v(cols_);
    const Word* p = row_ptr(i);
    for (std::size_t w = 0; w < wpr_; ++w) v.words()[w] = p[w];
    return v;
}

void GF2Matrix::set_row(std::size_t i, const GF2Vector& v) {
    if (v.size() != cols_) throw_shape_mismatch("set_row");
    Word* p = row_ptr(i);
    for (std::size_t w = 0; w < wpr_; ++w) p[w] = v.words()[w];
}

void GF2Matrix::row_xor(std::size_t dst, std::size_t src) {
    Word* d = row_ptr(dst);
    const Word* s = row_ptr(src);
    for (std::size_t w = 0; w < wpr_; ++w) d[w] ^= s[w];
}

void GF2Matrix::row_xor(std::size_t dst, const GF2Vector& v) {
    if (v.size() != cols_) throw_shape_mismatch("row_xor");
    Word* d = row_ptr(dst);
    for (std::size_t w = 0; w < wpr_; ++w) d[w] ^= v.words()[w];
}

void GF2Matrix::swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    Word* a = row_ptr(i);
    Word* b = row_ptr(j);
    for (std::size_t w = 0; w < wpr_; ++w) std::swap(a[w], b[w]);
}

bool GF2Matrix::row_is_zero(std::size_t i) const {
    const Word* p = row_ptr(i);
    for (std::size_t w = 0; w < wpr_; ++w) if (p[w]) return false;
    return true;
}

bool GF2Matrix::is_zero() const {
    for (Word w : data_) if (w) return false;
    return true;
}

GF2Vector GF2Matrix::apply(const GF2Vector& v) const {
    if (v.size() != cols_) throw_shape_mismatch("apply");
    GF2Vector out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        const Word* p = row_ptr(i);
        Word acc = 0;
        for (std::size_t w = 0; w < wpr_; ++w) acc ^= p[w] & v.words()[w];
        if (std::popcount(acc) & 1) out.set(i, true);
    }
    return out;
}

GF2Matrix GF2Matrix::operator*(const GF2Matrix& o) const {
    if (cols_ != o.rows_) throw_shape_mismatch("matrix product");
    GF2Matrix out(rows_, o.cols_);
    // row method: out.row(i) = xor of o.row(j) over set bits j of this->row(i);
    // cost tracks the number of nonzero entries of *this
    for (std::size_t i = 0; i < rows_; ++i) {
        const Word* src = row_ptr(i);
        Word* dst = out.row_ptr(i);
        for (std::size_t w = 0; w < wpr_; ++w) {
            Word bits = src[w];
            while (bits) {
                std::size_t j = (w << 6) + std::countr_zero(bits);
                bits &= bits - 1;
                const Word* orow = o.row_ptr(j);
                for (std::size_t k = 0; k < out.wpr_; ++k) dst[k] ^= orow[k];
            }
        }
    }
    return out;
}

GF2Matrix GF2Matrix::operator+(const GF2Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw_shape_mismatch("matrix sum");
    GF2Matrix out = *this;
    for (std::size_t k = 0; k < data_.size(); ++k) out.data_[k] ^= o.data_[k];
    return out;
}

GF2Matrix GF2Matrix::transpose() const {
    GF2Matrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        const Word* p = row_ptr(i);
        for (std::size_t w = 0; w < wpr_; ++w) {
            Word bits = p[w];
            while (bits) {
                std::size_t j = (w << 6) + std::countr_zero(bits);
                bits &= bits - 1;
                out.set(j, i, true);
            }
        }
    }
    return out;
}

std::size_t GF2Matrix::rank() const {
    // insertion echelon: reduce each row against the pivots found so far;
    // the leading-bit scan only moves forward, so sparse rows stay cheap
    GF2Matrix m = *this;
    std::vector<std::size_t> pivot_row(cols_, std::size_t(-1));
    std::size_t r = 0;
    for (std::size_t i = 0; i < rows_; ++i) {
        Word* cur = m.row_ptr(i);
        std::size_t w = 0;
        while (w < wpr_) {
            if (!cur[w]) { ++w; continue; }
            std::size_t j = (w << 6) + std::size_t(std::countr_zero(cur[w]));
            std::size_t p = pivot_row[j];
            if (p == std::size_t(-1)) {
                pivot_row[j] = i;
                ++r;
                break;
            }
            const Word* prow = m.row_ptr(p);
            for (std::size_t k = w; k < wpr_; ++k) cur[k] ^= prow[k];
        }
    }
    return r;
}

GF2Matrix::Echelon GF2Matrix::rref() const {
    GF2Matrix m = *this;
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
        std::size_t piv = r;
        while (piv < rows_ && !m.get(piv, c)) ++piv;
        if (piv == rows_) continue;
        m.swap_rows(r, piv);
        for (std::size_t i = 0; i < rows_; ++i)
            if (i != r && m.get(i, c)) m.row_xor(i, r);
        pivots.push_back(c);
        ++r;
    }
    GF2Matrix out(r, cols_);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t w = 0; w < wpr_; ++w)
            out.row_ptr(i)[w] = m.row_ptr(i)[w];
    return {std::move(out), std::move(pivots)};
}

GF2Matrix GF2Matrix::kernel() const {
    Echelon e = rref();
    std::vector<bool> is_pivot(cols_, false);
    for (std::size_t p : e.pivots) is_pivot[p] = true;
    std::size_t k = cols_ - e.pivots.size();
    GF2Matrix out(k, cols_);
    std::size_t idx = 0;
    for (std::size_t c = 0; c < cols_; ++c) {
        if (is_pivot[c]) continue;
        out.set(idx, c, true);
        for (std::size_t i = 0; i < e.pivots.size(); ++i)
            if (e.mat.get(i, c)) out.set(idx, e.pivots[i], true);
        ++idx;
    }
    return out;
}

std::optional<GF2Vector> GF2Matrix::solve(const GF2Vector& b) const {
    if (b.size() != rows_) throw_shape_mismatch("solve");
    GF2Matrix aug(rows_, cols_ + 1);
    for (std::size_t i = 0; i < rows_; ++i) {
        const Word* p = row_ptr(i);
        for (std::size_t w = 0; w < wpr_; ++w) aug.row_ptr(i)[w] = p[w];
        if (b.get(i)) aug.set(i, cols_, true);
    }
    Echelon e = aug.rref();
    GF2Vector x(cols_);
    for (std::size_t i = 0; i < e.pivots.size(); ++i) {
        if (e.pivots[i] == cols_) return std::nullopt;   // 0 = 1 row
        if (e.mat.get(i, cols_)) x.set(e.pivots[i], true);
    }
    return x;
}

Subspace Subspace::from_span(std::size_t ambient, const std::vector<GF2Vector>& vectors) {
    GF2Matrix m(vectors.size(), ambient);
    for (std::size_t i = 0; i < vectors.size(); ++i) {
        if (vectors[i].size() != ambient) throw_shape_mismatch("Subspace::from_span");
        m.set_row(i, vectors[i]);
    }
    return from_matrix_rows(m);
}

Subspace Subspace::from_matrix_rows(const GF2Matrix& m) {
    Subspace s(m.cols());
    auto e = m.rref();
    s.basis_ = std::move(e.mat);
    s.pivots_ = std::move(e.pivots);
    return s;
}

Subspace Subspace::full(std::size_t ambient) {
    return from_matrix_rows(GF2Matrix::identity(ambient));
}

GF2Vector Subspace::reduce(GF2Vector v) const {
    if (v.size() != ambient_) throw_shape_mismatch("Subspace::reduce");
    for (std::size_t i = 0; i < pivots_.size(); ++i)
        if (v.get(pivots_[i])) {
            const Word* p = basis_.row_ptr(i);
            for (std::size_t w = 0; w < v.words().size(); ++w) v.words()[w] ^= p[w];
        }
    return v;
}

bool Subspace::contains(const GF2Vector& v) const { return reduce(v).is_zero(); }

std::optional<GF2Vector> Subspace::coordinates(const GF2Vector& v) const {
    if (v.size() != ambient_) throw_shape_mismatch("Subspace::coordinates");
    GF2Vector coords(dim());
    GF2Vector rem = v;
    for (std::size_t i = 0; i < pivots_.size(); ++i)
        if (rem.get(pivots_[i])) {
            coords.set(i, true);
            const Word* p = basis_.row_ptr(i);
            for (std::size_t w = 0; w < rem.words().size(); ++w) rem.words()[w] ^= p[w];
        }
    if (!rem.is_zero()) return std::nullopt;
    return coords;
}

Subspace image(const GF2Matrix& m) { return Subspace::from_matrix_rows(m.transpose()); }

Subspace kernel_space(const GF2Matrix& m) { return Subspace::from_matrix_rows(m.kernel()); }

std::optional<GF2Vector> preimage(const GF2Matrix& m, const GF2Vector& v) { return m.solve(v); }

std::vector<GF2Vector> quotient_basis(const Subspace& sub) {
    std::vector<bool> is_pivot(sub.ambient_dim(), false);
    for (std::size_t p : sub.pivots()) is_pivot[p] = true;
    std::vector<GF2Vector> out;
    for (std::size_t c = 0; c < sub.ambient_dim(); ++c) {
        if (is_pivot[c]) continue;
        GF2Vector v(sub.ambient_dim());
        v.set(c, true);
        out.push_back(std::move(v));
    }
    return out;
}

} // namespace a1kit
