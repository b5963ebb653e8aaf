/*
 * Copyright 2026 pmdskit authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "pmds/field.hpp"
#include "pmds/selection.hpp"

namespace pmds {

/// Dense matrix over a finite field, row-major. Values are immutable in
/// spirit: every operation below returns a fresh matrix.
class FMatrix {
  public:
    FMatrix(FieldSpec spec, std::size_t rows, std::size_t cols)
        : spec_(std::move(spec)), rows_(rows), cols_(cols), data_(rows * cols, spec_.zero()) {
        if (rows == 0 || cols == 0) throw std::invalid_argument("FMatrix: dimensions must be >= 1");
    }

    static FMatrix identity(const FieldSpec& spec, std::size_t k) {
        FMatrix m(spec, k, k);
        for (std::size_t i = 0; i < k; ++i) m.set(i, i, spec.one());
        return m;
    }

    const FieldSpec& spec() const { return spec_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    const Element& at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    void set(std::size_t r, std::size_t c, Element v) {
        if (v.size() != spec_.degree()) throw std::invalid_argument("FMatrix::set: entry has wrong length");
        data_[r * cols_ + c] = std::move(v);
    }

    friend bool operator==(const FMatrix& a, const FMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.spec_.same_field(b.spec_) && a.data_ == b.data_;
    }

  private:
    FieldSpec spec_;
    std::size_t rows_, cols_;
    std::vector<Element> data_;
};

inline FMatrix transpose(const FMatrix& m) {
    FMatrix t(m.spec(), m.cols(), m.rows());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) t.set(c, r, m.at(r, c));
    return t;
}

inline FMatrix mat_mul(const FMatrix& a, const FMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("mat_mul: inner dimensions differ");
    if (!a.spec().same_field(b.spec())) throw std::invalid_argument("mat_mul: fields differ");
    const FieldSpec& f = a.spec();
    FMatrix out(f, a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            Element acc = f.zero();
            for (std::size_t t = 0; t < a.cols(); ++t) acc = f.add(acc, f.mul(a.at(i, t), b.at(t, j)));
            out.set(i, j, std::move(acc));
        }
    return out;
}

/// Entry-exact extraction; both index lists must be strictly increasing.
inline FMatrix submatrix(const FMatrix& m, const ColumnSelection& rows, const ColumnSelection& cols) {
    if (rows.empty() || cols.empty()) throw std::invalid_argument("submatrix: empty selection");
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (rows[i] >= m.rows() || (i && rows[i] <= rows[i - 1]))
            throw std::out_of_range("submatrix: bad row selection");
    for (std::size_t i = 0; i < cols.size(); ++i)
        if (cols[i] >= m.cols() || (i && cols[i] <= cols[i - 1]))
            throw std::out_of_range("submatrix: bad column selection");
    FMatrix out(m.spec(), rows.size(), cols.size());
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < cols.size(); ++c) out.set(r, c, m.at(rows[r], cols[c]));
    return out;
}

/// All rows, selected columns.
inline FMatrix submatrix_cols(const FMatrix& m, const ColumnSelection& cols) {
    ColumnSelection rows(m.rows());
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
    return submatrix(m, rows, cols);
}

namespace detail {

// Shared elimination core. Works on a copy held by the caller. When
// `reduce` is set it produces the reduced row-echelon form, otherwise an
// upper form sufficient for rank/determinant. Returns pivot columns.
inline std::vector<std::size_t> eliminate(FMatrix& m, bool reduce) {
    const FieldSpec& f = m.spec();
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
        std::size_t pr = row;
        while (pr < m.rows() && f.is_zero(m.at(pr, col))) ++pr;
        if (pr == m.rows()) continue;
        if (pr != row)
            for (std::size_t c = 0; c < m.cols(); ++c) {
                Element tmp = m.at(row, c);
                m.set(row, c, m.at(pr, c));
                m.set(pr, c, std::move(tmp));
            }
        const Element piv_inv = f.inv(m.at(row, col));
        for (std::size_t c = col; c < m.cols(); ++c) m.set(row, c, f.mul(piv_inv, m.at(row, c)));
        const std::size_t start = reduce ? 0 : row + 1;
        for (std::size_t r = start; r < m.rows(); ++r) {
            if (r == row || f.is_zero(m.at(r, col))) continue;
            const Element factor = m.at(r, col);
            for (std::size_t c = col; c < m.cols(); ++c)
                m.set(r, c, f.sub(m.at(r, c), f.mul(factor, m.at(row, c))));
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

}  // namespace detail

inline std::size_t rank(const FMatrix& m) {
    FMatrix work = m;
    return detail::eliminate(work, false).size();
}

/// Exact determinant by Gaussian elimination; throws on non-square input.
inline Element det(const FMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("det: matrix not square");
    const FieldSpec& f = m.spec();
    FMatrix work = m;
    Element result = f.one();
    bool negate = false;
    for (std::size_t col = 0; col < work.cols(); ++col) {
        std::size_t pr = col;
        while (pr < work.rows() && f.is_zero(work.at(pr, col))) ++pr;
        if (pr == work.rows()) return f.zero();
        if (pr != col) {
            negate = !negate;
            for (std::size_t c = col; c < work.cols(); ++c) {
                Element tmp = work.at(col, c);
                work.set(col, c, work.at(pr, c));
                work.set(pr, c, std::move(tmp));
            }
        }
        const Element pivot = work.at(col, col);
        result = f.mul(result, pivot);
        const Element piv_inv = f.inv(pivot);
        for (std::size_t r = col + 1; r < work.rows(); ++r) {
            if (f.is_zero(work.at(r, col))) continue;
            const Element factor = f.mul(work.at(r, col), piv_inv);
            for (std::size_t c = col; c < work.cols(); ++c)
                work.set(r, c, f.sub(work.at(r, c), f.mul(factor, work.at(col, c))));
        }
    }
    return negate ? f.neg(result) : result;
}

/// Reduced row-echelon form and its pivot columns; row space is preserved.
inline std::pair<FMatrix, std::vector<std::size_t>> rref(const FMatrix& m) {
    FMatrix work = m;
    auto pivots = detail::eliminate(work, true);
    return {std::move(work), std::move(pivots)};
}

/// Some x with A*x = b, or nullopt when the system is inconsistent.
/// Free variables are set to zero.
inline std::optional<std::vector<Element>> solve(const FMatrix& a, const std::vector<Element>& b) {
    if (b.size() != a.rows()) throw std::invalid_argument("solve: rhs length differs from row count");
    const FieldSpec& f = a.spec();
    FMatrix aug(f, a.rows(), a.cols() + 1);
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) aug.set(r, c, a.at(r, c));
        aug.set(r, a.cols(), b[r]);
    }
    auto pivots = detail::eliminate(aug, true);
    if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;  // pivot in rhs column
    std::vector<Element> x(a.cols(), f.zero());
    for (std::size_t i = 0; i < pivots.size(); ++i) x[pivots[i]] = aug.at(i, a.cols());
    return x;
}

/// True iff every square submatrix, of every size, is nonsingular.
inline bool is_superregular(const FMatrix& m) {
    const std::size_t top = std::min(m.rows(), m.cols());
    for (std::size_t sz = 1; sz <= top; ++sz) {
        auto row_stream = combinations(m.rows(), sz);
        while (auto rows = row_stream.next()) {
            auto col_stream = combinations(m.cols(), sz);
            while (auto cols = col_stream.next())
                if (m.spec().is_zero(det(submatrix(m, *rows, *cols)))) return false;
        }
    }
    return true;
}

}  // namespace pmds
