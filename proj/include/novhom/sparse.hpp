#ifndef NOVHOM_SPARSE_HPP
#define NOVHOM_SPARSE_HPP

#include <map>
#include <string>
#include <vector>

#include "novhom/numeric.hpp"

namespace novhom {

/// Sparse matrix over an exact ring.  Dimensions are fixed at
/// construction; zero entries are never stored.  Row-major nested maps
/// keep iteration deterministic.
template <class T>
class SparseMatrix {
public:
    using Row = std::map<int, T>;

    SparseMatrix(int rows = 0, int cols = 0) : rows_(rows), cols_(cols) {
        if (rows < 0 || cols < 0) throw usage_error("SparseMatrix: negative dimension");
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    bool has(int r, int c) const {
        auto it = data_.find(r);
        return it != data_.end() && it->second.count(c) > 0;
    }

    /// entry or nullptr when structurally zero
    const T* find(int r, int c) const {
        auto it = data_.find(r);
        if (it == data_.end()) return nullptr;
        auto jt = it->second.find(c);
        return jt == it->second.end() ? nullptr : &jt->second;
    }

    void set(int r, int c, const T& v) {
        check_index(r, c);
        if (is_zero_value(v)) {
            auto it = data_.find(r);
            if (it != data_.end()) {
                it->second.erase(c);
                if (it->second.empty()) data_.erase(it);
            }
            return;
        }
        data_[r][c] = v;
    }

    void add(int r, int c, const T& v) {
        check_index(r, c);
        if (is_zero_value(v)) return;
        auto& row = data_[r];
        auto it = row.find(c);
        if (it == row.end()) {
            row.emplace(c, v);
        } else {
            it->second += v;
            if (is_zero_value(it->second)) {
                row.erase(it);
                if (row.empty()) data_.erase(r);
            }
        }
    }

    std::size_t nnz() const {
        std::size_t n = 0;
        for (const auto& [r, row] : data_) {
            (void)r;
            n += row.size();
        }
        return n;
    }

    bool is_zero() const { return data_.empty(); }

    /// deterministic row-major traversal
    template <class Fn>
    void for_each(Fn&& fn) const {
        for (const auto& [r, row] : data_)
            for (const auto& [c, v] : row) fn(r, c, v);
    }

    const std::map<int, Row>& rows_data() const { return data_; }

    friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b) {
        if (a.cols_ != b.rows_) throw usage_error("SparseMatrix: dimension mismatch in product");
        SparseMatrix r(a.rows_, b.cols_);
        for (const auto& [i, arow] : a.data_) {
            for (const auto& [k, av] : arow) {
                auto it = b.data_.find(k);
                if (it == b.data_.end()) continue;
                for (const auto& [j, bv] : it->second) r.add(i, j, av * bv);
            }
        }
        return r;
    }

    friend bool operator==(const SparseMatrix& a, const SparseMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    SparseMatrix transposed() const {
        SparseMatrix r(cols_, rows_);
        for_each([&](int i, int j, const T& v) { r.set(j, i, v); });
        return r;
    }

    template <class U, class Fn>
    SparseMatrix<U> map_entries(Fn&& fn) const {
        SparseMatrix<U> r(rows_, cols_);
        for_each([&](int i, int j, const T& v) { r.set(i, j, fn(v)); });
        return r;
    }

private:
    static bool is_zero_value(const T& v) {
        if constexpr (requires { v.is_zero(); })
            return v.is_zero();
        else
            return coeff_traits<T>::is_zero(v);
    }

    void check_index(int r, int c) const {
        if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
            throw usage_error("SparseMatrix: index out of range");
    }

    int rows_, cols_;
    std::map<int, Row> data_;
};

}  // namespace novhom

#endif
