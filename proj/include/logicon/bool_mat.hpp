#pragma once

#include <cstddef>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "bool_vec.hpp"
#include "errors.hpp"

namespace logicon {

/// Dense boolean matrix stored as one bit-packed row per bool_vec.
///
/// Products are taken over the boolean semiring (OR of ANDs), so A*B has
/// entry (i,j) = 1 exactly when some k has A(i,k) = B(k,j) = 1.
class bool_mat {
public:
    bool_mat() = default;

    bool_mat(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows, bool_vec(cols)) {}

    /// Builds from nested 0/1 initializers, e.g. bool_mat({{1,0},{0,1}}).
    bool_mat(std::initializer_list<std::initializer_list<int>> rows)
        : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
        data_.reserve(rows_);
        for (const auto& r : rows) {
            if (r.size() != cols_)
                throw shape_error("bool_mat initializer rows have unequal lengths");
            data_.emplace_back(r);
        }
    }

    static bool_mat zeros(std::size_t rows, std::size_t cols) { return bool_mat(rows, cols); }

    static bool_mat identity(std::size_t n) {
        bool_mat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
        return m;
    }

    static bool_mat ones(std::size_t rows, std::size_t cols) {
        bool_mat m(rows, cols);
        for (auto& r : m.data_) r = bool_vec::ones(cols);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool get(std::size_t i, std::size_t j) const { return row(i).get(j); }

    void set(std::size_t i, std::size_t j, bool value) {
        check_row(i);
        data_[i].set(j, value);
    }

    const bool_vec& row(std::size_t i) const {
        check_row(i);
        return data_[i];
    }

    bool_vec& row(std::size_t i) {
        check_row(i);
        return data_[i];
    }

    bool_vec col(std::size_t j) const {
        if (j >= cols_)
            throw index_error("bool_mat column " + std::to_string(j) + " out of range [0," +
                              std::to_string(cols_) + ")");
        bool_vec v(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            if (data_[i].get(j)) v.set(i, true);
        return v;
    }

    void set_col(std::size_t j, const bool_vec& v) {
        if (v.size() != rows_)
            throw shape_error("set_col: vector size " + std::to_string(v.size()) +
                              " does not match row count " + std::to_string(rows_));
        for (std::size_t i = 0; i < rows_; ++i) data_[i].set(j, v.get(i));
    }

    std::size_t count() const {
        std::size_t c = 0;
        for (const auto& r : data_) c += r.count();
        return c;
    }

    bool any() const {
        for (const auto& r : data_)
            if (r.any()) return true;
        return false;
    }

    bool is_zero() const { return !any(); }

    bool_mat& operator|=(const bool_mat& o) {
        same_shape(o);
        for (std::size_t i = 0; i < rows_; ++i) data_[i] |= o.data_[i];
        return *this;
    }

    bool_mat& operator&=(const bool_mat& o) {
        same_shape(o);
        for (std::size_t i = 0; i < rows_; ++i) data_[i] &= o.data_[i];
        return *this;
    }

    friend bool_mat operator|(bool_mat a, const bool_mat& b) { return a |= b; }
    friend bool_mat operator&(bool_mat a, const bool_mat& b) { return a &= b; }

    friend bool operator==(const bool_mat& a, const bool_mat& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    /// Componentwise order: every 1 of *this is also a 1 of o.
    bool leq(const bool_mat& o) const {
        same_shape(o);
        for (std::size_t i = 0; i < rows_; ++i)
            if (!data_[i].leq(o.data_[i])) return false;
        return true;
    }

    bool_mat transpose() const {
        bool_mat t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            data_[i].for_each_set([&](std::size_t j) { t.set(j, i, true); });
        return t;
    }

    /// Horizontal concatenation [*this | o].
    bool_mat augment(const bool_mat& o) const {
        if (rows_ != o.rows_)
            throw shape_error("augment: row counts differ (" + std::to_string(rows_) + " vs " +
                              std::to_string(o.rows_) + ")");
        bool_mat r(rows_, cols_ + o.cols_);
        for (std::size_t i = 0; i < rows_; ++i) {
            data_[i].for_each_set([&](std::size_t j) { r.set(i, j, true); });
            o.data_[i].for_each_set([&](std::size_t j) { r.set(i, cols_ + j, true); });
        }
        return r;
    }

    std::string to_string() const {
        std::string s;
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j) {
                if (j) s += ' ';
                s += get(i, j) ? '1' : '0';
            }
            s += '\n';
        }
        return s;
    }

private:
    void check_row(std::size_t i) const {
        if (i >= rows_)
            throw index_error("bool_mat row " + std::to_string(i) + " out of range [0," +
                              std::to_string(rows_) + ")");
    }

    void same_shape(const bool_mat& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw shape_error("bool_mat shape mismatch: " + std::to_string(rows_) + "x" +
                              std::to_string(cols_) + " vs " + std::to_string(o.rows_) + "x" +
                              std::to_string(o.cols_));
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<bool_vec> data_;
};

/// Boolean matrix-vector product: (A x)_i = OR_k A(i,k) & x_k.
inline bool_vec mat_vec(const bool_mat& a, const bool_vec& x) {
    if (a.cols() != x.size())
        throw shape_error("mat_vec: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                          " times vector of size " + std::to_string(x.size()));
    bool_vec y(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        // Row i hits x iff they share a set bit; compare word by word.
        const auto& rw = a.row(i).words();
        const auto& xw = x.words();
        for (std::size_t k = 0; k < rw.size(); ++k) {
            if (rw[k] & xw[k]) {
                y.set(i, true);
                break;
            }
        }
    }
    return y;
}

/// Boolean matrix product: (A B)(i,j) = OR_k A(i,k) & B(k,j).
///
/// Implemented as an OR of B's rows selected by the set bits of A's rows,
/// which works directly on the packed words.
inline bool_mat mat_mul(const bool_mat& a, const bool_mat& b) {
    if (a.cols() != b.rows())
        throw shape_error("mat_mul: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                          " times " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
    bool_mat c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        bool_vec& out = c.row(i);
        a.row(i).for_each_set([&](std::size_t k) { out |= b.row(k); });
    }
    return c;
}

inline bool_mat operator*(const bool_mat& a, const bool_mat& b) { return mat_mul(a, b); }
inline bool_vec operator*(const bool_mat& a, const bool_vec& x) { return mat_vec(a, x); }

/// A^p by repeated squaring; A^0 is the identity (A must be square).
inline bool_mat mat_pow(const bool_mat& a, std::size_t p) {
    if (a.rows() != a.cols())
        throw shape_error("mat_pow: matrix is " + std::to_string(a.rows()) + "x" +
                          std::to_string(a.cols()) + ", not square");
    bool_mat result = bool_mat::identity(a.rows());
    bool_mat base = a;
    while (p) {
        if (p & 1) result = mat_mul(result, base);
        base = mat_mul(base, base);
        p >>= 1;
    }
    return result;
}

/// Boolean spectral radius: 0 when A is nilpotent (A^n = 0 for n = dim),
/// 1 otherwise. Nilpotency is equivalent to the digraph of A being acyclic.
inline int spectral_radius(const bool_mat& a) {
    if (a.rows() != a.cols())
        throw shape_error("spectral_radius: matrix is " + std::to_string(a.rows()) + "x" +
                          std::to_string(a.cols()) + ", not square");
    const std::size_t n = a.rows();
    if (n == 0) return 0;
    // Cycle detection by iterative DFS: a back edge to a vertex on the
    // current stack means a cycle, hence eigenvalue 1.
    enum class mark : unsigned char { fresh, active, done };
    std::vector<mark> state(n, mark::fresh);
    std::vector<std::size_t> stack;
    for (std::size_t start = 0; start < n; ++start) {
        if (state[start] != mark::fresh) continue;
        stack.push_back(start);
        while (!stack.empty()) {
            const std::size_t v = stack.back();
            if (state[v] == mark::fresh) {
                state[v] = mark::active;
                bool has_cycle = false;
                std::vector<std::size_t> next;
                a.row(v).for_each_set([&](std::size_t w) {
                    if (state[w] == mark::active)
                        has_cycle = true;
                    else if (state[w] == mark::fresh)
                        next.push_back(w);
                });
                if (has_cycle) return 1;
                for (std::size_t w : next) stack.push_back(w);
            } else if (state[v] == mark::active) {
                state[v] = mark::done;
                stack.pop_back();
            } else {
                stack.pop_back();
            }
        }
    }
    return 0;
}

/// Reads a matrix in plain text: "rows cols" then rows*cols 0/1 tokens.
inline bool_mat read_matrix(std::istream& in) {
    std::size_t rows = 0, cols = 0;
    if (!(in >> rows >> cols))
        throw parse_error("expected matrix header 'rows cols'", 0);
    bool_mat m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            int bit = -1;
            if (!(in >> bit) || (bit != 0 && bit != 1)) {
                const auto pos = in.tellg();
                throw parse_error("expected 0 or 1 at matrix entry (" + std::to_string(i + 1) +
                                      "," + std::to_string(j + 1) + ")",
                                  pos < 0 ? 0 : static_cast<std::size_t>(pos));
            }
            m.set(i, j, bit == 1);
        }
    }
    return m;
}

inline bool_mat read_matrix(const std::string& text) {
    std::istringstream in(text);
    return read_matrix(in);
}

/// Writes the matrix in the same plain-text layout read_matrix accepts.
inline void write_matrix(std::ostream& out, const bool_mat& m) {
    out << m.rows() << ' ' << m.cols() << '\n';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) out << ' ';
            out << (m.get(i, j) ? '1' : '0');
        }
        out << '\n';
    }
}

} // namespace logicon
