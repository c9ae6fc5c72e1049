// gf2.hpp -- linear algebra and coding theory over GF(2).
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qpkc/bitword.hpp"
#include "qpkc/rng.hpp"

namespace qpkc {

// Dense bit matrix, one 64-bit word per row (cols <= 64 at desk scale).
class GF2Matrix {
public:
    GF2Matrix() = default;

    GF2Matrix(int rows, int cols)
        : rows_(rows), cols_(cols), row_(static_cast<std::size_t>(rows), 0) {
        if (rows < 1 || cols < 1 || cols > 64)
            throw std::invalid_argument("GF2Matrix: bad dimensions");
    }

    static GF2Matrix identity(int n) {
        GF2Matrix m(n, n);
        for (int i = 0; i < n; ++i) m.set(i, i, true);
        return m;
    }

    static GF2Matrix random(int rows, int cols, Rng& rng) {
        GF2Matrix m(rows, cols);
        for (int i = 0; i < rows; ++i)
            m.row_[static_cast<std::size_t>(i)] = rng.next() & BitWord::mask(cols);
        return m;
    }

    // Uniform invertible k x k matrix by rejection sampling.
    static GF2Matrix random_invertible(int k, Rng& rng) {
        for (;;) {
            GF2Matrix m = random(k, k, rng);
            if (m.rank() == k) return m;
        }
    }

    static GF2Matrix random_permutation(int n, Rng& rng) {
        std::vector<int> perm(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
        for (int i = n - 1; i > 0; --i) {
            int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(i) + 1));
            std::swap(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(j)]);
        }
        GF2Matrix m(n, n);
        for (int i = 0; i < n; ++i) m.set(i, perm[static_cast<std::size_t>(i)], true);
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    bool at(int r, int c) const {
        check_index(r, c);
        return (row_[static_cast<std::size_t>(r)] >> c) & 1u;
    }

    void set(int r, int c, bool v) {
        check_index(r, c);
        std::uint64_t bit = std::uint64_t{1} << c;
        if (v)
            row_[static_cast<std::size_t>(r)] |= bit;
        else
            row_[static_cast<std::size_t>(r)] &= ~bit;
    }

    // Row i as a word: bit j of the word = entry (i, j).
    BitWord row_word(int r) const {
        if (r < 0 || r >= rows_) throw std::out_of_range("GF2Matrix: row index");
        return BitWord(cols_, row_[static_cast<std::size_t>(r)]);
    }

    void set_row_word(int r, const BitWord& w) {
        if (r < 0 || r >= rows_) throw std::out_of_range("GF2Matrix: row index");
        if (w.width() != cols_) throw std::invalid_argument("GF2Matrix: row width mismatch");
        row_[static_cast<std::size_t>(r)] = w.value();
    }

    GF2Matrix operator*(const GF2Matrix& b) const {
        if (cols_ != b.rows_)
            throw std::invalid_argument("GF2Matrix: dimension mismatch in product");
        GF2Matrix out(rows_, b.cols_);
        for (int i = 0; i < rows_; ++i) {
            std::uint64_t acc = 0;
            std::uint64_t r = row_[static_cast<std::size_t>(i)];
            for (int k = 0; k < cols_; ++k)
                if ((r >> k) & 1u) acc ^= b.row_[static_cast<std::size_t>(k)];
            out.row_[static_cast<std::size_t>(i)] = acc;
        }
        return out;
    }

    GF2Matrix operator+(const GF2Matrix& b) const {
        if (rows_ != b.rows_ || cols_ != b.cols_)
            throw std::invalid_argument("GF2Matrix: dimension mismatch in sum");
        GF2Matrix out(rows_, cols_);
        for (int i = 0; i < rows_; ++i)
            out.row_[static_cast<std::size_t>(i)] =
                row_[static_cast<std::size_t>(i)] ^ b.row_[static_cast<std::size_t>(i)];
        return out;
    }

    GF2Matrix transpose() const {
        GF2Matrix out(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j)
                if (at(i, j)) out.set(j, i, true);
        return out;
    }

    bool is_zero() const {
        for (auto r : row_)
            if (r != 0) return false;
        return true;
    }

    int rank() const {
        std::vector<std::uint64_t> rr = row_;
        int rank = 0;
        for (int c = 0; c < cols_ && rank < rows_; ++c) {
            std::uint64_t bit = std::uint64_t{1} << c;
            int pivot = -1;
            for (int r = rank; r < rows_; ++r)
                if (rr[static_cast<std::size_t>(r)] & bit) { pivot = r; break; }
            if (pivot < 0) continue;
            std::swap(rr[static_cast<std::size_t>(pivot)], rr[static_cast<std::size_t>(rank)]);
            for (int r = 0; r < rows_; ++r)
                if (r != rank && (rr[static_cast<std::size_t>(r)] & bit))
                    rr[static_cast<std::size_t>(r)] ^= rr[static_cast<std::size_t>(rank)];
            ++rank;
        }
        return rank;
    }

    bool full_row_rank() const { return rank() == rows_; }

    // Right inverse X with (*this) * X == I_k, deterministic: Gaussian
    // elimination places pivots at the lowest column indices, and X is
    // supported only on those pivot rows.
    GF2Matrix right_inverse() const {
        int k = rows_, n = cols_;
        std::vector<std::uint64_t> a = row_;                       // k x n
        std::vector<std::uint64_t> t(static_cast<std::size_t>(k)); // k x k transform
        for (int i = 0; i < k; ++i) t[static_cast<std::size_t>(i)] = std::uint64_t{1} << i;

        std::vector<int> pivot_col;
        int rank = 0;
        for (int c = 0; c < n && rank < k; ++c) {
            std::uint64_t bit = std::uint64_t{1} << c;
            int pivot = -1;
            for (int r = rank; r < k; ++r)
                if (a[static_cast<std::size_t>(r)] & bit) { pivot = r; break; }
            if (pivot < 0) continue;
            std::swap(a[static_cast<std::size_t>(pivot)], a[static_cast<std::size_t>(rank)]);
            std::swap(t[static_cast<std::size_t>(pivot)], t[static_cast<std::size_t>(rank)]);
            for (int r = 0; r < k; ++r)
                if (r != rank && (a[static_cast<std::size_t>(r)] & bit)) {
                    a[static_cast<std::size_t>(r)] ^= a[static_cast<std::size_t>(rank)];
                    t[static_cast<std::size_t>(r)] ^= t[static_cast<std::size_t>(rank)];
                }
            pivot_col.push_back(c);
            ++rank;
        }
        if (rank != k)
            throw std::invalid_argument("GF2Matrix: right_inverse requires full row rank");

        GF2Matrix x(n, k);
        for (int j = 0; j < k; ++j)
            x.row_[static_cast<std::size_t>(pivot_col[static_cast<std::size_t>(j)])] =
                t[static_cast<std::size_t>(j)];
        return x;
    }

    // Exact inverse of a square invertible matrix.
    GF2Matrix inverse() const {
        if (rows_ != cols_)
            throw std::invalid_argument("GF2Matrix: inverse requires square matrix");
        return right_inverse();
    }

    friend bool operator==(const GF2Matrix& a, const GF2Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.row_ == b.row_;
    }

private:
    void check_index(int r, int c) const {
        if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
            throw std::out_of_range("GF2Matrix: index out of range");
    }

    int rows_ = 0;
    int cols_ = 0;
    std::vector<std::uint64_t> row_;
};

// Row vector times matrix: w (1 x rows) * m (rows x cols) -> 1 x cols.
inline BitWord vec_mul(const BitWord& w, const GF2Matrix& m) {
    if (w.width() != m.rows())
        throw std::invalid_argument("vec_mul: width does not match matrix rows");
    std::uint64_t acc = 0;
    for (int i = 0; i < m.rows(); ++i)
        if (w.bit(i)) acc ^= m.row_word(i).value();
    return BitWord(m.cols(), acc);
}

namespace detail {
// Enumerates all words of the given width with Hamming weight in [0, max_weight].
inline void for_each_low_weight(int width, int max_weight,
                                const std::function<void(std::uint64_t)>& fn) {
    fn(0);
    std::vector<int> pos;
    auto rec = [&](auto&& self, int start, int remaining) -> void {
        if (remaining == 0) return;
        for (int i = start; i < width; ++i) {
            pos.push_back(i);
            std::uint64_t v = 0;
            for (int p : pos) v |= std::uint64_t{1} << p;
            fn(v);
            self(self, i + 1, remaining - 1);
            pos.pop_back();
        }
    };
    rec(rec, 0, max_weight);
}
} // namespace detail

// A binary linear [n, k] code with certified error-correction capability t:
// the syndrome table built over all error patterns of weight <= t is checked
// for uniqueness at construction.
class LinearCode {
public:
    LinearCode(GF2Matrix generator, GF2Matrix check, int t)
        : gen_(std::move(generator)), chk_(std::move(check)), t_(t) {
        if (gen_.cols() != chk_.cols() || gen_.rows() + chk_.rows() != gen_.cols())
            throw std::invalid_argument("LinearCode: inconsistent dimensions");
        if (!gen_.full_row_rank())
            throw std::invalid_argument("LinearCode: generator must have full row rank");
        if (!(gen_ * chk_.transpose()).is_zero())
            throw std::invalid_argument("LinearCode: G * H^T != 0");
        if (t < 0) throw std::invalid_argument("LinearCode: negative t");
        build_syndrome_table();
        chk_t_ = chk_.transpose();
        gen_rinv_ = gen_.right_inverse();
    }

    // Standard-form code from the k x (n-k) block A: G = [I_k | A],
    // H = [A^T | I_{n-k}]. Over GF(2), -A^T = A^T.
    static LinearCode from_standard_form(const GF2Matrix& a, int t) {
        int k = a.rows(), n = k + a.cols();
        GF2Matrix g(k, n), h(n - k, n);
        for (int i = 0; i < k; ++i) {
            g.set(i, i, true);
            for (int j = 0; j < n - k; ++j) g.set(i, k + j, a.at(i, j));
        }
        for (int i = 0; i < n - k; ++i) {
            for (int j = 0; j < k; ++j) h.set(i, j, a.at(j, i));
            h.set(i, k + i, true);
        }
        return LinearCode(std::move(g), std::move(h), t);
    }

    // The [7,4] Hamming code, t = 1.
    static LinearCode hamming74() {
        GF2Matrix a(4, 3);
        const int bits[4][3] = {{1, 1, 0}, {1, 0, 1}, {0, 1, 1}, {1, 1, 1}};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 3; ++j) a.set(i, j, bits[i][j]);
        return from_standard_form(a, 1);
    }

    // Random standard-form [n, k] code whose capability t is certified by the
    // exhaustive syndrome-uniqueness check; rejection-samples A until found.
    static LinearCode random_code(int n, int k, int t, Rng& rng, int attempts = 100000) {
        for (int i = 0; i < attempts; ++i) {
            GF2Matrix a = GF2Matrix::random(k, n - k, rng);
            try {
                return from_standard_form(a, t);
            } catch (const std::invalid_argument&) {
                continue; // syndrome collision; resample
            }
        }
        throw std::runtime_error("LinearCode: no [n,k] code with capability t found");
    }

    const GF2Matrix& generator() const { return gen_; }
    const GF2Matrix& check() const { return chk_; }
    const GF2Matrix& generator_right_inverse() const { return gen_rinv_; }
    int n() const { return gen_.cols(); }
    int k() const { return gen_.rows(); }
    int t() const { return t_; }

    BitWord syndrome_of(const BitWord& word) const { return vec_mul(word, chk_t_); }

    // Unique error of weight <= t with the given syndrome; throws if none
    // exists (invalid cipher or capability exceeded).
    BitWord syndrome_decode(const BitWord& syndrome) const {
        if (syndrome.width() != n() - k())
            throw std::invalid_argument("syndrome_decode: wrong syndrome width");
        auto it = table_.find(syndrome.value());
        if (it == table_.end())
            throw std::runtime_error("syndrome_decode: no error of weight <= t matches");
        return BitWord(n(), it->second);
    }

private:
    void build_syndrome_table() {
        GF2Matrix ht = chk_.transpose();
        bool collision = false;
        detail::for_each_low_weight(n(), t_, [&](std::uint64_t e) {
            BitWord s = vec_mul(BitWord(gen_.cols(), e), ht);
            auto [it, inserted] = table_.emplace(s.value(), e);
            if (!inserted && it->second != e) collision = true;
        });
        if (collision)
            throw std::invalid_argument(
                "LinearCode: syndromes of weight <= t errors are not unique");
    }

    GF2Matrix gen_, chk_, chk_t_, gen_rinv_;
    int t_ = 0;
    std::map<std::uint64_t, std::uint64_t> table_; // syndrome -> error
};

} // namespace qpkc
