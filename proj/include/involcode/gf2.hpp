#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"

namespace involcode {

// Bit-packed vector over GF(2).
class Gf2Vector {
public:
    Gf2Vector() = default;
    explicit Gf2Vector(std::size_t n) : n_(n), w_(words_for(n), 0) {}

    static Gf2Vector from_bits(const std::vector<int>& bits) {
        Gf2Vector v(bits.size());
        for (std::size_t i = 0; i < bits.size(); ++i)
            if (bits[i] & 1) v.set(i, true);
        return v;
    }

    static Gf2Vector from_string(const std::string& s) {
        Gf2Vector v(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (s[i] == '1')
                v.set(i, true);
            else if (s[i] != '0')
                throw ParseError("malformed bitstring: " + s);
        }
        return v;
    }

    std::size_t size() const { return n_; }

    bool get(std::size_t i) const {
        return (w_[i >> 6] >> (i & 63)) & 1u;
    }

    void set(std::size_t i, bool b) {
        std::uint64_t mask = std::uint64_t(1) << (i & 63);
        if (b)
            w_[i >> 6] |= mask;
        else
            w_[i >> 6] &= ~mask;
    }

    void xor_with(const Gf2Vector& o) {
        for (std::size_t k = 0; k < w_.size(); ++k) w_[k] ^= o.w_[k];
    }

    int dot(const Gf2Vector& o) const {
        std::uint64_t acc = 0;
        for (std::size_t k = 0; k < w_.size(); ++k) acc ^= w_[k] & o.w_[k];
        return std::popcount(acc) & 1;
    }

    std::size_t weight() const {
        std::size_t w = 0;
        for (std::uint64_t x : w_) w += std::size_t(std::popcount(x));
        return w;
    }

    bool is_zero() const {
        for (std::uint64_t x : w_)
            if (x) return false;
        return true;
    }

    // Index of the lowest set bit, or size() if zero.
    std::size_t first_set() const {
        for (std::size_t k = 0; k < w_.size(); ++k)
            if (w_[k]) return (k << 6) + std::size_t(std::countr_zero(w_[k]));
        return n_;
    }

    std::vector<std::size_t> support() const {
        std::vector<std::size_t> s;
        for (std::size_t k = 0; k < w_.size(); ++k) {
            std::uint64_t x = w_[k];
            while (x) {
                s.push_back((k << 6) + std::size_t(std::countr_zero(x)));
                x &= x - 1;
            }
        }
        return s;
    }

    std::string to_string() const {
        std::string s(n_, '0');
        for (std::size_t i = 0; i < n_; ++i)
            if (get(i)) s[i] = '1';
        return s;
    }

    friend bool operator==(const Gf2Vector& a, const Gf2Vector& b) {
        return a.n_ == b.n_ && a.w_ == b.w_;
    }

    const std::vector<std::uint64_t>& words() const { return w_; }
    std::vector<std::uint64_t>& words() { return w_; }

    static std::size_t words_for(std::size_t n) { return (n + 63) >> 6; }

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

// Dense bit-packed matrix over GF(2), row-major.
class Gf2Matrix {
public:
    Gf2Matrix() = default;
    Gf2Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), wpr_(Gf2Vector::words_for(cols)),
          w_(rows * wpr_, 0) {}

    static Gf2Matrix identity(std::size_t n) {
        Gf2Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
        return m;
    }

    static Gf2Matrix from_rows(const std::vector<std::vector<int>>& rows,
                               std::size_t cols) {
        Gf2Matrix m(rows.size(), cols);
        for (std::size_t r = 0; r < rows.size(); ++r)
            for (std::size_t c = 0; c < rows[r].size(); ++c)
                if (rows[r][c] & 1) m.set(r, c, true);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool get(std::size_t r, std::size_t c) const {
        return (w_[r * wpr_ + (c >> 6)] >> (c & 63)) & 1u;
    }

    void set(std::size_t r, std::size_t c, bool b) {
        std::uint64_t mask = std::uint64_t(1) << (c & 63);
        if (b)
            w_[r * wpr_ + (c >> 6)] |= mask;
        else
            w_[r * wpr_ + (c >> 6)] &= ~mask;
    }

    Gf2Vector row(std::size_t r) const {
        Gf2Vector v(cols_);
        std::copy(w_.begin() + long(r * wpr_), w_.begin() + long((r + 1) * wpr_),
                  v.words().begin());
        return v;
    }

    void set_row(std::size_t r, const Gf2Vector& v) {
        std::copy(v.words().begin(), v.words().end(), w_.begin() + long(r * wpr_));
    }

    // dst ^= src, starting at word `from_word` (earlier words known equal/zero).
    void xor_row_into(std::size_t src, std::size_t dst, std::size_t from_word = 0) {
        const std::uint64_t* s = &w_[src * wpr_];
        std::uint64_t* d = &w_[dst * wpr_];
        for (std::size_t k = from_word; k < wpr_; ++k) d[k] ^= s[k];
    }

    Gf2Matrix transpose() const {
        Gf2Matrix t(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t k = 0; k < wpr_; ++k) {
                std::uint64_t x = w_[r * wpr_ + k];
                while (x) {
                    std::size_t c = (k << 6) + std::size_t(std::countr_zero(x));
                    t.set(c, r, true);
                    x &= x - 1;
                }
            }
        return t;
    }

    // m * x with x a column vector of length cols().
    Gf2Vector apply(const Gf2Vector& x) const {
        Gf2Vector y(rows_);
        for (std::size_t r = 0; r < rows_; ++r) {
            std::uint64_t acc = 0;
            const std::uint64_t* a = &w_[r * wpr_];
            const std::uint64_t* b = x.words().data();
            for (std::size_t k = 0; k < wpr_; ++k) acc ^= a[k] & b[k];
            if (std::popcount(acc) & 1) y.set(r, true);
        }
        return y;
    }

    // x^T * m with x a coefficient vector over the rows.
    Gf2Vector row_combination(const Gf2Vector& x) const {
        Gf2Vector y(cols_);
        for (std::size_t r = 0; r < rows_; ++r)
            if (x.get(r))
                for (std::size_t k = 0; k < wpr_; ++k)
                    y.words()[k] ^= w_[r * wpr_ + k];
        return y;
    }

    friend Gf2Matrix operator*(const Gf2Matrix& a, const Gf2Matrix& b) {
        Gf2Matrix c(a.rows_, b.cols_);
        for (std::size_t r = 0; r < a.rows_; ++r)
            for (std::size_t k = 0; k < a.wpr_; ++k) {
                std::uint64_t x = a.w_[r * a.wpr_ + k];
                while (x) {
                    std::size_t j = (k << 6) + std::size_t(std::countr_zero(x));
                    for (std::size_t t = 0; t < b.wpr_; ++t)
                        c.w_[r * c.wpr_ + t] ^= b.w_[j * b.wpr_ + t];
                    x &= x - 1;
                }
            }
        return c;
    }

    static Gf2Matrix vstack(const Gf2Matrix& a, const Gf2Matrix& b) {
        Gf2Matrix m(a.rows_ + b.rows_, a.cols_);
        std::copy(a.w_.begin(), a.w_.end(), m.w_.begin());
        std::copy(b.w_.begin(), b.w_.end(), m.w_.begin() + long(a.w_.size()));
        return m;
    }

    bool is_zero() const {
        for (std::uint64_t x : w_)
            if (x) return false;
        return true;
    }

    std::size_t popcount() const {
        std::size_t n = 0;
        for (std::uint64_t x : w_) n += std::size_t(std::popcount(x));
        return n;
    }

    friend bool operator==(const Gf2Matrix& a, const Gf2Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.w_ == b.w_;
    }

private:
    std::size_t rows_ = 0, cols_ = 0, wpr_ = 0;
    std::vector<std::uint64_t> w_;
};

struct RrefResult {
    Gf2Matrix mat;
    std::vector<std::size_t> pivots;
};

// Knobs for the automatic dense/sparse dispatch.
struct Gf2Options {
    // Sparse elimination is used when rows*cols exceeds this and the input
    // density is below sparse_density_threshold.
    std::size_t sparse_min_entries = std::size_t(1) << 22;
    double sparse_density_threshold = 0.05;
};

inline Gf2Options& gf2_options() {
    static Gf2Options opts;
    return opts;
}

namespace detail {

inline RrefResult rref_dense(const Gf2Matrix& m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    Gf2Matrix a = m;
    std::vector<std::size_t> pivot_cols;
    std::vector<std::size_t> pivot_rows;
    std::vector<bool> is_pivot_row(rows, false);
    for (std::size_t c = 0; c < cols; ++c) {
        std::size_t pr = rows;
        for (std::size_t r = 0; r < rows; ++r) {
            if (!is_pivot_row[r] && a.get(r, c)) { pr = r; break; }
        }
        if (pr == rows) continue;
        is_pivot_row[pr] = true;
        pivot_cols.push_back(c);
        pivot_rows.push_back(pr);
        std::size_t from_word = c >> 6;
        for (std::size_t r = 0; r < rows; ++r)
            if (r != pr && a.get(r, c)) a.xor_row_into(pr, r, from_word);
        if (pivot_cols.size() == std::min(rows, cols) &&
            pivot_cols.size() == rows)
            break;
    }
    Gf2Matrix out(rows, cols);
    for (std::size_t i = 0; i < pivot_rows.size(); ++i)
        out.set_row(i, a.row(pivot_rows[i]));
    return RrefResult{std::move(out), std::move(pivot_cols)};
}

// Sparse column-list elimination producing the same canonical rref.
// Columns are processed in index order; each working column is fully reduced
// against the pivot columns found so far. A history bitset per column tracks
// which pivots were folded in; for a dependent column the history is exactly
// its rref column.
inline RrefResult rref_sparse(const Gf2Matrix& m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    // column lists
    std::vector<std::vector<std::uint32_t>> col(cols);
    for (std::size_t r = 0; r < rows; ++r) {
        Gf2Vector v = m.row(r);
        for (std::size_t c : v.support()) col[c].push_back(std::uint32_t(r));
    }
    std::vector<std::int32_t> pivot_of_row(rows, -1);
    std::vector<std::vector<std::uint32_t>> pcol;   // reduced pivot columns
    std::vector<std::vector<std::uint64_t>> phist;  // history per pivot column
    std::vector<std::size_t> pivot_cols;
    std::vector<std::vector<std::uint64_t>> free_hist(cols);
    std::vector<bool> is_free(cols, false);

    std::vector<std::uint32_t> tmp;
    auto xor_sorted = [&tmp](std::vector<std::uint32_t>& a,
                             const std::vector<std::uint32_t>& b) {
        tmp.clear();
        std::size_t i = 0, j = 0;
        while (i < a.size() && j < b.size()) {
            if (a[i] < b[j]) tmp.push_back(a[i++]);
            else if (a[i] > b[j]) tmp.push_back(b[j++]);
            else { ++i; ++j; }
        }
        tmp.insert(tmp.end(), a.begin() + long(i), a.end());
        tmp.insert(tmp.end(), b.begin() + long(j), b.end());
        a.swap(tmp);
    };
    auto xor_hist = [](std::vector<std::uint64_t>& a,
                       const std::vector<std::uint64_t>& b) {
        if (a.size() < b.size()) a.resize(b.size(), 0);
        for (std::size_t k = 0; k < b.size(); ++k) a[k] ^= b[k];
    };
    auto hist_flip = [](std::vector<std::uint64_t>& a, std::size_t i) {
        std::size_t k = i >> 6;
        if (a.size() <= k) a.resize(k + 1, 0);
        a[k] ^= std::uint64_t(1) << (i & 63);
    };

    for (std::size_t c = 0; c < cols; ++c) {
        std::vector<std::uint32_t> work = std::move(col[c]);
        std::vector<std::uint64_t> hist;
        // Fully reduce against known pivots. Reducing by the smallest pivot
        // index present terminates: a pivot column only references pivots
        // registered later, so cleared minima strictly increase.
        for (;;) {
            std::int32_t hit = -1;
            for (std::uint32_t r : work) {
                std::int32_t p = pivot_of_row[r];
                if (p >= 0 && (hit < 0 || p < hit)) hit = p;
            }
            if (hit < 0) break;
            xor_sorted(work, pcol[std::size_t(hit)]);
            xor_hist(hist, phist[std::size_t(hit)]);
            hist_flip(hist, std::size_t(hit));
        }
        if (work.empty()) {
            is_free[c] = true;
            free_hist[c] = std::move(hist);
        } else {
            std::size_t idx = pivot_cols.size();
            pivot_of_row[work.front()] = std::int32_t(idx);
            pivot_cols.push_back(c);
            pcol.push_back(std::move(work));
            phist.push_back(std::move(hist));
        }
    }

    const std::size_t rank = pivot_cols.size();
    Gf2Matrix out(rows, cols);
    for (std::size_t i = 0; i < rank; ++i) out.set(i, pivot_cols[i], true);
    auto hist_get = [](const std::vector<std::uint64_t>& h, std::size_t i) {
        std::size_t k = i >> 6;
        return k < h.size() && ((h[k] >> (i & 63)) & 1u);
    };
    for (std::size_t c = 0; c < cols; ++c) {
        if (!is_free[c]) continue;
        for (std::size_t i = 0; i < rank; ++i)
            if (hist_get(free_hist[c], i)) out.set(i, c, true);
    }
    return RrefResult{std::move(out), std::move(pivot_cols)};
}

// Sparse boundary-style matrix held as column lists.
struct SparseGf2 {
    std::size_t rows = 0, cols = 0;
    std::vector<std::vector<std::uint32_t>> col;  // sorted row indices
};

// Rank by left-looking sparse elimination without history tracking.
// Destroys its argument.
inline std::size_t sparse_rank(SparseGf2&& m) {
    std::vector<std::int32_t> pivot_of_row(m.rows, -1);
    std::vector<std::vector<std::uint32_t>> pcol;
    std::vector<std::uint32_t> tmp;
    auto xor_sorted = [&tmp](std::vector<std::uint32_t>& a,
                             const std::vector<std::uint32_t>& b) {
        tmp.clear();
        std::size_t i = 0, j = 0;
        while (i < a.size() && j < b.size()) {
            if (a[i] < b[j]) tmp.push_back(a[i++]);
            else if (a[i] > b[j]) tmp.push_back(b[j++]);
            else { ++i; ++j; }
        }
        tmp.insert(tmp.end(), a.begin() + long(i), a.end());
        tmp.insert(tmp.end(), b.begin() + long(j), b.end());
        a.swap(tmp);
    };
    std::size_t rank = 0;
    for (std::size_t c = 0; c < m.cols; ++c) {
        std::vector<std::uint32_t> work = std::move(m.col[c]);
        for (;;) {
            // smallest pivot index present, as in rref_sparse
            std::int32_t hit = -1;
            for (std::uint32_t r : work) {
                std::int32_t p = pivot_of_row[r];
                if (p >= 0 && (hit < 0 || p < hit)) hit = p;
            }
            if (hit < 0) break;
            xor_sorted(work, pcol[std::size_t(hit)]);
        }
        if (!work.empty()) {
            pivot_of_row[work.front()] = std::int32_t(rank);
            pcol.push_back(std::move(work));
            ++rank;
        }
    }
    return rank;
}

inline bool prefer_sparse(const Gf2Matrix& m) {
    const Gf2Options& o = gf2_options();
    std::size_t entries = m.rows() * m.cols();
    if (entries < o.sparse_min_entries || entries == 0) return false;
    double density = double(m.popcount()) / double(entries);
    return density <= o.sparse_density_threshold;
}

// Incremental echelon container used to complete bases and to express
// vectors over a chosen generator list. Tags record, per stored row, the
// combination of tagged insertions that produced it.
class Eliminator {
public:
    explicit Eliminator(std::size_t cols, std::size_t max_tags)
        : cols_(cols), row_of_lead_(cols, -1), max_tags_(max_tags) {}

    // Inserts v; returns true if the rank grew. When tagged, the new
    // generator gets the next tag index.
    bool insert(Gf2Vector v, bool tagged) {
        Gf2Vector tag(max_tags_);
        reduce_in_place(v, tag);
        if (v.is_zero()) return false;
        if (tagged) {
            tag.set(tag_count_, true);
            ++tag_count_;
        }
        std::size_t lead = v.first_set();
        row_of_lead_[lead] = std::int32_t(rows_.size());
        rows_.push_back(std::move(v));
        tags_.push_back(std::move(tag));
        return true;
    }

    // Reduces v to zero over the stored rows and reports the tag
    // combination; returns false if v is not in the span.
    bool express(Gf2Vector v, Gf2Vector& tag_out) const {
        Gf2Vector tag(max_tags_);
        reduce_in_place(v, tag);
        if (!v.is_zero()) return false;
        tag_out = std::move(tag);
        return true;
    }

    std::size_t rank() const { return rows_.size(); }
    std::size_t tag_count() const { return tag_count_; }

private:
    void reduce_in_place(Gf2Vector& v, Gf2Vector& tag) const {
        for (;;) {
            std::size_t lead = v.first_set();
            if (lead >= cols_) break;
            std::int32_t r = row_of_lead_[lead];
            if (r < 0) break;
            v.xor_with(rows_[std::size_t(r)]);
            tag.xor_with(tags_[std::size_t(r)]);
        }
    }

    std::size_t cols_;
    std::vector<std::int32_t> row_of_lead_;
    std::vector<Gf2Vector> rows_;
    std::vector<Gf2Vector> tags_;
    std::size_t max_tags_;
    std::size_t tag_count_ = 0;
};

} // namespace detail

// Unique reduced row echelon form of m, plus its pivot columns.
inline RrefResult rref(const Gf2Matrix& m) {
    if (detail::prefer_sparse(m)) return detail::rref_sparse(m);
    return detail::rref_dense(m);
}

inline std::size_t rank(const Gf2Matrix& m) {
    if (detail::prefer_sparse(m)) {
        detail::SparseGf2 s;
        s.rows = m.rows();
        s.cols = m.cols();
        s.col.resize(m.cols());
        for (std::size_t r = 0; r < m.rows(); ++r) {
            Gf2Vector v = m.row(r);
            for (std::size_t c : v.support())
                s.col[c].push_back(std::uint32_t(r));
        }
        return detail::sparse_rank(std::move(s));
    }
    return detail::rref_dense(m).pivots.size();
}

// Canonical basis of {x : m x = 0}, one row per free column, free columns
// ascending; each basis vector has 1 at its free column and the rref column
// entries at the pivot columns.
inline Gf2Matrix nullspace_basis(const Gf2Matrix& m) {
    RrefResult r = rref(m);
    const std::size_t cols = m.cols();
    std::vector<bool> pivot(cols, false);
    for (std::size_t c : r.pivots) pivot[c] = true;
    Gf2Matrix basis(cols - r.pivots.size(), cols);
    std::size_t out = 0;
    for (std::size_t f = 0; f < cols; ++f) {
        if (pivot[f]) continue;
        basis.set(out, f, true);
        for (std::size_t i = 0; i < r.pivots.size(); ++i)
            if (r.mat.get(i, f)) basis.set(out, r.pivots[i], true);
        ++out;
    }
    return basis;
}

// Solves m x = b; canonical solution with free variables zero, or empty if
// the system is inconsistent.
inline std::optional<Gf2Vector> solve(const Gf2Matrix& m, const Gf2Vector& b) {
    if (b.size() != m.rows())
        throw PreconditionError("solve: right-hand side length mismatch");
    const std::size_t rows = m.rows(), cols = m.cols();
    Gf2Matrix a(rows, cols + 1);
    for (std::size_t r = 0; r < rows; ++r) {
        Gf2Vector row = m.row(r);
        for (std::size_t c : row.support()) a.set(r, c, true);
        if (b.get(r)) a.set(r, cols, true);
    }
    RrefResult rr = detail::rref_dense(a);
    Gf2Vector x(cols);
    for (std::size_t i = 0; i < rr.pivots.size(); ++i) {
        if (rr.pivots[i] == cols) return std::nullopt;
        if (rr.mat.get(i, cols)) x.set(rr.pivots[i], true);
    }
    return x;
}

// Coordinates of v in the canonical complement of the subspace inside the
// space (both given by spanning rows). The complement generators are the
// rref rows of the space that extend the subspace rref, in order.
inline Gf2Vector quotient_coordinates(const Gf2Matrix& space_basis,
                                      const Gf2Matrix& subspace_basis,
                                      const Gf2Vector& v) {
    const std::size_t cols = space_basis.cols();
    if (subspace_basis.rows() > 0 && subspace_basis.cols() != cols)
        throw PreconditionError("vector outside ambient space");
    if (v.size() != cols)
        throw PreconditionError("vector outside ambient space");
    RrefResult rs = rref(space_basis);
    RrefResult rb = rref(subspace_basis);
    const std::size_t rank_space = rs.pivots.size();
    const std::size_t rank_sub = rb.pivots.size();
    detail::Eliminator elim(cols, rank_space);
    for (std::size_t i = 0; i < rank_sub; ++i) elim.insert(rb.mat.row(i), false);
    if (elim.rank() != rank_sub)
        throw InternalError("quotient_coordinates: dependent subspace rref rows");
    for (std::size_t i = 0; i < rank_space; ++i) elim.insert(rs.mat.row(i), true);
    if (elim.rank() != rank_space)
        throw PreconditionError("vector outside ambient space");
    const std::size_t q = elim.tag_count();
    Gf2Vector tag;
    if (!elim.express(v, tag))
        throw PreconditionError("vector outside ambient space");
    Gf2Vector coords(q);
    for (std::size_t i = 0; i < q; ++i)
        if (tag.get(i)) coords.set(i, true);
    return coords;
}

} // namespace involcode
