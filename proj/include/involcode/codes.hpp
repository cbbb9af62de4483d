#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "errors.hpp"
#include "gf2.hpp"

namespace involcode {

// Binary linear code held in canonical form: the generator matrix is the
// reduced row echelon basis of the row space, so two codes are equal exactly
// when the stored fields are bit-identical.
class BinaryCode {
public:
    BinaryCode() = default;

    static BinaryCode zero(std::size_t n) {
        BinaryCode c;
        c.n_ = n;
        c.gen_ = Gf2Matrix(0, n);
        return c;
    }

    static BinaryCode from_generators(const Gf2Matrix& rows) {
        RrefResult r = rref(rows);
        BinaryCode c;
        c.n_ = rows.cols();
        c.gen_ = Gf2Matrix(r.pivots.size(), rows.cols());
        for (std::size_t i = 0; i < r.pivots.size(); ++i)
            c.gen_.set_row(i, r.mat.row(i));
        return c;
    }

    static BinaryCode from_strings(const std::vector<std::string>& rows) {
        if (rows.empty())
            throw ParseError("malformed bitstring: no generator rows");
        Gf2Matrix m(rows.size(), rows[0].size());
        for (std::size_t i = 0; i < rows.size(); ++i) {
            Gf2Vector v = Gf2Vector::from_string(rows[i]);
            if (v.size() != m.cols())
                throw ParseError("malformed bitstring: rows of unequal length");
            m.set_row(i, v);
        }
        return from_generators(m);
    }

    std::size_t length() const { return n_; }
    std::size_t dim() const { return gen_.rows(); }
    const Gf2Matrix& generator() const { return gen_; }

    bool operator==(const BinaryCode& o) const {
        return n_ == o.n_ && gen_ == o.gen_;
    }
    bool operator!=(const BinaryCode& o) const { return !(*this == o); }

    // deterministic total order, used to fix enumeration output
    bool operator<(const BinaryCode& o) const {
        if (n_ != o.n_) return n_ < o.n_;
        if (dim() != o.dim()) return dim() < o.dim();
        for (std::size_t i = 0; i < dim(); ++i) {
            const std::string a = gen_.row(i).to_string();
            const std::string b = o.gen_.row(i).to_string();
            if (a != b) return a < b;
        }
        return false;
    }

    bool contains(const Gf2Vector& w) const {
        if (w.size() != n_) return false;
        Gf2Vector v = w;
        for (std::size_t i = 0; i < gen_.rows(); ++i) {
            std::size_t p = gen_.row(i).first_set();
            if (v.get(p)) v.xor_with(gen_.row(i));
        }
        return v.is_zero();
    }

    // all codewords, in generator-mask order
    std::vector<Gf2Vector> codewords() const {
        if (dim() > 28) throw PreconditionError("enumeration limit");
        std::vector<Gf2Vector> out;
        out.reserve(std::size_t(1) << dim());
        Gf2Vector cur(n_);
        out.push_back(cur);
        // Gray code walk: word i differs from i-1 in bit ctz(i)
        for (std::uint64_t i = 1; i < (std::uint64_t(1) << dim()); ++i) {
            unsigned bit = 0;
            while (!((i >> bit) & 1)) ++bit;
            cur.xor_with(gen_.row(bit));
            out.push_back(cur);
        }
        return out;
    }

private:
    std::size_t n_ = 0;
    Gf2Matrix gen_{0, 0};
};

struct WeightEnumerator {
    std::vector<std::uint64_t> coeff;  // coeff[w] = number of words of weight w

    bool operator==(const WeightEnumerator& o) const { return coeff == o.coeff; }

    std::string to_string() const {
        std::string s;
        for (std::size_t w = 0; w < coeff.size(); ++w) {
            if (!coeff[w]) continue;
            if (!s.empty()) s += " + ";
            if (w == 0) {
                s += std::to_string(coeff[w]);
                continue;
            }
            if (coeff[w] != 1) s += std::to_string(coeff[w]);
            s += "z";
            if (w != 1) s += "^" + std::to_string(w);
        }
        if (s.empty()) s = "0";
        return s;
    }
};

inline BinaryCode dual(const BinaryCode& c) {
    return BinaryCode::from_generators(nullspace_basis(c.generator()));
}

inline bool is_self_dual(const BinaryCode& c) {
    if (c.dim() * 2 != c.length()) return false;
    for (std::size_t i = 0; i < c.dim(); ++i)
        for (std::size_t j = i; j < c.dim(); ++j)
            if (c.generator().row(i).dot(c.generator().row(j))) return false;
    return true;
}

inline bool is_doubly_even(const BinaryCode& c) {
    for (std::size_t i = 0; i < c.dim(); ++i) {
        if (c.generator().row(i).weight() % 4 != 0) return false;
        for (std::size_t j = i + 1; j < c.dim(); ++j)
            if (c.generator().row(i).dot(c.generator().row(j))) return false;
    }
    return true;
}

inline WeightEnumerator weight_enumerator(const BinaryCode& c) {
    if (c.dim() > 28) throw PreconditionError("enumeration limit");
    WeightEnumerator we;
    we.coeff.assign(c.length() + 1, 0);
    Gf2Vector cur(c.length());
    we.coeff[0] += 1;
    for (std::uint64_t i = 1; i < (std::uint64_t(1) << c.dim()); ++i) {
        unsigned bit = 0;
        while (!((i >> bit) & 1)) ++bit;
        cur.xor_with(c.generator().row(bit));
        we.coeff[cur.weight()] += 1;
    }
    return we;
}

inline BinaryCode known_code(const std::string& name) {
    if (name == "repetition2") return BinaryCode::from_strings({"11"});
    if (name == "extended_hamming8")
        return BinaryCode::from_strings(
            {"10000111", "01001011", "00101101", "00011110"});
    if (name.rfind("i2^", 0) == 0) {
        const std::string suffix = name.substr(3);
        if (!suffix.empty() &&
            suffix.find_first_not_of("0123456789") == std::string::npos) {
            const unsigned long r = std::stoul(suffix);
            if (r >= 1 && r <= 64) {
                Gf2Matrix m(r, 2 * r);
                for (std::size_t i = 0; i < r; ++i) {
                    m.set(i, 2 * i, true);
                    m.set(i, 2 * i + 1, true);
                }
                return BinaryCode::from_generators(m);
            }
        }
    }
    throw PreconditionError("unknown code name: " + name);
}

namespace detail {

// apply a coordinate permutation: bit i of the input lands at perm[i]
inline Gf2Vector permute_word(const Gf2Vector& w,
                              const std::vector<std::uint32_t>& perm) {
    Gf2Vector out(w.size());
    for (std::size_t i = 0; i < w.size(); ++i)
        if (w.get(i)) out.set(perm[i], true);
    return out;
}

inline BinaryCode permute_code(const BinaryCode& c,
                               const std::vector<std::uint32_t>& perm) {
    Gf2Matrix m(c.dim(), c.length());
    for (std::size_t i = 0; i < c.dim(); ++i)
        m.set_row(i, permute_word(c.generator().row(i), perm));
    return BinaryCode::from_generators(m);
}

} // namespace detail

// Searches for a coordinate permutation carrying a onto b. Exact
// backtracking pruned by weight enumerators, per-column weight profiles and
// the minimum-weight word supports.
inline std::optional<std::vector<std::uint32_t>> are_equivalent(
    const BinaryCode& a, const BinaryCode& b) {
    if (a.length() != b.length())
        throw PreconditionError("length mismatch: " +
                                std::to_string(a.length()) + " vs " +
                                std::to_string(b.length()));
    if (a.dim() > 28 || b.dim() > 28)
        throw PreconditionError("enumeration limit");
    const std::size_t n = a.length();
    if (a.dim() != b.dim()) return std::nullopt;
    if (n == 0 || a.dim() == 0) {
        if (a.dim() != b.dim()) return std::nullopt;
        std::vector<std::uint32_t> id(n);
        for (std::size_t i = 0; i < n; ++i) id[i] = std::uint32_t(i);
        return id;
    }
    const std::vector<Gf2Vector> wa = a.codewords();
    const std::vector<Gf2Vector> wb = b.codewords();
    // weight enumerators must match
    {
        std::vector<std::uint64_t> ea(n + 1, 0), eb(n + 1, 0);
        for (const auto& w : wa) ++ea[w.weight()];
        for (const auto& w : wb) ++eb[w.weight()];
        if (ea != eb) return std::nullopt;
    }
    // per-column profile: count of codewords of each weight covering the
    // column; a column can only map to one with an identical profile
    auto profiles = [n](const std::vector<Gf2Vector>& words) {
        std::vector<std::vector<std::uint32_t>> prof(
            n, std::vector<std::uint32_t>(n + 1, 0));
        for (const auto& w : words) {
            const std::size_t wt = w.weight();
            for (std::size_t i = 0; i < n; ++i)
                if (w.get(i)) ++prof[i][wt];
        }
        return prof;
    };
    const auto pa = profiles(wa);
    const auto pb = profiles(wb);
    // minimum-weight supports of b, for partial-assignment pruning
    std::size_t wmin = n + 1;
    for (const auto& w : wa)
        if (!w.is_zero()) wmin = std::min(wmin, w.weight());
    std::vector<std::vector<std::size_t>> amin;
    std::vector<std::vector<std::size_t>> bmin;
    if (wmin <= n) {
        for (const auto& w : wa)
            if (w.weight() == wmin) amin.push_back(w.support());
        for (const auto& w : wb)
            if (w.weight() == wmin) bmin.push_back(w.support());
        std::sort(bmin.begin(), bmin.end());
    }
    std::vector<std::uint32_t> perm(n, std::uint32_t(n));
    std::vector<char> used(n, 0);
    std::vector<std::size_t> img;
    auto min_words_ok = [&](std::size_t depth) {
        // every fully assigned minimum-weight support must land on one of b's
        for (const auto& s : amin) {
            bool full = true;
            for (std::size_t col : s)
                if (col > depth || perm[col] == std::uint32_t(n)) {
                    full = false;
                    break;
                }
            if (!full) continue;
            img.clear();
            for (std::size_t col : s) img.push_back(perm[col]);
            std::sort(img.begin(), img.end());
            if (!std::binary_search(bmin.begin(), bmin.end(), img))
                return false;
        }
        return true;
    };
    std::function<bool(std::size_t)> assign = [&](std::size_t col) -> bool {
        if (col == n) {
            return detail::permute_code(a, perm) == b;
        }
        for (std::size_t q = 0; q < n; ++q) {
            if (used[q] || pa[col] != pb[q]) continue;
            perm[col] = std::uint32_t(q);
            used[q] = 1;
            if (min_words_ok(col) && assign(col + 1)) return true;
            used[q] = 0;
            perm[col] = std::uint32_t(n);
        }
        return false;
    };
    if (assign(0)) return perm;
    return std::nullopt;
}

// All self-dual codes of even length n <= 10, canonical and sorted. Grown by
// chains of self-orthogonal extensions starting from the all-ones code,
// which every self-dual code contains.
inline std::vector<BinaryCode> enumerate_self_dual_codes(std::size_t n) {
    if (n % 2 != 0)
        throw PreconditionError("no self-dual codes in odd length");
    if (n > 10) throw PreconditionError("enumeration limit");
    if (n == 0) return {BinaryCode::zero(0)};
    Gf2Matrix ones(1, n);
    for (std::size_t i = 0; i < n; ++i) ones.set(0, i, true);
    std::vector<BinaryCode> layer = {BinaryCode::from_generators(ones)};
    while (layer.front().dim() < n / 2) {
        std::vector<BinaryCode> next;
        for (const BinaryCode& c : layer) {
            // extensions <c, v> correspond to cosets v + c, so restrict v to
            // the coset representative vanishing on the pivot columns
            std::vector<std::uint64_t> rows;
            std::uint64_t pivot_mask = 0;
            for (std::size_t r = 0; r < c.dim(); ++r) {
                rows.push_back(c.generator().row(r).words()[0]);
                pivot_mask |= std::uint64_t(1)
                              << c.generator().row(r).first_set();
            }
            for (std::uint64_t v = 1; v < (std::uint64_t(1) << n); ++v) {
                if (v & pivot_mask) continue;
                if (std::popcount(v) % 2 != 0) continue;
                bool orth = true;
                for (std::uint64_t row : rows)
                    if (std::popcount(v & row) % 2 != 0) {
                        orth = false;
                        break;
                    }
                if (!orth) continue;
                Gf2Matrix m(c.dim() + 1, n);
                for (std::size_t r = 0; r < c.dim(); ++r)
                    m.set_row(r, c.generator().row(r));
                for (std::size_t i = 0; i < n; ++i)
                    if ((v >> i) & 1) m.set(c.dim(), i, true);
                next.push_back(BinaryCode::from_generators(m));
            }
        }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        layer = std::move(next);
    }
    return layer;
}

inline std::vector<BinaryCode> enumerate_self_dual_classes(std::size_t n) {
    std::vector<BinaryCode> all = enumerate_self_dual_codes(n);
    std::vector<BinaryCode> reps;
    for (const BinaryCode& c : all) {
        bool fresh = true;
        for (const BinaryCode& r : reps)
            if (are_equivalent(r, c)) {
                fresh = false;
                break;
            }
        if (fresh) reps.push_back(c);
    }
    return reps;
}

} // namespace involcode
