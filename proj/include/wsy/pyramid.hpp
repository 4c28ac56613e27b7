#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace wsy {

using json = nlohmann::ordered_json;

// 0^m 1^n sequence fixing the row parities of a pyramid: digit 0 is a "+"
// row, digit 1 a "-" row. Digits are 1-based in the maths, 0-based here.
struct ZeroOneSequence {
    std::vector<int> digits;

    ZeroOneSequence() = default;
    explicit ZeroOneSequence(std::vector<int> d) : digits(std::move(d))
    {
        for (int x : digits)
            if (x != 0 && x != 1) throw std::invalid_argument("01-sequence digit must be 0 or 1");
    }

    static ZeroOneSequence parse(const std::string& s)
    {
        std::vector<int> d;
        d.reserve(s.size());
        for (char c : s) {
            if (c != '0' && c != '1') throw std::invalid_argument("01-sequence must consist of 0/1");
            d.push_back(c - '0');
        }
        return ZeroOneSequence(std::move(d));
    }

    int size() const { return (int)digits.size(); }
    int digit(int i) const { return digits.at(i - 1); } // |i|, 1-based
    int zeros() const
    {
        int m = 0;
        for (int x : digits) m += (x == 0);
        return m;
    }
    int ones() const { return size() - zeros(); }

    std::string str() const
    {
        std::string s;
        for (int x : digits) s.push_back(char('0' + x));
        return s;
    }

    bool operator==(const ZeroOneSequence&) const = default;
};

// Nonnegative integer matrix with s_ij + s_jk = s_ik whenever
// |i-j| + |j-k| = |i-k|. Records the row offsets of a pyramid.
struct ShiftMatrix {
    std::vector<std::vector<int>> s;

    ShiftMatrix() = default;
    explicit ShiftMatrix(std::vector<std::vector<int>> m);

    static ShiftMatrix zero(int n)
    {
        return ShiftMatrix(std::vector<std::vector<int>>(n, std::vector<int>(n, 0)));
    }
    // Builds the unique shift matrix with the given super- and sub-diagonal.
    static ShiftMatrix from_diagonals(const std::vector<int>& upper, const std::vector<int>& lower);

    int size() const { return (int)s.size(); }
    int at(int i, int j) const { return s.at(i - 1).at(j - 1); } // 1-based
    ShiftMatrix transposed() const;

    bool operator==(const ShiftMatrix&) const = default;
};

// Composition of m+n; admissibility to a shift matrix means the matrix
// vanishes on each diagonal block cut out by the parts.
struct CompositionShape {
    std::vector<int> parts;

    CompositionShape() = default;
    explicit CompositionShape(std::vector<int> p) : parts(std::move(p))
    {
        for (int x : parts)
            if (x <= 0) throw std::invalid_argument("shape parts must be positive");
    }

    int length() const { return (int)parts.size(); }
    int total() const
    {
        int t = 0;
        for (int x : parts) t += x;
        return t;
    }
    int part(int a) const { return parts.at(a - 1); }
    // Row index (1-based, exclusive start) of block a: rows start+1 .. start+mu_a.
    int block_start(int a) const
    {
        int t = 0;
        for (int i = 0; i + 1 < a; ++i) t += parts[i];
        return t;
    }
    bool admissible_to(const ShiftMatrix& sigma) const;

    std::string str() const;
    bool operator==(const CompositionShape&) const = default;
};

struct PyramidRow {
    int length = 0;
    bool minus = false; // label: false = "+", true = "-"
    int offset = 0;     // missing boxes on the left vs. the l-column rectangle
    bool operator==(const PyramidRow&) const = default;
};

// A pyramid: top-to-bottom rows of labelled boxes, each non-bottom box over
// exactly one box of the row below. Columns are numbered 1..ell left to
// right; rows 1..m+n top to bottom. Immutable after construction.
class Pyramid {
public:
    Pyramid(std::vector<PyramidRow> rows, int ell);

    int ell() const { return ell_; }
    int height() const { return (int)rows_.size(); } // m+n
    const std::vector<PyramidRow>& rows() const { return rows_; }
    const PyramidRow& row(int i) const { return rows_.at(i - 1); } // 1-based

    int m() const { return m_; } // "+" rows
    int n() const { return n_; } // "-" rows
    int box_count_plus() const { return M_; }
    int box_count_minus() const { return N_; }

    bool has_box(int r, int c) const
    {
        const auto& w = rows_.at(r - 1);
        return c > w.offset && c <= w.offset + w.length;
    }
    // Column height and signed (super) column height q-check.
    int col_height(int c) const;
    int col_height_signed(int c) const;
    // x-coordinate of the centre of a box in column c (2-wide boxes centred
    // at the origin): col_x = 2c - (ell+1).
    int col_x(int c) const { return 2 * c - (ell_ + 1); }

    ZeroOneSequence upsilon() const;
    // rho_r = h - qc_r - ... - qc_ell with h = M - N.
    std::vector<int> rho() const;
    // Row lengths p_1..p_{m+n}.
    std::vector<int> p_tuple() const;

    bool operator==(const Pyramid&) const = default;

private:
    std::vector<PyramidRow> rows_;
    int ell_;
    int m_, n_, M_, N_;
};

// Proposition-2.7 bijection between triples and pyramids.
Pyramid pyramid_from_triple(const ShiftMatrix& sigma, int ell, const ZeroOneSequence& ups);
struct Triple {
    ShiftMatrix sigma;
    int ell;
    ZeroOneSequence upsilon;
};
Triple triple_from_pyramid(const Pyramid& pi);

// All shapes admissible to sigma, and the (unique) minimal one.
std::vector<CompositionShape> admissible_shapes(const ShiftMatrix& sigma);
CompositionShape minimal_admissible_shape(const ShiftMatrix& sigma);

// s^mu_{a,b} lookup for an admissible shape.
int shift_block(const ShiftMatrix& sigma, const CompositionShape& mu, int a, int b);
// p^mu_a = p_{mu_1+...+mu_a}.
int p_block(const Pyramid& pi, const CompositionShape& mu, int a);

// JSON: {"ell":int,"upsilon":"01..","shift":[[..]]} (canonical) or
// {"rows":[{"length","label","offset"},..]}. Both accepted.
Pyramid pyramid_from_json(const json& j);
json pyramid_to_json(const Pyramid& pi); // canonical triple form

} // namespace wsy
