#pragma once

#include <functional>
#include <memory>
#include <shared_mutex>

#include "wsy/algebra.hpp"

namespace wsy {

// Sign vector sigma_1..sigma_{m+n} for the T-invariants; the threshold form
// (first x rows "-", the rest "+") is what the generator formulas use.
struct SignVector {
    std::vector<int> val; // +1 or -1 per row, index 0-based

    static SignVector threshold(int height, int x)
    {
        SignVector sv;
        sv.val.assign(height, 1);
        for (int i = 0; i < x; ++i) sv.val[i] = -1;
        return sv;
    }
    int at_row(int r) const { return val.at(r - 1); }
    std::string key() const
    {
        std::string s;
        for (int v : val) s.push_back(v > 0 ? '+' : '-');
        return s;
    }
};

// Builder of the invariants T^{(r)}_{i,j;sigma} by direct enumeration of the
// admissible factor sequences. A column window restricts the construction
// to a sub-pyramid (used for the dotted generators of the column-removal
// machinery) while keeping the ambient algebra's twisted generators, so the
// dotted elements live inside the parent U(p).
class TBuilder {
public:
    explicit TBuilder(const Algebra& A, int col_lo = 1, int col_hi = 0);

    const Algebra& algebra() const { return A_; }
    int col_lo() const { return lo_; }
    int col_hi() const { return hi_; }

    // T^{(r)}_{i,j;sigma}; i, j are row indices 1..m+n.
    const Elem& t(int i, int j, const SignVector& sv, int r) const;
    const Elem& t(int i, int j, int threshold, int r) const;

private:
    struct Key {
        int i, j, r;
        std::string sv;
        bool operator<(const Key& o) const
        {
            return std::tie(i, j, r, sv) < std::tie(o.i, o.j, o.r, o.sv);
        }
    };

    Elem compute(int i, int j, const SignVector& sv, int r) const;

    const Algebra& A_;
    int lo_, hi_;
    std::vector<std::vector<int>> row_boxes_; // per row, boxes inside the window
    // memo: concurrent readers, single-writer insertion (std::map nodes are
    // reference-stable, and entries are never erased)
    mutable std::shared_mutex mtx_;
    mutable std::map<Key, Elem> memo_;
};

// Series in u^{-1} with U(p) coefficients, truncated at rmax.
using GenSeries = std::vector<Elem>; // index r, size rmax+1

// Coefficient of u^{-r} in the product of two truncated series.
Elem series_conv(const Algebra& A, const GenSeries& a, const GenSeries& b, int r);

// Uniform access to a parabolic generator family; implemented by the
// Theorem-9.3 closed forms and by the iota superscript-reindexing adaptor.
class GenSource {
public:
    virtual ~GenSource() = default;
    virtual const Algebra& algebra() const = 0;
    virtual int z() const = 0;
    virtual int mu(int a) const = 0;
    virtual int smu(int a, int b) const = 0;
    virtual int pmu(int a) const = 0;
    virtual int rmax() const = 0;
    virtual int par(int a, int i) const = 0; // restricted parity |i|_a
    virtual Elem D(int a, int i, int j, int r) const = 0;
    virtual Elem Dp(int a, int i, int j, int r) const = 0;
    virtual Elem E(int b, int h, int k, int r) const = 0;
    virtual Elem F(int b, int k, int h, int r) const = 0;
    // Populates the memoized generators (D to cap_d, E/F to cap_ef, both
    // clamped by rmax), so that a following parallel phase mostly reads.
    virtual void warm(int cap_d, int cap_ef) const;

    int parity_D(int a, int i, int j) const { return (par(a, i) + par(a, j)) & 1; }
    int parity_E(int b, int h, int k) const { return (par(b, h) + par(b + 1, k)) & 1; }
    int parity_F(int b, int k, int h) const { return (par(b + 1, k) + par(b, h)) & 1; }

    // Higher root elements by the recursive supercommutator definition;
    // kchoice picks the contraction index (the value is independent of it).
    Elem E_root(int a, int b, int i, int j, int r, int kchoice = 1) const;
    Elem F_root(int b, int a, int j, int i, int r, int kchoice = 1) const;
};

// The distinguished W-superalgebra elements of a pyramid: D, D', E, F per
// an admissible shape, realized in U(p) by the closed-form T-invariants.
class GaussGenerators : public GenSource {
public:
    GaussGenerators(std::shared_ptr<const Algebra> A, CompositionShape mu, int rmax,
                    int col_lo = 1, int col_hi = 0);

    const Algebra& algebra() const override { return *A_; }
    const TBuilder& builder() const { return tb_; }
    const CompositionShape& shape() const { return mu_; }
    int z() const override { return mu_.length(); }
    int mu(int a) const override { return mu_.part(a); }
    int smu(int a, int b) const override { return smu_[a - 1][b - 1]; }
    int pmu(int a) const override { return pmu_[a - 1]; }
    int rmax() const override { return rmax_; }
    int par(int a, int i) const override;

    Elem D(int a, int i, int j, int r) const override;
    Elem Dp(int a, int i, int j, int r) const override;
    Elem E(int b, int h, int k, int r) const override;
    Elem F(int b, int k, int h, int r) const override;

    GenSeries D_series(int a, int i, int j) const;
    GenSeries E_series(int b, int h, int k) const; // zero below the shift threshold
    GenSeries F_series(int b, int k, int h) const;

private:
    std::shared_ptr<const Algebra> A_;
    CompositionShape mu_;
    int rmax_;
    TBuilder tb_;
    std::vector<std::vector<int>> smu_;
    std::vector<int> pmu_;
    std::vector<int> row_of_block_; // row index of block ends, for shifts
};

// Truncated series inverse of the block D_a(u); rejects a non-identity
// constant term. Returns the matrix-valued series (i,j) -> coefficients.
std::vector<std::vector<GenSeries>> d_prime_by_inversion(const Algebra& A,
                                                         const std::vector<std::vector<GenSeries>>& D_block);

} // namespace wsy
