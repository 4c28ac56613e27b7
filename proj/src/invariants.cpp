#include "wsy/invariants.hpp"

#include <cassert>
#include <mutex>

namespace wsy {

TBuilder::TBuilder(const Algebra& A, int col_lo, int col_hi)
    : A_(A), lo_(col_lo), hi_(col_hi ? col_hi : A.pyramid().ell())
{
    if (lo_ < 1 || hi_ > A.pyramid().ell() || lo_ > hi_)
        throw std::invalid_argument("bad column window");
    int H = A.pyramid().height();
    row_boxes_.resize(H);
    for (int r = 1; r <= H; ++r)
        for (int b : A.boxes_in_row(r))
            if (A.col_of(b) >= lo_ && A.col_of(b) <= hi_) row_boxes_[r - 1].push_back(b);
}

const Elem& TBuilder::t(int i, int j, const SignVector& sv, int r) const
{
    Key key{i, j, r, sv.key()};
    {
        std::shared_lock rd(mtx_);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
    }
    Elem v = compute(i, j, sv, r);
    std::unique_lock wr(mtx_);
    return memo_.emplace(std::move(key), std::move(v)).first->second;
}

const Elem& TBuilder::t(int i, int j, int threshold, int r) const
{
    return t(i, j, SignVector::threshold(A_.pyramid().height(), threshold), r);
}

// Direct expansion of Eq. (tdef): sum over factor sequences
// e~_{i_1,j_1} ... e~_{i_s,j_s} subject to the degree, column and row-chain
// conditions, with prefactor sigma_{row(j_1)}..sigma_{row(j_{s-1})} and
// parity sign (-1)^{pa(i_1)+...+pa(i_s)}.
Elem TBuilder::compute(int i, int j, const SignVector& sv, int r) const
{
    int H = A_.pyramid().height();
    if (i < 1 || i > H || j < 1 || j > H) throw std::invalid_argument("row index out of range");
    if (r == 0) return Elem::scalar(Rat(i == j ? sv.at_row(i) : 0));

    Elem total;
    // One recursion level per chosen factor (i_t, j_t).
    std::function<void(int, int, bool, int, const Elem&, int)> rec =
        [&](int cur_row, int prev_col, bool have_prev, int remaining, const Elem& prefix, int sign) {
            for (int bi : row_boxes_[cur_row - 1]) {
                int ci = A_.col_of(bi);
                if (have_prev) {
                    if (sv.at_row(cur_row) > 0 ? ci <= prev_col : ci > prev_col) continue;
                }
                for (int r2 = 1; r2 <= A_.pyramid().height(); ++r2)
                    for (int bj : row_boxes_[r2 - 1]) {
                        int cj = A_.col_of(bj);
                        int deg = cj - ci + 1;
                        if (cj < ci || deg > remaining) continue;
                        int s2 = A_.pa(bi) ? -sign : sign;
                        Elem next = A_.mul(prefix, A_.e_tilde(bi, bj));
                        if (deg == remaining) {
                            if (r2 == j) total += next * Rat(s2);
                        } else {
                            rec(r2, cj, true, remaining - deg, next, s2 * sv.at_row(r2));
                        }
                    }
            }
        };
    rec(i, 0, false, r, A_.unit(), 1);
    return total;
}

Elem series_conv(const Algebra& A, const GenSeries& a, const GenSeries& b, int r)
{
    Elem out;
    for (int t = 0; t <= r; ++t) {
        if (t >= (int)a.size() || r - t >= (int)b.size()) continue;
        if (a[t].is_zero_elem() || b[r - t].is_zero_elem()) continue;
        out += A.mul(a[t], b[r - t]);
    }
    return out;
}

void GenSource::warm(int cap) const
{
    cap = std::min(cap, rmax());
    for (int a = 1; a <= z(); ++a)
        for (int i = 1; i <= mu(a); ++i)
            for (int j = 1; j <= mu(a); ++j)
                for (int r = 0; r <= cap; ++r) {
                    D(a, i, j, r);
                    Dp(a, i, j, r);
                }
    for (int b = 1; b + 1 <= z(); ++b)
        for (int h = 1; h <= mu(b); ++h)
            for (int k = 1; k <= mu(b + 1); ++k) {
                for (int r = smu(b, b + 1) + 1; r <= cap; ++r) E(b, h, k, r);
                for (int r = smu(b + 1, b) + 1; r <= cap; ++r) F(b, k, h, r);
            }
}

Elem GenSource::E_root(int a, int b, int i, int j, int r, int kchoice) const
{
    if (!(1 <= a && a < b && b <= z())) throw std::invalid_argument("E_root: need a < b");
    if (r <= smu(a, b)) throw std::invalid_argument("E_root: superscript below shift");
    if (b == a + 1) return E(a, i, j, r);
    int s = smu(b - 1, b);
    if (kchoice < 1 || kchoice > mu(b - 1)) throw std::invalid_argument("E_root: bad k choice");
    const Algebra& A = algebra();
    Elem inner = A.bracket(E_root(a, b - 1, i, kchoice, r - s), E(b - 1, kchoice, j, s + 1));
    return inner * Rat(par(b - 1, kchoice) ? -1 : 1);
}

Elem GenSource::F_root(int b, int a, int j, int i, int r, int kchoice) const
{
    if (!(1 <= a && a < b && b <= z())) throw std::invalid_argument("F_root: need a < b");
    if (r <= smu(b, a)) throw std::invalid_argument("F_root: superscript below shift");
    if (b == a + 1) return F(a, j, i, r);
    int s = smu(b, b - 1);
    if (kchoice < 1 || kchoice > mu(b - 1)) throw std::invalid_argument("F_root: bad k choice");
    const Algebra& A = algebra();
    Elem inner = A.bracket(F(b - 1, j, kchoice, s + 1), F_root(b - 1, a, kchoice, i, r - s));
    return inner * Rat(par(b - 1, kchoice) ? -1 : 1);
}

GaussGenerators::GaussGenerators(std::shared_ptr<const Algebra> A, CompositionShape mu, int rmax,
                                 int col_lo, int col_hi)
    : A_(std::move(A)), mu_(std::move(mu)), rmax_(rmax), tb_(*A_, col_lo, col_hi)
{
    const Pyramid& pi = A_->pyramid();
    if (mu_.total() != pi.height()) throw std::invalid_argument("shape does not fit the pyramid");
    // Effective shift matrix and row lengths of the (possibly column
    // restricted) sub-pyramid.
    int lo = tb_.col_lo(), hi = tb_.col_hi();
    int H = pi.height();
    std::vector<int> off(H + 1), miss(H + 1), len(H + 1);
    for (int r = 1; r <= H; ++r) {
        int a = std::max(pi.row(r).offset, lo - 1);
        int b = std::min(pi.row(r).offset + pi.row(r).length, hi);
        if (a >= b) throw std::invalid_argument("row vanishes inside the column window");
        off[r] = a - (lo - 1);
        len[r] = b - a;
        miss[r] = (hi - lo + 1) - off[r] - len[r];
    }
    auto s_at = [&](int i, int j) {
        if (i == j) return 0;
        return i < j ? miss[i] - miss[j] : off[j] - off[i];
    };
    int zz = mu_.length();
    // Admissibility against the effective shift matrix of the window.
    std::vector<std::vector<int>> eff(H, std::vector<int>(H, 0));
    for (int i = 1; i <= H; ++i)
        for (int j = 1; j <= H; ++j) eff[i - 1][j - 1] = s_at(i, j);
    if (!mu_.admissible_to(ShiftMatrix(std::move(eff))))
        throw std::invalid_argument("shape not admissible to the shift matrix");
    smu_.assign(zz, std::vector<int>(zz, 0));
    pmu_.assign(zz, 0);
    for (int a = 1; a <= zz; ++a) {
        int ra = mu_.block_start(a) + mu_.part(a);
        pmu_[a - 1] = len[ra];
        for (int b = 1; b <= zz; ++b) {
            int rb = mu_.block_start(b) + mu_.part(b);
            smu_[a - 1][b - 1] = s_at(ra, rb);
        }
    }
}

int GaussGenerators::par(int a, int i) const
{
    return A_->pyramid().row(mu_.block_start(a) + i).minus ? 1 : 0;
}

Elem GaussGenerators::D(int a, int i, int j, int r) const
{
    if (r < 0) return Elem();
    if (r > rmax_) throw std::out_of_range("D: superscript beyond computed order");
    return tb_.t(mu_.block_start(a) + i, mu_.block_start(a) + j, mu_.block_start(a), r);
}

Elem GaussGenerators::Dp(int a, int i, int j, int r) const
{
    if (r < 0) return Elem();
    if (r > rmax_) throw std::out_of_range("D': superscript beyond computed order");
    Elem v = tb_.t(mu_.block_start(a) + i, mu_.block_start(a) + j, mu_.block_start(a) + mu_.part(a), r);
    return v * Rat(-1);
}

Elem GaussGenerators::E(int b, int h, int k, int r) const
{
    if (b < 1 || b >= z()) throw std::invalid_argument("E: bad block");
    if (r <= smu(b, b + 1)) throw std::invalid_argument("E: superscript must exceed the shift");
    if (r > rmax_) throw std::out_of_range("E: superscript beyond computed order");
    int x = mu_.block_start(b) + mu_.part(b);
    return tb_.t(mu_.block_start(b) + h, x + k, x, r);
}

Elem GaussGenerators::F(int b, int k, int h, int r) const
{
    if (b < 1 || b >= z()) throw std::invalid_argument("F: bad block");
    if (r <= smu(b + 1, b)) throw std::invalid_argument("F: superscript must exceed the shift");
    if (r > rmax_) throw std::out_of_range("F: superscript beyond computed order");
    int x = mu_.block_start(b) + mu_.part(b);
    return tb_.t(x + k, mu_.block_start(b) + h, x, r);
}

GenSeries GaussGenerators::D_series(int a, int i, int j) const
{
    GenSeries s(rmax_ + 1);
    for (int r = 0; r <= rmax_; ++r) s[r] = D(a, i, j, r);
    return s;
}

GenSeries GaussGenerators::E_series(int b, int h, int k) const
{
    GenSeries s(rmax_ + 1);
    for (int r = smu(b, b + 1) + 1; r <= rmax_; ++r) s[r] = E(b, h, k, r);
    return s;
}

GenSeries GaussGenerators::F_series(int b, int k, int h) const
{
    GenSeries s(rmax_ + 1);
    for (int r = smu(b + 1, b) + 1; r <= rmax_; ++r) s[r] = F(b, k, h, r);
    return s;
}

std::vector<std::vector<GenSeries>> d_prime_by_inversion(const Algebra& A,
                                                         const std::vector<std::vector<GenSeries>>& Db)
{
    size_t n = Db.size();
    if (n == 0) throw std::invalid_argument("empty block");
    int rmax = (int)Db[0][0].size() - 1;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            const Elem& c0 = Db[i][j][0];
            Elem want = i == j ? Elem::scalar(1) : Elem();
            if (!(c0 == want)) throw std::invalid_argument("constant term is not the identity block");
        }
    std::vector<std::vector<GenSeries>> inv(n, std::vector<GenSeries>(n, GenSeries(rmax + 1)));
    for (size_t i = 0; i < n; ++i) inv[i][i][0] = Elem::scalar(1);
    for (int r = 1; r <= rmax; ++r)
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) {
                Elem acc;
                for (int t = 1; t <= r; ++t)
                    for (size_t pq = 0; pq < n; ++pq) acc += A.mul(Db[i][pq][t], inv[pq][j][r - t]);
                inv[i][j][r] = acc * Rat(-1);
            }
    return inv;
}

} // namespace wsy
