#include "wsy/pyramid.hpp"

#include <algorithm>
#include <sstream>

namespace wsy {

namespace {

bool shift_condition(const std::vector<std::vector<int>>& s)
{
    int n = (int)s.size();
    for (int i = 0; i < n; ++i) {
        if (s[i][i] != 0) return false;
        for (int j = 0; j < n; ++j)
            if (s[i][j] < 0) return false;
    }
    // s_ij + s_jk = s_ik whenever j lies (weakly) between i and k.
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (std::abs(i - j) + std::abs(j - k) == std::abs(i - k))
                    if (s[i][j] + s[j][k] != s[i][k]) return false;
    return true;
}

} // namespace

ShiftMatrix::ShiftMatrix(std::vector<std::vector<int>> m) : s(std::move(m))
{
    int n = (int)s.size();
    for (const auto& r : s)
        if ((int)r.size() != n) throw std::invalid_argument("shift matrix must be square");
    if (!shift_condition(s)) throw std::invalid_argument("not a shift matrix (additivity fails)");
}

ShiftMatrix ShiftMatrix::from_diagonals(const std::vector<int>& upper, const std::vector<int>& lower)
{
    int n = (int)upper.size() + 1;
    if ((int)lower.size() + 1 != n) throw std::invalid_argument("diagonal length mismatch");
    std::vector<std::vector<int>> s(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            for (int k = i; k < j; ++k) {
                s[i][j] += upper[k];
                s[j][i] += lower[k];
            }
    return ShiftMatrix(std::move(s));
}

ShiftMatrix ShiftMatrix::transposed() const
{
    int n = size();
    std::vector<std::vector<int>> t(n, std::vector<int>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) t[j][i] = s[i][j];
    return ShiftMatrix(std::move(t));
}

bool CompositionShape::admissible_to(const ShiftMatrix& sigma) const
{
    if (total() != sigma.size()) return false;
    for (int a = 1; a <= length(); ++a) {
        int st = block_start(a);
        for (int i = 1; i <= part(a); ++i)
            for (int j = 1; j <= part(a); ++j)
                if (sigma.at(st + i, st + j) != 0) return false;
    }
    return true;
}

std::string CompositionShape::str() const
{
    std::ostringstream os;
    for (int i = 0; i < length(); ++i) os << (i ? "," : "") << parts[i];
    return os.str();
}

Pyramid::Pyramid(std::vector<PyramidRow> rows, int ell) : rows_(std::move(rows)), ell_(ell)
{
    if (ell_ <= 0 || rows_.empty()) throw std::invalid_argument("empty pyramid");
    const auto& bottom = rows_.back();
    if (bottom.offset != 0 || bottom.length != ell_)
        throw std::invalid_argument("bottom row must fill all ell columns");
    for (size_t i = 0; i < rows_.size(); ++i) {
        const auto& w = rows_[i];
        if (w.length <= 0 || w.offset < 0 || w.offset + w.length > ell_)
            throw std::invalid_argument("row outside the ell-column rectangle");
        if (i + 1 < rows_.size()) {
            const auto& below = rows_[i + 1];
            if (w.offset < below.offset || w.offset + w.length > below.offset + below.length)
                throw std::invalid_argument("box without support: rows must nest downward");
        }
    }
    m_ = n_ = M_ = N_ = 0;
    for (const auto& w : rows_) {
        (w.minus ? n_ : m_) += 1;
        (w.minus ? N_ : M_) += w.length;
    }
}

int Pyramid::col_height(int c) const
{
    int h = 0;
    for (int r = 1; r <= height(); ++r) h += has_box(r, c);
    return h;
}

int Pyramid::col_height_signed(int c) const
{
    int q = 0;
    for (int r = 1; r <= height(); ++r)
        if (has_box(r, c)) q += row(r).minus ? -1 : 1;
    return q;
}

ZeroOneSequence Pyramid::upsilon() const
{
    std::vector<int> d;
    d.reserve(rows_.size());
    for (const auto& w : rows_) d.push_back(w.minus ? 1 : 0);
    return ZeroOneSequence(std::move(d));
}

std::vector<int> Pyramid::rho() const
{
    int h = M_ - N_;
    std::vector<int> out(ell_);
    int tail = 0;
    for (int r = ell_; r >= 1; --r) {
        tail += col_height_signed(r);
        out[r - 1] = h - tail;
    }
    return out;
}

std::vector<int> Pyramid::p_tuple() const
{
    std::vector<int> p;
    p.reserve(rows_.size());
    for (const auto& w : rows_) p.push_back(w.length);
    return p;
}

Pyramid pyramid_from_triple(const ShiftMatrix& sigma, int ell, const ZeroOneSequence& ups)
{
    int n = sigma.size();
    if (ups.size() != n) throw std::invalid_argument("01-sequence length must match shift matrix size");
    if (ell <= sigma.at(1, n) + sigma.at(n, 1))
        throw std::invalid_argument("ell too small: need ell > s_{1,m+n} + s_{m+n,1}");
    std::vector<PyramidRow> rows(n);
    for (int i = 1; i <= n; ++i) {
        rows[i - 1].offset = sigma.at(n, i);
        rows[i - 1].length = ell - sigma.at(i, n) - sigma.at(n, i);
        rows[i - 1].minus = ups.digit(i) == 1;
    }
    return Pyramid(std::move(rows), ell);
}

Triple triple_from_pyramid(const Pyramid& pi)
{
    int n = pi.height(), ell = pi.ell();
    // Last row and last column of sigma from the offsets, then extend by the
    // additivity condition (last column fixes the upper triangle, last row
    // the lower one).
    std::vector<int> last_col(n + 1), last_row(n + 1);
    for (int i = 1; i <= n; ++i) {
        last_row[i] = pi.row(i).offset;
        last_col[i] = ell - pi.row(i).offset - pi.row(i).length;
    }
    std::vector<std::vector<int>> s(n, std::vector<int>(n, 0));
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            if (i < j)
                s[i - 1][j - 1] = last_col[i] - last_col[j];
            else if (i > j)
                s[i - 1][j - 1] = last_row[j] - last_row[i];
        }
    return Triple{ShiftMatrix(std::move(s)), ell, pi.upsilon()};
}

std::vector<CompositionShape> admissible_shapes(const ShiftMatrix& sigma)
{
    int n = sigma.size();
    std::vector<CompositionShape> out;
    // Compositions of n ordered by refinement-agnostic enumeration over cut sets.
    for (unsigned long mask = 0; mask < (1ul << (n - 1)); ++mask) {
        std::vector<int> parts;
        int run = 1;
        for (int i = 0; i < n - 1; ++i) {
            if (mask & (1ul << i)) {
                parts.push_back(run);
                run = 1;
            } else {
                ++run;
            }
        }
        parts.push_back(run);
        CompositionShape mu(std::move(parts));
        if (mu.admissible_to(sigma)) out.push_back(std::move(mu));
    }
    return out;
}

CompositionShape minimal_admissible_shape(const ShiftMatrix& sigma)
{
    // Greedy maximal zero blocks from the top-left; uniqueness per the paper.
    int n = sigma.size();
    std::vector<int> parts;
    int start = 0;
    while (start < n) {
        int len = 1;
        for (int cand = 2; start + cand <= n; ++cand) {
            bool zero = true;
            for (int i = start + 1; i <= start + cand && zero; ++i)
                for (int j = start + 1; j <= start + cand && zero; ++j)
                    if (sigma.at(i, j) != 0) zero = false;
            if (zero)
                len = cand;
            else
                break;
        }
        parts.push_back(len);
        start += len;
    }
    return CompositionShape(std::move(parts));
}

int shift_block(const ShiftMatrix& sigma, const CompositionShape& mu, int a, int b)
{
    return sigma.at(mu.block_start(a) + mu.part(a), mu.block_start(b) + mu.part(b));
}

int p_block(const Pyramid& pi, const CompositionShape& mu, int a)
{
    return pi.row(mu.block_start(a) + mu.part(a)).length;
}

Pyramid pyramid_from_json(const json& j)
{
    if (j.contains("rows")) {
        std::vector<PyramidRow> rows;
        int ell = 0;
        for (const auto& r : j.at("rows")) {
            PyramidRow w;
            w.length = r.at("length").get<int>();
            w.offset = r.value("offset", 0);
            std::string lab = r.at("label").get<std::string>();
            if (lab != "+" && lab != "-") throw std::invalid_argument("row label must be \"+\" or \"-\"");
            w.minus = lab == "-";
            ell = std::max(ell, w.offset + w.length);
            rows.push_back(w);
        }
        return Pyramid(std::move(rows), ell);
    }
    std::vector<std::vector<int>> s = j.at("shift").get<std::vector<std::vector<int>>>();
    return pyramid_from_triple(ShiftMatrix(std::move(s)), j.at("ell").get<int>(),
                               ZeroOneSequence::parse(j.at("upsilon").get<std::string>()));
}

json pyramid_to_json(const Pyramid& pi)
{
    Triple t = triple_from_pyramid(pi);
    json j;
    j["ell"] = t.ell;
    j["upsilon"] = t.upsilon.str();
    j["shift"] = t.sigma.s;
    return j;
}

} // namespace wsy
